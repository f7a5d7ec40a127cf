#include "phifix/contraction.hpp"

#include <algorithm>
#include <cmath>

#include "phifix/errors.hpp"

namespace phifix {

bool is_generalized(ContractionKind kind) {
    return kind == ContractionKind::GenType1 || kind == ContractionKind::GenType2 ||
           kind == ContractionKind::GenType3;
}

double contraction_bound(ContractionKind kind) { return is_generalized(kind) ? 0.5 : 1.0; }

std::string_view kind_name(ContractionKind kind) {
    switch (kind) {
        case ContractionKind::Type1: return "type1";
        case ContractionKind::GenType1: return "gentype1";
        case ContractionKind::Type2: return "type2";
        case ContractionKind::GenType2: return "gentype2";
        case ContractionKind::Type3: return "type3";
        case ContractionKind::GenType3: return "gentype3";
    }
    return "type1";
}

std::optional<ContractionKind> kind_from_name(std::string_view name) {
    for (ContractionKind k :
         {ContractionKind::Type1, ContractionKind::GenType1, ContractionKind::Type2,
          ContractionKind::GenType2, ContractionKind::Type3, ContractionKind::GenType3})
        if (kind_name(k) == name) return k;
    return std::nullopt;
}

int kind_index(ContractionKind kind) { return static_cast<int>(kind); }

ContractionTerms contraction_terms(ContractionKind kind, const MetricSpace& space,
                                   const SelfMap& T, const RealFn& phi, const Point& x,
                                   const Point& x0) {
    Point tx = T(x);
    double d_xtx = distance(space, x, tx);
    double phi_x = phi(x);
    double phi_tx = phi(tx);
    double phi_x0 = phi(x0);
    double anchor = is_generalized(kind) ? big_m(space, T, x, x0) : distance(space, x, x0);

    ContractionTerms t;
    switch (kind) {
        case ContractionKind::Type1:
        case ContractionKind::GenType1:
            t.lhs = std::max({d_xtx, phi_tx, phi_x});
            t.scaled = std::max({anchor, phi_x, phi_x0});
            t.unscaled = 0.0;
            break;
        case ContractionKind::Type2:
        case ContractionKind::GenType2:
            t.lhs = std::max(d_xtx, phi_tx) + phi_x;
            t.scaled = std::max(anchor, phi_x);
            t.unscaled = phi_x0;
            break;
        case ContractionKind::Type3:
        case ContractionKind::GenType3:
            t.lhs = d_xtx + phi_tx + phi_x;
            t.scaled = anchor + phi_x + phi_x0;
            t.unscaled = 0.0;
            break;
    }
    return t;
}

PointRatio contraction_ratio(ContractionKind kind, const MetricSpace& space, const SelfMap& T,
                             const RealFn& phi, const Point& x, const Point& x0) {
    ContractionTerms t = contraction_terms(kind, space, T, phi, x, x0);
    double resid = t.lhs - t.unscaled;
    if (t.scaled == 0.0) {
        if (resid <= 0.0) return {false, 0.0};
        return {true, 0.0};
    }
    return {false, resid / t.scaled};
}

namespace {

struct RatioSup {
    bool any = false;
    bool infinite = false;
    double worst = 0.0;
    Point witness;
};

RatioSup ratio_sup(ContractionKind kind, const MetricSpace& space, const SelfMap& T,
                   const RealFn& phi, const Point& x0, double tol, std::size_t* checked) {
    RatioSup sup;
    std::size_t n = 0;
    for (const Point& x : moved_set(space, T, tol)) {
        ++n;
        PointRatio r = contraction_ratio(kind, space, T, phi, x, x0);
        if (r.infinite) {
            if (!sup.infinite) sup.witness = x;
            sup.infinite = true;
            sup.any = true;
            continue;
        }
        if (!sup.any || r.value > sup.worst) {
            sup.worst = r.value;
            sup.witness = x;
        }
        sup.any = true;
    }
    if (checked) *checked = n;
    return sup;
}

}  // namespace

ContractionVerdict check_contraction(ContractionKind kind, const MetricSpace& space,
                                     const SelfMap& T, const RealFn& phi, const Point& x0,
                                     double k, double tol) {
    double bound = contraction_bound(kind);
    if (!(k > 0.0) || !(k < bound))
        throw KOutOfRange("k = " + format_double(k) + " outside the open interval (0, " +
                          format_double(bound) + ") for " + std::string(kind_name(kind)));
    ContractionVerdict v;
    v.kind = kind;
    v.x0 = x0;
    v.k = k;
    RatioSup sup = ratio_sup(kind, space, T, phi, x0, tol, &v.checked_points);
    if (!sup.any) {
        v.vacuous = true;
        v.holds = true;
        return v;
    }
    v.ratio_infinite = sup.infinite;
    v.worst_ratio = sup.worst;
    v.witness = sup.witness;
    v.holds = !sup.infinite && sup.worst <= k;
    return v;
}

MinimalK minimal_k(ContractionKind kind, const MetricSpace& space, const SelfMap& T,
                   const RealFn& phi, const Point& x0, double tol) {
    MinimalK m;
    RatioSup sup = ratio_sup(kind, space, T, phi, x0, tol, nullptr);
    if (!sup.any) {
        m.kind = MinimalK::Kind::Vacuous;
        return m;
    }
    m.witness = sup.witness;
    if (sup.infinite) {
        m.kind = MinimalK::Kind::Infinite;
        return m;
    }
    m.kind = MinimalK::Kind::Value;
    m.value = std::max(0.0, sup.worst);
    return m;
}

}  // namespace phifix
