#include "phifix/certify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "phifix/errors.hpp"

namespace phifix {

std::array<TheoremId, kTheoremCount> all_theorems() {
    std::array<TheoremId, kTheoremCount> out;
    int i = 0;
    for (ContractionKind kind :
         {ContractionKind::Type1, ContractionKind::GenType1, ContractionKind::Type2,
          ContractionKind::GenType2, ContractionKind::Type3, ContractionKind::GenType3})
        for (bool disc : {false, true}) out[i++] = TheoremId{kind, disc};
    return out;
}

std::string theorem_name(TheoremId id) {
    return std::string(kind_name(id.kind)) + (id.disc ? "_disc" : "_circle");
}

std::optional<TheoremId> theorem_from_name(std::string_view name) {
    for (TheoremId id : all_theorems())
        if (theorem_name(id) == name) return id;
    return std::nullopt;
}

Certification certify(TheoremId id, const MetricSpace& space, const SelfMap& T, const RealFn& phi,
                      const Point& x0, double k, double tol, int angular_n) {
    auto center = carrier_canonical(space, x0, tol);
    if (!center)
        throw CenterNotInSpace("center " + format_point(x0, space.complex_kind()) +
                               " is not in the carrier");

    Certification c;
    c.theorem = id;
    c.x0 = *center;
    c.k = k;
    c.sampled = sampled_carrier(space);

    c.h_contraction = check_contraction(id.kind, space, T, phi, c.x0, k, tol);

    std::optional<double> radius =
        theorem_uses_mu(id) ? mu(space, T, tol) : displacement_infimum(space, T, tol);
    c.radius_degenerate = !radius.has_value();
    c.radius = radius.value_or(0.0);

    c.phi_center = phi(c.x0);
    c.h_center_zero = std::fabs(c.phi_center) <= tol;

    Locus locus = id.disc ? disc(space, c.x0, c.radius, tol, angular_n)
                          : circle(space, c.x0, c.radius, tol, angular_n);

    for (const Point& p : locus.points) {
        double lhs = phi(p);
        double bound = distance(space, T(p), p);
        if (lhs > bound + tol) {
            c.h_phi_bound.pass = false;
            c.h_phi_bound.violations.push_back({p, lhs, bound});
        }
    }

    if (theorem_has_image_bound(id)) {
        BoundCheck image;
        for (const Point& p : locus.points) {
            double lhs = distance(space, T(p), c.x0);
            if (lhs > c.radius + tol) {
                image.pass = false;
                image.violations.push_back({p, lhs, c.radius});
            }
        }
        c.h_image_bound = std::move(image);
    }

    c.conclusion = id.disc ? is_phi_fixed_disc(space, T, phi, c.x0, c.radius, tol, angular_n)
                           : is_phi_fixed_circle(space, T, phi, c.x0, c.radius, tol, angular_n);

    c.hypotheses_pass = c.h_contraction.holds && c.h_center_zero && c.h_phi_bound.pass &&
                        (!c.h_image_bound || c.h_image_bound->pass);
    c.consistent = !c.hypotheses_pass || c.conclusion.holds;
    return c;
}

std::array<double, kContractionKinds> uniform_k(double k_plain, double k_generalized) {
    std::array<double, kContractionKinds> ks{};
    for (ContractionKind kind :
         {ContractionKind::Type1, ContractionKind::GenType1, ContractionKind::Type2,
          ContractionKind::GenType2, ContractionKind::Type3, ContractionKind::GenType3})
        ks[kind_index(kind)] = is_generalized(kind) ? k_generalized : k_plain;
    return ks;
}

std::vector<Certification> certify_all(const MetricSpace& space, const SelfMap& T,
                                       const RealFn& phi, const Point& x0,
                                       const std::array<double, kContractionKinds>& k_by_kind,
                                       double tol, int angular_n) {
    std::vector<Certification> out;
    out.reserve(kTheoremCount);
    for (TheoremId id : all_theorems())
        out.push_back(certify(id, space, T, phi, x0, k_by_kind[kind_index(id.kind)], tol, angular_n));
    return out;
}

SelfMap Trial::self_map() const {
    return [pts = points, to = map_to](const Point& p) {
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (points_close(pts[i], p, 1e-9)) return pts[to[i]];
        throw TableMiss("trial self-map queried off the carrier");
    };
}

RealFn Trial::phi_fn() const {
    return [pts = points, vals = phi_values](const Point& p) {
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (points_close(pts[i], p, 1e-9)) return vals[i];
        throw TableMiss("trial phi queried off the carrier");
    };
}

Trial make_random_trial(std::uint64_t trial_seed, int max_points) {
    std::mt19937_64 rng(trial_seed);
    std::uniform_int_distribution<int> n_dist(2, std::max(2, max_points));
    const int n = n_dist(rng);

    Trial trial;
    std::string digest;
    std::bernoulli_distribution use_table(0.5);
    if (!use_table(rng)) {
        // distinct quarter-integer points on a line
        std::uniform_int_distribution<int> coord(-40, 40);
        std::vector<double> values;
        while (static_cast<int>(values.size()) < n) {
            double v = coord(rng) * 0.25;
            if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
        }
        std::sort(values.begin(), values.end());
        FiniteSeg seg;
        for (double v : values) seg.points.push_back(real_point(v));
        trial.points = seg.points;
        trial.space = MetricSpace::line(Carrier{{seg}});
        digest = "line{";
        for (std::size_t i = 0; i < values.size(); ++i)
            digest += (i ? "," : "") + format_double(values[i]);
        digest += "}";
    } else {
        // metric closure of random symmetric quarter-valued weights
        std::uniform_int_distribution<int> w_dist(1, 20);
        std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                double w = 0.25 * w_dist(rng);
                d[i * n + j] = w;
                d[j * n + i] = w;
            }
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
        std::vector<Point> pts;
        for (int i = 0; i < n; ++i) pts.push_back(real_point(i));
        trial.points = pts;
        trial.space = MetricSpace::explicit_table(pts, d);
        digest = "table" + std::to_string(n) + "{";
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                digest += format_double(d[i * n + j]) + ((i == n - 2 && j == n - 1) ? "" : ",");
        digest += "}";
    }

    std::bernoulli_distribution keep_fixed(0.5);
    std::uniform_int_distribution<int> idx_dist(0, n - 1);
    for (int i = 0; i < n; ++i)
        trial.map_to.push_back(keep_fixed(rng) ? static_cast<std::size_t>(i)
                                               : static_cast<std::size_t>(idx_dist(rng)));

    std::bernoulli_distribution phi_zero(0.5);
    std::uniform_int_distribution<int> phi_dist(1, 16);
    for (int i = 0; i < n; ++i)
        trial.phi_values.push_back(phi_zero(rng) ? 0.0 : 0.25 * phi_dist(rng));

    digest += " T[";
    for (int i = 0; i < n; ++i) digest += (i ? "," : "") + std::to_string(trial.map_to[i]);
    digest += "] phi[";
    for (int i = 0; i < n; ++i) digest += (i ? "," : "") + format_double(trial.phi_values[i]);
    digest += "]";
    trial.digest = digest;
    return trial;
}

ScanReport scan_random(const ScanConfig& config, std::uint64_t seed) {
    ScanReport report;
    report.seed = seed;
    report.trials = config.trials;

    for (int t = 0; t < config.trials; ++t) {
        Trial trial = make_random_trial(seed + static_cast<std::uint64_t>(t), config.max_points);
        SelfMap T = trial.self_map();
        RealFn phi = trial.phi_fn();
        const double tol = 1e-9;

        for (const Point& x0 : trial.points) {
            for (TheoremId id : all_theorems()) {
                double bound = contraction_bound(id.kind);
                std::vector<double> ks{bound / 4.0, bound / 2.0};
                if (config.k_samples > 2) {
                    MinimalK mk = minimal_k(id.kind, trial.space, T, phi, x0, tol);
                    if (mk.kind == MinimalK::Kind::Value) {
                        double just_above = mk.value + 1e-6;
                        if (just_above > 0.0 && just_above < bound) ks.push_back(just_above);
                    }
                }
                bool converse_recorded = false;
                for (double k : ks) {
                    Certification c = certify(id, trial.space, T, phi, x0, k, tol);
                    ++report.certifications;
                    if (c.hypotheses_pass && !c.conclusion.holds)
                        report.soundness_violations.push_back(
                            {t, trial.digest, id, x0, k, c.conclusion.locus.points.size()});
                    if (!converse_recorded && !c.hypotheses_pass && c.conclusion.holds) {
                        report.converse_failures.push_back(
                            {t, trial.digest, id, x0, k, c.conclusion.locus.points.size()});
                        converse_recorded = true;
                    }
                }
            }
        }
    }
    return report;
}

}  // namespace phifix
