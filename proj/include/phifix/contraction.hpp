#pragma once

#include <optional>
#include <string_view>

#include "phifix/analysis.hpp"

namespace phifix {

// The six pointwise contraction inequalities, each guarded by d(Tx, x) > 0.
// Plain kinds take the anchor distance d(x, x0) and admit k in (0, 1);
// generalized kinds replace d(x, x0) by the auxiliary number M(x, x0) and
// admit k in (0, 1/2).
//
//   Type1:    max{d(x,Tx), phi(Tx), phi(x)} <= k * max{d(x,x0), phi(x), phi(x0)}
//   Type2:    max{d(x,Tx), phi(Tx)} + phi(x) <= k * max{d(x,x0), phi(x)} + phi(x0)
//   Type3:    d(x,Tx) + phi(Tx) + phi(x) <= k * [d(x,x0) + phi(x) + phi(x0)]
enum class ContractionKind { Type1, GenType1, Type2, GenType2, Type3, GenType3 };

inline constexpr int kContractionKinds = 6;

bool is_generalized(ContractionKind kind);
double contraction_bound(ContractionKind kind);  // exclusive upper end of the k interval
std::string_view kind_name(ContractionKind kind);
std::optional<ContractionKind> kind_from_name(std::string_view name);
int kind_index(ContractionKind kind);

// One point's inequality split as lhs <= k * scaled + unscaled, exactly as the
// defining inequalities are written (the additive phi(x0) of the type 2 kinds
// stays outside the k-scaled part; the type 3 bracket is fully scaled).
struct ContractionTerms {
    double lhs = 0.0;
    double scaled = 0.0;
    double unscaled = 0.0;
};

ContractionTerms contraction_terms(ContractionKind kind, const MetricSpace& space,
                                   const SelfMap& T, const RealFn& phi, const Point& x,
                                   const Point& x0);

// Least k satisfying one point's inequality: (lhs - unscaled) / scaled, with a
// zero denominator giving 0 when the residue is already <= 0 and +infinity
// otherwise. check and minimal_k share this computation so that
// check(k) <=> k >= minimal_k holds exactly.
struct PointRatio {
    bool infinite = false;
    double value = 0.0;
};

PointRatio contraction_ratio(ContractionKind kind, const MetricSpace& space, const SelfMap& T,
                             const RealFn& phi, const Point& x, const Point& x0);

struct ContractionVerdict {
    ContractionKind kind = ContractionKind::Type1;
    Point x0;
    double k = 0.0;
    bool holds = false;
    bool vacuous = false;         // no moved points; the implication holds trivially
    bool ratio_infinite = false;  // some moved point admits no finite k
    double worst_ratio = 0.0;     // max pointwise ratio (when finite, non-vacuous)
    Point witness;                // moved point attaining the worst ratio
    std::size_t checked_points = 0;
};

// Verifies the kind's inequality at every moved carrier point. Throws
// KOutOfRange unless 0 < k < bound (the intervals are open by definition).
ContractionVerdict check_contraction(ContractionKind kind, const MetricSpace& space,
                                     const SelfMap& T, const RealFn& phi, const Point& x0,
                                     double k, double tol);

struct MinimalK {
    enum class Kind { Value, Infinite, Vacuous };
    Kind kind = Kind::Vacuous;
    double value = 0.0;  // defined for Kind::Value
    Point witness;       // moved point attaining the supremum (Value/Infinite)
};

// sup of pointwise ratios over moved points, clamped below at 0. check at k
// succeeds iff k >= minimal_k (and k lies in the kind's open interval).
MinimalK minimal_k(ContractionKind kind, const MetricSpace& space, const SelfMap& T,
                   const RealFn& phi, const Point& x0, double tol);

}  // namespace phifix
