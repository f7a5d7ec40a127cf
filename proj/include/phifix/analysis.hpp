#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "phifix/pwdsl.hpp"
#include "phifix/space.hpp"

namespace phifix {

// Self-maps and phi functions are plain callables so that parsed piecewise
// expressions and lookup tables run through the same analysis code.
using SelfMap = std::function<Point(const Point&)>;
using RealFn = std::function<double(const Point&)>;

SelfMap selfmap_of(const Piecewise& f, bool complex_kind);
RealFn phi_of(const Piecewise& f, bool complex_kind);

// Enumerated points with d(Tx, x) <= tol, sorted.
std::vector<Point> fix_set(const MetricSpace& space, const SelfMap& T, double tol);

// Enumerated points with |phi(x)| <= tol, sorted. Throws NegativePhi when
// phi dips below -tol anywhere on the carrier.
std::vector<Point> zero_set(const MetricSpace& space, const RealFn& phi, double tol);

std::vector<Point> moved_set(const MetricSpace& space, const SelfMap& T, double tol);

// inf d(Tx, x) over moved points; nullopt when nothing moves. On sampled
// continuous carriers this over-estimates the true infimum by at most the
// local displacement growth across one step.
std::optional<double> displacement_infimum(const MetricSpace& space, const SelfMap& T, double tol);
inline std::optional<double> rho(const MetricSpace& space, const SelfMap& T, double tol) {
    return displacement_infimum(space, T, tol);
}

// inf sqrt(d(Tx, x)) over moved points; equals sqrt(rho) when defined.
std::optional<double> mu(const MetricSpace& space, const SelfMap& T, double tol);

// max{ d(x,y), d(x,Tx), d(y,Ty), [ (d(x,Ty)+d(y,Tx)) / (1+d(x,Tx)+d(y,Ty)) ] d(x,y) }.
// Symmetric in (x, y); equals d(x,Tx) on the diagonal; never below d(x,y).
double big_m(const MetricSpace& space, const SelfMap& T, const Point& x, const Point& y);

struct Violation {
    Point where;
    bool not_fixed = false;    // d(Tx, x) > tol
    bool phi_nonzero = false;  // |phi(x)| > tol
    double displacement = 0.0;
    double phi_value = 0.0;
};

struct LocusVerdict {
    Locus locus;
    bool holds = false;
    std::vector<Violation> violations;  // exhaustive, not first-failure
};

// holds iff every locus point is fixed by T and a zero of phi (within tol).
LocusVerdict is_phi_fixed_circle(const MetricSpace& space, const SelfMap& T, const RealFn& phi,
                                 const Point& x0, double r, double tol, int angular_n = 360);
LocusVerdict is_phi_fixed_disc(const MetricSpace& space, const SelfMap& T, const RealFn& phi,
                               const Point& x0, double r, double tol, int angular_n = 360);

struct MapAnalysis {
    std::vector<Point> fixed_points;
    std::vector<Point> zero_points;
    std::vector<Point> moved_points;
    std::optional<double> rho;
    std::optional<double> mu;
    bool sampled = false;  // infima are estimates when the carrier is sampled
    double tol = 0.0;
    double min_step = 0.0;
};

MapAnalysis analyze(const MetricSpace& space, const SelfMap& T, const RealFn& phi, double tol);

}  // namespace phifix
