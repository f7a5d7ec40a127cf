#include "phifix/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "phifix/errors.hpp"

namespace phifix {

SelfMap selfmap_of(const Piecewise& f, bool complex_kind) {
    return [f, complex_kind](const Point& p) { return eval(f, p, complex_kind); };
}

RealFn phi_of(const Piecewise& f, bool complex_kind) {
    return [f, complex_kind](const Point& p) { return eval_real(f, p, complex_kind); };
}

std::vector<Point> fix_set(const MetricSpace& space, const SelfMap& T, double tol) {
    std::vector<Point> out;
    for (const Point& p : enumerate_points(space, tol))
        if (distance(space, T(p), p) <= tol) out.push_back(p);
    return out;
}

std::vector<Point> zero_set(const MetricSpace& space, const RealFn& phi, double tol) {
    std::vector<Point> out;
    for (const Point& p : enumerate_points(space, tol)) {
        double v = phi(p);
        if (v < -tol)
            throw NegativePhi("phi(" + format_point(p, space.complex_kind()) +
                              ") = " + format_double(v) + " is negative; phi maps into [0, inf)");
        if (std::fabs(v) <= tol) out.push_back(p);
    }
    return out;
}

std::vector<Point> moved_set(const MetricSpace& space, const SelfMap& T, double tol) {
    std::vector<Point> out;
    for (const Point& p : enumerate_points(space, tol))
        if (distance(space, T(p), p) > tol) out.push_back(p);
    return out;
}

std::optional<double> displacement_infimum(const MetricSpace& space, const SelfMap& T, double tol) {
    std::optional<double> best;
    for (const Point& p : enumerate_points(space, tol)) {
        double d = distance(space, T(p), p);
        if (d > tol && (!best || d < *best)) best = d;
    }
    return best;
}

std::optional<double> mu(const MetricSpace& space, const SelfMap& T, double tol) {
    std::optional<double> best;
    for (const Point& p : enumerate_points(space, tol)) {
        double d = distance(space, T(p), p);
        if (d > tol) {
            double s = std::sqrt(d);
            if (!best || s < *best) best = s;
        }
    }
    return best;
}

double big_m(const MetricSpace& space, const SelfMap& T, const Point& x, const Point& y) {
    Point tx = T(x);
    Point ty = T(y);
    double d_xy = distance(space, x, y);
    double d_xtx = distance(space, x, tx);
    double d_yty = distance(space, y, ty);
    double d_xty = distance(space, x, ty);
    double d_ytx = distance(space, y, tx);
    // grouping keeps the value bitwise symmetric under swapping x and y
    double cross = (d_xty + d_ytx) / (1.0 + (d_xtx + d_yty)) * d_xy;
    return std::max({d_xy, d_xtx, d_yty, cross});
}

namespace {

LocusVerdict verdict_over(const MetricSpace& space, const SelfMap& T, const RealFn& phi,
                          Locus locus, double tol, bool complex_kind) {
    LocusVerdict v;
    v.locus = std::move(locus);
    v.holds = true;
    for (const Point& p : v.locus.points) {
        double d = distance(space, T(p), p);
        double fv = phi(p);
        if (fv < -tol)
            throw NegativePhi("phi(" + format_point(p, complex_kind) + ") = " + format_double(fv) +
                              " is negative; phi maps into [0, inf)");
        Violation viol;
        viol.where = p;
        viol.displacement = d;
        viol.phi_value = fv;
        viol.not_fixed = d > tol;
        viol.phi_nonzero = std::fabs(fv) > tol;
        if (viol.not_fixed || viol.phi_nonzero) {
            v.holds = false;
            v.violations.push_back(viol);
        }
    }
    return v;
}

}  // namespace

LocusVerdict is_phi_fixed_circle(const MetricSpace& space, const SelfMap& T, const RealFn& phi,
                                 const Point& x0, double r, double tol, int angular_n) {
    return verdict_over(space, T, phi, circle(space, x0, r, tol, angular_n), tol,
                        space.complex_kind());
}

LocusVerdict is_phi_fixed_disc(const MetricSpace& space, const SelfMap& T, const RealFn& phi,
                               const Point& x0, double r, double tol, int angular_n) {
    return verdict_over(space, T, phi, disc(space, x0, r, tol, angular_n), tol,
                        space.complex_kind());
}

MapAnalysis analyze(const MetricSpace& space, const SelfMap& T, const RealFn& phi, double tol) {
    MapAnalysis a;
    a.tol = tol;
    a.sampled = sampled_carrier(space);
    a.min_step = carrier_min_step(space);
    for (const Point& p : enumerate_points(space, tol)) {
        double d = distance(space, T(p), p);
        if (d <= tol) {
            a.fixed_points.push_back(p);
        } else {
            a.moved_points.push_back(p);
            double s = std::sqrt(d);
            if (!a.rho || d < *a.rho) a.rho = d;
            if (!a.mu || s < *a.mu) a.mu = s;
        }
        double fv = phi(p);
        if (fv < -tol)
            throw NegativePhi("phi(" + format_point(p, space.complex_kind()) + ") = " +
                              format_double(fv) + " is negative; phi maps into [0, inf)");
        if (std::fabs(fv) <= tol) a.zero_points.push_back(p);
    }
    return a;
}

}  // namespace phifix
