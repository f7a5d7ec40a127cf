#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "phifix/point.hpp"

namespace phifix {

// Carrier segments. A carrier is a finite union of segments; enumeration of
// any carrier is finite and deterministic.
struct FiniteSeg {
    std::vector<Point> points;
};

struct IntervalSeg {
    double lo = 0.0;
    double hi = 0.0;
    double step = 1.0;
    bool closed_lo = true;
    bool closed_hi = true;
};

struct GridSeg {
    double re_lo = 0.0, re_hi = 0.0;
    double im_lo = 0.0, im_hi = 0.0;
    double step = 1.0;
};

using Segment = std::variant<FiniteSeg, IntervalSeg, GridSeg>;

struct Carrier {
    std::vector<Segment> segments;
};

enum class MetricKind { AbsoluteDifference, EuclideanModulus, ExplicitTable };

// An immutable metric space: a carrier plus a distance. Built through the
// factories below, which validate the carrier and (for explicit tables) the
// metric axioms including an exhaustive triangle-inequality scan.
struct MetricSpace {
    Carrier carrier;
    MetricKind metric = MetricKind::AbsoluteDifference;

    // ExplicitTable data; table_points doubles as the carrier's finite set.
    std::vector<Point> table_points;
    std::vector<double> table;  // n x n, row major

    bool complex_kind() const { return metric == MetricKind::EuclideanModulus; }

    static MetricSpace line(Carrier carrier);
    static MetricSpace plane(Carrier carrier);
    static MetricSpace explicit_table(std::vector<Point> points, std::vector<double> distances);
};

struct Locus {
    enum class Kind { Circle, Disc };
    Kind kind = Kind::Circle;
    Point center;
    double radius = 0.0;
    std::vector<Point> points;
};

// Deterministic, duplicate-free (within tol), sorted by (re, im).
std::vector<Point> enumerate_points(const MetricSpace& space, double tol);

double distance(const MetricSpace& space, const Point& p, const Point& q);

bool carrier_contains(const MetricSpace& space, const Point& p, double tol);

// The stored point p matches within tol, snapped to a finite-segment element
// when one is close enough; nullopt when p is outside the carrier.
std::optional<Point> carrier_canonical(const MetricSpace& space, const Point& p, double tol);

// Points at distance r from x0. On the real line the two analytic points
// x0 +- r are intersected with the carrier, so off-sample radii are hit
// exactly; on complex grids the circle is sampled at angular_n angles; on
// explicit tables membership is an exact scan. r == 0 gives {x0}.
Locus circle(const MetricSpace& space, const Point& x0, double r, double tol, int angular_n = 360);

// Points at distance <= r from x0: carrier samples inside the disc plus the
// exact rim (circle materialization) plus x0 itself.
Locus disc(const MetricSpace& space, const Point& x0, double r, double tol, int angular_n = 360);

// True when any segment is a sampled continuum (interval or grid); such
// spaces make infima estimates rather than exact values.
bool sampled_carrier(const MetricSpace& space);

// Smallest sampling step among interval/grid segments, 0 for finite carriers.
double carrier_min_step(const MetricSpace& space);

}  // namespace phifix
