#include "phifix/space.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "phifix/errors.hpp"

namespace phifix {

std::string format_double(double v) {
    if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

std::string format_point(const Point& p, bool complex_kind) {
    if (!complex_kind) return format_double(p.re);
    std::string s = format_double(p.re);
    s += p.im < 0 ? "-" : "+";
    s += format_double(std::fabs(p.im));
    s += "i";
    return s;
}

namespace {

void validate_segment(const Segment& seg, bool complex_kind) {
    if (const auto* f = std::get_if<FiniteSeg>(&seg)) {
        if (f->points.empty()) throw ValidationError("finite segment has no points");
        for (const Point& p : f->points) {
            if (!point_finite(p)) throw ValidationError("finite segment contains a non-finite point");
            if (!complex_kind && p.im != 0.0)
                throw ValidationError("complex point in a real-line carrier");
        }
        return;
    }
    if (const auto* iv = std::get_if<IntervalSeg>(&seg)) {
        if (complex_kind) throw ValidationError("real interval segment in a complex carrier");
        if (!std::isfinite(iv->lo) || !std::isfinite(iv->hi))
            throw ValidationError("unbounded interval; truncate the carrier to finite bounds");
        if (iv->lo > iv->hi) throw ValidationError("interval with lo > hi");
        if (!(iv->step > 0.0) || !std::isfinite(iv->step))
            throw ValidationError("interval step must be positive and finite");
        return;
    }
    const auto& g = std::get<GridSeg>(seg);
    if (!complex_kind) throw ValidationError("complex grid segment in a real-line carrier");
    if (!std::isfinite(g.re_lo) || !std::isfinite(g.re_hi) || !std::isfinite(g.im_lo) ||
        !std::isfinite(g.im_hi))
        throw ValidationError("unbounded grid; truncate the carrier to finite bounds");
    if (g.re_lo > g.re_hi || g.im_lo > g.im_hi) throw ValidationError("grid with lo > hi");
    if (!(g.step > 0.0) || !std::isfinite(g.step))
        throw ValidationError("grid step must be positive and finite");
}

void validate_carrier(const Carrier& carrier, bool complex_kind) {
    if (carrier.segments.empty()) throw ValidationError("carrier has no segments");
    for (const Segment& seg : carrier.segments) validate_segment(seg, complex_kind);
}

// 1-D samples lo, lo+step, ..., snapped to hi when the last lands on it.
template <typename Emit>
void sample_axis(double lo, double hi, double step, double tol, Emit&& emit) {
    long n = static_cast<long>(std::floor((hi - lo) / step + 0.5));
    while (lo + static_cast<double>(n) * step > hi + tol) --n;
    while (lo + static_cast<double>(n + 1) * step <= hi + tol) ++n;
    for (long i = 0; i <= n; ++i) {
        double v = lo + static_cast<double>(i) * step;
        if (std::fabs(v - hi) <= tol) v = hi;
        emit(v);
    }
}

}  // namespace

MetricSpace MetricSpace::line(Carrier carrier) {
    validate_carrier(carrier, /*complex_kind=*/false);
    MetricSpace s;
    s.carrier = std::move(carrier);
    s.metric = MetricKind::AbsoluteDifference;
    return s;
}

MetricSpace MetricSpace::plane(Carrier carrier) {
    validate_carrier(carrier, /*complex_kind=*/true);
    MetricSpace s;
    s.carrier = std::move(carrier);
    s.metric = MetricKind::EuclideanModulus;
    return s;
}

MetricSpace MetricSpace::explicit_table(std::vector<Point> points, std::vector<double> distances) {
    const std::size_t n = points.size();
    if (n == 0) throw ValidationError("explicit table needs at least one point");
    if (distances.size() != n * n) throw ValidationError("explicit table matrix is not n x n");
    for (const Point& p : points)
        if (!point_finite(p)) throw ValidationError("explicit table contains a non-finite point");
    auto d = [&](std::size_t i, std::size_t j) { return distances[i * n + j]; };
    for (std::size_t i = 0; i < n; ++i) {
        if (d(i, i) != 0.0) throw ValidationError("explicit table diagonal must be zero");
        for (std::size_t j = 0; j < n; ++j) {
            if (!(d(i, j) >= 0.0) || !std::isfinite(d(i, j)))
                throw ValidationError("explicit table entries must be finite and nonnegative");
            if (d(i, j) != d(j, i)) throw ValidationError("explicit table must be symmetric");
            if (i != j && d(i, j) == 0.0)
                throw ValidationError("explicit table has zero distance between distinct points");
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (d(i, j) > d(i, k) + d(k, j))
                    throw ValidationError("explicit table violates the triangle inequality");

    MetricSpace s;
    FiniteSeg seg;
    seg.points = points;
    s.carrier.segments.push_back(std::move(seg));
    s.metric = MetricKind::ExplicitTable;
    s.table_points = std::move(points);
    s.table = std::move(distances);
    return s;
}

std::vector<Point> enumerate_points(const MetricSpace& space, double tol) {
    std::vector<Point> pts;
    for (const Segment& seg : space.carrier.segments) {
        if (const auto* f = std::get_if<FiniteSeg>(&seg)) {
            pts.insert(pts.end(), f->points.begin(), f->points.end());
        } else if (const auto* iv = std::get_if<IntervalSeg>(&seg)) {
            sample_axis(iv->lo, iv->hi, iv->step, tol, [&](double v) {
                if (!iv->closed_lo && std::fabs(v - iv->lo) <= tol) return;
                if (!iv->closed_hi && std::fabs(v - iv->hi) <= tol) return;
                pts.push_back(real_point(v));
            });
        } else {
            const auto& g = std::get<GridSeg>(seg);
            sample_axis(g.re_lo, g.re_hi, g.step, tol, [&](double re) {
                sample_axis(g.im_lo, g.im_hi, g.step, tol,
                            [&](double im) { pts.push_back(complex_point(re, im)); });
            });
        }
    }
    std::sort(pts.begin(), pts.end(), point_less);
    std::vector<Point> out;
    out.reserve(pts.size());
    for (const Point& p : pts) {
        bool dup = false;
        for (auto it = out.rbegin(); it != out.rend() && p.re - it->re <= tol; ++it) {
            if (points_close(*it, p, tol)) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(p);
    }
    return out;
}

namespace {

std::optional<std::size_t> table_index(const MetricSpace& space, const Point& p) {
    for (std::size_t i = 0; i < space.table_points.size(); ++i)
        if (points_close(space.table_points[i], p, 1e-9)) return i;
    return std::nullopt;
}

}  // namespace

double distance(const MetricSpace& space, const Point& p, const Point& q) {
    switch (space.metric) {
        case MetricKind::AbsoluteDifference:
            return std::fabs(p.re - q.re);
        case MetricKind::EuclideanModulus:
            return std::hypot(p.re - q.re, p.im - q.im);
        case MetricKind::ExplicitTable: {
            auto i = table_index(space, p);
            auto j = table_index(space, q);
            if (!i || !j)
                throw TableMiss("point " + format_point(!i ? p : q, false) +
                                " is not in the explicit-table carrier");
            return space.table[*i * space.table_points.size() + *j];
        }
    }
    return 0.0;
}

std::optional<Point> carrier_canonical(const MetricSpace& space, const Point& p, double tol) {
    for (const Segment& seg : space.carrier.segments) {
        if (const auto* f = std::get_if<FiniteSeg>(&seg)) {
            for (const Point& q : f->points)
                if (points_close(q, p, tol)) return q;
        } else if (const auto* iv = std::get_if<IntervalSeg>(&seg)) {
            if (std::fabs(p.im) > tol) continue;
            bool lo_ok = iv->closed_lo ? p.re >= iv->lo - tol : p.re > iv->lo + tol;
            bool hi_ok = iv->closed_hi ? p.re <= iv->hi + tol : p.re < iv->hi - tol;
            if (lo_ok && hi_ok) return real_point(p.re);
        } else {
            const auto& g = std::get<GridSeg>(seg);
            if (p.re >= g.re_lo - tol && p.re <= g.re_hi + tol && p.im >= g.im_lo - tol &&
                p.im <= g.im_hi + tol)
                return p;
        }
    }
    return std::nullopt;
}

bool carrier_contains(const MetricSpace& space, const Point& p, double tol) {
    return carrier_canonical(space, p, tol).has_value();
}

namespace {

std::vector<Point> sorted_dedup(std::vector<Point> pts, double tol) {
    std::sort(pts.begin(), pts.end(), point_less);
    std::vector<Point> out;
    for (const Point& p : pts) {
        bool dup = false;
        for (auto it = out.rbegin(); it != out.rend() && p.re - it->re <= tol; ++it)
            if (points_close(*it, p, tol)) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(p);
    }
    return out;
}

Point require_center(const MetricSpace& space, const Point& x0, double tol) {
    auto c = carrier_canonical(space, x0, tol);
    if (!c)
        throw CenterNotInSpace("center " + format_point(x0, space.complex_kind()) +
                               " is not in the carrier");
    return *c;
}

std::vector<Point> circle_points(const MetricSpace& space, const Point& x0, double r, double tol,
                                 int angular_n) {
    std::vector<Point> pts;
    switch (space.metric) {
        case MetricKind::AbsoluteDifference:
            for (double c : {x0.re - r, x0.re + r})
                if (auto q = carrier_canonical(space, real_point(c), tol)) pts.push_back(*q);
            break;
        case MetricKind::EuclideanModulus:
            for (int j = 0; j < angular_n; ++j) {
                double theta = 2.0 * std::numbers::pi * j / angular_n;
                Point cand = complex_point(x0.re + r * std::cos(theta), x0.im + r * std::sin(theta));
                if (auto q = carrier_canonical(space, cand, tol)) pts.push_back(*q);
            }
            break;
        case MetricKind::ExplicitTable:
            for (const Point& p : space.table_points)
                if (std::fabs(distance(space, p, x0) - r) <= tol) pts.push_back(p);
            break;
    }
    return sorted_dedup(std::move(pts), tol);
}

}  // namespace

Locus circle(const MetricSpace& space, const Point& x0, double r, double tol, int angular_n) {
    if (r < 0.0 || !std::isfinite(r)) throw ValidationError("circle radius must be finite and >= 0");
    Point center = require_center(space, x0, tol);
    Locus locus;
    locus.kind = Locus::Kind::Circle;
    locus.center = center;
    locus.radius = r;
    locus.points = r == 0.0 ? std::vector<Point>{center} : circle_points(space, center, r, tol, angular_n);
    return locus;
}

Locus disc(const MetricSpace& space, const Point& x0, double r, double tol, int angular_n) {
    if (r < 0.0 || !std::isfinite(r)) throw ValidationError("disc radius must be finite and >= 0");
    Point center = require_center(space, x0, tol);
    std::vector<Point> pts;
    for (const Point& p : enumerate_points(space, tol))
        if (distance(space, p, center) <= r + tol) pts.push_back(p);
    if (space.metric != MetricKind::ExplicitTable && r > 0.0) {
        auto rim = circle_points(space, center, r, tol, angular_n);
        pts.insert(pts.end(), rim.begin(), rim.end());
    }
    pts.push_back(center);
    Locus locus;
    locus.kind = Locus::Kind::Disc;
    locus.center = center;
    locus.radius = r;
    locus.points = sorted_dedup(std::move(pts), tol);
    return locus;
}

bool sampled_carrier(const MetricSpace& space) {
    for (const Segment& seg : space.carrier.segments)
        if (!std::holds_alternative<FiniteSeg>(seg)) return true;
    return false;
}

double carrier_min_step(const MetricSpace& space) {
    double step = 0.0;
    for (const Segment& seg : space.carrier.segments) {
        if (const auto* iv = std::get_if<IntervalSeg>(&seg))
            step = step == 0.0 ? iv->step : std::min(step, iv->step);
        else if (const auto* g = std::get_if<GridSeg>(&seg))
            step = step == 0.0 ? g->step : std::min(step, g->step);
    }
    return step;
}

}  // namespace phifix
