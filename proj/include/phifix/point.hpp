#pragma once

#include <cmath>
#include <complex>
#include <string>

namespace phifix {

// A carrier element. Real-line points keep im == 0; complex points use both
// components. All finite by construction.
struct Point {
    double re = 0.0;
    double im = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline Point real_point(double v) { return Point{v, 0.0}; }
inline Point complex_point(double re, double im) { return Point{re, im}; }
inline Point to_point(std::complex<double> z) { return Point{z.real(), z.imag()}; }
inline std::complex<double> to_complex(const Point& p) { return {p.re, p.im}; }

inline bool point_finite(const Point& p) {
    return std::isfinite(p.re) && std::isfinite(p.im);
}

// Max-norm closeness used for dedup and carrier membership.
inline bool points_close(const Point& a, const Point& b, double tol) {
    return std::fabs(a.re - b.re) <= tol && std::fabs(a.im - b.im) <= tol;
}

// Enumeration order: by real part, then imaginary part.
inline bool point_less(const Point& a, const Point& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
}

// Shortest decimal text that reads back to the same double.
std::string format_double(double v);
std::string format_point(const Point& p, bool complex_kind);

}  // namespace phifix
