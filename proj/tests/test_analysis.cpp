#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "phifix/analysis.hpp"
#include "phifix/errors.hpp"
#include "test_util.hpp"

using namespace phifix;
using phifix::test::bundled;
using phifix::test::finite_line;
using phifix::test::grid_line;

namespace {
const double tol = 1e-9;

std::vector<double> reals(const std::vector<Point>& pts) {
    std::vector<double> out;
    for (const Point& p : pts) out.push_back(p.re);
    return out;
}

SelfMap identity_map() {
    return [](const Point& p) { return p; };
}
RealFn zero_phi() {
    return [](const Point&) { return 0.0; };
}
}  // namespace

TEST_CASE("fixed sets") {
    Scenario quartic = bundled("quartic_unit_circle");
    CHECK(reals(fix_set(quartic.space, quartic.self_map(), tol)) ==
          std::vector<double>{-2, -1, 1, 2});

    MetricSpace grid = grid_line(-2, 2, 0.5);
    CHECK(fix_set(grid, identity_map(), tol).size() == enumerate_points(grid, tol).size());

    Scenario finite = bundled("finite_union_map");
    auto fixed = fix_set(finite.space, finite.self_map(), tol);
    auto all = enumerate_points(finite.space, tol);
    CHECK(fixed.size() == all.size() - 1);
    for (const Point& p : fixed) CHECK(p.re != 5.0);
}

TEST_CASE("zero sets and the nonnegativity guard") {
    Scenario quartic = bundled("quartic_unit_circle");
    auto zeros = zero_set(quartic.space, quartic.phi_fn(), tol);
    CHECK(zeros.size() == 9);
    CHECK(zeros.front().re == -1.0);
    CHECK(zeros.back().re == 1.0);

    MetricSpace grid = grid_line(-2, 2, 0.5);
    CHECK(zero_set(grid, zero_phi(), tol).size() == enumerate_points(grid, tol).size());

    RealFn signed_phi = [](const Point& p) { return p.re; };
    CHECK_THROWS_AS(zero_set(grid, signed_phi, tol), NegativePhi);

    Scenario finite = bundled("finite_union_map");
    CHECK(reals(zero_set(finite.space, finite.phi_fn(), tol)) ==
          std::vector<double>{-6, -4, -2, 0, 1, 2, 4, 5});
}

TEST_CASE("displacement infima") {
    Scenario half = bundled("half_scaling_tail");
    Piecewise map = std::get<Piecewise>(half.map);
    MetricSpace open_tail = MetricSpace::line(Carrier{{IntervalSeg{2, 10, 0.01, false, true}}});
    auto est = rho(open_tail, selfmap_of(map, false), tol);
    REQUIRE(est.has_value());
    CHECK(*est == doctest::Approx(1.005).epsilon(1e-12));

    Scenario finite = bundled("finite_union_map");
    CHECK(*rho(finite.space, finite.self_map(), tol) == 4.0);
    CHECK(*mu(finite.space, finite.self_map(), tol) == 2.0);

    Scenario shift = bundled("left_shift_tail");
    CHECK(*mu(shift.space, shift.self_map(), tol) == 1.0);

    MetricSpace grid = grid_line(-2, 2, 0.5);
    CHECK_FALSE(rho(grid, identity_map(), tol).has_value());
    CHECK_FALSE(mu(grid, identity_map(), tol).has_value());
}

TEST_CASE("auxiliary number") {
    Scenario finite = bundled("finite_union_map");
    SelfMap T = finite.self_map();
    CHECK(big_m(finite.space, T, real_point(5), real_point(-4)) == doctest::Approx(25.2).epsilon(1e-12));
    // diagonal at a fixed point vanishes, at a moved point equals the displacement
    CHECK(big_m(finite.space, T, real_point(2), real_point(2)) == 0.0);
    CHECK(big_m(finite.space, T, real_point(5), real_point(5)) == 4.0);

    Scenario doubling = bundled("doubling_left_tail");
    CHECK(big_m(doubling.space, doubling.self_map(), real_point(-2), real_point(0)) == 4.0);
}

TEST_CASE("auxiliary number is symmetric and dominates the distance") {
    for (const char* name : {"finite_union_map", "doubling_left_tail"}) {
        Scenario sc = bundled(name);
        SelfMap T = sc.self_map();
        auto pts = enumerate_points(sc.space, tol);
        for (const Point& x : pts)
            for (const Point& y : pts) {
                double m = big_m(sc.space, T, x, y);
                CHECK(m == big_m(sc.space, T, y, x));
                CHECK(m >= distance(sc.space, x, y));
            }
    }
}

TEST_CASE("phi-fixed circle verdicts") {
    Scenario quartic = bundled("quartic_unit_circle");
    SelfMap T = quartic.self_map();
    RealFn phi = quartic.phi_fn();
    auto good = is_phi_fixed_circle(quartic.space, T, phi, real_point(0), 1, tol);
    CHECK(good.holds);
    CHECK(reals(good.locus.points) == std::vector<double>{-1, 1});

    auto bad = is_phi_fixed_circle(quartic.space, T, phi, real_point(0), 2, tol);
    CHECK_FALSE(bad.holds);
    REQUIRE(bad.violations.size() == 2);  // exhaustive, both circle points leave the zero set
    CHECK(bad.violations[0].where.re == -2.0);
    CHECK(bad.violations[1].where.re == 2.0);
    CHECK(bad.violations[1].phi_nonzero);
    CHECK_FALSE(bad.violations[1].not_fixed);
    CHECK(bad.violations[1].phi_value == 2.0);

    Scenario half = bundled("half_scaling_tail");
    auto circ = is_phi_fixed_circle(half.space, half.self_map(), half.phi_fn(), real_point(-1), 1, tol);
    CHECK(circ.holds);
    CHECK(reals(circ.locus.points) == std::vector<double>{-2, 0});
}

TEST_CASE("phi-fixed disc verdicts") {
    Scenario step = bundled("step_shift_disc");
    SelfMap T = step.self_map();
    RealFn phi = step.phi_fn();
    CHECK(is_phi_fixed_disc(step.space, T, phi, real_point(0), 1, tol).holds);
    CHECK(is_phi_fixed_disc(step.space, T, phi, real_point(0), 0.5, tol).holds);

    Scenario finite = bundled("finite_union_map");
    auto d = is_phi_fixed_disc(finite.space, finite.self_map(), finite.phi_fn(), real_point(-4), 2, tol);
    CHECK(d.holds);
    CHECK(reals(d.locus.points) == std::vector<double>{-6, -4, -2});
}

TEST_CASE("evaluation errors name the offending point") {
    MetricSpace grid = grid_line(-1, 1, 0.5);
    Piecewise f = parse_piecewise("piecewise { otherwise : 1 / x }");
    try {
        fix_set(grid, selfmap_of(f, false), tol);
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("at point 0") != std::string::npos);
    }
}

TEST_CASE("a phi-fixed disc makes the same-radius circle phi-fixed") {
    for (const char* name : {"step_shift_disc", "left_shift_tail", "finite_union_map"}) {
        Scenario sc = bundled(name);
        SelfMap T = sc.self_map();
        RealFn phi = sc.phi_fn();
        for (double r : {0.5, 1.0, 2.0, 4.0}) {
            for (const Point& x0 : {real_point(0), real_point(-4)}) {
                if (!carrier_contains(sc.space, x0, tol)) continue;
                auto d = is_phi_fixed_disc(sc.space, T, phi, x0, r, tol);
                if (d.holds) CHECK(is_phi_fixed_circle(sc.space, T, phi, x0, r, tol).holds);
            }
        }
    }
}

TEST_CASE("fix and zero sets grow with the tolerance") {
    Scenario quartic = bundled("quartic_unit_circle");
    SelfMap T = quartic.self_map();
    RealFn phi = quartic.phi_fn();
    for (double small : {1e-9, 1e-6}) {
        double large = small * 1e3;
        auto f_small = fix_set(quartic.space, T, small);
        auto f_large = fix_set(quartic.space, T, large);
        for (const Point& p : f_small) {
            bool kept = false;
            for (const Point& q : f_large) kept = kept || points_close(p, q, large);
            CHECK(kept);
        }
        CHECK(zero_set(quartic.space, phi, small).size() <=
              zero_set(quartic.space, phi, large).size());
    }
}

TEST_CASE("mu is the square root of rho whenever both exist") {
    for (const char* name : {"quartic_unit_circle", "step_shift_disc", "half_scaling_tail",
                             "left_shift_tail", "doubling_left_tail", "finite_union_map",
                             "activation_real", "activation_complex"}) {
        Scenario sc = bundled(name);
        SelfMap T = sc.self_map();
        auto r = rho(sc.space, T, tol);
        auto m = mu(sc.space, T, tol);
        REQUIRE(r.has_value() == m.has_value());
        if (r) CHECK(*m == doctest::Approx(std::sqrt(*r)).epsilon(1e-12));
    }
}

TEST_CASE("analysis bundles the per-scenario summary") {
    Scenario finite = bundled("finite_union_map");
    MapAnalysis a = analyze(finite.space, finite.self_map(), finite.phi_fn(), tol);
    CHECK(a.moved_points.size() == 1);
    CHECK(a.moved_points[0].re == 5.0);
    CHECK(*a.rho == 4.0);
    CHECK(*a.mu == 2.0);
    CHECK(a.zero_points.size() == 8);
    CHECK(a.sampled);  // the carrier has a sampled tail
    CHECK(a.fixed_points.size() + a.moved_points.size() ==
          enumerate_points(finite.space, tol).size());
}
