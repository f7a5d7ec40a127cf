// Acceptance suite: drives the built CLI and the library through the full
// contract and prints one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "phifix/corpus.hpp"
#include "phifix/errors.hpp"
#include "phifix/scenario.hpp"
#include "test_util.hpp"

using namespace phifix;
using phifix::test::bundled;

namespace {

struct Ctx {
    std::string cli;
    std::string corpus_dir;
};

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

void require(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
}

void require_close(double actual, double expected, double tol, const std::string& what) {
    if (!(std::fabs(actual - expected) <= tol))
        fail(what + ": expected " + format_double(expected) + ", got " + format_double(actual));
}

void require_points(const std::vector<Point>& actual, const std::vector<double>& expected,
                    const std::string& what) {
    require(actual.size() == expected.size(),
            what + ": expected " + std::to_string(expected.size()) + " points, got " +
                std::to_string(actual.size()));
    for (std::size_t i = 0; i < expected.size(); ++i)
        require_close(actual[i].re, expected[i], 1e-9, what + "[" + std::to_string(i) + "]");
}

struct CliResult {
    std::string out;
    int code = -1;
};

CliResult run_cli(const std::string& command) {
    CliResult result;
    FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
    require(pipe != nullptr, "popen failed for: " + command);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, n);
    int status = pclose(pipe);
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---- criterion 1: exact values on the finite union scenario --------------

void criterion1(const Ctx&) {
    Scenario sc = bundled("finite_union_map");
    SelfMap T = sc.self_map();
    RealFn phi = sc.phi_fn();
    const double tol = 1e-9;

    require_close(*rho(sc.space, T, tol), 4.0, 1e-9, "rho");
    require_close(*mu(sc.space, T, tol), 2.0, 1e-9, "mu");
    require_close(big_m(sc.space, T, real_point(5), real_point(-4)), 25.2, 1e-9, "M(5,-4)");

    auto all = enumerate_points(sc.space, tol);
    auto fixed = fix_set(sc.space, T, tol);
    require(fixed.size() == all.size() - 1, "fixed set must drop exactly one point");
    for (const Point& p : fixed) require(std::fabs(p.re - 5.0) > 1e-9, "5 must not be fixed");

    require_points(zero_set(sc.space, phi, tol), {-6, -4, -2, 0, 1, 2, 4, 5}, "zero set");

    auto c04 = is_phi_fixed_circle(sc.space, T, phi, real_point(0), 4, tol);
    require_points(c04.locus.points, {-4, 4}, "circle x0=0 r=4");
    require(c04.holds, "circle x0=0 r=4 must be phi-fixed");

    auto c42 = is_phi_fixed_circle(sc.space, T, phi, real_point(-4), 2, tol);
    require_points(c42.locus.points, {-6, -2}, "circle x0=-4 r=2");
    require(c42.holds, "circle x0=-4 r=2 must be phi-fixed");

    auto d04 = is_phi_fixed_disc(sc.space, T, phi, real_point(0), 4, tol);
    require_points(d04.locus.points, {-4, -2, 0, 1, 2, 4}, "disc x0=0 r=4");
    require(d04.holds, "disc x0=0 r=4 must be phi-fixed");

    auto d42 = is_phi_fixed_disc(sc.space, T, phi, real_point(-4), 2, tol);
    require_points(d42.locus.points, {-6, -4, -2}, "disc x0=-4 r=2");
    require(d42.holds, "disc x0=-4 r=2 must be phi-fixed");
}

// ---- criterion 2: grid and complex-grid scenario exactness ---------------

void criterion2(const Ctx&) {
    const double tol = 1e-9;

    Scenario quartic = bundled("quartic_unit_circle");
    require_points(fix_set(quartic.space, quartic.self_map(), tol), {-2, -1, 1, 2},
                   "quartic fixed set");
    auto c01 = is_phi_fixed_circle(quartic.space, quartic.self_map(), quartic.phi_fn(),
                                   real_point(0), 1, tol);
    require_points(c01.locus.points, {-1, 1}, "quartic circle");
    require(c01.holds, "quartic circle must be phi-fixed");

    Scenario step = bundled("step_shift_disc");
    require(is_phi_fixed_disc(step.space, step.self_map(), step.phi_fn(), real_point(0), 1, tol)
                .holds,
            "unit disc must be phi-fixed");
    require(is_phi_fixed_disc(step.space, step.self_map(), step.phi_fn(), real_point(0), 0.5, tol)
                .holds,
            "half disc must be phi-fixed");

    Scenario act = bundled("activation_real");
    require_close(*rho(act.space, act.self_map(), tol), 1.0, 1e-9, "activation rho");
    auto c21 = is_phi_fixed_circle(act.space, act.self_map(), act.phi_fn(), real_point(2), 1, tol);
    require_points(c21.locus.points, {1, 3}, "activation circle");
    require(c21.holds, "activation circle must be phi-fixed");
    require(is_phi_fixed_disc(act.space, act.self_map(), act.phi_fn(), real_point(2), 1, tol).holds,
            "activation disc must be phi-fixed");

    Scenario cplx = bundled("activation_complex");
    auto rim = is_phi_fixed_circle(cplx.space, cplx.self_map(), cplx.phi_fn(), complex_point(0, 0),
                                   1, tol, 360);
    require(rim.locus.points.size() == 360,
            "complex circle must keep all 360 angular samples, got " +
                std::to_string(rim.locus.points.size()));
    require(rim.violations.empty() && rim.holds,
            "every complex circle sample must be fixed and phi-null within 1e-9");
}

// ---- criterion 3: contraction verdicts -----------------------------------

double oracle_minimal_k_type1(const MetricSpace& space, const SelfMap& T, const RealFn& phi,
                              const Point& x0, double tol) {
    // independent route: raw evaluation of the defining inequality
    double worst = 0.0;
    for (const Point& p : enumerate_points(space, tol)) {
        Point tp = T(p);
        double d = distance(space, tp, p);
        if (d <= tol) continue;
        double lhs = std::max(d, std::max(phi(tp), phi(p)));
        double rhs = std::max(distance(space, p, x0), std::max(phi(p), phi(x0)));
        require(rhs > 0.0, "oracle expects a positive right side here");
        worst = std::max(worst, lhs / rhs);
    }
    return worst;
}

void criterion3(const Ctx&) {
    const double tol = 1e-9;

    Scenario half = bundled("half_scaling_tail");
    require(check_contraction(ContractionKind::Type1, half.space, half.self_map(), half.phi_fn(),
                              real_point(-1), 0.5, tol)
                .holds,
            "half-scaling plain contraction at k=1/2");

    Scenario shift = bundled("left_shift_tail");
    SelfMap sT = shift.self_map();
    RealFn sphi = shift.phi_fn();
    require(check_contraction(ContractionKind::GenType1, shift.space, sT, sphi, real_point(0),
                              0.25, tol)
                .holds,
            "left-shift generalized contraction at k=1/4");
    auto smk = minimal_k(ContractionKind::Type1, shift.space, sT, sphi, real_point(0), tol);
    require(smk.kind == MinimalK::Kind::Value, "left-shift minimal k must be finite");
    require(smk.value >= 1.0, "left-shift: no admissible plain k may exist");
    require_close(smk.value, oracle_minimal_k_type1(shift.space, sT, sphi, real_point(0), tol),
                  1e-9, "left-shift minimal k vs oracle");
    for (double k : {0.25, 0.5, 0.75, 0.99})
        require(!check_contraction(ContractionKind::Type1, shift.space, sT, sphi, real_point(0), k,
                                   tol)
                     .holds,
                "left-shift plain contraction must fail at every k in (0,1)");

    Scenario dbl = bundled("doubling_left_tail");
    SelfMap dT = dbl.self_map();
    RealFn dphi = dbl.phi_fn();
    auto dmk = minimal_k(ContractionKind::Type1, dbl.space, dT, dphi, real_point(0), tol);
    require(dmk.kind == MinimalK::Kind::Value, "doubling minimal k must be finite");
    require(dmk.value >= 1.0, "doubling: no admissible plain k may exist");
    require_close(dmk.value, oracle_minimal_k_type1(dbl.space, dT, dphi, real_point(0), tol), 1e-9,
                  "doubling minimal k vs oracle");
    for (double k : {0.25, 0.5, 0.75, 0.99})
        require(
            !check_contraction(ContractionKind::Type1, dbl.space, dT, dphi, real_point(0), k, tol)
                 .holds,
            "doubling plain contraction must fail at every k in (0,1)");

    Scenario fin = bundled("finite_union_map");
    SelfMap fT = fin.self_map();
    RealFn fphi = fin.phi_fn();
    require(check_contraction(ContractionKind::Type1, fin.space, fT, fphi, real_point(0), 0.9, tol)
                .holds,
            "finite union plain contraction at k=9/10");
    require(check_contraction(ContractionKind::GenType1, fin.space, fT, fphi, real_point(-4), 0.25,
                              tol)
                .holds,
            "finite union generalized contraction at k=1/4");
    auto fmk = minimal_k(ContractionKind::Type1, fin.space, fT, fphi, real_point(0), tol);
    require(fmk.kind == MinimalK::Kind::Value, "finite union minimal k must be finite");
    require_close(fmk.value, 0.8, 1e-9, "finite union minimal k");
    require_close(fmk.value, oracle_minimal_k_type1(fin.space, fT, fphi, real_point(0), tol), 1e-9,
                  "finite union minimal k vs oracle");
}

// ---- criterion 4: sampled infimum convergence -----------------------------

void criterion4(const Ctx&) {
    Piecewise map = parse_piecewise("piecewise { x > 2 : x / 2 ; otherwise : x }");
    SelfMap T = selfmap_of(map, false);
    double previous = std::numeric_limits<double>::infinity();
    for (double step : {0.1, 0.01, 0.001}) {
        MetricSpace tail = MetricSpace::line(Carrier{{IntervalSeg{2, 10, step, false, true}}});
        auto est = rho(tail, T, 1e-9);
        require(est.has_value(), "tail must have moved points");
        require(std::fabs(*est - 1.0) <= step / 2 + 1e-9,
                "estimate at step " + format_double(step) + " must sit within step/2 of 1, got " +
                    format_double(*est));
        require(*est < previous, "estimates must decrease toward the infimum");
        previous = *est;
    }
}

// ---- criterion 5: soundness sweep -----------------------------------------

void criterion5(const Ctx&) {
    ScanConfig config;
    config.trials = 1000;
    config.max_points = 8;
    config.k_samples = 3;
    auto start = std::chrono::steady_clock::now();
    ScanReport report = scan_random(config, 42);
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    require(report.soundness_violations.empty(),
            "soundness violations found: " + std::to_string(report.soundness_violations.size()));
    require(!report.converse_failures.empty(), "expected at least one converse failure");
    require(seconds < 10.0, "sweep took " + format_double(seconds) + "s, budget is 10s");
}

// ---- criterion 6: property suites ------------------------------------------

void criterion6(const Ctx&) {
    const double tol = 1e-9;
    for (const CorpusScenario& cs : corpus_scenarios()) {
        Scenario sc = parse_scenario(cs.text, std::string(cs.name));
        SelfMap T = sc.self_map();
        RealFn phi = sc.phi_fn();
        auto pts = enumerate_points(sc.space, tol);

        for (const Point& x : pts) {
            double diag = big_m(sc.space, T, x, x);
            require(diag == distance(sc.space, T(x), x),
                    std::string(cs.name) + ": M(x,x) must equal d(x,Tx) exactly");
        }
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                double m = big_m(sc.space, T, pts[i], pts[j]);
                require(m == big_m(sc.space, T, pts[j], pts[i]),
                        std::string(cs.name) + ": M must be symmetric exactly");
                require(m >= distance(sc.space, pts[i], pts[j]),
                        std::string(cs.name) + ": M must dominate the distance");
            }

        auto r = rho(sc.space, T, tol);
        auto m = mu(sc.space, T, tol);
        require(r.has_value() == m.has_value(), std::string(cs.name) + ": rho and mu must agree");
        if (r)
            require(std::fabs(*m - std::sqrt(*r)) <= 1e-9,
                    std::string(cs.name) + ": mu must equal sqrt(rho)");
    }

    // check/minimal_k consistency on the corpus scenarios
    auto consistency = [&](const MetricSpace& space, const SelfMap& T, const RealFn& phi,
                           const std::vector<Point>& anchors, const std::string& what) {
        for (ContractionKind kind :
             {ContractionKind::Type1, ContractionKind::GenType1, ContractionKind::Type2,
              ContractionKind::GenType2, ContractionKind::Type3, ContractionKind::GenType3}) {
            double bound = contraction_bound(kind);
            for (const Point& x0 : anchors) {
                auto mk = minimal_k(kind, space, T, phi, x0, tol);
                std::vector<double> ks = {bound / 4, bound / 2};
                if (mk.kind == MinimalK::Kind::Value) {
                    if (mk.value + 1e-6 < bound) ks.push_back(mk.value + 1e-6);
                    if (mk.value - 1e-6 > 0 && mk.value - 1e-6 < bound)
                        ks.push_back(mk.value - 1e-6);
                }
                for (double k : ks) {
                    bool holds = check_contraction(kind, space, T, phi, x0, k, tol).holds;
                    bool predicted = mk.kind == MinimalK::Kind::Vacuous ||
                                     (mk.kind == MinimalK::Kind::Value && k >= mk.value);
                    require(holds == predicted, what + ": check and minimal_k disagree at k=" +
                                                    format_double(k));
                }
            }
        }
    };

    for (const CorpusScenario& cs : corpus_scenarios()) {
        Scenario sc = parse_scenario(cs.text, std::string(cs.name));
        auto pts = enumerate_points(sc.space, tol);
        std::vector<Point> anchors = {pts.front(), pts[pts.size() / 2], pts.back()};
        consistency(sc.space, sc.self_map(), sc.phi_fn(), anchors, std::string(cs.name));
    }

    // and on 1000 random finite scenarios
    for (int i = 0; i < 1000; ++i) {
        Trial trial = make_random_trial(900000 + static_cast<std::uint64_t>(i), 8);
        consistency(trial.space, trial.self_map(), trial.phi_fn(), trial.points,
                    "random trial " + std::to_string(i));
    }
}

// ---- criterion 7: parser round trips and positioned errors ----------------

ExprPtr random_expr(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
    std::uniform_real_distribution<double> val(0.0, 1000.0);
    switch (pick(rng)) {
        case 0: return num(val(rng));
        case 1: return var();
        case 2: return num(static_cast<double>(std::uniform_int_distribution<int>(0, 12)(rng)));
        case 3: return unary(UnaryOp::Neg, random_expr(rng, depth - 1));
        case 4: return unary(UnaryOp::Abs, random_expr(rng, depth - 1));
        case 5:
            return binary(BinaryOp::Pow, random_expr(rng, depth - 1),
                          num(std::uniform_int_distribution<int>(0, 6)(rng)));
        default: {
            BinaryOp ops[] = {BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul, BinaryOp::Div};
            return binary(ops[std::uniform_int_distribution<int>(0, 3)(rng)],
                          random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        }
    }
}

void criterion7(const Ctx&) {
    for (const CorpusScenario& cs : corpus_scenarios()) {
        Scenario sc = parse_scenario(cs.text, std::string(cs.name));
        std::vector<const Piecewise*> fns;
        if (const auto* pw = std::get_if<Piecewise>(&sc.map)) fns.push_back(pw);
        fns.push_back(&sc.phi);
        for (const Piecewise* f : fns)
            require(piecewise_equal(*f, parse_piecewise(print_piecewise(*f))),
                    std::string(cs.name) + ": print/parse round trip");
    }

    std::mt19937 rng(777);
    RelOp rels[] = {RelOp::Lt, RelOp::Le, RelOp::Gt, RelOp::Ge, RelOp::Eq};
    for (int i = 0; i < 200; ++i) {
        Piecewise f;
        int n = std::uniform_int_distribution<int>(0, 3)(rng);
        for (int b = 0; b < n; ++b) {
            Branch br;
            int m = std::uniform_int_distribution<int>(1, 2)(rng);
            for (int j = 0; j < m; ++j)
                br.guard.conjuncts.push_back({random_expr(rng, 3),
                                              rels[std::uniform_int_distribution<int>(0, 4)(rng)],
                                              random_expr(rng, 3)});
            br.expr = random_expr(rng, 4);
            f.branches.push_back(std::move(br));
        }
        f.otherwise = random_expr(rng, 4);
        require(piecewise_equal(f, parse_piecewise(print_piecewise(f))),
                "random AST " + std::to_string(i) + ": print/parse round trip");
    }

    const char* malformed[] = {
        "",
        "piecewise",
        "piecewise { }",
        "piecewise { x > 1 : x }",
        "piecewise { x > : 1 ; otherwise : 0 }",
        "piecewise { otherwise : }",
        "piecewise { otherwise : x + }",
        "piecewise { otherwise : sin(x) }",
        "piecewise { otherwise : x ^ 2.5 }",
        "piecewise { otherwise : x ^ -2 }",
        "piecewise { otherwise : (x }",
        "piecewise { otherwise : x } junk",
        "piecewise { otherwise : x + z }",
        "piecewise { x ? 1 : x ; otherwise : x }",
        "piecewise { otherwise : 1e999 }",
    };
    for (const char* text : malformed) {
        try {
            parse_piecewise(text);
            fail(std::string("malformed input parsed: ") + text);
        } catch (const ParseError& e) {
            require(e.offset() <= std::string(text).size(), "error offset inside the input");
            require(e.line() >= 1 && e.column() >= 1, "error position is one-based");
        }
    }

    std::string bad = "piecewise { x > : 1 ; otherwise : 0 }";
    try {
        parse_piecewise(bad);
        fail("guard with a missing side must not parse");
    } catch (const ParseError& e) {
        require(e.offset() == bad.find(":"), "error must point at the offending ':'");
    }
}

// ---- criterion 8: byte determinism and exit codes --------------------------

void criterion8(const Ctx& ctx) {
    CliResult corpus1 = run_cli(ctx.cli + " corpus --json");
    CliResult corpus2 = run_cli(ctx.cli + " corpus --json");
    require(corpus1.code == 0, "corpus --json must exit 0");
    require(!corpus1.out.empty() && corpus1.out == corpus2.out,
            "corpus --json must be byte-identical across runs");

    CliResult scan1 = run_cli(ctx.cli + " scan --seed 42 --trials 150 --json");
    CliResult scan2 = run_cli(ctx.cli + " scan --seed 42 --trials 150 --json");
    require(scan1.code == 0, "scan must exit 0 when sound");
    require(!scan1.out.empty() && scan1.out == scan2.out,
            "scan --seed 42 must be byte-identical across runs");
    require(scan1.out.find("\"soundness_violations\":[]") != std::string::npos,
            "scan json must report no soundness violations");

    CliResult relaxed = run_cli(ctx.cli + " corpus --tol 1e-3");
    require(relaxed.code == 0, "corpus --tol 1e-3 must still pass");

    CliResult empty = run_cli(ctx.cli + " scan --seed 1 --trials 0 --json");
    require(empty.code == 0, "an empty sweep must exit 0");
    require(empty.out.find("\"trials\":0") != std::string::npos, "empty sweep reports 0 trials");

    // bundled texts and the on-disk corpus files must match byte for byte
    for (const CorpusScenario& cs : corpus_scenarios()) {
        std::string disk = slurp(ctx.corpus_dir + "/" + std::string(cs.name) + ".fxl");
        require(disk == cs.text, "corpus file drifted from the bundled text: " +
                                     std::string(cs.name));
    }

    // exit codes: 1 for failed expectations, 2 for parse/validation errors
    std::string failing = "/tmp/phifix_acceptance_fail.fxl";
    std::ofstream(failing) << "space finite { 1 }\nmap piecewise { otherwise : x }\n"
                              "phi piecewise { otherwise : 0 }\nexpect fixset size = 2\n";
    require(run_cli(ctx.cli + " analyze " + failing).code == 1,
            "failed expectation must exit 1");
    std::remove(failing.c_str());

    std::string invalid = "/tmp/phifix_acceptance_invalid.fxl";
    std::ofstream(invalid) << "space reals from 6 to inf step 1\n"
                              "map piecewise { otherwise : x }\nphi piecewise { otherwise : 0 }\n";
    require(run_cli(ctx.cli + " analyze " + invalid).code == 2,
            "unbounded carrier must exit 2");
    std::remove(invalid.c_str());

    require(run_cli(ctx.cli + " analyze /tmp/phifix_no_such_file.fxl").code == 2,
            "missing file must exit 2");
}

struct Criterion {
    int number;
    const char* title;
    std::function<void(const Ctx&)> fn;
};

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <phifix-cli> <corpus-dir>\n";
        return 2;
    }
    Ctx ctx{argv[1], argv[2]};

    const Criterion criteria[] = {
        {1, "finite union scenario reproduces rho, mu, M, and all loci exactly", criterion1},
        {2, "grid scenarios reproduce fixed sets, circles, and discs", criterion2},
        {3, "contraction verdicts and minimal constants match the worked scenarios", criterion3},
        {4, "sampled displacement infimum converges at step/2 toward 1", criterion4},
        {5, "1000-trial sweep: zero soundness violations, converse failures exist, under 10s",
         criterion5},
        {6, "auxiliary-number and check/minimal_k properties hold across corpus + random trials",
         criterion6},
        {7, "parser round trips and positioned errors", criterion7},
        {8, "byte-determinism and exit-code contract of the CLI", criterion8},
    };

    int failed = 0;
    for (const Criterion& c : criteria) {
        try {
            c.fn(ctx);
            std::printf("[PASS] criterion %d: %s\n", c.number, c.title);
        } catch (const std::exception& e) {
            std::printf("[FAIL] criterion %d: %s\n       %s\n", c.number, c.title, e.what());
            ++failed;
        }
        std::fflush(stdout);
    }
    if (failed) {
        std::printf("acceptance: %d of 8 criteria failed\n", failed);
        return 1;
    }
    std::printf("acceptance: 8/8 criteria passed\n");
    return 0;
}
