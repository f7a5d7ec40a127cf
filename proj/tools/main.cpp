#include <algorithm>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "phifix/corpus.hpp"
#include "phifix/errors.hpp"
#include "phifix/jsonout.hpp"
#include "phifix/scenario.hpp"

namespace {

using namespace phifix;

constexpr int kExitOk = 0;
constexpr int kExitExpectationFailure = 1;
constexpr int kExitParseError = 2;

void write_scan_hit(JsonWriter& w, const ScanHit& hit) {
    w.begin_object();
    w.key("trial").value(hit.trial);
    w.key("theorem").value(theorem_name(hit.theorem));
    w.key("x0").value(hit.x0.re);
    w.key("k").value(hit.k);
    w.key("locus_size").value(hit.locus_size);
    w.key("scenario").value(hit.scenario);
    w.end_object();
}

std::string scan_json(const ScanReport& report, const std::vector<ScanHit>& converse_ordered,
                      std::size_t shown) {
    JsonWriter w;
    w.begin_object();
    w.key("seed").value(static_cast<long long>(report.seed));
    w.key("trials").value(report.trials);
    w.key("certifications").value(report.certifications);
    w.key("soundness_violations").begin_array();
    for (const ScanHit& hit : report.soundness_violations) write_scan_hit(w, hit);
    w.end_array();
    w.key("converse_failures_total").value(report.converse_failures.size());
    w.key("converse_failures").begin_array();
    for (std::size_t i = 0; i < shown && i < converse_ordered.size(); ++i)
        write_scan_hit(w, converse_ordered[i]);
    w.end_array();
    w.end_object();
    return std::move(w).take();
}

std::string scan_hit_text(const ScanHit& hit) {
    return "trial " + std::to_string(hit.trial) + " " + theorem_name(hit.theorem) +
           " x0=" + format_double(hit.x0.re) + " k=" + format_double(hit.k) +
           " locus=" + std::to_string(hit.locus_size) + "  " + hit.scenario;
}

int run_analyze(const std::string& path, bool json, double tol, std::optional<double> step,
                int angular) {
    Scenario scenario = load_scenario(path);
    RunOptions options;
    options.tol = tol;
    options.step_override = step;
    options.angular_n = angular;
    Report report = run_scenario(scenario, options);
    std::cout << (json ? report_json(report) + "\n" : report_text(report));
    return report.all_pass ? kExitOk : kExitExpectationFailure;
}

int run_corpus(bool json, double tol) {
    RunOptions options;
    options.tol = tol;
    bool all = true;
    std::vector<Report> reports;
    for (const CorpusScenario& cs : corpus_scenarios()) {
        Scenario scenario = parse_scenario(cs.text, std::string(cs.name));
        reports.push_back(run_scenario(scenario, options));
        all = all && reports.back().all_pass;
    }
    if (json) {
        JsonWriter w;
        w.begin_object();
        w.key("scenarios").begin_array();
        for (const Report& r : reports) report_json_into(r, w);
        w.end_array();
        w.key("pass").value(all);
        w.end_object();
        std::cout << std::move(w).take() << "\n";
    } else {
        std::size_t passed = 0;
        for (const Report& r : reports) {
            std::cout << report_text(r) << "\n";
            passed += r.all_pass ? 1 : 0;
        }
        std::cout << "corpus " << passed << "/" << reports.size() << " scenarios passed\n";
    }
    return all ? kExitOk : kExitExpectationFailure;
}

int run_scan(std::uint64_t seed, int trials, int max_points, int k_samples, bool json,
             const std::string& gallery_path) {
    ScanConfig config;
    config.trials = trials;
    config.max_points = max_points;
    config.k_samples = k_samples;
    ScanReport report = scan_random(config, seed);

    // gallery order: genuine (non-empty locus) conclusions first
    std::vector<ScanHit> ordered = report.converse_failures;
    std::stable_sort(ordered.begin(), ordered.end(), [](const ScanHit& a, const ScanHit& b) {
        return (a.locus_size > 0) > (b.locus_size > 0);
    });

    if (!gallery_path.empty()) {
        std::ofstream out(gallery_path, std::ios::binary);
        out << scan_json(report, ordered, 1000) << "\n";
    }
    if (json) {
        std::cout << scan_json(report, ordered, 100) << "\n";
    } else {
        std::cout << "scan seed=" << report.seed << " trials=" << report.trials
                  << " certifications=" << report.certifications << "\n";
        std::cout << "soundness violations: " << report.soundness_violations.size() << "\n";
        for (const ScanHit& hit : report.soundness_violations)
            std::cout << "  VIOLATION " << scan_hit_text(hit) << "\n";
        std::cout << "converse failures: " << report.converse_failures.size() << "\n";
        for (std::size_t i = 0; i < ordered.size() && i < 10; ++i)
            std::cout << "  " << scan_hit_text(ordered[i]) << "\n";
        std::cout << "result " << (report.soundness_violations.empty() ? "PASS" : "FAIL") << "\n";
    }
    return report.soundness_violations.empty() ? kExitOk : kExitExpectationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"phi-fixed-circle laboratory: scenario analysis, bundled corpus, soundness scans"};
    app.require_subcommand(1);

    std::string path;
    bool json = false;
    double tol = 1e-9;
    double step = 0.0;
    int angular = 360;
    auto* analyze = app.add_subcommand("analyze", "run one scenario file");
    analyze->add_option("file", path, "scenario file")->required();
    analyze->add_flag("--json", json, "machine-readable report");
    analyze->add_option("--tol", tol, "global tolerance (default 1e-9)");
    analyze->add_option("--step", step, "override every interval/grid step");
    analyze->add_option("--angular", angular, "circle samples on complex grids (default 360)");

    bool corpus_json = false;
    double corpus_tol = 1e-9;
    auto* corpus = app.add_subcommand("corpus", "run the bundled scenarios");
    corpus->add_flag("--json", corpus_json, "machine-readable aggregate report");
    corpus->add_option("--tol", corpus_tol, "global tolerance (default 1e-9)");

    std::uint64_t seed = 0;
    int trials = 1000;
    int max_points = 8;
    int k_samples = 3;
    bool scan_json_flag = false;
    std::string gallery;
    auto* scan = app.add_subcommand("scan", "random soundness / converse sweep");
    scan->add_option("--seed", seed, "rng seed")->required();
    scan->add_option("--trials", trials, "number of random scenarios (default 1000)");
    scan->add_option("--max-points", max_points, "carrier size bound (default 8)");
    scan->add_option("--k-samples", k_samples, "k values per kind (default 3)");
    scan->add_flag("--json", scan_json_flag, "machine-readable report");
    scan->add_option("--gallery", gallery, "write the converse-failure gallery to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParseError;
    }

    try {
        if (analyze->parsed())
            return run_analyze(path, json, tol,
                               step > 0.0 ? std::optional<double>(step) : std::nullopt, angular);
        if (corpus->parsed()) return run_corpus(corpus_json, corpus_tol);
        return run_scan(seed, trials, max_points, k_samples, scan_json_flag, gallery);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParseError;
    }
}
