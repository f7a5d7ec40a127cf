#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "phifix/contraction.hpp"

namespace phifix {

// One of the twelve certified implications: a contraction kind paired with a
// circle or disc conclusion. Plain kinds take their radius from rho,
// generalized kinds from mu; only generalized kinds carry the extra image
// bound d(Tx, x0) <= mu over the locus.
struct TheoremId {
    ContractionKind kind = ContractionKind::Type1;
    bool disc = false;

    friend bool operator==(const TheoremId&, const TheoremId&) = default;
};

inline constexpr int kTheoremCount = 12;

std::array<TheoremId, kTheoremCount> all_theorems();
std::string theorem_name(TheoremId id);  // "type1_circle", "gentype3_disc", ...
std::optional<TheoremId> theorem_from_name(std::string_view name);
inline bool theorem_uses_mu(TheoremId id) { return is_generalized(id.kind); }
inline bool theorem_has_image_bound(TheoremId id) { return is_generalized(id.kind); }

// A pointwise bound hypothesis checked over the theorem's locus.
struct BoundCheck {
    bool pass = true;
    struct Item {
        Point where;
        double lhs = 0.0;
        double bound = 0.0;
    };
    std::vector<Item> violations;
};

struct Certification {
    TheoremId theorem;
    Point x0;
    double k = 0.0;
    double radius = 0.0;
    bool radius_degenerate = false;  // no moved points: the locus collapses to {x0}

    ContractionVerdict h_contraction;
    bool h_center_zero = false;  // x0 in the zero set of phi
    double phi_center = 0.0;
    BoundCheck h_phi_bound;                      // phi(x) <= d(Tx, x) on the locus
    std::optional<BoundCheck> h_image_bound;     // d(Tx, x0) <= mu on the locus; nullopt = n/a

    LocusVerdict conclusion;  // independent phi-fixed circle/disc verdict

    bool hypotheses_pass = false;
    bool consistent = false;  // hypotheses_pass implies conclusion.holds
    bool sampled = false;     // certification on a sampled carrier is evidence, not proof
};

// Evaluates every hypothesis and, independently, the conclusion. Throws
// CenterNotInSpace / KOutOfRange on bad inputs.
Certification certify(TheoremId id, const MetricSpace& space, const SelfMap& T, const RealFn& phi,
                      const Point& x0, double k, double tol, int angular_n = 360);

// All twelve theorems with one k per contraction kind (indexed by kind).
std::vector<Certification> certify_all(const MetricSpace& space, const SelfMap& T,
                                       const RealFn& phi, const Point& x0,
                                       const std::array<double, kContractionKinds>& k_by_kind,
                                       double tol, int angular_n = 360);
std::array<double, kContractionKinds> uniform_k(double k_plain, double k_generalized);

// Random finite scenarios for the soundness / converse sweep: a small carrier
// (collinear points or a metric-closure table), a lookup-table self-map closed
// over the carrier, and a nonnegative table phi. Deterministic per seed.
struct Trial {
    MetricSpace space;
    std::vector<Point> points;
    std::vector<std::size_t> map_to;  // index of T(points[i])
    std::vector<double> phi_values;
    std::string digest;

    SelfMap self_map() const;
    RealFn phi_fn() const;
};

Trial make_random_trial(std::uint64_t trial_seed, int max_points);

struct ScanConfig {
    int trials = 1000;
    int max_points = 8;
    int k_samples = 3;  // bound/4, bound/2, and just above minimal_k when finite
};

struct ScanHit {
    int trial = 0;
    std::string scenario;
    TheoremId theorem;
    Point x0;
    double k = 0.0;
    std::size_t locus_size = 0;
};

struct ScanReport {
    std::uint64_t seed = 0;
    int trials = 0;
    // Certifications where every hypothesis verified but the conclusion
    // failed. Empty on exact finite spaces unless the implementation is wrong.
    std::vector<ScanHit> soundness_violations;
    // Conclusion holds although some hypothesis fails; one entry per
    // (trial, theorem, center), k recording the first sampled k.
    std::vector<ScanHit> converse_failures;
    std::size_t certifications = 0;
};

ScanReport scan_random(const ScanConfig& config, std::uint64_t seed);

}  // namespace phifix
