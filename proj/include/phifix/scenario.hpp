#pragma once

#include <map>
#include <variant>

#include "phifix/certify.hpp"

namespace phifix {

// One scenario file: a metric space, a self-map T, a function phi, the
// queries to run, and expectations checked against the query results.
//
// File format (line oriented, whitespace-insensitive, '#' comments):
//   name   <identifier>
//   space  reals from <v> to <v> step <v>
//        | finite { v, v, ... }
//        | complex re <v> to <v> im <v> to <v> step <v>
//        (segments may be chained with "union")
//   map    <piecewise>  |  table { v -> w ; ... }
//   phi    <piecewise>
//   query  rho | mu | fixset | zeroset | M(<a>, <b>)
//        | circle x0=<v> r=<v> | disc x0=<v> r=<v>
//        | contraction <kind> x0=<v> k=<v> | minimal_k <kind> x0=<v>
//        | certify <theorem> x0=<v> k=<v> | certify_all x0=<v> k=<v> kgen=<v>
//   expect <quantity> = <value> [tol <t>]
// where <kind> is type1|gentype1|type2|gentype2|type3|gentype3, <theorem> is
// <kind>_circle|<kind>_disc, and <quantity> is a query with an optional facet:
// fixset/zeroset take "size" or "has <v>"; circle/disc take "size" or "holds";
// contraction takes "holds"; certify takes "consistent" or "passes".

inline constexpr std::string_view kToolVersion = "0.1.0";

struct TableMap {
    std::vector<std::pair<Point, Point>> entries;
};

using MapDef = std::variant<Piecewise, TableMap>;

struct Query {
    enum class Kind {
        Rho,
        Mu,
        FixSet,
        ZeroSet,
        BigM,
        Circle,
        Disc,
        Contraction,
        MinimalK,
        Certify,
        CertifyAll
    };
    Kind kind = Kind::Rho;
    Point a;  // x0, or first M argument
    Point b;  // second M argument
    double r = 0.0;
    double k = 0.0;
    double k_gen = 0.0;
    ContractionKind ckind = ContractionKind::Type1;
    TheoremId theorem;

    std::string text(bool complex_kind) const;
};

struct Quantity {
    enum class Facet { Value, Size, Has, Holds, Consistent, Passes };
    Query query;
    Facet facet = Facet::Value;
    Point member;  // for Facet::Has

    std::string text(bool complex_kind) const;
};

struct Expectation {
    Quantity quantity;
    double expected = 0.0;
    double tol = 1e-9;
};

struct Scenario {
    std::string name;
    MetricSpace space;
    MapDef map;
    Piecewise phi;
    std::vector<Query> queries;
    std::vector<Expectation> expectations;
    std::vector<std::string> warnings;  // e.g. finite carrier not closed under T

    SelfMap self_map() const;
    RealFn phi_fn() const;
};

// Throws ParseError (with position) or ValidationError. Unbounded carriers
// are refused; phi is checked nonnegative across the carrier; a finite
// carrier not closed under T gets a warning attached.
Scenario parse_scenario(std::string_view text, std::string default_name);
Scenario load_scenario(const std::string& path);

struct RunOptions {
    double tol = 1e-9;
    std::optional<double> step_override;
    int angular_n = 360;
};

struct QueryError {
    std::string message;
};
struct NoMoved {};  // empty infimum sentinel

using QueryValue = std::variant<double, NoMoved, std::vector<Point>, LocusVerdict,
                                ContractionVerdict, MinimalK, Certification,
                                std::vector<Certification>, QueryError>;

struct QueryResult {
    std::string query;
    QueryValue value;
    bool sampled = false;
};

struct ExpectationResult {
    std::string quantity;
    double expected = 0.0;
    double actual = 0.0;  // NaN when unavailable
    double tol = 0.0;
    bool pass = false;
};

struct Report {
    std::string scenario;
    RunOptions params;
    bool complex_kind = false;
    std::vector<QueryResult> results;
    std::vector<ExpectationResult> expectations;
    std::vector<std::string> warnings;
    bool all_pass = true;
};

Report run_scenario(const Scenario& scenario, const RunOptions& options);

std::string report_text(const Report& report);
std::string report_json(const Report& report);
void report_json_into(const Report& report, class JsonWriter& w);

// Replaces every interval/grid step; used by the --step override.
MetricSpace with_step(const MetricSpace& space, double step);

}  // namespace phifix
