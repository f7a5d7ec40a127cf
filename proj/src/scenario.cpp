#include "phifix/scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "phifix/errors.hpp"
#include "phifix/jsonout.hpp"

namespace phifix {

namespace {

bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Cursor over the scenario envelope. The piecewise payloads are carved out by
// brace matching and handed to the DSL parser with their file position.
class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (i_ < text_.size()) {
            char c = text_[i_];
            if (c == '#') {
                while (i_ < text_.size() && text_[i_] != '\n') ++i_;
            } else if (c == '\n') {
                ++i_;
                ++line_;
                col_ = 1;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++i_;
                ++col_;
            } else {
                break;
            }
        }
    }

    bool at_end() {
        skip_ws();
        return i_ >= text_.size();
    }

    [[noreturn]] void fail(const std::string& msg, const std::string& expected) {
        skip_ws();
        throw ParseError(i_, line_, col_, msg, expected);
    }

    std::string peek_word() {
        skip_ws();
        std::size_t j = i_;
        while (j < text_.size() && word_char(text_[j])) ++j;
        return std::string(text_.substr(i_, j - i_));
    }

    std::string take_word() {
        skip_ws();
        std::string w = peek_word();
        if (w.empty()) fail("expected a word", "identifier");
        advance(w.size());
        return w;
    }

    bool accept_word(std::string_view w) {
        if (peek_word() == w && !w.empty()) {
            advance(w.size());
            return true;
        }
        return false;
    }

    void expect_word(std::string_view w) {
        if (!accept_word(w))
            fail("unexpected token '" + peek_word() + "'", "'" + std::string(w) + "'");
    }

    bool accept_punct(std::string_view p) {
        skip_ws();
        if (text_.substr(i_, p.size()) == p) {
            advance(p.size());
            return true;
        }
        return false;
    }

    void expect_punct(std::string_view p) {
        if (!accept_punct(p)) {
            std::string got = at_end() ? "end of input" : std::string(1, text_[i_]);
            fail("unexpected '" + got + "'", "'" + std::string(p) + "'");
        }
    }

    double take_number() {
        skip_ws();
        double sign = 1.0;
        if (i_ < text_.size() && text_[i_] == '-') {
            sign = -1.0;
            advance(1);
            skip_ws();
        }
        if (i_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[i_]))) {
            std::string w = peek_word();
            if (w == "inf" || w == "infinity") {
                advance(w.size());
                return sign * HUGE_VAL;
            }
            fail("expected a number", "numeric literal");
        }
        const char* begin = text_.data() + i_;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) fail("expected a number", "numeric literal");
        advance(static_cast<std::size_t>(end - begin));
        return sign * v;
    }

    // number, optionally continued as a complex literal: 3+4i, -1.5i, 2i.
    Point take_value() {
        double first = take_number();
        if (i_ < text_.size() && text_[i_] == 'i' &&
            (i_ + 1 >= text_.size() || !word_char(text_[i_ + 1]))) {
            advance(1);
            return complex_point(0.0, first);
        }
        if (i_ < text_.size() && (text_[i_] == '+' || text_[i_] == '-')) {
            std::size_t save_i = i_;
            int save_line = line_, save_col = col_;
            double sign = text_[i_] == '-' ? -1.0 : 1.0;
            advance(1);
            const char* begin = text_.data() + i_;
            char* end = nullptr;
            double im = std::strtod(begin, &end);
            if (end != begin) {
                std::size_t n = static_cast<std::size_t>(end - begin);
                if (i_ + n < text_.size() && text_[i_ + n] == 'i') {
                    advance(n + 1);
                    return complex_point(first, sign * im);
                }
            }
            i_ = save_i;
            line_ = save_line;
            col_ = save_col;
        }
        return real_point(first);
    }

    // Raw "piecewise { ... }" slice starting at the current token.
    std::string_view take_piecewise_slice() {
        skip_ws();
        std::size_t start = i_;
        int start_line = line_, start_col = col_;
        expect_word("piecewise");
        skip_ws();
        if (i_ >= text_.size() || text_[i_] != '{') fail("expected '{'", "'{'");
        int depth = 0;
        std::size_t j = i_;
        while (j < text_.size()) {
            char c = text_[j];
            if (c == '#') {
                while (j < text_.size() && text_[j] != '\n') ++j;
                continue;
            }
            if (c == '{') ++depth;
            if (c == '}') {
                --depth;
                if (depth == 0) break;
            }
            ++j;
        }
        if (j >= text_.size()) fail("unterminated piecewise block", "'}'");
        advance(j + 1 - i_);
        pending_slice_line_ = start_line;
        pending_slice_col_ = start_col;
        pending_slice_offset_ = start;
        return text_.substr(start, j + 1 - start);
    }

    Piecewise parse_piecewise_here() {
        std::string_view slice = take_piecewise_slice();
        try {
            return parse_piecewise(slice);
        } catch (const ParseError& e) {
            int line = pending_slice_line_ + e.line() - 1;
            int col = e.line() == 1 ? pending_slice_col_ + e.column() - 1 : e.column();
            throw ParseError(pending_slice_offset_ + e.offset(), line, col,
                             std::string(e.what()), e.expected());
        }
    }

private:
    std::string_view text_;
    std::size_t i_ = 0;
    int line_ = 1, col_ = 1;
    std::size_t pending_slice_offset_ = 0;
    int pending_slice_line_ = 1, pending_slice_col_ = 1;

    void advance(std::size_t n) {
        for (std::size_t k = 0; k < n && i_ < text_.size(); ++k, ++i_) {
            if (text_[i_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
        }
    }
};

struct ParsedParts {
    std::string name;
    std::optional<Carrier> carrier;
    bool complex_kind = false;
    std::optional<MapDef> map;
    std::optional<Piecewise> phi;
    std::vector<Query> queries;
    std::vector<Expectation> expectations;
};

Carrier parse_space(Cursor& cur, bool& complex_kind) {
    Carrier carrier;
    do {
        std::string w = cur.take_word();
        if (w == "reals") {
            cur.expect_word("from");
            double lo = cur.take_number();
            cur.expect_word("to");
            double hi = cur.take_number();
            cur.expect_word("step");
            double step = cur.take_number();
            carrier.segments.push_back(IntervalSeg{lo, hi, step, true, true});
        } else if (w == "finite") {
            cur.expect_punct("{");
            FiniteSeg seg;
            if (!cur.accept_punct("}")) {
                do {
                    Point p = cur.take_value();
                    if (p.im != 0.0) complex_kind = true;
                    seg.points.push_back(p);
                } while (cur.accept_punct(","));
                cur.expect_punct("}");
            }
            carrier.segments.push_back(std::move(seg));
        } else if (w == "complex") {
            cur.expect_word("re");
            double re_lo = cur.take_number();
            cur.expect_word("to");
            double re_hi = cur.take_number();
            cur.expect_word("im");
            double im_lo = cur.take_number();
            cur.expect_word("to");
            double im_hi = cur.take_number();
            cur.expect_word("step");
            double step = cur.take_number();
            carrier.segments.push_back(GridSeg{re_lo, re_hi, im_lo, im_hi, step});
            complex_kind = true;
        } else {
            cur.fail("unknown space segment '" + w + "'", "reals, finite, or complex");
        }
    } while (cur.accept_word("union"));
    return carrier;
}

ContractionKind parse_kind(Cursor& cur) {
    std::string w = cur.take_word();
    auto k = kind_from_name(w);
    if (!k) cur.fail("unknown contraction kind '" + w + "'", "type1..gentype3");
    return *k;
}

TheoremId parse_theorem(Cursor& cur) {
    std::string w = cur.take_word();
    auto id = theorem_from_name(w);
    if (!id) cur.fail("unknown theorem '" + w + "'", "<kind>_circle or <kind>_disc");
    return *id;
}

Point parse_named_value(Cursor& cur, std::string_view key) {
    cur.expect_word(key);
    cur.expect_punct("=");
    return cur.take_value();
}

double parse_named_number(Cursor& cur, std::string_view key) {
    cur.expect_word(key);
    cur.expect_punct("=");
    return cur.take_number();
}

Query parse_query_body(Cursor& cur, const std::string& lead) {
    Query q;
    if (lead == "rho") {
        q.kind = Query::Kind::Rho;
    } else if (lead == "mu") {
        q.kind = Query::Kind::Mu;
    } else if (lead == "fixset") {
        q.kind = Query::Kind::FixSet;
    } else if (lead == "zeroset") {
        q.kind = Query::Kind::ZeroSet;
    } else if (lead == "M") {
        q.kind = Query::Kind::BigM;
        cur.expect_punct("(");
        q.a = cur.take_value();
        cur.expect_punct(",");
        q.b = cur.take_value();
        cur.expect_punct(")");
    } else if (lead == "circle" || lead == "disc") {
        q.kind = lead == "circle" ? Query::Kind::Circle : Query::Kind::Disc;
        q.a = parse_named_value(cur, "x0");
        q.r = parse_named_number(cur, "r");
    } else if (lead == "contraction") {
        q.kind = Query::Kind::Contraction;
        q.ckind = parse_kind(cur);
        q.a = parse_named_value(cur, "x0");
        q.k = parse_named_number(cur, "k");
    } else if (lead == "minimal_k") {
        q.kind = Query::Kind::MinimalK;
        q.ckind = parse_kind(cur);
        q.a = parse_named_value(cur, "x0");
    } else if (lead == "certify") {
        q.kind = Query::Kind::Certify;
        q.theorem = parse_theorem(cur);
        q.a = parse_named_value(cur, "x0");
        q.k = parse_named_number(cur, "k");
    } else if (lead == "certify_all") {
        q.kind = Query::Kind::CertifyAll;
        q.a = parse_named_value(cur, "x0");
        q.k = parse_named_number(cur, "k");
        q.k_gen = parse_named_number(cur, "kgen");
    } else {
        cur.fail("unknown query '" + lead + "'", "rho, mu, fixset, zeroset, M, circle, ...");
    }
    return q;
}

Expectation parse_expectation(Cursor& cur) {
    Expectation e;
    std::string lead = cur.take_word();
    Quantity& qty = e.quantity;
    qty.query = parse_query_body(cur, lead);
    switch (qty.query.kind) {
        case Query::Kind::Rho:
        case Query::Kind::Mu:
        case Query::Kind::BigM:
        case Query::Kind::MinimalK:
            qty.facet = Quantity::Facet::Value;
            break;
        case Query::Kind::FixSet:
        case Query::Kind::ZeroSet: {
            std::string f = cur.take_word();
            if (f == "size") {
                qty.facet = Quantity::Facet::Size;
            } else if (f == "has") {
                qty.facet = Quantity::Facet::Has;
                qty.member = cur.take_value();
            } else {
                cur.fail("unknown facet '" + f + "'", "size or has");
            }
            break;
        }
        case Query::Kind::Circle:
        case Query::Kind::Disc: {
            std::string f = cur.take_word();
            if (f == "size")
                qty.facet = Quantity::Facet::Size;
            else if (f == "holds")
                qty.facet = Quantity::Facet::Holds;
            else
                cur.fail("unknown facet '" + f + "'", "size or holds");
            break;
        }
        case Query::Kind::Contraction:
            cur.expect_word("holds");
            qty.facet = Quantity::Facet::Holds;
            break;
        case Query::Kind::Certify: {
            std::string f = cur.take_word();
            if (f == "consistent")
                qty.facet = Quantity::Facet::Consistent;
            else if (f == "passes")
                qty.facet = Quantity::Facet::Passes;
            else
                cur.fail("unknown facet '" + f + "'", "consistent or passes");
            break;
        }
        case Query::Kind::CertifyAll:
            cur.fail("certify_all has no expectation form; expect certify <theorem> ...", "");
    }
    cur.expect_punct("=");
    e.expected = cur.take_number();
    e.tol = cur.accept_word("tol") ? cur.take_number() : 1e-9;
    return e;
}

}  // namespace

std::string Query::text(bool complex_kind) const {
    auto fp = [&](const Point& p) { return format_point(p, complex_kind); };
    switch (kind) {
        case Kind::Rho: return "rho";
        case Kind::Mu: return "mu";
        case Kind::FixSet: return "fixset";
        case Kind::ZeroSet: return "zeroset";
        case Kind::BigM: return "M(" + fp(a) + ", " + fp(b) + ")";
        case Kind::Circle: return "circle x0=" + fp(a) + " r=" + format_double(r);
        case Kind::Disc: return "disc x0=" + fp(a) + " r=" + format_double(r);
        case Kind::Contraction:
            return "contraction " + std::string(kind_name(ckind)) + " x0=" + fp(a) +
                   " k=" + format_double(k);
        case Kind::MinimalK:
            return "minimal_k " + std::string(kind_name(ckind)) + " x0=" + fp(a);
        case Kind::Certify:
            return "certify " + theorem_name(theorem) + " x0=" + fp(a) + " k=" + format_double(k);
        case Kind::CertifyAll:
            return "certify_all x0=" + fp(a) + " k=" + format_double(k) +
                   " kgen=" + format_double(k_gen);
    }
    return "";
}

std::string Quantity::text(bool complex_kind) const {
    std::string base = query.text(complex_kind);
    switch (facet) {
        case Facet::Value: return base;
        case Facet::Size: return base + " size";
        case Facet::Has: return base + " has " + format_point(member, complex_kind);
        case Facet::Holds: return base + " holds";
        case Facet::Consistent: return base + " consistent";
        case Facet::Passes: return base + " passes";
    }
    return base;
}

SelfMap Scenario::self_map() const {
    if (const auto* pw = std::get_if<Piecewise>(&map)) return selfmap_of(*pw, space.complex_kind());
    const TableMap& tm = std::get<TableMap>(map);
    bool ck = space.complex_kind();
    return [entries = tm.entries, ck](const Point& p) {
        for (const auto& [from, to] : entries)
            if (points_close(from, p, 1e-9)) return to;
        throw TableMiss("table map has no entry for " + format_point(p, ck));
    };
}

RealFn Scenario::phi_fn() const { return phi_of(phi, space.complex_kind()); }

Scenario parse_scenario(std::string_view text, std::string default_name) {
    Cursor cur(text);
    ParsedParts parts;
    parts.name = std::move(default_name);

    while (!cur.at_end()) {
        std::string directive = cur.take_word();
        if (directive == "name") {
            parts.name = cur.take_word();
        } else if (directive == "space") {
            if (parts.carrier) cur.fail("duplicate space directive", "");
            parts.carrier = parse_space(cur, parts.complex_kind);
        } else if (directive == "map") {
            if (parts.map) cur.fail("duplicate map directive", "");
            if (cur.peek_word() == "piecewise") {
                parts.map = MapDef(cur.parse_piecewise_here());
            } else if (cur.accept_word("table")) {
                TableMap tm;
                cur.expect_punct("{");
                while (!cur.accept_punct("}")) {
                    Point from = cur.take_value();
                    cur.expect_punct("->");
                    Point to = cur.take_value();
                    tm.entries.emplace_back(from, to);
                    if (!cur.accept_punct(";")) {
                        cur.expect_punct("}");
                        break;
                    }
                }
                parts.map = MapDef(std::move(tm));
            } else {
                cur.fail("map must be a piecewise expression or a table", "piecewise or table");
            }
        } else if (directive == "phi") {
            if (parts.phi) cur.fail("duplicate phi directive", "");
            parts.phi = cur.parse_piecewise_here();
        } else if (directive == "query") {
            parts.queries.push_back(parse_query_body(cur, cur.take_word()));
        } else if (directive == "expect") {
            parts.expectations.push_back(parse_expectation(cur));
        } else {
            cur.fail("unknown directive '" + directive + "'",
                     "name, space, map, phi, query, or expect");
        }
    }

    if (!parts.carrier) throw ValidationError("scenario '" + parts.name + "' has no space");
    if (!parts.map) throw ValidationError("scenario '" + parts.name + "' has no map");
    if (!parts.phi) throw ValidationError("scenario '" + parts.name + "' has no phi");

    Scenario sc;
    sc.name = parts.name;
    sc.space = parts.complex_kind ? MetricSpace::plane(std::move(*parts.carrier))
                                  : MetricSpace::line(std::move(*parts.carrier));
    sc.map = std::move(*parts.map);
    sc.phi = std::move(*parts.phi);
    sc.queries = std::move(parts.queries);
    sc.expectations = std::move(parts.expectations);

    // Expectations reference query results; make sure each base query runs.
    bool ck = sc.space.complex_kind();
    for (const Expectation& e : sc.expectations) {
        std::string base = e.quantity.query.text(ck);
        bool found = false;
        for (const Query& q : sc.queries)
            if (q.text(ck) == base) {
                found = true;
                break;
            }
        if (!found) sc.queries.push_back(e.quantity.query);
    }

    // Load-time validation: phi nonnegative, T evaluable, finite carriers
    // flagged when not closed under T.
    const double tol = 1e-9;
    SelfMap T = sc.self_map();
    RealFn phi = sc.phi_fn();
    bool all_finite = !sampled_carrier(sc.space);
    for (const Point& p : enumerate_points(sc.space, tol)) {
        double v = phi(p);
        if (v < -tol)
            throw ValidationError("phi(" + format_point(p, ck) + ") = " + format_double(v) +
                                  " is negative; phi must map into [0, inf)");
        Point image = T(p);
        if (all_finite && !carrier_contains(sc.space, image, tol))
            sc.warnings.push_back("closure: T maps " + format_point(p, ck) + " to " +
                                  format_point(image, ck) + " outside the carrier");
    }
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    // tolerate CRLF input
    std::erase(text, '\r');
    std::string stem = path;
    if (auto pos = stem.find_last_of("/\\"); pos != std::string::npos) stem = stem.substr(pos + 1);
    if (auto pos = stem.rfind('.'); pos != std::string::npos) stem = stem.substr(0, pos);
    return parse_scenario(text, stem);
}

MetricSpace with_step(const MetricSpace& space, double step) {
    if (!(step > 0.0) || !std::isfinite(step))
        throw ValidationError("step override must be positive and finite");
    MetricSpace out = space;
    for (Segment& seg : out.carrier.segments) {
        if (auto* iv = std::get_if<IntervalSeg>(&seg)) iv->step = step;
        if (auto* g = std::get_if<GridSeg>(&seg)) g->step = step;
    }
    return out;
}

namespace {

double facet_actual(const Quantity& qty, const QueryResult& qr, double tol) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (std::holds_alternative<QueryError>(qr.value)) return nan;
    switch (qty.facet) {
        case Quantity::Facet::Value:
            if (const double* d = std::get_if<double>(&qr.value)) return *d;
            if (const MinimalK* mk = std::get_if<MinimalK>(&qr.value)) {
                if (mk->kind == MinimalK::Kind::Value) return mk->value;
                if (mk->kind == MinimalK::Kind::Infinite)
                    return std::numeric_limits<double>::infinity();
                return nan;
            }
            return nan;  // NoMoved and friends
        case Quantity::Facet::Size:
            if (const auto* pts = std::get_if<std::vector<Point>>(&qr.value))
                return static_cast<double>(pts->size());
            if (const auto* lv = std::get_if<LocusVerdict>(&qr.value))
                return static_cast<double>(lv->locus.points.size());
            return nan;
        case Quantity::Facet::Has:
            if (const auto* pts = std::get_if<std::vector<Point>>(&qr.value)) {
                for (const Point& p : *pts)
                    if (points_close(p, qty.member, tol)) return 1.0;
                return 0.0;
            }
            return nan;
        case Quantity::Facet::Holds:
            if (const auto* lv = std::get_if<LocusVerdict>(&qr.value)) return lv->holds ? 1.0 : 0.0;
            if (const auto* cv = std::get_if<ContractionVerdict>(&qr.value))
                return cv->holds ? 1.0 : 0.0;
            return nan;
        case Quantity::Facet::Consistent:
            if (const auto* c = std::get_if<Certification>(&qr.value))
                return c->consistent ? 1.0 : 0.0;
            return nan;
        case Quantity::Facet::Passes:
            if (const auto* c = std::get_if<Certification>(&qr.value))
                return c->hypotheses_pass && c->conclusion.holds ? 1.0 : 0.0;
            return nan;
    }
    return nan;
}

}  // namespace

Report run_scenario(const Scenario& scenario, const RunOptions& options) {
    Report report;
    report.scenario = scenario.name;
    report.params = options;
    report.complex_kind = scenario.space.complex_kind();
    report.warnings = scenario.warnings;

    MetricSpace space =
        options.step_override ? with_step(scenario.space, *options.step_override) : scenario.space;
    SelfMap T = scenario.self_map();
    RealFn phi = scenario.phi_fn();
    const double tol = options.tol;
    const int angular = options.angular_n;
    const bool sampled = sampled_carrier(space);
    const bool ck = report.complex_kind;

    for (const Query& q : scenario.queries) {
        QueryResult qr;
        qr.query = q.text(ck);
        qr.sampled = sampled && q.kind != Query::Kind::BigM;
        try {
            switch (q.kind) {
                case Query::Kind::Rho: {
                    auto v = rho(space, T, tol);
                    qr.value = v ? QueryValue(*v) : QueryValue(NoMoved{});
                    break;
                }
                case Query::Kind::Mu: {
                    auto v = mu(space, T, tol);
                    qr.value = v ? QueryValue(*v) : QueryValue(NoMoved{});
                    break;
                }
                case Query::Kind::FixSet:
                    qr.value = fix_set(space, T, tol);
                    break;
                case Query::Kind::ZeroSet:
                    qr.value = zero_set(space, phi, tol);
                    break;
                case Query::Kind::BigM:
                    qr.value = big_m(space, T, q.a, q.b);
                    break;
                case Query::Kind::Circle:
                    qr.value = is_phi_fixed_circle(space, T, phi, q.a, q.r, tol, angular);
                    break;
                case Query::Kind::Disc:
                    qr.value = is_phi_fixed_disc(space, T, phi, q.a, q.r, tol, angular);
                    break;
                case Query::Kind::Contraction:
                    qr.value = check_contraction(q.ckind, space, T, phi, q.a, q.k, tol);
                    break;
                case Query::Kind::MinimalK:
                    qr.value = minimal_k(q.ckind, space, T, phi, q.a, tol);
                    break;
                case Query::Kind::Certify:
                    qr.value = certify(q.theorem, space, T, phi, q.a, q.k, tol, angular);
                    break;
                case Query::Kind::CertifyAll:
                    qr.value = certify_all(space, T, phi, q.a, uniform_k(q.k, q.k_gen), tol, angular);
                    break;
            }
        } catch (const std::exception& e) {
            qr.value = QueryError{e.what()};
        }
        report.results.push_back(std::move(qr));
    }

    for (const Expectation& e : scenario.expectations) {
        ExpectationResult er;
        er.quantity = e.quantity.text(ck);
        er.expected = e.expected;
        er.tol = e.tol;
        std::string base = e.quantity.query.text(ck);
        er.actual = std::numeric_limits<double>::quiet_NaN();
        for (const QueryResult& qr : report.results)
            if (qr.query == base) {
                er.actual = facet_actual(e.quantity, qr, tol);
                break;
            }
        er.pass = std::isfinite(er.actual) && std::fabs(er.actual - e.expected) <= e.tol;
        if (!er.pass) report.all_pass = false;
        report.expectations.push_back(er);
    }
    return report;
}

// ---- rendering ----------------------------------------------------------

namespace {

void write_point(JsonWriter& w, const Point& p, bool ck) {
    if (ck)
        w.begin_array().value(p.re).value(p.im).end_array();
    else
        w.value(p.re);
}

void write_point_list(JsonWriter& w, const std::vector<Point>& pts, bool ck) {
    w.begin_array();
    for (const Point& p : pts) write_point(w, p, ck);
    w.end_array();
}

void write_certification(JsonWriter& w, const Certification& c, bool ck) {
    w.begin_object();
    w.key("theorem").value(theorem_name(c.theorem));
    w.key("x0");
    write_point(w, c.x0, ck);
    w.key("k").value(c.k);
    w.key("radius").value(c.radius);
    w.key("radius_degenerate").value(c.radius_degenerate);
    w.key("h_contraction").value(c.h_contraction.holds);
    w.key("h_center_zero").value(c.h_center_zero);
    w.key("h_phi_bound").value(c.h_phi_bound.pass);
    w.key("h_image_bound");
    if (c.h_image_bound)
        w.value(c.h_image_bound->pass);
    else
        w.null();
    w.key("hypotheses_pass").value(c.hypotheses_pass);
    w.key("conclusion").value(c.conclusion.holds);
    w.key("consistent").value(c.consistent);
    w.key("sampled").value(c.sampled);
    w.end_object();
}

void write_query_value(JsonWriter& w, const QueryValue& value, bool ck) {
    if (const double* d = std::get_if<double>(&value)) {
        w.value(*d);
    } else if (std::holds_alternative<NoMoved>(value)) {
        w.null();
    } else if (const auto* pts = std::get_if<std::vector<Point>>(&value)) {
        write_point_list(w, *pts, ck);
    } else if (const auto* lv = std::get_if<LocusVerdict>(&value)) {
        w.begin_object();
        w.key("holds").value(lv->holds);
        w.key("radius").value(lv->locus.radius);
        w.key("points");
        write_point_list(w, lv->locus.points, ck);
        w.end_object();
    } else if (const auto* cv = std::get_if<ContractionVerdict>(&value)) {
        w.begin_object();
        w.key("holds").value(cv->holds);
        w.key("vacuous").value(cv->vacuous);
        w.key("infinite").value(cv->ratio_infinite);
        w.key("worst_ratio");
        if (cv->vacuous || cv->ratio_infinite)
            w.null();
        else
            w.value(cv->worst_ratio);
        w.key("checked_points").value(cv->checked_points);
        w.end_object();
    } else if (const auto* mk = std::get_if<MinimalK>(&value)) {
        w.begin_object();
        w.key("kind").value(mk->kind == MinimalK::Kind::Value      ? "value"
                            : mk->kind == MinimalK::Kind::Infinite ? "infinite"
                                                                   : "vacuous");
        w.key("value");
        if (mk->kind == MinimalK::Kind::Value)
            w.value(mk->value);
        else
            w.null();
        w.end_object();
    } else if (const auto* c = std::get_if<Certification>(&value)) {
        write_certification(w, *c, ck);
    } else if (const auto* cs = std::get_if<std::vector<Certification>>(&value)) {
        w.begin_array();
        for (const Certification& c : *cs) write_certification(w, c, ck);
        w.end_array();
    } else if (const auto* err = std::get_if<QueryError>(&value)) {
        w.begin_object();
        w.key("error").value(err->message);
        w.end_object();
    }
}

void write_witnesses(JsonWriter& w, const QueryValue& value, bool ck) {
    w.begin_array();
    if (const auto* lv = std::get_if<LocusVerdict>(&value)) {
        for (const Violation& v : lv->violations) {
            w.begin_object();
            w.key("point");
            write_point(w, v.where, ck);
            w.key("not_fixed").value(v.not_fixed);
            w.key("phi_nonzero").value(v.phi_nonzero);
            w.key("displacement").value(v.displacement);
            w.key("phi").value(v.phi_value);
            w.end_object();
        }
    } else if (const auto* cv = std::get_if<ContractionVerdict>(&value)) {
        if (!cv->vacuous) {
            w.begin_object();
            w.key("point");
            write_point(w, cv->witness, ck);
            w.end_object();
        }
    } else if (const auto* mk = std::get_if<MinimalK>(&value)) {
        if (mk->kind != MinimalK::Kind::Vacuous) {
            w.begin_object();
            w.key("point");
            write_point(w, mk->witness, ck);
            w.end_object();
        }
    } else if (const auto* c = std::get_if<Certification>(&value)) {
        for (const auto& item : c->h_phi_bound.violations) {
            w.begin_object();
            w.key("hypothesis").value("phi_bound");
            w.key("point");
            write_point(w, item.where, ck);
            w.key("lhs").value(item.lhs);
            w.key("bound").value(item.bound);
            w.end_object();
        }
        if (c->h_image_bound) {
            for (const auto& item : c->h_image_bound->violations) {
                w.begin_object();
                w.key("hypothesis").value("image_bound");
                w.key("point");
                write_point(w, item.where, ck);
                w.key("lhs").value(item.lhs);
                w.key("bound").value(item.bound);
                w.end_object();
            }
        }
        for (const Violation& v : c->conclusion.violations) {
            w.begin_object();
            w.key("hypothesis").value("conclusion");
            w.key("point");
            write_point(w, v.where, ck);
            w.key("not_fixed").value(v.not_fixed);
            w.key("phi_nonzero").value(v.phi_nonzero);
            w.end_object();
        }
    }
    w.end_array();
}

std::string point_text(const Point& p, bool ck) { return format_point(p, ck); }

std::string point_list_text(const std::vector<Point>& pts, bool ck, std::size_t limit = 16) {
    std::string out = "[ ";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i >= limit) {
            out += "... ";
            break;
        }
        out += point_text(pts[i], ck);
        out += " ";
    }
    out += "]";
    return out;
}

std::string certification_text(const Certification& c, bool ck) {
    std::string out = theorem_name(c.theorem) + " x0=" + point_text(c.x0, ck) +
                      " k=" + format_double(c.k) + ": radius " + format_double(c.radius);
    if (c.radius_degenerate) out += " (degenerate)";
    out += "; hypotheses ";
    if (c.hypotheses_pass) {
        out += "pass";
    } else {
        out += "fail [";
        bool first = true;
        auto add = [&](const std::string& s) {
            if (!first) out += ", ";
            out += s;
            first = false;
        };
        if (!c.h_contraction.holds) add("contraction");
        if (!c.h_center_zero) add("center_zero");
        if (!c.h_phi_bound.pass) add("phi_bound");
        if (c.h_image_bound && !c.h_image_bound->pass) add("image_bound");
        out += "]";
    }
    out += "; conclusion ";
    out += c.conclusion.holds ? "holds" : "fails";
    out += c.consistent ? "; consistent" : "; INCONSISTENT";
    return out;
}

}  // namespace

std::string report_text(const Report& report) {
    const bool ck = report.complex_kind;
    std::string out = "scenario " + report.scenario + "\n";
    out += "params tol=" + format_double(report.params.tol);
    out += " step=";
    out += report.params.step_override ? format_double(*report.params.step_override) : "default";
    out += " angular=" + std::to_string(report.params.angular_n);
    out += " version=" + std::string(kToolVersion) + "\n";
    for (const std::string& warning : report.warnings) out += "warning " + warning + "\n";
    for (const QueryResult& qr : report.results) {
        out += "query " + qr.query + " -> ";
        if (const double* d = std::get_if<double>(&qr.value)) {
            out += format_double(*d);
        } else if (std::holds_alternative<NoMoved>(qr.value)) {
            out += "no moved points";
        } else if (const auto* pts = std::get_if<std::vector<Point>>(&qr.value)) {
            out += std::to_string(pts->size()) + " points " + point_list_text(*pts, ck);
        } else if (const auto* lv = std::get_if<LocusVerdict>(&qr.value)) {
            out += lv->holds ? "holds" : "fails";
            out += "; points " + point_list_text(lv->locus.points, ck);
            if (!lv->violations.empty()) {
                out += "; violations " + std::to_string(lv->violations.size()) + " at [ ";
                std::size_t shown = 0;
                for (const Violation& v : lv->violations) {
                    if (shown++ >= 8) {
                        out += "... ";
                        break;
                    }
                    out += point_text(v.where, ck);
                    out += v.not_fixed && v.phi_nonzero ? "(moved,phi!=0)"
                           : v.not_fixed                ? "(moved)"
                                                        : "(phi!=0)";
                    out += " ";
                }
                out += "]";
            }
        } else if (const auto* cv = std::get_if<ContractionVerdict>(&qr.value)) {
            out += cv->holds ? "holds" : "fails";
            if (cv->vacuous) {
                out += " (vacuous: no moved points)";
            } else if (cv->ratio_infinite) {
                out += " (no finite k works; witness " + point_text(cv->witness, ck) + ")";
            } else {
                out += " (worst ratio " + format_double(cv->worst_ratio) + " at " +
                       point_text(cv->witness, ck) + ")";
            }
        } else if (const auto* mk = std::get_if<MinimalK>(&qr.value)) {
            if (mk->kind == MinimalK::Kind::Value)
                out += format_double(mk->value) + " (witness " + point_text(mk->witness, ck) + ")";
            else if (mk->kind == MinimalK::Kind::Infinite)
                out += "infinite (witness " + point_text(mk->witness, ck) + ")";
            else
                out += "vacuous (no moved points)";
        } else if (const auto* c = std::get_if<Certification>(&qr.value)) {
            out += certification_text(*c, ck);
        } else if (const auto* cs = std::get_if<std::vector<Certification>>(&qr.value)) {
            out += "\n";
            for (const Certification& c : *cs) out += "  " + certification_text(c, ck) + "\n";
            out.pop_back();
        } else if (const auto* err = std::get_if<QueryError>(&qr.value)) {
            out += "error: " + err->message;
        }
        if (qr.sampled) out += " [sampled]";
        out += "\n";
    }
    for (const ExpectationResult& er : report.expectations) {
        out += "expect " + er.quantity + " = " + format_double(er.expected) + " tol " +
               format_double(er.tol) + " -> actual " + format_double(er.actual) +
               (er.pass ? " PASS" : " FAIL") + "\n";
    }
    out += "result " + std::string(report.all_pass ? "PASS" : "FAIL") + " (" +
           std::to_string(static_cast<long long>(
               std::count_if(report.expectations.begin(), report.expectations.end(),
                             [](const ExpectationResult& er) { return er.pass; }))) +
           "/" + std::to_string(report.expectations.size()) + " expectations)\n";
    return out;
}

void report_json_into(const Report& report, JsonWriter& w) {
    const bool ck = report.complex_kind;
    w.begin_object();
    w.key("scenario").value(report.scenario);
    w.key("params").begin_object();
    w.key("tol").value(report.params.tol);
    w.key("step");
    if (report.params.step_override)
        w.value(*report.params.step_override);
    else
        w.null();
    w.key("angular_n").value(report.params.angular_n);
    w.key("seed").null();
    w.key("version").value(kToolVersion);
    w.end_object();
    w.key("results").begin_array();
    for (const QueryResult& qr : report.results) {
        w.begin_object();
        w.key("query").value(qr.query);
        w.key("value");
        write_query_value(w, qr.value, ck);
        w.key("sampled").value(qr.sampled);
        w.key("witnesses");
        write_witnesses(w, qr.value, ck);
        w.end_object();
    }
    w.end_array();
    w.key("expectations").begin_array();
    for (const ExpectationResult& er : report.expectations) {
        w.begin_object();
        w.key("quantity").value(er.quantity);
        w.key("expected").value(er.expected);
        w.key("actual").value(er.actual);
        w.key("pass").value(er.pass);
        w.end_object();
    }
    w.end_array();
    w.end_object();
}

std::string report_json(const Report& report) {
    JsonWriter w;
    report_json_into(report, w);
    return std::move(w).take();
}

}  // namespace phifix
