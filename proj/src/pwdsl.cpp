#include "phifix/pwdsl.hpp"

#include <cctype>
#include <cmath>
#include <utility>

#include "phifix/errors.hpp"

namespace phifix {

ParseError::ParseError(std::size_t offset, int line, int column, std::string message,
                       std::string expected)
    : std::runtime_error("parse error at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message +
                         (expected.empty() ? "" : " (expected " + expected + ")")),
      offset_(offset),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

ExprPtr num(double v) {
    auto e = std::make_shared<Expr>();
    e->tag = Expr::Tag::Num;
    e->num = v;
    return e;
}

ExprPtr imag_unit() {
    auto e = std::make_shared<Expr>();
    e->tag = Expr::Tag::ImagUnit;
    return e;
}

ExprPtr var() {
    auto e = std::make_shared<Expr>();
    e->tag = Expr::Tag::Var;
    return e;
}

ExprPtr unary(UnaryOp op, ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->tag = Expr::Tag::Unary;
    e->uop = op;
    e->a = std::move(a);
    return e;
}

ExprPtr binary(BinaryOp op, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->tag = Expr::Tag::Binary;
    e->bop = op;
    e->a = std::move(a);
    e->b = std::move(b);
    return e;
}

namespace {

struct Token {
    enum class Type { Word, Number, Punct, End };
    Type type = Type::End;
    std::string_view text;
    double value = 0.0;
    bool is_int = false;
    std::size_t offset = 0;
    int line = 1;
    int col = 1;
};

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1, col = 1;
    auto make = [&](Token::Type t, std::size_t start, std::size_t len, int c) {
        Token tok;
        tok.type = t;
        tok.text = text.substr(start, len);
        tok.offset = start;
        tok.line = line;
        tok.col = c;
        return tok;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++i;
            ++line;
            col = 1;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            ++col;
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        std::size_t start = i;
        int startcol = col;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            bool is_int = true;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (i < text.size() && text[i] == '.') {
                is_int = false;
                ++i;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            }
            if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
                std::size_t save = i;
                ++i;
                if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
                if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                    is_int = false;
                    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                } else {
                    i = save;
                }
            }
            Token tok = make(Token::Type::Number, start, i - start, startcol);
            try {
                tok.value = std::stod(std::string(tok.text));
            } catch (const std::out_of_range&) {
                throw ParseError(tok.offset, tok.line, tok.col, "number literal out of range", "");
            }
            tok.is_int = is_int;
            out.push_back(tok);
            col += static_cast<int>(i - start);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                ++i;
            out.push_back(make(Token::Type::Word, start, i - start, startcol));
            col += static_cast<int>(i - start);
            continue;
        }
        // two-character relops first
        if ((c == '<' || c == '>' || c == '=') && i + 1 < text.size() && text[i + 1] == '=') {
            out.push_back(make(Token::Type::Punct, start, 2, startcol));
            i += 2;
            col += 2;
            continue;
        }
        if (std::string_view("{}():;^*/+-<>").find(c) != std::string_view::npos) {
            out.push_back(make(Token::Type::Punct, start, 1, startcol));
            ++i;
            ++col;
            continue;
        }
        Token tok = make(Token::Type::Punct, start, 1, startcol);
        throw ParseError(tok.offset, tok.line, tok.col,
                         "unexpected character '" + std::string(1, c) + "'", "");
    }
    Token end;
    end.type = Token::Type::End;
    end.offset = text.size();
    end.line = line;
    end.col = col;
    end.text = "";
    out.push_back(end);
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(lex(text)) {}

    Piecewise parse() {
        expect_word("piecewise");
        expect_punct("{");
        Piecewise f;
        while (!peek_word("otherwise")) {
            Branch br;
            br.guard = parse_guard();
            expect_punct(":");
            br.expr = parse_expr();
            expect_punct(";");
            f.branches.push_back(std::move(br));
        }
        expect_word("otherwise");
        expect_punct(":");
        f.otherwise = parse_expr();
        expect_punct("}");
        if (cur().type != Token::Type::End) fail("trailing input after '}'", "end of input");
        f.var_name = seen_var_ == 0 ? 'x' : seen_var_;
        return f;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    char seen_var_ = 0;

    const Token& cur() const { return toks_[pos_]; }

    [[noreturn]] void fail(const std::string& msg, const std::string& expected) const {
        const Token& t = cur();
        throw ParseError(t.offset, t.line, t.col, msg, expected);
    }

    bool peek_word(std::string_view w) const {
        return cur().type == Token::Type::Word && cur().text == w;
    }
    bool peek_punct(std::string_view p) const {
        return cur().type == Token::Type::Punct && cur().text == p;
    }
    void expect_word(std::string_view w) {
        if (!peek_word(w)) fail("unexpected token '" + std::string(cur().text) + "'",
                                "'" + std::string(w) + "'");
        ++pos_;
    }
    void expect_punct(std::string_view p) {
        if (!peek_punct(p)) fail("unexpected token '" + std::string(cur().text) + "'",
                                 "'" + std::string(p) + "'");
        ++pos_;
    }
    bool accept_punct(std::string_view p) {
        if (peek_punct(p)) {
            ++pos_;
            return true;
        }
        return false;
    }

    Guard parse_guard() {
        Guard g;
        g.conjuncts.push_back(parse_cmp());
        while (peek_word("and")) {
            ++pos_;
            g.conjuncts.push_back(parse_cmp());
        }
        return g;
    }

    Comparison parse_cmp() {
        Comparison c;
        c.lhs = parse_expr();
        if (cur().type != Token::Type::Punct) fail("missing comparison operator", "relational operator");
        std::string_view p = cur().text;
        if (p == "<")
            c.op = RelOp::Lt;
        else if (p == "<=")
            c.op = RelOp::Le;
        else if (p == ">")
            c.op = RelOp::Gt;
        else if (p == ">=")
            c.op = RelOp::Ge;
        else if (p == "==")
            c.op = RelOp::Eq;
        else
            fail("missing comparison operator", "one of < <= > >= ==");
        ++pos_;
        c.rhs = parse_expr();
        return c;
    }

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        while (peek_punct("+") || peek_punct("-")) {
            BinaryOp op = cur().text == "+" ? BinaryOp::Add : BinaryOp::Sub;
            ++pos_;
            e = binary(op, std::move(e), parse_term());
        }
        return e;
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_unary();
        while (peek_punct("*") || peek_punct("/")) {
            BinaryOp op = cur().text == "*" ? BinaryOp::Mul : BinaryOp::Div;
            ++pos_;
            e = binary(op, std::move(e), parse_unary());
        }
        return e;
    }

    ExprPtr parse_unary() {
        if (accept_punct("-")) return unary(UnaryOp::Neg, parse_unary());
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_base();
        if (accept_punct("^")) {
            const Token& t = cur();
            if (t.type != Token::Type::Number || !t.is_int)
                fail("exponent must be an integer literal", "integer literal");
            ++pos_;
            return binary(BinaryOp::Pow, std::move(base), num(t.value));
        }
        return base;
    }

    ExprPtr parse_base() {
        const Token& t = cur();
        if (t.type == Token::Type::Number) {
            ++pos_;
            return num(t.value);
        }
        if (t.type == Token::Type::Word) {
            if (t.text == "i") {
                ++pos_;
                return imag_unit();
            }
            if (t.text == "x" || t.text == "z") {
                char name = t.text[0];
                if (seen_var_ != 0 && seen_var_ != name)
                    fail("mixed variable names in one function", std::string(1, seen_var_));
                seen_var_ = name;
                ++pos_;
                return var();
            }
            UnaryOp op;
            if (t.text == "abs")
                op = UnaryOp::Abs;
            else if (t.text == "sqrt")
                op = UnaryOp::Sqrt;
            else if (t.text == "re")
                op = UnaryOp::Re;
            else if (t.text == "im")
                op = UnaryOp::Im;
            else if (t.text == "conj")
                op = UnaryOp::Conj;
            else
                fail("unknown name '" + std::string(t.text) + "'",
                     "a number, 'i', the variable, '(', or abs/sqrt/re/im/conj");
            ++pos_;
            expect_punct("(");
            ExprPtr arg = parse_expr();
            expect_punct(")");
            return unary(op, std::move(arg));
        }
        if (peek_punct("(")) {
            ++pos_;
            ExprPtr e = parse_expr();
            expect_punct(")");
            return e;
        }
        fail("unexpected token '" + std::string(cur().text) + "'",
             "a number, 'i', the variable, '(', or a function");
    }
};

// Precedence levels for printing: + - (1), * / (2), unary - (3), ^ (4), atoms (5).
int expr_prec(const Expr& e) {
    switch (e.tag) {
        case Expr::Tag::Binary:
            switch (e.bop) {
                case BinaryOp::Add:
                case BinaryOp::Sub:
                    return 1;
                case BinaryOp::Mul:
                case BinaryOp::Div:
                    return 2;
                case BinaryOp::Pow:
                    return 4;
            }
            return 1;
        case Expr::Tag::Unary:
            return e.uop == UnaryOp::Neg ? 3 : 5;
        default:
            return 5;
    }
}

void print_expr_rec(const Expr& e, char var_name, int min_prec, std::string& out) {
    int prec = expr_prec(e);
    bool parens = prec < min_prec;
    if (parens) out += "(";
    switch (e.tag) {
        case Expr::Tag::Num: {
            if (e.num == static_cast<double>(static_cast<long long>(e.num)) &&
                std::fabs(e.num) < 1e15)
                out += std::to_string(static_cast<long long>(e.num));
            else
                out += format_double(e.num);
            break;
        }
        case Expr::Tag::ImagUnit:
            out += "i";
            break;
        case Expr::Tag::Var:
            out += var_name;
            break;
        case Expr::Tag::Unary:
            if (e.uop == UnaryOp::Neg) {
                out += "-";
                print_expr_rec(*e.a, var_name, 3, out);
            } else {
                switch (e.uop) {
                    case UnaryOp::Abs: out += "abs"; break;
                    case UnaryOp::Sqrt: out += "sqrt"; break;
                    case UnaryOp::Re: out += "re"; break;
                    case UnaryOp::Im: out += "im"; break;
                    default: out += "conj"; break;
                }
                out += "(";
                print_expr_rec(*e.a, var_name, 1, out);
                out += ")";
            }
            break;
        case Expr::Tag::Binary: {
            if (e.bop == BinaryOp::Pow) {
                print_expr_rec(*e.a, var_name, 5, out);
                out += "^";
                out += std::to_string(static_cast<long long>(e.b->num));
                break;
            }
            const char* opstr = e.bop == BinaryOp::Add   ? " + "
                                : e.bop == BinaryOp::Sub ? " - "
                                : e.bop == BinaryOp::Mul ? " * "
                                                         : " / ";
            print_expr_rec(*e.a, var_name, prec, out);
            out += opstr;
            print_expr_rec(*e.b, var_name, prec + 1, out);
            break;
        }
    }
    if (parens) out += ")";
}

const char* relop_str(RelOp op) {
    switch (op) {
        case RelOp::Lt: return "<";
        case RelOp::Le: return "<=";
        case RelOp::Gt: return ">";
        case RelOp::Ge: return ">=";
        case RelOp::Eq: return "==";
    }
    return "<";
}

}  // namespace

Piecewise parse_piecewise(std::string_view text) { return Parser(text).parse(); }

std::string print_expr(const Expr& e, char var_name) {
    std::string out;
    print_expr_rec(e, var_name, 1, out);
    return out;
}

std::string print_piecewise(const Piecewise& f) {
    std::string out = "piecewise { ";
    for (const Branch& br : f.branches) {
        for (std::size_t i = 0; i < br.guard.conjuncts.size(); ++i) {
            if (i) out += " and ";
            const Comparison& c = br.guard.conjuncts[i];
            print_expr_rec(*c.lhs, f.var_name, 1, out);
            out += " ";
            out += relop_str(c.op);
            out += " ";
            print_expr_rec(*c.rhs, f.var_name, 1, out);
        }
        out += " : ";
        print_expr_rec(*br.expr, f.var_name, 1, out);
        out += " ; ";
    }
    out += "otherwise : ";
    print_expr_rec(*f.otherwise, f.var_name, 1, out);
    out += " }";
    return out;
}

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.tag != b.tag) return false;
    switch (a.tag) {
        case Expr::Tag::Num: return a.num == b.num;
        case Expr::Tag::ImagUnit:
        case Expr::Tag::Var: return true;
        case Expr::Tag::Unary: return a.uop == b.uop && expr_equal(*a.a, *b.a);
        case Expr::Tag::Binary:
            return a.bop == b.bop && expr_equal(*a.a, *b.a) && expr_equal(*a.b, *b.b);
    }
    return false;
}

bool piecewise_equal(const Piecewise& a, const Piecewise& b) {
    if (a.var_name != b.var_name) return false;
    if (a.branches.size() != b.branches.size()) return false;
    for (std::size_t i = 0; i < a.branches.size(); ++i) {
        const Branch& x = a.branches[i];
        const Branch& y = b.branches[i];
        if (x.guard.conjuncts.size() != y.guard.conjuncts.size()) return false;
        for (std::size_t j = 0; j < x.guard.conjuncts.size(); ++j) {
            const Comparison& c = x.guard.conjuncts[j];
            const Comparison& d = y.guard.conjuncts[j];
            if (c.op != d.op || !expr_equal(*c.lhs, *d.lhs) || !expr_equal(*c.rhs, *d.rhs))
                return false;
        }
        if (!expr_equal(*x.expr, *y.expr)) return false;
    }
    return expr_equal(*a.otherwise, *b.otherwise);
}

namespace {

std::complex<double> int_pow(std::complex<double> base, long long n) {
    std::complex<double> acc{1.0, 0.0};
    while (n > 0) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

}  // namespace

std::complex<double> eval_expr(const Expr& e, std::complex<double> v, bool complex_kind) {
    switch (e.tag) {
        case Expr::Tag::Num: return {e.num, 0.0};
        case Expr::Tag::ImagUnit: return {0.0, 1.0};
        case Expr::Tag::Var: return v;
        case Expr::Tag::Unary: {
            std::complex<double> a = eval_expr(*e.a, v, complex_kind);
            switch (e.uop) {
                case UnaryOp::Neg: return -a;
                case UnaryOp::Abs: return {std::hypot(a.real(), a.imag()), 0.0};
                case UnaryOp::Sqrt:
                    if (a.imag() == 0.0) {
                        if (a.real() < 0.0) {
                            if (!complex_kind)
                                throw DomainError("sqrt of a negative real value");
                            return {0.0, std::sqrt(-a.real())};
                        }
                        return {std::sqrt(a.real()), 0.0};
                    }
                    if (!complex_kind) throw KindMismatch("sqrt of a complex value on the real line");
                    return std::sqrt(a);
                case UnaryOp::Re: return {a.real(), 0.0};
                case UnaryOp::Im: return {a.imag(), 0.0};
                case UnaryOp::Conj: return std::conj(a);
            }
            return a;
        }
        case Expr::Tag::Binary: {
            std::complex<double> a = eval_expr(*e.a, v, complex_kind);
            if (e.bop == BinaryOp::Pow)
                return int_pow(a, static_cast<long long>(e.b->num));
            std::complex<double> b = eval_expr(*e.b, v, complex_kind);
            switch (e.bop) {
                case BinaryOp::Add: return a + b;
                case BinaryOp::Sub: return a - b;
                case BinaryOp::Mul: return a * b;
                case BinaryOp::Div:
                    if (b.real() == 0.0 && b.imag() == 0.0) throw DomainError("division by zero");
                    return a / b;
                default: return a;
            }
        }
    }
    return {0.0, 0.0};
}

namespace {

bool guard_holds(const Guard& g, std::complex<double> v, bool complex_kind) {
    for (const Comparison& c : g.conjuncts) {
        std::complex<double> lhs = eval_expr(*c.lhs, v, complex_kind);
        std::complex<double> rhs = eval_expr(*c.rhs, v, complex_kind);
        if (lhs.imag() != 0.0 || rhs.imag() != 0.0)
            throw KindMismatch("guard compares a complex value; wrap it in re/im/abs");
        bool ok = false;
        switch (c.op) {
            case RelOp::Lt: ok = lhs.real() < rhs.real(); break;
            case RelOp::Le: ok = lhs.real() <= rhs.real(); break;
            case RelOp::Gt: ok = lhs.real() > rhs.real(); break;
            case RelOp::Ge: ok = lhs.real() >= rhs.real(); break;
            case RelOp::Eq: ok = lhs.real() == rhs.real(); break;
        }
        if (!ok) return false;
    }
    return true;
}

std::complex<double> eval_selected(const Piecewise& f, std::complex<double> v, bool complex_kind) {
    for (const Branch& br : f.branches)
        if (guard_holds(br.guard, v, complex_kind))
            return eval_expr(*br.expr, v, complex_kind);
    return eval_expr(*f.otherwise, v, complex_kind);
}

}  // namespace

Point eval(const Piecewise& f, const Point& p, bool complex_kind) {
    std::complex<double> r;
    try {
        r = eval_selected(f, to_complex(p), complex_kind);
    } catch (const DomainError& e) {
        throw DomainError(std::string(e.what()) + " at point " + format_point(p, complex_kind));
    }
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
        throw DomainError("non-finite value at point " + format_point(p, complex_kind));
    if (!complex_kind && r.imag() != 0.0)
        throw KindMismatch("complex value on a real-line space at point " +
                           format_point(p, complex_kind));
    return to_point(r);
}

double eval_real(const Piecewise& f, const Point& p, bool complex_kind) {
    std::complex<double> r;
    try {
        r = eval_selected(f, to_complex(p), complex_kind);
    } catch (const DomainError& e) {
        throw DomainError(std::string(e.what()) + " at point " + format_point(p, complex_kind));
    }
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
        throw DomainError("non-finite value at point " + format_point(p, complex_kind));
    if (r.imag() != 0.0)
        throw KindMismatch("expected a real value at point " + format_point(p, complex_kind));
    return r.real();
}

}  // namespace phifix
