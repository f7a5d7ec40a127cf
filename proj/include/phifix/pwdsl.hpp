#pragma once

#include <complex>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "phifix/point.hpp"

namespace phifix {

// AST for guarded piecewise expressions in one free variable (spelled x or z).
//
// Grammar (whitespace-insensitive between tokens, '#' comments to end of line):
//   piecewise := "piecewise" "{" (branch ";")* "otherwise" ":" expr "}"
//   branch    := guard ":" expr
//   guard     := cmp ("and" cmp)*
//   cmp       := expr relop expr
//   relop     := "<" | "<=" | ">" | ">=" | "=="
//   expr      := term (("+"|"-") term)*
//   term      := unary (("*"|"/") unary)*
//   unary     := "-" unary | power
//   power     := base ("^" intlit)?
//   base      := number | "i" | var | "(" expr ")" | func "(" expr ")"
//   func      := "abs" | "sqrt" | "re" | "im" | "conj"
//   var       := "x" | "z"
//
// Unary minus binds below '^', so -x^2 reads as -(x^2). Exponents are
// nonnegative integer literals, keeping complex powers single-valued.

enum class UnaryOp { Neg, Abs, Sqrt, Re, Im, Conj };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class RelOp { Lt, Le, Gt, Ge, Eq };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Tag { Num, ImagUnit, Var, Unary, Binary };
    Tag tag = Tag::Num;
    double num = 0.0;           // Tag::Num (nonnegative; sign comes from Neg)
    UnaryOp uop = UnaryOp::Neg;  // Tag::Unary
    BinaryOp bop = BinaryOp::Add;  // Tag::Binary
    ExprPtr a, b;               // operands
};

struct Comparison {
    ExprPtr lhs;
    RelOp op = RelOp::Lt;
    ExprPtr rhs;
};

struct Guard {
    std::vector<Comparison> conjuncts;
};

struct Branch {
    Guard guard;
    ExprPtr expr;
};

struct Piecewise {
    std::vector<Branch> branches;  // first matching guard wins
    ExprPtr otherwise;             // mandatory: eval always selects a branch
    char var_name = 'x';
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, int line, int column, std::string message,
               std::string expected);
    std::size_t offset() const { return offset_; }
    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t offset_;
    int line_;
    int column_;
    std::string expected_;
};

// Throws ParseError with position on malformed input. print(parse(s)) of a
// grammar-conforming s re-parses to a structurally identical AST.
Piecewise parse_piecewise(std::string_view text);

// Canonical text; parse_piecewise(print_piecewise(f)) equals f structurally.
std::string print_piecewise(const Piecewise& f);
std::string print_expr(const Expr& e, char var_name = 'x');

// Structural equality (exact literal values, same operators and shape).
bool expr_equal(const Expr& a, const Expr& b);
bool piecewise_equal(const Piecewise& a, const Piecewise& b);

// Pointwise application. Guards compare real scalars only; complex-kind
// evaluation requires them to be wrapped in re/im/abs. Real-kind evaluation
// rejects complex results (KindMismatch) and sqrt of a negative (DomainError).
std::complex<double> eval_expr(const Expr& e, std::complex<double> var, bool complex_kind);
Point eval(const Piecewise& f, const Point& p, bool complex_kind);

// Real-valued evaluation (phi and guard operands); complex results are a
// KindMismatch even on complex spaces.
double eval_real(const Piecewise& f, const Point& p, bool complex_kind);

// Node constructors for programmatic ASTs (tests, generators).
ExprPtr num(double v);
ExprPtr imag_unit();
ExprPtr var();
ExprPtr unary(UnaryOp op, ExprPtr a);
ExprPtr binary(BinaryOp op, ExprPtr a, ExprPtr b);

}  // namespace phifix
