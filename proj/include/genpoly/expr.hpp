#pragma once

#include <memory>
#include <string>
#include <vector>

#include "genpoly/coefficient.hpp"

namespace genpoly {

class ExprNode;
/// Immutable shared expression handle. Build through the make_* functions, which keep the
/// tree in canonical shape (flattened sums/products, scalars merged into monomials).
using Expr = std::shared_ptr<const ExprNode>;

enum class ExprKind { Monomial, Bracket, Scale, Sum, Product };

class ExprNode {
 public:
  ExprKind kind;
  Coefficient coeff;          // Monomial, Scale
  unsigned power = 0;         // Monomial
  std::vector<Expr> children; // Bracket/Scale: one child; Sum/Product: two or more

  const Expr& child() const { return children.front(); }
};

/// c * n^power, power >= 1.
Expr make_monomial(const Coefficient& c, unsigned power);
Expr make_bracket(Expr child);
Expr make_scale(const Coefficient& c, Expr child);
Expr make_sum(std::vector<Expr> children);
Expr make_product(std::vector<Expr> children);
Expr negate(const Expr& e);
Expr make_difference(const Expr& a, const Expr& b);
/// An expression equal to 0 for every n, used for empty sums.
Expr make_zero();
bool is_zero_expr(const Expr& e);

/// Structural equality (coefficients compared canonically).
bool structurally_equal(const Expr& a, const Expr& b);
/// Total structural order; consistent with structurally_equal.
int structural_compare(const Expr& a, const Expr& b);

/// Canonical, fully parenthesized text; parse(format(e)) rebuilds the same tree.
std::string format(const Expr& e);
/// Human-oriented text with the same grammar but fewer parentheses.
std::string pretty(const Expr& e);

/// Maximum total power of n, counting through brackets and products.
unsigned total_power(const Expr& e);
bool contains_bracket(const Expr& e);

/// p(k n).
Expr substitute_scale(const Expr& p, const Integer& k);

}  // namespace genpoly
