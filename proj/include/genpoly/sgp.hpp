#pragma once

#include <string>
#include <vector>

#include "genpoly/expr.hpp"

namespace genpoly {

/// Real-valued simple term coeff * n^power * prod [factor(n)], the factors themselves hats.
/// An L-chain a1 n^j1 [a2 n^j2 [...]] is the single-factor case; products of chains fold into
/// one hat because the leading coefficients and powers multiply out.
struct Hat {
  Coefficient coeff;
  unsigned power = 0;
  std::vector<Hat> factors;

  unsigned degree() const;
  bool is_zero() const { return coeff.is_zero(); }
  /// With an integer coefficient the hat is integer-valued and its bracket is redundant.
  bool is_integer_valued() const { return coeff.is_integer(); }
  /// Product of every coefficient in the tree (the leading coefficient as a polynomial in n).
  Coefficient coefficient_product() const;
  Expr to_expr() const;
};

int compare(const Hat& a, const Hat& b);
inline bool operator==(const Hat& a, const Hat& b) { return compare(a, b) == 0; }
inline bool operator<(const Hat& a, const Hat& b) { return compare(a, b) < 0; }

/// Folds integer-coefficient factors into the parent and sorts factors. A zero anywhere
/// collapses the hat to zero.
Hat canonical(Hat h);

/// c * [hat], or c * hat when the hat is integer-valued.
struct SgpTerm {
  Integer coeff;
  Hat hat;

  unsigned degree() const { return hat.degree(); }
  bool bracketed() const { return !hat.is_integer_valued(); }
  Expr to_expr() const;
};

/// Integer combination of bracketed hats. Terms are kept as written: equal hats with
/// opposite signs stay separate until combine() is called.
struct SgpNormal {
  std::vector<SgpTerm> terms;

  bool empty() const { return terms.empty(); }
  Expr to_expr() const;
  std::string format() const;
  /// Append c * [hat] in canonical form; zero terms are dropped.
  void add(const Integer& c, const Hat& hat);
};

SgpNormal operator+(const SgpNormal& a, const SgpNormal& b);
SgpNormal operator-(const SgpNormal& a, const SgpNormal& b);
SgpNormal operator*(const Integer& c, const SgpNormal& a);

/// Merge structurally identical hats, summing their integer coefficients; zeros are removed.
SgpNormal combine(const SgpNormal& p);
bool structurally_equal(const SgpNormal& a, const SgpNormal& b);

/// Recognize an expression already in normal form. Throws NotSGP otherwise.
SgpNormal to_sgp(const Expr& e);
/// Hat view of a bracket body; throws NotSGP for sums inside brackets.
Hat hat_of(const Expr& e);

/// Every hat node of a term's tree: the term's own hat first, then factors depth-first.
std::vector<const Hat*> hat_nodes(const Hat& h);

/// h(k n): coefficient of each n^j gains k^j.
SgpNormal substitute_scale(const SgpNormal& p, const Integer& k);

}  // namespace genpoly
