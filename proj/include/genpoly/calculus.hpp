#pragma once

#include <string>
#include <vector>

#include "genpoly/sets.hpp"
#include "genpoly/sgp.hpp"
#include "genpoly/structure.hpp"

namespace genpoly {

/// h in normal form with the constraint set on which p(n) = h(n).
struct ReductionResult {
  SgpNormal h;
  Rational delta{1, 4};            // shared radius; meaningful only with constraints
  std::vector<Expr> constraint_exprs;

  ConstraintSet constraint() const { return ConstraintSet(delta, constraint_exprs); }
};

/// Brackets of sums are split into sums of brackets. A bracket with m >= 2 non-integer
/// components adds each component to the constraints and caps delta at 1/(4m).
/// Throws NotGP when p is not integer-valued by construction.
ReductionResult normalize_to_sgp(const Expr& p);

/// Real-valued components of any GP: outer sums and products are expanded and bracket contents
/// reduced, so the components sum to p(n) on the reduction's constraint set.
std::vector<Hat> components(const Expr& p);
/// A(p) for a general GP: the coefficients of the maximal-degree components, summed without
/// cancelling opposite components first.
Coefficient leading_sum(const Expr& p);

struct WindowCheck {
  long long lo = 0;
  long long hi = 0;
  long long members = 0;      // window points inside the constraint set
  long long nontrivial = 0;   // members other than 0
  std::vector<long long> violations;
};

/// p(n) = h(n) for every n in C on [lo, hi], by certified evaluation.
WindowCheck verify_reduction(const Expr& p, const ReductionResult& r, long long lo, long long hi,
                             const PrecisionPolicy& policy = default_precision_policy());

/// m is good for p iff {X(m)} != 1/2 for every hat node X of every term.
bool is_good(const Integer& m, const SgpNormal& p, const PrecisionPolicy& policy = default_precision_policy());
/// Q = every hat node of p; members of C(delta, Q) are good. Needs 0 < delta < 1/4.
ConstraintSet goodness_set(const SgpNormal& p, const Rational& delta);

struct ShiftTerms {
  Integer m;
  Integer h_at_m;   // h(m)
  SgpNormal extra;  // h(n + m) - h(n) - h(m) on the constraint set
};

struct ExpansionResult {
  std::vector<ShiftTerms> shifts;
  Rational epsilon;
  Rational delta;
  std::vector<Expr> constraint_exprs;
  Rational delta1_lower;  // certified lower bound of 1/2 - |{X(m)}| over all nodes and shifts
  unsigned long term_bound = 0;  // sum of the per-node term-count bounds

  ConstraintSet constraint() const;
};

/// Binomial expansion of every hat node at n + m; ceilings of factor nodes split as
/// [F(n+m)] = [F(m)] + sum [q(n)]. Throws NotGoodShift.
ExpansionResult shift_expand(const SgpNormal& h, const std::vector<Integer>& shifts,
                             const Rational& epsilon = Rational(1, 8),
                             const PrecisionPolicy& policy = default_precision_policy());

struct Derivative {
  SgpNormal source;
  Integer m;
  SgpNormal d;
  ExpansionResult certification;
  Coefficient leading_d;         // A(D)
  Coefficient expected_leading;  // deg(h) * m * A(h)
  Coefficient error_bound;       // |A(D) - expected| <= bound
  bool within_bound = true;
  std::vector<double> coefficient_magnitudes;  // |a| of every node, for the |a| >> 1 hypotheses
};

/// D(h, m) = h(n + m) - h(n) - h(m) on the certification set. Degree-1 input yields D = 0.
Derivative derivative(const SgpNormal& h, const Integer& m,
                      const PrecisionPolicy& policy = default_precision_policy());

/// Checks h(n+m) - h(n) - h(m) = D(n) on the certification set inside [lo, hi].
WindowCheck verify_derivative(const Derivative& d, long long lo, long long hi,
                              const PrecisionPolicy& policy = default_precision_policy());

}  // namespace genpoly
