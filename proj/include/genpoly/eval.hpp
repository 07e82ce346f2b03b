#pragma once

#include <optional>
#include <map>
#include <vector>

#include "genpoly/expr.hpp"

namespace genpoly {

/// Certified value of an expression at an integer point. `exact` is set whenever every
/// irrational contribution was absorbed by a bracket, which is always the case for
/// integer-valued normal forms.
struct Evaluation {
  CertifiedReal value;
  std::optional<Rational> exact;
  unsigned precision_bits = 0;

  bool is_exact() const { return exact.has_value(); }
};

/// Single-precision evaluator. Caches coefficient enclosures by value, so reuse one instance
/// across many n and many expressions. Throws TieUndecidable when a bracket cannot be decided at its precision.
class Evaluator {
 public:
  explicit Evaluator(unsigned precision_bits);

  struct Num {
    std::optional<Rational> exact;
    std::optional<CertifiedReal> enclosure;
  };

  Num evaluate(const Expr& e, const Integer& n);
  CertifiedReal enclose(const Num& v) const;
  unsigned precision_bits() const { return bits_; }

 private:
  Num eval_node(const ExprNode* e);
  const CertifiedReal& coefficient(const ExprNode* e);
  const Integer& n_power(unsigned p);

  unsigned bits_;
  Integer n_;
  std::vector<Integer> powers_;
  std::map<Coefficient, CertifiedReal> coeff_cache_;
};

/// Escalating-precision evaluation; the returned width is below 2^(-bits/2).
Evaluation eval(const Expr& p, const Integer& n, const PrecisionPolicy& policy = default_precision_policy());
/// {p(n)} = p(n) - [p(n)], inside (-1/2, 1/2].
Evaluation frac(const Expr& p, const Integer& n, const PrecisionPolicy& policy = default_precision_policy());
/// For integer-valued expressions; throws Undecidable if the value is not a certified integer.
Integer eval_integer(const Expr& p, const Integer& n, const PrecisionPolicy& policy = default_precision_policy());

/// Reusable multi-point evaluator that escalates only when a point needs it.
class PointEvaluator {
 public:
  explicit PointEvaluator(PrecisionPolicy policy = default_precision_policy());
  Evaluation eval(const Expr& p, const Integer& n);
  Evaluation frac(const Expr& p, const Integer& n);
  Integer eval_integer(const Expr& p, const Integer& n);
  const PrecisionPolicy& policy() const { return policy_; }

 private:
  Evaluator& at(unsigned bits);
  PrecisionPolicy policy_;
  std::vector<std::pair<unsigned, Evaluator>> levels_;
};

}  // namespace genpoly
