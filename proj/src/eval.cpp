#include "genpoly/eval.hpp"

#include "genpoly/errors.hpp"

namespace genpoly {

Evaluator::Evaluator(unsigned precision_bits) : bits_(precision_bits) {}

const Integer& Evaluator::n_power(unsigned p) {
  while (powers_.size() <= p) powers_.push_back(powers_.back() * n_);
  return powers_[p];
}

const CertifiedReal& Evaluator::coefficient(const ExprNode* e) {
  // keyed by value: node addresses are reused once an expression is released
  auto it = coeff_cache_.find(e->coeff);
  if (it == coeff_cache_.end()) it = coeff_cache_.emplace(e->coeff, e->coeff.enclose(bits_)).first;
  return it->second;
}

CertifiedReal Evaluator::enclose(const Num& v) const {
  if (v.exact) return CertifiedReal(*v.exact, bits_);
  return *v.enclosure;
}

Evaluator::Num Evaluator::evaluate(const Expr& e, const Integer& n) {
  if (powers_.empty() || n_ != n) {
    n_ = n;
    powers_.assign(1, Integer(1));
  }
  return eval_node(e.get());
}

Evaluator::Num Evaluator::eval_node(const ExprNode* e) {
  switch (e->kind) {
    case ExprKind::Monomial: {
      const Integer& np = n_power(e->power);
      if (e->coeff.is_rational()) return Num{e->coeff.rational_value() * Rational(np), std::nullopt};
      if (sgn(np) == 0) return Num{Rational(0), std::nullopt};
      return Num{std::nullopt, coefficient(e) * np};
    }
    case ExprKind::Bracket: {
      Num inner = eval_node(e->child().get());
      if (inner.exact) return Num{Rational(nearest_integer(*inner.exact)), std::nullopt};
      auto k = try_nearest_integer(*inner.enclosure);
      if (!k) {
        throw TieUndecidable("bracket " + pretty(e->child()) + " at n=" + n_.get_str() +
                             " is not decided by " + inner.enclosure->to_string() + " (" +
                             std::to_string(bits_) + " bits)");
      }
      return Num{Rational(*k), std::nullopt};
    }
    case ExprKind::Scale: {
      Num inner = eval_node(e->child().get());
      if (inner.exact && e->coeff.is_rational()) return Num{e->coeff.rational_value() * *inner.exact, std::nullopt};
      if (inner.exact && sgn(*inner.exact) == 0) return inner;
      return Num{std::nullopt, coefficient(e) * enclose(inner)};
    }
    case ExprKind::Sum:
    case ExprKind::Product: {
      bool sum = e->kind == ExprKind::Sum;
      Rational exact_part(sum ? 0 : 1);
      std::optional<CertifiedReal> approx_part;
      for (const auto& c : e->children) {
        Num v = eval_node(c.get());
        if (v.exact) {
          if (sum) exact_part += *v.exact;
          else exact_part *= *v.exact;
        } else if (!approx_part) {
          approx_part = std::move(*v.enclosure);
        } else {
          approx_part = sum ? *approx_part + *v.enclosure : *approx_part * *v.enclosure;
        }
      }
      if (!approx_part) return Num{exact_part, std::nullopt};
      if (!sum && sgn(exact_part) == 0) return Num{Rational(0), std::nullopt};
      return Num{std::nullopt, sum ? *approx_part + exact_part : *approx_part * exact_part};
    }
  }
  return {};
}

PointEvaluator::PointEvaluator(PrecisionPolicy policy) : policy_(policy) {}

Evaluator& PointEvaluator::at(unsigned bits) {
  for (auto& [b, ev] : levels_) {
    if (b == bits) return ev;
  }
  levels_.emplace_back(bits, Evaluator(bits));
  return levels_.back().second;
}

Evaluation PointEvaluator::eval(const Expr& p, const Integer& n) {
  std::optional<TieUndecidable> last_tie;
  for (unsigned bits = policy_.start_bits;; bits *= 2) {
    if (bits > policy_.cap_bits) bits = policy_.cap_bits;
    Evaluator& ev = at(bits);
    try {
      Evaluator::Num v = ev.evaluate(p, n);
      if (v.exact) return Evaluation{CertifiedReal(*v.exact, bits), v.exact, bits};
      long target = -static_cast<long>(bits / 2);
      if (v.enclosure->width_below_pow2(target)) return Evaluation{*v.enclosure, std::nullopt, bits};
      last_tie.reset();
    } catch (const TieUndecidable& t) {
      last_tie = t;
    }
    if (bits >= policy_.cap_bits) break;
  }
  if (last_tie) throw *last_tie;
  throw Undecidable("enclosure of " + pretty(p) + " at n=" + n.get_str() + " too wide at the " +
                    std::to_string(policy_.cap_bits) + "-bit cap");
}

Evaluation PointEvaluator::frac(const Expr& p, const Integer& n) {
  Evaluation v = eval(p, n);
  if (v.exact) {
    Rational f = genpoly::frac(*v.exact);
    return Evaluation{CertifiedReal(f, v.precision_bits), f, v.precision_bits};
  }
  // the width bound guarantees a decision unless we sit on a half-integer, which a rational would have caught
  for (unsigned bits = v.precision_bits;; bits *= 2) {
    if (auto k = try_nearest_integer(v.value)) {
      return Evaluation{v.value + Rational(-*k), std::nullopt, v.precision_bits};
    }
    if (bits >= policy_.cap_bits) break;
    PointEvaluator finer(PrecisionPolicy{std::min(bits * 2, policy_.cap_bits), policy_.cap_bits});
    v = finer.eval(p, n);
  }
  throw TieUndecidable("fractional part of " + pretty(p) + " at n=" + n.get_str() +
                       " sits on a half-integer boundary at the precision cap");
}

Integer PointEvaluator::eval_integer(const Expr& p, const Integer& n) {
  Evaluation v = eval(p, n);
  if (v.exact && v.exact->get_den() == 1) return v.exact->get_num();
  if (v.exact) throw PreconditionError(pretty(p) + " is not integer-valued at n=" + n.get_str());
  throw Undecidable(pretty(p) + " at n=" + n.get_str() + " is not certified integer-valued");
}

Evaluation eval(const Expr& p, const Integer& n, const PrecisionPolicy& policy) {
  return PointEvaluator(policy).eval(p, n);
}

Evaluation frac(const Expr& p, const Integer& n, const PrecisionPolicy& policy) {
  return PointEvaluator(policy).frac(p, n);
}

Integer eval_integer(const Expr& p, const Integer& n, const PrecisionPolicy& policy) {
  return PointEvaluator(policy).eval_integer(p, n);
}

}  // namespace genpoly
