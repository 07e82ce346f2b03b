#include "genpoly/calculus.hpp"

#include <algorithm>

#include "genpoly/errors.hpp"

namespace genpoly {

namespace {

void add_unique(std::vector<Expr>& out, const Expr& e) {
  for (const auto& x : out) {
    if (structurally_equal(x, e)) return;
  }
  out.push_back(e);
}

Hat multiply(const Hat& a, const Hat& b) {
  Hat r{a.coeff * b.coeff, a.power + b.power, a.factors};
  r.factors.insert(r.factors.end(), b.factors.begin(), b.factors.end());
  return r;
}

class Reducer {
 public:
  std::vector<Expr> constraints;
  Rational delta{1, 4};

  SgpNormal top(const Expr& e) {
    SgpNormal r;
    switch (e->kind) {
      case ExprKind::Sum:
        for (const auto& c : e->children) r = r + top(c);
        return r;
      case ExprKind::Scale:
        if (!e->coeff.is_integer()) throw NotGP("non-integer multiple " + e->coeff.format() + " outside brackets");
        return Integer(e->coeff.rational_value().get_num()) * top(e->child());
      case ExprKind::Bracket:
        return bracket(e->child());
      case ExprKind::Monomial:
        if (!e->coeff.is_integer()) throw NotGP("term " + pretty(e) + " is not integer-valued");
        r.add(e->coeff.rational_value().get_num(), Hat{Coefficient(1), e->power, {}});
        return r;
      case ExprKind::Product: {
        r = top(e->children.front());
        for (std::size_t i = 1; i < e->children.size(); ++i) {
          SgpNormal next = top(e->children[i]);
          SgpNormal acc;
          for (const auto& a : r.terms) {
            for (const auto& b : next.terms) {
              acc.add(a.coeff * b.coeff, Hat{Coefficient(1), 0, {a.hat, b.hat}});
            }
          }
          r = std::move(acc);
        }
        return r;
      }
    }
    throw NotGP("unrecognized node");
  }

  SgpNormal bracket(const Expr& body) {
    std::vector<Hat> comps;
    for (auto& h : expand(body)) {
      Hat c = canonical(std::move(h));
      if (!c.is_zero()) comps.push_back(std::move(c));
    }
    long m = std::count_if(comps.begin(), comps.end(), [](const Hat& h) { return !h.is_integer_valued(); });
    if (m >= 2) {
      delta = std::min(delta, Rational(1, 4 * m));
      for (const auto& c : comps) {
        if (!c.is_integer_valued()) add_unique(constraints, c.to_expr());
      }
    }
    SgpNormal r;
    for (const auto& c : comps) r.add(Integer(1), c);
    return r;
  }

  // Real-valued components whose sum is the value of e.
  std::vector<Hat> expand(const Expr& e) {
    switch (e->kind) {
      case ExprKind::Monomial:
        return {Hat{e->coeff, e->power, {}}};
      case ExprKind::Scale: {
        auto parts = expand(e->child());
        for (auto& h : parts) h.coeff = e->coeff * h.coeff;
        return parts;
      }
      case ExprKind::Sum: {
        std::vector<Hat> out;
        for (const auto& c : e->children) {
          auto parts = expand(c);
          out.insert(out.end(), parts.begin(), parts.end());
        }
        return out;
      }
      case ExprKind::Product: {
        std::vector<Hat> acc{Hat{Coefficient(1), 0, {}}};
        for (const auto& c : e->children) {
          auto parts = expand(c);
          std::vector<Hat> next;
          for (const auto& a : acc) {
            for (const auto& b : parts) next.push_back(multiply(a, b));
          }
          acc = std::move(next);
        }
        return acc;
      }
      case ExprKind::Bracket: {
        SgpNormal inner = bracket(e->child());
        std::vector<Hat> out;
        for (const auto& t : inner.terms) out.push_back(Hat{Coefficient(Rational(t.coeff)), 0, {t.hat}});
        return out;
      }
    }
    throw NotGP("unrecognized node");
  }
};

// Certified bound u < 1/2 on |{x(m)}|; nullopt when {x(m)} is exactly 1/2.
std::optional<Rational> frac_abs_upper(PointEvaluator& ev, const Expr& x, const Integer& m) {
  Evaluation f = ev.frac(x, m);
  if (f.exact) {
    if (*f.exact == Rational(1, 2)) return std::nullopt;
    return abs(*f.exact);
  }
  const Rational half(1, 2);
  for (unsigned bits = f.precision_bits;;) {
    Rational lo = f.value.lower_rational();
    Rational hi = f.value.upper_rational();
    if (hi < half && lo > -half) return std::max(abs(lo), abs(hi));
    if (bits >= ev.policy().cap_bits) break;
    bits = std::min(bits * 2, ev.policy().cap_bits);
    f = PointEvaluator(PrecisionPolicy{bits, ev.policy().cap_bits}).frac(x, m);
  }
  throw Undecidable("{" + pretty(x) + "} at m=" + m.get_str() + " is not separated from 1/2 at the precision cap");
}

Integer binomial(unsigned p, unsigned s) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), p, s);
  return r;
}

Integer int_pow(const Integer& m, unsigned e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), m.get_mpz_t(), e);
  return r;
}

unsigned long node_bound(const Hat& h) {
  unsigned long b = 1UL << h.power;
  for (const auto& f : h.factors) b *= 1 + node_bound(f);
  return b;
}

struct NodeExpansion {
  Integer k;             // [H(m)]
  std::vector<Hat> q;    // Q_H
  std::size_t self = 0;  // index of H itself inside q
};

class Expander {
 public:
  Expander(const PrecisionPolicy& policy) : ev_(policy) {}

  std::vector<Expr> constraints;
  std::optional<Rational> delta1;

  NodeExpansion expand(const Hat& h, const Integer& m) {
    NodeExpansion out;
    Expr x = h.to_expr();
    auto u = frac_abs_upper(ev_, x, m);
    if (!u) throw NotGoodShift("m=" + m.get_str() + " is not good: {" + pretty(x) + "} = 1/2");
    Rational d1 = Rational(1, 2) - *u;
    if (!delta1 || d1 < *delta1) delta1 = d1;
    Evaluation v = ev_.eval(x, m);
    out.k = v.exact ? nearest_integer(*v.exact) : nearest_integer(v.value);

    std::vector<NodeExpansion> sub;
    for (const auto& f : h.factors) sub.push_back(expand(f, m));

    std::vector<std::size_t> choice(h.factors.size(), 0);  // 0 picks K_f, j picks q_f[j-1]
    for (unsigned s = 0; s <= h.power; ++s) {
      Coefficient base = h.coeff * Coefficient(Rational(binomial(h.power, s) * int_pow(m, h.power - s)));
      std::fill(choice.begin(), choice.end(), 0);
      while (true) {
        bool pure = s == 0;
        bool self = s == h.power;
        Hat q{base, s, {}};
        for (std::size_t i = 0; i < choice.size(); ++i) {
          if (choice[i] == 0) {
            q.coeff *= Coefficient(Rational(sub[i].k));
            self = false;
          } else {
            q.factors.push_back(sub[i].q[choice[i] - 1]);
            pure = false;
            if (choice[i] - 1 != sub[i].self) self = false;
          }
        }
        if (!pure) {
          q = canonical(std::move(q));
          if (!q.is_zero()) {
            if (self) out.self = out.q.size();
            if (!q.is_integer_valued()) add_unique(constraints, q.to_expr());
            out.q.push_back(std::move(q));
          }
        }
        std::size_t i = 0;
        for (; i < choice.size(); ++i) {
          if (++choice[i] <= sub[i].q.size()) break;
          choice[i] = 0;
        }
        if (i == choice.size()) break;
      }
    }
    return out;
  }

 private:
  PointEvaluator ev_;
};

Coefficient rounding_error(const Hat& f) {
  if (f.power == 1) return Coefficient(Rational(1, 2));
  return Coefficient(Rational(1, 2)) + f.coeff.abs() * rounding_error(f.factors.front());
}

// Accumulates |coefficients outside F| * errK(F) over maximal degree-1 nodes F.
void accumulate_bound(const Hat& h, const Coefficient& outside, Coefficient& acc) {
  if (h.degree() == 1) {
    acc += outside.abs() * rounding_error(h);
    return;
  }
  for (std::size_t i = 0; i < h.factors.size(); ++i) {
    Coefficient out = outside * h.coeff;
    for (std::size_t j = 0; j < h.factors.size(); ++j) {
      if (j != i) out *= h.factors[j].coefficient_product();
    }
    accumulate_bound(h.factors[i], out, acc);
  }
}

template <class F>
WindowCheck scan_window(long long lo, long long hi, const ConstraintSet& c, const PrecisionPolicy& policy, F&& same) {
  if (lo > hi) throw PreconditionError("empty window");
  WindowCheck w{lo, hi, 0, 0, {}};
  EnumerateOptions opts;
  opts.policy = policy;
  for (long long n : enumerate(c, lo, hi, opts)) {
    ++w.members;
    if (n != 0) ++w.nontrivial;
    if (!same(Integer(static_cast<long>(n)))) w.violations.push_back(n);
  }
  return w;
}

}  // namespace

std::vector<Hat> components(const Expr& p) {
  Reducer r;
  std::vector<Hat> out;
  for (auto& h : r.expand(p)) {
    Hat c = canonical(std::move(h));
    if (!c.is_zero()) out.push_back(std::move(c));
  }
  return out;
}

Coefficient leading_sum(const Expr& p) {
  auto comps = components(p);
  unsigned d = 0;
  for (const auto& c : comps) d = std::max(d, c.degree());
  Coefficient a;
  for (const auto& c : comps) {
    if (c.degree() == d) a += c.coefficient_product();
  }
  return a;
}

ReductionResult normalize_to_sgp(const Expr& p) {
  Reducer r;
  ReductionResult out;
  out.h = r.top(p);
  out.constraint_exprs = std::move(r.constraints);
  out.delta = r.delta;
  return out;
}

WindowCheck verify_reduction(const Expr& p, const ReductionResult& r, long long lo, long long hi,
                             const PrecisionPolicy& policy) {
  PointEvaluator ev(policy);
  Expr h = r.h.to_expr();
  return scan_window(lo, hi, r.constraint(), policy,
                     [&](const Integer& n) { return ev.eval_integer(p, n) == ev.eval_integer(h, n); });
}

bool is_good(const Integer& m, const SgpNormal& p, const PrecisionPolicy& policy) {
  if (sgn(m) == 0) throw PreconditionError("goodness is defined for m != 0");
  PointEvaluator ev(policy);
  for (const auto& t : p.terms) {
    for (const Hat* x : hat_nodes(t.hat)) {
      if (x->is_integer_valued()) continue;
      if (!frac_abs_upper(ev, x->to_expr(), m)) return false;
    }
  }
  return true;
}

ConstraintSet goodness_set(const SgpNormal& p, const Rational& delta) {
  if (sgn(delta) <= 0 || delta >= Rational(1, 4)) throw PreconditionError("goodness set needs 0 < delta < 1/4");
  std::vector<Expr> exprs;
  for (const auto& t : p.terms) {
    for (const Hat* x : hat_nodes(t.hat)) {
      if (!x->is_integer_valued()) add_unique(exprs, x->to_expr());
    }
  }
  return ConstraintSet(delta, exprs);
}

ConstraintSet ExpansionResult::constraint() const { return ConstraintSet(delta, constraint_exprs); }

ExpansionResult shift_expand(const SgpNormal& h, const std::vector<Integer>& shifts, const Rational& epsilon,
                             const PrecisionPolicy& policy) {
  if (sgn(epsilon) <= 0 || epsilon > Rational(1, 2)) throw PreconditionError("epsilon must lie in (0, 1/2]");
  ExpansionResult out;
  out.epsilon = epsilon;
  for (const auto& t : h.terms) {
    for (const Hat* x : hat_nodes(t.hat)) out.term_bound += node_bound(*x);
  }
  Expander ex(policy);
  for (const auto& m : shifts) {
    if (sgn(m) == 0) throw NotGoodShift("shift 0 is not allowed");
    ShiftTerms st{m, 0, {}};
    for (const auto& t : h.terms) {
      NodeExpansion e = ex.expand(t.hat, m);
      st.h_at_m += t.coeff * e.k;
      for (std::size_t i = 0; i < e.q.size(); ++i) {
        if (i != e.self) st.extra.add(t.coeff, e.q[i]);
      }
    }
    out.shifts.push_back(std::move(st));
  }
  out.constraint_exprs = std::move(ex.constraints);
  out.delta1_lower = ex.delta1.value_or(Rational(1, 2));
  Rational bound = std::min(out.delta1_lower, epsilon) / Rational(std::max(1UL, out.term_bound));
  Rational d = dyadic_floor(bound * Rational(99, 100), 64);
  out.delta = sgn(d) > 0 ? d : bound * Rational(99, 100);
  return out;
}

Derivative derivative(const SgpNormal& h, const Integer& m, const PrecisionPolicy& policy) {
  Derivative d;
  d.source = h;
  d.m = m;
  d.certification = shift_expand(h, {m}, Rational(1, 8), policy);
  d.d = d.certification.shifts.front().extra;

  unsigned deg = raw_degree(h);
  for (const auto& t : h.terms) {
    for (const Hat* x : hat_nodes(t.hat)) d.coefficient_magnitudes.push_back(std::abs(x->coeff.approx()));
  }
  if (deg <= 1) {
    // linear input: h(n+m) - h(n) - h(m) is constant and drops out
    d.within_bound = true;
    return d;
  }
  for (const auto& t : d.d.terms) {
    if (t.degree() == deg - 1) d.leading_d += Coefficient(Rational(t.coeff)) * t.hat.coefficient_product();
  }
  d.expected_leading = Coefficient(Rational(Integer(deg) * m)) * leading_sum(h);
  for (const auto& t : h.terms) {
    if (t.degree() == deg) accumulate_bound(t.hat, Coefficient(Rational(t.coeff)), d.error_bound);
  }
  Coefficient diff = d.leading_d - d.expected_leading;
  d.within_bound = diff.is_zero() || (d.error_bound - diff.abs()).sign(policy) >= 0;
  return d;
}

WindowCheck verify_derivative(const Derivative& d, long long lo, long long hi, const PrecisionPolicy& policy) {
  PointEvaluator ev(policy);
  Expr h = d.source.to_expr();
  Expr dd = d.d.to_expr();
  Integer hm = ev.eval_integer(h, d.m);
  return scan_window(lo, hi, d.certification.constraint(), policy, [&](const Integer& n) {
    return ev.eval_integer(h, n + d.m) - ev.eval_integer(h, n) - hm == ev.eval_integer(dd, n);
  });
}

}  // namespace genpoly
