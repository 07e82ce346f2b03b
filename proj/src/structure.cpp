#include "genpoly/structure.hpp"

#include <algorithm>

#include "genpoly/errors.hpp"

namespace genpoly {

unsigned raw_degree(const SgpNormal& p) {
  unsigned d = 0;
  for (const auto& t : p.terms) d = std::max(d, t.degree());
  return d;
}

unsigned degree(const SgpNormal& p) { return raw_degree(combine(p)); }

Coefficient leading_sum(const SgpNormal& p) {
  unsigned d = raw_degree(p);
  Coefficient a;
  for (const auto& t : p.terms) {
    if (t.degree() == d) a += Coefficient(Rational(t.coeff)) * t.hat.coefficient_product();
  }
  return a;
}

bool equivalent(const SgpNormal& p, const SgpNormal& q) {
  unsigned dp = degree(p);
  if (dp != degree(q)) return false;
  if (dp == 0) return true;
  return degree(p - q) < dp;
}

WeightVector weight_vector(const std::vector<SgpNormal>& system) {
  std::vector<std::vector<const SgpNormal*>> classes;  // representatives, indexed by degree
  for (const auto& p : system) {
    unsigned d = degree(p);
    if (d == 0) continue;
    if (classes.size() < d) classes.resize(d);
    auto& reps = classes[d - 1];
    bool found = std::any_of(reps.begin(), reps.end(), [&](const SgpNormal* r) { return equivalent(*r, p); });
    if (!found) reps.push_back(&p);
  }
  WeightVector w;
  for (const auto& reps : classes) w.push_back(reps.size());
  while (!w.empty() && w.back() == 0) w.pop_back();
  return w;
}

bool pet_less(const WeightVector& u, const WeightVector& v) {
  std::size_t n = std::max(u.size(), v.size());
  for (std::size_t k = n; k-- > 0;) {
    unsigned long a = k < u.size() ? u[k] : 0;
    unsigned long b = k < v.size() ? v[k] : 0;
    if (a != b) return a < b;
  }
  return false;
}

std::string format_weight_vector(const WeightVector& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(w[i]);
  }
  return s + ")";
}

NondegeneracyReport nondegenerate(const std::vector<SgpNormal>& system, const PrecisionPolicy& policy) {
  NondegeneracyReport r;
  for (std::size_t i = 0; i < system.size(); ++i) {
    Coefficient a = leading_sum(system[i]);
    r.leading_sums.push_back(a);
    if (r.nondegenerate && a.sign(policy) == 0) {
      r.nondegenerate = false;
      r.i = static_cast<int>(i);
      r.reason = "A(p_" + std::to_string(i + 1) + ") = 0";
    }
  }
  if (!r.nondegenerate) return r;
  for (std::size_t i = 0; i < system.size(); ++i) {
    for (std::size_t j = i + 1; j < system.size(); ++j) {
      Coefficient a = leading_sum(combine(system[i] - system[j]));
      if (a.sign(policy) == 0) {
        r.nondegenerate = false;
        r.i = static_cast<int>(i);
        r.j = static_cast<int>(j);
        r.reason = "A(p_" + std::to_string(i + 1) + " - p_" + std::to_string(j + 1) + ") = 0";
        return r;
      }
    }
  }
  return r;
}

bool much_greater(const CertifiedReal& a, const CertifiedReal& b, const Rational& threshold) {
  auto sa = a.sign();
  if (!sa || *sa <= 0) throw PreconditionError("much_greater needs a > 0, got " + a.to_string());
  auto sb = b.sign();
  if (sb && *sb < 0) throw PreconditionError("much_greater needs b >= 0, got " + b.to_string());
  CertifiedReal rhs = (b + Rational(1)) * threshold;
  CertifiedReal gap = a - rhs;
  auto s = gap.sign();
  if (s && *s > 0) return true;
  if (s && *s <= 0) return false;
  if (mpfr_lessequal_p(a.upper(), rhs.lower())) return false;
  throw Undecidable("cannot decide " + a.to_string() + " >> " + b.to_string() + " at N=" + threshold.get_str());
}

bool approx(const CertifiedReal& a, const CertifiedReal& b, const Rational& threshold) {
  CertifiedReal diff = (a - b).abs();
  CertifiedReal aa = a.abs();
  CertifiedReal bb = b.abs();
  if (!aa.sign() || *aa.sign() == 0 || !bb.sign() || *bb.sign() == 0) return false;
  return much_greater(aa, diff, threshold) && much_greater(bb, diff, threshold);
}

namespace {

template <class F>
bool escalate(const PrecisionPolicy& policy, F&& decide) {
  for (unsigned bits = policy.start_bits;; bits = std::min(bits * 2, policy.cap_bits)) {
    try {
      return decide(bits);
    } catch (const Undecidable&) {
      if (bits >= policy.cap_bits) throw;
    }
  }
}

}  // namespace

bool much_greater(const Coefficient& a, const Coefficient& b, const Rational& threshold,
                  const PrecisionPolicy& policy) {
  if (a.sign(policy) <= 0) throw PreconditionError("much_greater needs a > 0, got " + a.format());
  if (b.sign(policy) < 0) throw PreconditionError("much_greater needs b >= 0, got " + b.format());
  Coefficient gap = a - (b + Coefficient(1)) * Coefficient(threshold);
  return gap.sign(policy) > 0;
}

bool approx(const Coefficient& a, const Coefficient& b, const Rational& threshold, const PrecisionPolicy& policy) {
  return escalate(policy, [&](unsigned bits) { return approx(a.enclose(bits), b.enclose(bits), threshold); });
}

}  // namespace genpoly
