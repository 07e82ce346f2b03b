#include "genpoly/coefficient.hpp"

#include <atomic>
#include <cstdlib>
#include <numeric>
#include <unordered_map>

#include "genpoly/errors.hpp"

namespace genpoly {

namespace {

std::atomic<unsigned> g_cap_bits{0};

unsigned long squarefree_part(unsigned long k, unsigned long& outside) {
  outside = 1;
  for (unsigned long f = 2; f * f <= k; ++f) {
    while (k % (f * f) == 0) {
      k /= f * f;
      outside *= f;
    }
  }
  return k;
}

// Per-thread cache of the transcendental constants, keyed by precision.
struct ConstantCache {
  unsigned bits = 0;
  std::vector<CertifiedReal> pi_powers;
  std::vector<CertifiedReal> e_powers;
  std::unordered_map<unsigned long, CertifiedReal> roots;

  void reset(unsigned b) {
    bits = b;
    pi_powers.assign(1, CertifiedReal(Rational(1), b));
    e_powers.assign(1, CertifiedReal(Rational(1), b));
    roots.clear();
  }
  const CertifiedReal& pi_pow(unsigned k) {
    while (pi_powers.size() <= k) pi_powers.push_back(pi_powers.back() * CertifiedReal::pi(bits));
    return pi_powers[k];
  }
  const CertifiedReal& e_pow(unsigned k) {
    while (e_powers.size() <= k) e_powers.push_back(e_powers.back() * CertifiedReal::euler(bits));
    return e_powers[k];
  }
  const CertifiedReal& root(unsigned long r) {
    auto it = roots.find(r);
    if (it == roots.end()) it = roots.emplace(r, CertifiedReal::sqrt(r, bits)).first;
    return it->second;
  }
};

ConstantCache& cache_for(unsigned bits) {
  thread_local ConstantCache cache;
  if (cache.bits != bits) cache.reset(bits);
  return cache;
}

std::string basis_text(const CoefficientBasis& b) {
  std::string s;
  auto append = [&s](const std::string& part) {
    if (!s.empty()) s += "*";
    s += part;
  };
  if (b.radicand != 1) append("sqrt" + std::to_string(b.radicand));
  if (b.pi_power == 1) append("pi");
  if (b.pi_power > 1) append("pi^" + std::to_string(b.pi_power));
  if (b.e_power == 1) append("e");
  if (b.e_power > 1) append("e^" + std::to_string(b.e_power));
  return s;
}

}  // namespace

PrecisionPolicy default_precision_policy() {
  PrecisionPolicy p;
  unsigned cap = g_cap_bits.load();
  if (cap == 0) {
    if (const char* env = std::getenv("GENPOLY_PRECISION_CAP")) {
      long v = std::strtol(env, nullptr, 10);
      if (v >= 64) cap = static_cast<unsigned>(v);
    }
  }
  if (cap != 0) p.cap_bits = cap;
  if (p.start_bits > p.cap_bits) p.start_bits = p.cap_bits;
  return p;
}

void set_default_precision_cap(unsigned cap_bits) { g_cap_bits.store(cap_bits); }

Coefficient::Coefficient(const Rational& q) {
  if (sgn(q) != 0) terms_.emplace(CoefficientBasis{}, q);
}

Coefficient::Coefficient(long value) : Coefficient(Rational(value)) {}

Coefficient Coefficient::sqrt(unsigned long k) {
  unsigned long outside = 1;
  unsigned long inside = squarefree_part(k, outside);
  Coefficient c;
  if (k == 0) return c;
  c.add_term(CoefficientBasis{0, 0, inside}, Rational(static_cast<long>(outside)));
  return c;
}

Coefficient Coefficient::pi() {
  Coefficient c;
  c.add_term(CoefficientBasis{1, 0, 1}, Rational(1));
  return c;
}

Coefficient Coefficient::euler() {
  Coefficient c;
  c.add_term(CoefficientBasis{0, 1, 1}, Rational(1));
  return c;
}

Coefficient Coefficient::golden() {
  return Coefficient(Rational(1, 2)) + Coefficient(Rational(1, 2)) * sqrt(5);
}

void Coefficient::add_term(const CoefficientBasis& basis, const Rational& q) {
  if (sgn(q) == 0) return;
  auto [it, inserted] = terms_.emplace(basis, q);
  if (!inserted) {
    it->second += q;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

bool Coefficient::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

bool Coefficient::is_integer() const { return is_rational() && rational_value().get_den() == 1; }

bool Coefficient::is_one() const { return is_rational() && rational_value() == 1; }

Rational Coefficient::rational_value() const {
  if (terms_.empty()) return Rational(0);
  return terms_.begin()->second;
}

CertifiedReal Coefficient::enclose(unsigned precision_bits) const {
  if (terms_.empty()) return CertifiedReal(precision_bits);
  auto& cache = cache_for(precision_bits);
  CertifiedReal sum(precision_bits);
  for (const auto& [basis, q] : terms_) {
    if (basis.is_one()) {
      sum = sum + CertifiedReal(q, precision_bits);
      continue;
    }
    CertifiedReal t = cache.root(basis.radicand);
    if (basis.pi_power) t = t * cache.pi_pow(basis.pi_power);
    if (basis.e_power) t = t * cache.e_pow(basis.e_power);
    sum = sum + t * q;
  }
  return sum;
}

double Coefficient::approx() const { return enclose(64).midpoint_double(); }

int Coefficient::sign(const PrecisionPolicy& policy) const {
  if (terms_.empty()) return 0;
  if (is_rational()) return sgn(rational_value());
  // a combination of square roots alone is a nonzero algebraic number, but its sign still needs evaluation
  for (unsigned bits = policy.start_bits; bits <= policy.cap_bits; bits *= 2) {
    auto s = enclose(bits).sign();
    if (s && *s != 0) return *s;
    if (bits > policy.cap_bits / 2) break;
  }
  throw UndecidableZero("cannot separate " + format() + " from 0 at " +
                        std::to_string(policy.cap_bits) + " bits");
}

int Coefficient::sign() const { return sign(default_precision_policy()); }

Coefficient Coefficient::abs() const { return sign() < 0 ? -*this : *this; }

Coefficient Coefficient::operator-() const {
  Coefficient c = *this;
  for (auto& [basis, q] : c.terms_) q = -q;
  return c;
}

Coefficient Coefficient::pow(unsigned exponent) const {
  Coefficient result(1);
  for (unsigned i = 0; i < exponent; ++i) result = result * *this;
  return result;
}

Coefficient operator+(const Coefficient& a, const Coefficient& b) {
  Coefficient c = a;
  for (const auto& [basis, q] : b.terms_) c.add_term(basis, q);
  return c;
}

Coefficient operator-(const Coefficient& a, const Coefficient& b) { return a + (-b); }

Coefficient operator*(const Coefficient& a, const Coefficient& b) {
  Coefficient c;
  for (const auto& [ba, qa] : a.terms_) {
    for (const auto& [bb, qb] : b.terms_) {
      unsigned long g = std::gcd(ba.radicand, bb.radicand);
      CoefficientBasis basis{ba.pi_power + bb.pi_power, ba.e_power + bb.e_power,
                             (ba.radicand / g) * (bb.radicand / g)};
      c.add_term(basis, qa * qb * Rational(static_cast<long>(g)));
    }
  }
  return c;
}

std::strong_ordering operator<=>(const Coefficient& a, const Coefficient& b) {
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
    if (auto c = ia->first <=> ib->first; c != 0) return c;
    int q = cmp(ia->second, ib->second);
    if (q != 0) return q < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (ia == a.terms_.end() && ib == b.terms_.end()) return std::strong_ordering::equal;
  return ia == a.terms_.end() ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::string Coefficient::format() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [basis, q] : terms_) {
    Rational mag = q;
    bool negative = sgn(q) < 0;
    if (negative) mag = -q;
    std::string body;
    if (basis.is_one()) {
      body = mag.get_str();
    } else if (mag == 1) {
      body = basis_text(basis);
    } else {
      body = mag.get_str() + "*" + basis_text(basis);
    }
    if (first) {
      s = (negative ? "-" : "") + body;
      first = false;
    } else {
      s += (negative ? " - " : " + ") + body;
    }
  }
  return s;
}

}  // namespace genpoly
