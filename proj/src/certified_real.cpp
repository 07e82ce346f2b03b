#include "genpoly/certified_real.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "genpoly/errors.hpp"

namespace genpoly {

namespace {

unsigned joint(const CertifiedReal& a, const CertifiedReal& b) {
  return std::max(a.precision_bits(), b.precision_bits());
}

// mpfr wants an mpq_srcptr; gmpxx hands out get_mpq_t() on non-const only in old versions
mpq_srcptr q_ptr(const Rational& q) { return q.get_mpq_t(); }

}  // namespace

void CertifiedReal::init(unsigned precision_bits) {
  precision_ = std::max(precision_bits, 16u);
  mpfr_init2(lo_, precision_);
  mpfr_init2(hi_, precision_);
}

CertifiedReal::CertifiedReal(unsigned precision_bits) {
  init(precision_bits);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

CertifiedReal::CertifiedReal(const Rational& value, unsigned precision_bits) {
  init(precision_bits);
  mpfr_set_q(lo_, q_ptr(value), MPFR_RNDD);
  mpfr_set_q(hi_, q_ptr(value), MPFR_RNDU);
}

CertifiedReal::CertifiedReal(const Integer& value, unsigned precision_bits) {
  init(precision_bits);
  mpfr_set_z(lo_, value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_, value.get_mpz_t(), MPFR_RNDU);
}

CertifiedReal::CertifiedReal(const CertifiedReal& other) {
  init(other.precision_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

CertifiedReal::CertifiedReal(CertifiedReal&& other) noexcept {
  init(other.precision_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

CertifiedReal& CertifiedReal::operator=(const CertifiedReal& other) {
  if (this == &other) return *this;
  if (precision_ != other.precision_) {
    mpfr_set_prec(lo_, other.precision_);
    mpfr_set_prec(hi_, other.precision_);
    precision_ = other.precision_;
  }
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
  return *this;
}

CertifiedReal& CertifiedReal::operator=(CertifiedReal&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  std::swap(precision_, other.precision_);
  return *this;
}

CertifiedReal::~CertifiedReal() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

CertifiedReal CertifiedReal::pi(unsigned precision_bits) {
  CertifiedReal r(precision_bits);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::euler(unsigned precision_bits) {
  CertifiedReal r(precision_bits);
  mpfr_set_ui(r.lo_, 1, MPFR_RNDN);
  mpfr_exp(r.lo_, r.lo_, MPFR_RNDD);
  mpfr_set_ui(r.hi_, 1, MPFR_RNDN);
  mpfr_exp(r.hi_, r.hi_, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::sqrt(unsigned long radicand, unsigned precision_bits) {
  CertifiedReal r(precision_bits);
  mpfr_sqrt_ui(r.lo_, radicand, MPFR_RNDD);
  mpfr_sqrt_ui(r.hi_, radicand, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::hull(const Rational& lower, const Rational& upper,
                                  unsigned precision_bits) {
  CertifiedReal r(precision_bits);
  mpfr_set_q(r.lo_, q_ptr(lower), MPFR_RNDD);
  mpfr_set_q(r.hi_, q_ptr(upper), MPFR_RNDU);
  return r;
}

Rational CertifiedReal::lower_rational() const {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return q;
}

Rational CertifiedReal::upper_rational() const {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return q;
}

double CertifiedReal::lower_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double CertifiedReal::upper_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double CertifiedReal::midpoint_double() const {
  mpfr_t m;
  mpfr_init2(m, precision_ + 1);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  double d = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  return d;
}

bool CertifiedReal::is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }

bool CertifiedReal::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_, q_ptr(q)) <= 0 && mpfr_cmp_q(hi_, q_ptr(q)) >= 0;
}

bool CertifiedReal::contains(const CertifiedReal& other) const {
  return mpfr_lessequal_p(lo_, other.lo_) && mpfr_greaterequal_p(hi_, other.hi_);
}

bool CertifiedReal::width_below_pow2(long exponent) const {
  mpfr_t w;
  mpfr_init2(w, precision_);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  bool ok = mpfr_zero_p(w) || mpfr_cmp_si_2exp(w, 1, exponent) < 0;
  mpfr_clear(w);
  return ok;
}

double CertifiedReal::width_double() const {
  mpfr_t w;
  mpfr_init2(w, precision_);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}

std::optional<int> CertifiedReal::sign() const {
  if (mpfr_sgn(lo_) > 0) return 1;
  if (mpfr_sgn(hi_) < 0) return -1;
  if (mpfr_zero_p(lo_) && mpfr_zero_p(hi_)) return 0;
  return std::nullopt;
}

std::optional<bool> CertifiedReal::less_than(const Rational& q) const {
  if (mpfr_cmp_q(hi_, q_ptr(q)) < 0) return true;
  if (mpfr_cmp_q(lo_, q_ptr(q)) >= 0) return false;
  return std::nullopt;
}

std::optional<bool> CertifiedReal::greater_than(const Rational& q) const {
  if (mpfr_cmp_q(lo_, q_ptr(q)) > 0) return true;
  if (mpfr_cmp_q(hi_, q_ptr(q)) <= 0) return false;
  return std::nullopt;
}

CertifiedReal CertifiedReal::operator-() const {
  CertifiedReal r(precision_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::abs() const {
  if (mpfr_sgn(lo_) >= 0) return *this;
  if (mpfr_sgn(hi_) <= 0) return -*this;
  CertifiedReal r(precision_);
  mpfr_set_zero(r.lo_, 1);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  if (mpfr_greater_p(hi_, r.hi_)) mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::pow(unsigned exponent) const {
  CertifiedReal result(Rational(1), precision_);
  CertifiedReal base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b) {
  CertifiedReal r(joint(a, b));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b) {
  CertifiedReal r(joint(a, b));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

CertifiedReal operator*(const CertifiedReal& a, const CertifiedReal& b) {
  CertifiedReal r(joint(a, b));
  // sign-case shortcuts cover the common positive*positive path without four products
  if (mpfr_sgn(a.lo_) >= 0 && mpfr_sgn(b.lo_) >= 0) {
    mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }
  mpfr_t t;
  mpfr_init2(t, r.precision_);
  mpfr_srcptr as[2] = {a.lo_, a.hi_};
  mpfr_srcptr bs[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : as) {
    for (auto y : bs) {
      if (first) {
        mpfr_mul(r.lo_, x, y, MPFR_RNDD);
        mpfr_mul(r.hi_, x, y, MPFR_RNDU);
        first = false;
        continue;
      }
      mpfr_mul(t, x, y, MPFR_RNDD);
      mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    }
  }
  mpfr_clear(t);
  return r;
}

CertifiedReal operator+(const CertifiedReal& a, const Rational& q) {
  CertifiedReal r(a.precision_);
  mpfr_add_q(r.lo_, a.lo_, q_ptr(q), MPFR_RNDD);
  mpfr_add_q(r.hi_, a.hi_, q_ptr(q), MPFR_RNDU);
  return r;
}

CertifiedReal operator*(const CertifiedReal& a, const Rational& q) {
  CertifiedReal r(a.precision_);
  if (sgn(q) >= 0) {
    mpfr_mul_q(r.lo_, a.lo_, q_ptr(q), MPFR_RNDD);
    mpfr_mul_q(r.hi_, a.hi_, q_ptr(q), MPFR_RNDU);
  } else {
    mpfr_mul_q(r.lo_, a.hi_, q_ptr(q), MPFR_RNDD);
    mpfr_mul_q(r.hi_, a.lo_, q_ptr(q), MPFR_RNDU);
  }
  return r;
}

CertifiedReal operator*(const CertifiedReal& a, const Integer& z) {
  CertifiedReal r(a.precision_);
  if (sgn(z) >= 0) {
    mpfr_mul_z(r.lo_, a.lo_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(r.hi_, a.hi_, z.get_mpz_t(), MPFR_RNDU);
  } else {
    mpfr_mul_z(r.lo_, a.hi_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(r.hi_, a.lo_, z.get_mpz_t(), MPFR_RNDU);
  }
  return r;
}

CertifiedReal operator/(const CertifiedReal& a, const CertifiedReal& b) {
  if (!b.sign() || *b.sign() == 0) throw Undecidable("division by an interval containing 0");
  CertifiedReal inv(b.precision_);
  mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
  return a * inv;
}

std::string CertifiedReal::to_string(int digits) const {
  if (is_point()) {
    Rational q = lower_rational();
    if (q.get_den() == 1) return q.get_str();
  }
  char* lo = nullptr;
  char* hi = nullptr;
  mpfr_asprintf(&lo, "%.*RDg", digits, lo_);
  mpfr_asprintf(&hi, "%.*RUg", digits, hi_);
  std::string s = std::string("[") + lo + ", " + hi + "]";
  mpfr_free_str(lo);
  mpfr_free_str(hi);
  return s;
}

Integer nearest_integer(const Rational& x) {
  // k = ceil(x - 1/2): the smaller integer wins at exact halves
  Rational shifted = x - Rational(1, 2);
  Integer k;
  mpz_cdiv_q(k.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  return k;
}

std::optional<Integer> try_nearest_integer(const CertifiedReal& x) {
  Integer fl;
  mpfr_get_z(fl.get_mpz_t(), x.upper(), MPFR_RNDD);
  // candidate k from the upper endpoint, then confirm the lower endpoint sits in (k-1/2, k+1/2]
  Rational half_above = Rational(fl) + Rational(1, 2);
  Integer k = (mpfr_cmp_q(x.upper(), half_above.get_mpq_t()) <= 0) ? fl : Integer(fl + 1);
  Rational half_below = Rational(k) - Rational(1, 2);
  if (mpfr_cmp_q(x.lower(), half_below.get_mpq_t()) > 0) return k;
  return std::nullopt;
}

Integer nearest_integer(const CertifiedReal& x) {
  if (auto k = try_nearest_integer(x)) return *k;
  throw TieUndecidable("enclosure " + x.to_string() + " straddles a half-integer at " +
                       std::to_string(x.precision_bits()) + " bits");
}

Rational frac(const Rational& x) { return x - Rational(nearest_integer(x)); }

Rational dyadic_floor(const Rational& x, unsigned bits) {
  Integer scaled;
  Rational s = x * Rational(Integer(1) << bits);
  mpz_fdiv_q(scaled.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  Rational r(scaled, Integer(1) << bits);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw SyntaxError(0, "rational number", "empty text");
  try {
    auto slash = text.find('/');
    auto dot = text.find('.');
    if (slash != std::string::npos) {
      Rational q(Integer(text.substr(0, slash)), Integer(text.substr(slash + 1)));
      if (q.get_den() == 0) throw SyntaxError(slash + 1, "nonzero denominator", text);
      q.canonicalize();
      return q;
    }
    if (dot != std::string::npos) {
      std::string whole = text.substr(0, dot);
      std::string fraction = text.substr(dot + 1);
      bool negative = !whole.empty() && whole[0] == '-';
      if (negative || (!whole.empty() && whole[0] == '+')) whole = whole.substr(1);
      if (whole.empty()) whole = "0";
      Integer den = 1;
      for (std::size_t i = 0; i < fraction.size(); ++i) den *= 10;
      Integer num = Integer(whole) * den + (fraction.empty() ? Integer(0) : Integer(fraction));
      Rational q(negative ? Integer(-num) : num, den);
      q.canonicalize();
      return q;
    }
    return Rational(Integer(text[0] == '+' ? text.substr(1) : text));
  } catch (const std::invalid_argument&) {
    throw SyntaxError(0, "rational number", text);
  }
}

}  // namespace genpoly
