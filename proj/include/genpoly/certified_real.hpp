#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>

namespace genpoly {

using Integer = mpz_class;
using Rational = mpq_class;

/// Working-precision schedule: start, then double on an undecided outcome up to the cap.
struct PrecisionPolicy {
  unsigned start_bits = 128;
  unsigned cap_bits = 4096;
};

/// Closed interval [lower, upper] with MPFR endpoints, rounded outward on every operation.
/// The true value is always inside. A point interval (lower == upper) is exact.
class CertifiedReal {
 public:
  explicit CertifiedReal(unsigned precision_bits = 128);
  CertifiedReal(const Rational& value, unsigned precision_bits);
  CertifiedReal(const Integer& value, unsigned precision_bits);
  CertifiedReal(const CertifiedReal& other);
  CertifiedReal(CertifiedReal&& other) noexcept;
  CertifiedReal& operator=(const CertifiedReal& other);
  CertifiedReal& operator=(CertifiedReal&& other) noexcept;
  ~CertifiedReal();

  static CertifiedReal pi(unsigned precision_bits);
  static CertifiedReal euler(unsigned precision_bits);
  static CertifiedReal sqrt(unsigned long radicand, unsigned precision_bits);
  /// Interval hull of two endpoints given as rationals (lower <= upper required).
  static CertifiedReal hull(const Rational& lower, const Rational& upper, unsigned precision_bits);

  unsigned precision_bits() const { return precision_; }
  mpfr_srcptr lower() const { return lo_; }
  mpfr_srcptr upper() const { return hi_; }
  Rational lower_rational() const;
  Rational upper_rational() const;
  double lower_double() const;
  double upper_double() const;
  double midpoint_double() const;

  bool is_point() const;
  bool contains(const Rational& q) const;
  bool contains(const CertifiedReal& other) const;
  /// True iff upper - lower < 2^exponent (certified, rounding the width upward).
  bool width_below_pow2(long exponent) const;
  double width_double() const;

  /// +1 / -1 when the sign is certain, 0 for the exact point zero, nullopt when the interval straddles 0.
  std::optional<int> sign() const;
  /// Certified comparisons against an exact rational; nullopt when the interval overlaps q.
  std::optional<bool> less_than(const Rational& q) const;
  std::optional<bool> greater_than(const Rational& q) const;

  CertifiedReal operator-() const;
  CertifiedReal abs() const;
  CertifiedReal pow(unsigned exponent) const;

  friend CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b);
  friend CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b);
  friend CertifiedReal operator*(const CertifiedReal& a, const CertifiedReal& b);
  friend CertifiedReal operator+(const CertifiedReal& a, const Rational& q);
  friend CertifiedReal operator*(const CertifiedReal& a, const Rational& q);
  friend CertifiedReal operator*(const CertifiedReal& a, const Integer& z);
  /// Division by an interval that does not contain 0.
  friend CertifiedReal operator/(const CertifiedReal& a, const CertifiedReal& b);

  std::string to_string(int digits = 20) const;

 private:
  void init(unsigned precision_bits);

  mpfr_t lo_;
  mpfr_t hi_;
  unsigned precision_ = 0;
};

/// Nearest integer with ties to the smaller integer: the unique k with x in (k - 1/2, k + 1/2].
Integer nearest_integer(const Rational& x);
/// Same convention for an enclosure; nullopt when the enclosure straddles a half-integer.
std::optional<Integer> try_nearest_integer(const CertifiedReal& x);
/// Throws TieUndecidable when the enclosure straddles a half-integer.
Integer nearest_integer(const CertifiedReal& x);

/// Fractional part x - nearest_integer(x), in (-1/2, 1/2].
Rational frac(const Rational& x);

/// Floor of a rational lower bound rounded to a dyadic grid 2^-bits (used to pick clean deltas).
Rational dyadic_floor(const Rational& x, unsigned bits);

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

}  // namespace genpoly
