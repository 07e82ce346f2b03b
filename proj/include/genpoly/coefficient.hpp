#pragma once

#include <compare>
#include <map>
#include <string>

#include "genpoly/certified_real.hpp"

namespace genpoly {

/// Basis element pi^pi_power * e^e_power * sqrt(radicand), radicand square-free (1 means no root).
struct CoefficientBasis {
  unsigned pi_power = 0;
  unsigned e_power = 0;
  unsigned long radicand = 1;

  auto operator<=>(const CoefficientBasis&) const = default;
  bool is_one() const { return pi_power == 0 && e_power == 0 && radicand == 1; }
};

/// Real coefficient: a finite Q-linear combination of basis products, kept in canonical form.
/// Products of square roots are reduced (sqrt2*sqrt2 = 2), so canonical equality is exact
/// equality whenever pi and e do not appear. With pi or e present, zero and sign decisions go
/// through interval separation.
class Coefficient {
 public:
  using Terms = std::map<CoefficientBasis, Rational>;

  Coefficient() = default;
  Coefficient(const Rational& q);  // NOLINT(google-explicit-constructor)
  Coefficient(long value);         // NOLINT(google-explicit-constructor)

  static Coefficient sqrt(unsigned long k);
  static Coefficient pi();
  static Coefficient euler();
  static Coefficient golden();

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  bool is_integer() const;
  bool is_one() const;
  /// Precondition: is_rational().
  Rational rational_value() const;
  const Terms& terms() const { return terms_; }

  /// Enclosure at the requested working precision; nested as precision grows.
  CertifiedReal enclose(unsigned precision_bits) const;
  double approx() const;

  /// Certified sign in {-1, 0, 1}. Escalates precision; throws UndecidableZero at the cap.
  int sign(const PrecisionPolicy& policy) const;
  int sign() const;
  Coefficient abs() const;

  Coefficient operator-() const;
  Coefficient pow(unsigned exponent) const;
  friend Coefficient operator+(const Coefficient& a, const Coefficient& b);
  friend Coefficient operator-(const Coefficient& a, const Coefficient& b);
  friend Coefficient operator*(const Coefficient& a, const Coefficient& b);
  Coefficient& operator+=(const Coefficient& b) { return *this = *this + b; }
  Coefficient& operator*=(const Coefficient& b) { return *this = *this * b; }

  friend bool operator==(const Coefficient& a, const Coefficient& b) { return a.terms_ == b.terms_; }
  friend std::strong_ordering operator<=>(const Coefficient& a, const Coefficient& b);

  /// Text in the expression grammar, e.g. "1/2 + 2*sqrt3*pi^2".
  std::string format() const;
  /// True when format() is a single product (safe to juxtapose with `*`).
  bool is_single_term() const { return terms_.size() <= 1; }

 private:
  void add_term(const CoefficientBasis& basis, const Rational& q);
  Terms terms_;
};

/// Precision schedule used when none is passed explicitly; the cap honors GENPOLY_PRECISION_CAP.
PrecisionPolicy default_precision_policy();
void set_default_precision_cap(unsigned cap_bits);

}  // namespace genpoly
