#pragma once

#include <optional>
#include <string>
#include <vector>

#include "genpoly/sgp.hpp"

namespace genpoly {

/// Degree after merging identical terms; 0 for the zero polynomial.
unsigned degree(const SgpNormal& p);
/// Maximum degree over the terms as written (no merging).
unsigned raw_degree(const SgpNormal& p);

/// A(p): sum over the maximal-degree terms as written of int_coeff * (product of the term's
/// coefficients). Opposite terms are not cancelled first.
Coefficient leading_sum(const SgpNormal& p);

/// p ~ q: equal degree and the merged difference has lower degree.
bool equivalent(const SgpNormal& p, const SgpNormal& q);

/// Class counts per degree, trailing zeros trimmed.
using WeightVector = std::vector<unsigned long>;
WeightVector weight_vector(const std::vector<SgpNormal>& system);
/// u < v iff at the largest index where they differ, u is smaller.
bool pet_less(const WeightVector& u, const WeightVector& v);
std::string format_weight_vector(const WeightVector& w);

struct NondegeneracyReport {
  bool nondegenerate = true;
  /// Violating index (single) or pair; -1 when unused.
  int i = -1;
  int j = -1;
  std::string reason;
  std::vector<Coefficient> leading_sums;  // A(p_i)
};
/// Requires A(p_i) != 0 and A(p_i - p_j) != 0, the difference merged first.
/// Throws UndecidableZero when some value cannot be separated from 0.
NondegeneracyReport nondegenerate(const std::vector<SgpNormal>& system,
                                  const PrecisionPolicy& policy = default_precision_policy());

/// a >> b at threshold N: a > N (b + 1), certified. Needs a > 0 and b >= 0.
/// Throws Undecidable when the enclosures overlap the threshold.
bool much_greater(const CertifiedReal& a, const CertifiedReal& b, const Rational& threshold);
/// a ~= b: |a| >> |a - b| and |b| >> |a - b|.
bool approx(const CertifiedReal& a, const CertifiedReal& b, const Rational& threshold);
/// Escalating-precision forms on exact coefficients.
bool much_greater(const Coefficient& a, const Coefficient& b, const Rational& threshold,
                  const PrecisionPolicy& policy = default_precision_policy());
bool approx(const Coefficient& a, const Coefficient& b, const Rational& threshold,
            const PrecisionPolicy& policy = default_precision_policy());

inline const Rational kDefaultThreshold{1000};

}  // namespace genpoly
