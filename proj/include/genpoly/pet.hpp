#pragma once

#include <string>
#include <vector>

#include "genpoly/calculus.hpp"

namespace genpoly {

/// r(n) = 10^10 M^2 / L^2 (n + 1), with M and L the max and min of
/// {deg p_i, |A(p_i)|, |A(p_i - p_j)|} over the system.
struct RSchedule {
  Coefficient M;
  Coefficient L;

  CertifiedReal at(const Integer& n, unsigned bits = 256) const;
  /// Smallest integer strictly above |prev| + r(|prev|); prev = nullopt stands for k_{-1} = 0 and gives r(0).
  Integer threshold_after(const std::optional<Integer>& prev) const;
};

/// Needs every degree >= 2 and a non-degenerate system. Throws UndecidableZero if L cannot be
/// separated from 0.
RSchedule r_schedule(const std::vector<SgpNormal>& system,
                     const PrecisionPolicy& policy = default_precision_policy());

/// Throws SpacingViolation naming the first offending index.
void check_spacing(const RSchedule& r, const std::vector<Integer>& shifts);

/// count shifts obeying the spacing, each good for every member. Scans |k| upward from the
/// threshold, positive before negative.
std::vector<Integer> choose_shifts(const std::vector<SgpNormal>& system, std::size_t count,
                                   const PrecisionPolicy& policy = default_precision_policy());

struct SeparationFailure {
  int i = -1;  // index into the q-system
  int j = -1;  // -1: |A(q_i)| >> 1 failed
  std::string detail;
};

struct QijResult {
  std::vector<SgpNormal> sorted;       // input, stably sorted by degree
  std::vector<std::size_t> order;      // sorted[k] = input[order[k]]
  std::size_t linear_count = 0;        // w: members of degree 1
  std::vector<Integer> shifts;
  std::vector<std::vector<SgpNormal>> q;  // q[i][j] for i > w (all i when w = 0)
  std::vector<SgpNormal> next_system;     // P'
  WeightVector phi_before;
  WeightVector phi_after;
  ConstraintSet certification;
  std::vector<SeparationFailure> separation_failures;
  Rational threshold;
};

/// q_ij = D(p_i, k_j) + p_i - p_1. Throws SpacingViolation, NotGoodShift, DescentFailure and
/// PreconditionError (degenerate input).
QijResult build_qij(const std::vector<SgpNormal>& system, const std::vector<Integer>& shifts,
                    const Rational& threshold = kDefaultThreshold,
                    const PrecisionPolicy& policy = default_precision_policy());

struct PetStep {
  WeightVector phi;
  std::vector<Integer> shifts;
  std::size_t size = 0;
  std::size_t separation_failures = 0;
};

struct PetRun {
  std::vector<PetStep> steps;
  WeightVector final_phi;
  std::vector<SgpNormal> final_system;
  bool reached_linear = false;
};

/// Repeats build_qij with `per_step` chosen shifts until every member has degree <= 1.
PetRun pet_reduce(const std::vector<SgpNormal>& system, std::size_t per_step = 1, std::size_t max_steps = 50,
                  const Rational& threshold = kDefaultThreshold,
                  const PrecisionPolicy& policy = default_precision_policy());

}  // namespace genpoly
