#include "genpoly/pet.hpp"

#include <algorithm>
#include <numeric>

#include "genpoly/errors.hpp"

namespace genpoly {

namespace {

bool coefficient_less(const Coefficient& a, const Coefficient& b, const PrecisionPolicy& policy) {
  return (a - b).sign(policy) < 0;
}

Integer floor_upper(const CertifiedReal& x) {
  Rational u = x.upper_rational();
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), u.get_num_mpz_t(), u.get_den_mpz_t());
  return f;
}

void dedupe(std::vector<SgpNormal>& system) {
  std::vector<SgpNormal> out;
  for (auto& p : system) {
    bool seen = std::any_of(out.begin(), out.end(), [&](const SgpNormal& q) { return structurally_equal(p, q); });
    if (!seen && !p.empty()) out.push_back(std::move(p));
  }
  system = std::move(out);
}

}  // namespace

CertifiedReal RSchedule::at(const Integer& n, unsigned bits) const {
  CertifiedReal m = M.enclose(bits);
  CertifiedReal l = L.enclose(bits);
  CertifiedReal ratio = m / l;
  return (ratio * ratio) * Rational(Integer(10000000000L) * (n + 1));
}

Integer RSchedule::threshold_after(const std::optional<Integer>& prev) const {
  if (!prev) return floor_upper(at(Integer(0))) + 1;
  Integer a = abs(*prev);
  return floor_upper(at(a) + Rational(a)) + 1;
}

RSchedule r_schedule(const std::vector<SgpNormal>& system, const PrecisionPolicy& policy) {
  if (system.empty()) throw PreconditionError("r_schedule needs a non-empty system");
  std::vector<Coefficient> values;
  for (const auto& p : system) {
    unsigned d = degree(p);
    if (d < 2) throw PreconditionError("r_schedule needs degree >= 2, got " + std::to_string(d));
    values.emplace_back(static_cast<long>(d));
    values.push_back(leading_sum(p).abs());
  }
  for (std::size_t i = 0; i < system.size(); ++i) {
    for (std::size_t j = i + 1; j < system.size(); ++j) values.push_back(leading_sum(combine(system[i] - system[j])).abs());
  }
  RSchedule r{values.front(), values.front()};
  for (const auto& v : values) {
    if (coefficient_less(r.M, v, policy)) r.M = v;
    if (coefficient_less(v, r.L, policy)) r.L = v;
  }
  if (r.L.sign(policy) == 0) throw UndecidableZero("L = 0: the system is degenerate");
  return r;
}

void check_spacing(const RSchedule& r, const std::vector<Integer>& shifts) {
  std::optional<Integer> prev;
  for (std::size_t j = 0; j < shifts.size(); ++j) {
    if (abs(shifts[j]) < r.threshold_after(prev)) {
      throw SpacingViolation("|k_" + std::to_string(j) + "| = " + Integer(abs(shifts[j])).get_str() + " does not exceed " +
                             (prev ? "|k_" + std::to_string(j - 1) + "| + r(|k_" + std::to_string(j - 1) + "|)" : "r(0)"));
    }
    prev = shifts[j];
  }
}

std::vector<Integer> choose_shifts(const std::vector<SgpNormal>& system, std::size_t count, const PrecisionPolicy& policy) {
  RSchedule r = r_schedule(system, policy);
  std::vector<Integer> out;
  std::optional<Integer> prev;
  auto good = [&](const Integer& k) {
    return std::all_of(system.begin(), system.end(), [&](const SgpNormal& p) { return is_good(k, p, policy); });
  };
  while (out.size() < count) {
    for (Integer t = r.threshold_after(prev);; ++t) {
      if (good(t)) {
        out.push_back(t);
        break;
      }
      if (good(-t)) {
        out.push_back(-t);
        break;
      }
    }
    prev = out.back();
  }
  return out;
}

QijResult build_qij(const std::vector<SgpNormal>& system, const std::vector<Integer>& shifts,
                    const Rational& threshold, const PrecisionPolicy& policy) {
  if (system.empty()) throw PreconditionError("empty system");
  QijResult out;
  out.threshold = threshold;
  out.shifts = shifts;
  out.order.resize(system.size());
  std::iota(out.order.begin(), out.order.end(), 0);
  std::stable_sort(out.order.begin(), out.order.end(),
                   [&](std::size_t a, std::size_t b) { return degree(system[a]) < degree(system[b]); });
  for (std::size_t k : out.order) out.sorted.push_back(combine(system[k]));
  const auto& P = out.sorted;

  auto nd = nondegenerate(P, policy);
  if (!nd.nondegenerate) throw PreconditionError("degenerate system: " + nd.reason);
  for (const auto& p : P) {
    if (degree(p) == 1) ++out.linear_count;
  }
  const std::size_t w = out.linear_count;
  std::vector<SgpNormal> high(P.begin() + static_cast<long>(w), P.end());
  if (!high.empty()) {
    if (shifts.empty()) throw PreconditionError("at least one shift is needed");
    check_spacing(r_schedule(high, policy), shifts);
  }

  for (std::size_t i = 1; i < w; ++i) out.next_system.push_back(combine(P[i] - P[0]));
  bool first = true;
  for (const auto& p : high) {
    std::vector<SgpNormal> row;
    for (const auto& k : shifts) {
      Derivative d = derivative(p, k, policy);
      SgpNormal q = combine(d.d + p - P[0]);
      row.push_back(q);
      out.next_system.push_back(q);
      ConstraintSet c = d.certification.constraint();
      out.certification = first ? c : intersect(out.certification, c);
      first = false;
    }
    out.q.push_back(std::move(row));
  }
  dedupe(out.next_system);

  out.phi_before = weight_vector(P);
  out.phi_after = weight_vector(out.next_system);
  if (!pet_less(out.phi_after, out.phi_before)) {
    throw DescentFailure("weight vector did not decrease: " + format_weight_vector(out.phi_after) +
                         " >= " + format_weight_vector(out.phi_before));
  }

  const Coefficient one(1);
  const auto& Q = out.next_system;
  for (std::size_t i = 0; i < Q.size(); ++i) {
    Coefficient a = leading_sum(Q[i]).abs();
    if (a.is_zero() || !much_greater(a, one, threshold, policy)) {
      out.separation_failures.push_back({static_cast<int>(i), -1, "|A| = " + a.format()});
    }
    for (std::size_t j = i + 1; j < Q.size(); ++j) {
      Coefficient b = leading_sum(combine(Q[i] - Q[j])).abs();
      if (b.is_zero() || !much_greater(b, one, threshold, policy)) {
        out.separation_failures.push_back({static_cast<int>(i), static_cast<int>(j), "|A(difference)| = " + b.format()});
      }
    }
  }
  return out;
}

PetRun pet_reduce(const std::vector<SgpNormal>& system, std::size_t per_step, std::size_t max_steps,
                  const Rational& threshold, const PrecisionPolicy& policy) {
  PetRun run;
  std::vector<SgpNormal> P = system;
  auto max_degree = [](const std::vector<SgpNormal>& s) {
    unsigned m = 0;
    for (const auto& p : s) m = std::max(m, degree(p));
    return m;
  };
  for (std::size_t step = 0; step < max_steps && max_degree(P) > 1; ++step) {
    std::vector<SgpNormal> high;
    for (const auto& p : P) {
      if (degree(p) >= 2) high.push_back(combine(p));
    }
    std::vector<Integer> K = choose_shifts(high, per_step, policy);
    QijResult q = build_qij(P, K, threshold, policy);
    run.steps.push_back({q.phi_before, K, P.size(), q.separation_failures.size()});
    P = std::move(q.next_system);
  }
  run.final_phi = weight_vector(P);
  run.reached_linear = max_degree(P) <= 1;
  run.final_system = std::move(P);
  return run;
}

}  // namespace genpoly
