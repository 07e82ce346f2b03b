#include "genpoly/sets.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "genpoly/errors.hpp"

namespace genpoly {

ConstraintSet::ConstraintSet(const Rational& eps, const std::vector<Expr>& exprs) {
  for (const auto& e : exprs) add(e, eps);
}

void ConstraintSet::add(const Expr& g, const Rational& eps) {
  if (sgn(eps) <= 0 || eps > Rational(1, 2)) throw PreconditionError("eps must lie in (0, 1/2], got " + eps.get_str());
  constraints.emplace_back(g, eps);
}

Rational ConstraintSet::min_eps() const {
  if (constraints.empty()) return Rational(1, 2);
  Rational m = constraints.front().second;
  for (const auto& [g, eps] : constraints) m = std::min(m, eps);
  return m;
}

namespace {

// Membership against one evaluator, so enumerate reuses coefficient caches across n.
bool member_with(PointEvaluator& ev, const ConstraintSet& c, const Integer& n) {
  for (const auto& [g, eps] : c.constraints) {
    Evaluation f;
    try {
      f = ev.frac(g, n);
    } catch (const TieUndecidable&) {
      // g(n) sits on a half-integer to within the enclosure width w (exact cancellations do
      // this), so |{g(n)}| >= 1/2 - w and membership is still decided when eps is below that
      Evaluation v = ev.eval(g, n);
      Rational w = v.value.upper_rational() - v.value.lower_rational();
      if (eps < Rational(1, 2) - w) return false;
      throw;
    }
    if (f.exact) {
      if (!(*f.exact > -eps && *f.exact < eps)) return false;
      continue;
    }
    // escalate until the enclosure clears +-eps; a value equal to +-eps stays undecided
    bool decided = false;
    for (unsigned bits = f.precision_bits;;) {
      auto below = f.value.less_than(eps);
      auto above = f.value.greater_than(-eps);
      if (below && above) {
        if (!*below || !*above) return false;
        decided = true;
        break;
      }
      if (bits >= ev.policy().cap_bits) break;
      bits = std::min(bits * 2, ev.policy().cap_bits);
      f = PointEvaluator(PrecisionPolicy{bits, ev.policy().cap_bits}).frac(g, n);
    }
    if (!decided) {
      throw Undecidable("membership of n=" + n.get_str() + " in {" + pretty(g) + "} < " + eps.get_str() +
                        " is undecided at the precision cap");
    }
  }
  return true;
}

}  // namespace

bool member(const ConstraintSet& c, const Integer& n, const PrecisionPolicy& policy) {
  PointEvaluator ev(policy);
  return member_with(ev, c, n);
}

std::vector<long long> enumerate(const ConstraintSet& c, long long lo, long long hi, const EnumerateOptions& options) {
  if (lo > hi) throw PreconditionError("empty window " + std::to_string(lo) + ":" + std::to_string(hi));
  if (hi - lo > options.window_cap) {
    throw WindowTooLarge("window width " + std::to_string(hi - lo) + " exceeds cap " + std::to_string(options.window_cap));
  }
  unsigned jobs = std::max(1u, options.jobs);
  long long width = hi - lo + 1;
  if (width < 4096) jobs = 1;
  std::vector<std::vector<long long>> parts(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  auto work = [&](unsigned k) {
    try {
      PointEvaluator ev(options.policy);
      long long a = lo + width * k / jobs;
      long long b = lo + width * (k + 1) / jobs;
      for (long long n = a; n < b; ++n) {
        if (member_with(ev, c, Integer(static_cast<long>(n)))) parts[k].push_back(n);
      }
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned k = 0; k < jobs; ++k) threads.emplace_back(work, k);
    for (auto& t : threads) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<long long> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

ConstraintSet intersect(const ConstraintSet& a, const ConstraintSet& b) {
  ConstraintSet r = a;
  r.constraints.insert(r.constraints.end(), b.constraints.begin(), b.constraints.end());
  return r;
}

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::HoldsOnWindow: return "holds-on-window";
    case VerdictKind::FailsOnWindow: return "fails-on-window";
    case VerdictKind::Vacuous: return "vacuous";
  }
  return "";
}

namespace {

struct GapStats {
  long long max_gap = 0;
  long long head = 0;
  long long tail = 0;
  long long worst_at = 0;  // start of the widest gap (or margin)
};

GapStats gaps(const std::vector<long long>& s, long long lo, long long hi) {
  GapStats g;
  g.head = s.front() - lo;
  g.tail = hi - s.back();
  for (std::size_t i = 1; i < s.size(); ++i) {
    long long d = s[i] - s[i - 1];
    if (d > g.max_gap) {
      g.max_gap = d;
      g.worst_at = s[i - 1];
    }
  }
  return g;
}

// Syndetic on the window: every window point sees a member within `bound` steps, where the
// bound covers interior gaps and both margins. Bounds above half the width say nothing.
Verdict syndetic_verdict(const std::vector<long long>& s, long long lo, long long hi) {
  Verdict v;
  if (s.empty()) {
    v.kind = VerdictKind::Vacuous;
    v.note = "empty set on window";
    return v;
  }
  GapStats g = gaps(s, lo, hi);
  long long bound = std::max({g.max_gap, g.head + 1, g.tail + 1});
  long long width = hi - lo + 1;
  if (bound <= std::max<long long>(1, width / 2)) {
    v.kind = VerdictKind::HoldsOnWindow;
    v.bound = bound;
    v.note = "gap bound " + std::to_string(bound) + " on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
  } else {
    v.kind = VerdictKind::FailsOnWindow;
    v.bound = bound;
    v.witness = g.head + 1 == bound ? lo : (g.tail + 1 == bound ? s.back() : g.worst_at);
    v.note = "gap of " + std::to_string(bound) + " exceeds half the window";
  }
  return v;
}

}  // namespace

WindowReport classify(const std::vector<long long>& members, long long lo, long long hi, long long probe) {
  if (probe < 1) throw PreconditionError("probe length must be positive");
  WindowReport r;
  r.lo = lo;
  r.hi = hi;
  r.members = members;
  r.probe = probe;
  if (members.empty()) {
    r.syndetic = r.thick = r.thickly_syndetic = Verdict{VerdictKind::Vacuous, 0, 0, "empty set on window"};
    return r;
  }
  GapStats g = gaps(members, lo, hi);
  r.max_gap = members.size() == 1 ? 0 : g.max_gap;
  r.head_margin = g.head;
  r.tail_margin = g.tail;
  long long run = 1;
  long long best = 1;
  long long best_start = members.front();
  long long start = members.front();
  for (std::size_t i = 1; i < members.size(); ++i) {
    if (members[i] == members[i - 1] + 1) {
      ++run;
    } else {
      run = 1;
      start = members[i];
    }
    if (run > best) {
      best = run;
      best_start = start;
    }
  }
  r.max_run = best;
  r.syndetic = syndetic_verdict(members, lo, hi);
  if (members.size() == 1) r.syndetic.note += " (single member)";

  if (best >= probe) {
    r.thick = Verdict{VerdictKind::HoldsOnWindow, best, best_start, "run of " + std::to_string(best) + " from " + std::to_string(best_start)};
  } else {
    r.thick = Verdict{VerdictKind::FailsOnWindow, best, best_start, "longest run " + std::to_string(best) + " < probe " + std::to_string(probe)};
  }

  // starts n with [n, n + probe] inside the set, judged on [lo, hi - probe]
  std::vector<long long> starts;
  std::size_t j = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (j < i) j = i;
    while (j + 1 < members.size() && members[j + 1] == members[j] + 1) ++j;
    // members[i..j] is consecutive
    if (members[j] - members[i] >= probe && members[i] <= hi - probe) starts.push_back(members[i]);
  }
  if (hi - probe < lo) {
    r.thickly_syndetic = Verdict{VerdictKind::FailsOnWindow, 0, lo, "probe longer than the window"};
  } else if (starts.empty()) {
    r.thickly_syndetic = Verdict{VerdictKind::FailsOnWindow, 0, lo, "no run of length " + std::to_string(probe + 1)};
  } else {
    r.thickly_syndetic = syndetic_verdict(starts, lo, hi - probe);
    r.thickly_syndetic.note = "run starts: " + r.thickly_syndetic.note;
  }
  return r;
}

}  // namespace genpoly
