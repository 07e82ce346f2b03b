#pragma once

#include <string>
#include <utility>
#include <vector>

#include "genpoly/eval.hpp"

namespace genpoly {

/// C = { n : {g_k(n)} in (-eps_k, eps_k) for every k }. Each expression carries its own eps, so
/// intersections stay exact.
struct ConstraintSet {
  std::vector<std::pair<Expr, Rational>> constraints;

  ConstraintSet() = default;
  ConstraintSet(const Rational& eps, const std::vector<Expr>& exprs);
  bool empty() const { return constraints.empty(); }
  /// Common eps when all constraints share one, else the minimum.
  Rational min_eps() const;
  void add(const Expr& g, const Rational& eps);
};

/// Certified membership; throws Undecidable with the offending n.
bool member(const ConstraintSet& c, const Integer& n, const PrecisionPolicy& policy = default_precision_policy());

struct EnumerateOptions {
  long long window_cap = 10'000'000;
  unsigned jobs = 1;
  PrecisionPolicy policy = default_precision_policy();
};

/// Members of C in [lo, hi], sorted. Throws WindowTooLarge past the cap.
std::vector<long long> enumerate(const ConstraintSet& c, long long lo, long long hi,
                                 const EnumerateOptions& options = {});

ConstraintSet intersect(const ConstraintSet& a, const ConstraintSet& b);

enum class VerdictKind { HoldsOnWindow, FailsOnWindow, Vacuous };
std::string to_string(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::Vacuous;
  long long bound = 0;    // holds: gap bound or run length
  long long witness = 0;  // fails: where it breaks
  std::string note;
};

/// Gap and run statistics of an integer set inside a finite window. Every verdict speaks
/// only about the window.
struct WindowReport {
  long long lo = 0;
  long long hi = 0;
  std::vector<long long> members;
  long long max_gap = 0;       // between consecutive members
  long long head_margin = 0;   // first member - lo
  long long tail_margin = 0;   // hi - last member
  long long max_run = 0;       // longest block of consecutive integers
  long long probe = 1;
  Verdict syndetic;
  Verdict thick;
  Verdict thickly_syndetic;
};

/// `members` must be sorted, unique and inside [lo, hi].
WindowReport classify(const std::vector<long long>& members, long long lo, long long hi, long long probe);

}  // namespace genpoly
