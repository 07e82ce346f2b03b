#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "genpoly/sets.hpp"

namespace genpoly {

inline constexpr unsigned kChaconLevelCap = 20;
/// Blocks above this level are not materialized (|B_17| is already about 194 MB).
inline constexpr unsigned kChaconMaterializeCap = 16;

/// B_0 = "0", B_{n+1} = B_n B_n 1 B_n. Throws LevelTooLarge.
std::string chacon_block(unsigned level, unsigned cap = kChaconLevelCap);
/// |B_n| = (3^(n+1) - 1) / 2.
std::uint64_t chacon_length(unsigned level);
/// Two-sided Chacon point: x[-s_n, |B_n| - s_n) = B_n with s_0 = 0, s_{n+1} = s_n + |B_n|,
/// so the copy of B_n holding the origin is always the second B_n of B_{n+1} = B_n B_n 1 B_n.
int chacon_symbol(std::int64_t i);

enum class SystemKind { Chacon, FullShift, Rotation };

/// The three concrete systems together with their base point x.
struct SymbolicSystem {
  SystemKind kind = SystemKind::Chacon;
  unsigned alphabet = 2;       // full shift
  std::uint64_t seed = 0;      // full shift point
  Coefficient alpha;           // rotation
  Rational base_point;         // rotation, in [0, 1)

  static SymbolicSystem chacon();
  static SymbolicSystem full_shift(unsigned alphabet, std::uint64_t seed = 0);
  static SymbolicSystem rotation(const Coefficient& alpha, const Rational& base_point = 0);

  bool is_subshift() const { return kind != SystemKind::Rotation; }
  std::string name() const;
  /// Symbol of the base point at i (subshifts only).
  int symbol(std::int64_t i) const;
  /// x[offset, offset + length) as text.
  std::string word(const Integer& offset, unsigned length) const;
  /// Admissible words of the given length: the Chacon language read off B_12, or all words.
  std::vector<std::string> language(unsigned length) const;
};

/// A cylinder [word] anchored at coordinate 0, or an open arc (center - radius, center + radius).
struct OpenSetSpec {
  std::string word;
  Rational center;
  Rational radius;

  static OpenSetSpec cylinder(std::string word);
  static OpenSetSpec arc(const Rational& center, const Rational& radius);
  /// Throws PreconditionError when the set is empty or does not fit the system.
  void validate(const SymbolicSystem& sys) const;
};

struct OrbitTuple {
  std::vector<Integer> times;         // p_i(n)
  std::vector<double> coordinates;    // rotation: {x + p_i(n) alpha} in [0, 1)
};

OrbitTuple orbit_tuple(const SymbolicSystem& sys, const std::vector<Expr>& polys, const Integer& n,
                       const PrecisionPolicy& policy = default_precision_policy());

/// Certified circle coordinate frac01(x + t alpha), with t an integer time.
CertifiedReal rotation_coordinate(const SymbolicSystem& sys, const Integer& t, unsigned bits);
/// floor(grid * frac01(x + t alpha)), escalating precision until decided.
long rotation_cell(const SymbolicSystem& sys, const Integer& t, long grid, const PrecisionPolicy& policy);

enum class HitStatus { Hit, Miss, NotFoundWithinHorizon };
std::string to_string(HitStatus s);

/// Decides U ∩ T^{-t_1} V_1 ∩ ... ∩ T^{-t_d} V_d != ∅. Chacon searches occurrences of U's word in
/// x[-horizon, horizon] after ruling out cylinders that disagree on their overlap; the full shift
/// and rotations are decided exactly.
HitStatus intersects(const SymbolicSystem& sys, const OpenSetSpec& u, const std::vector<OpenSetSpec>& v,
                     const std::vector<Integer>& times, long long horizon = 100000,
                     const PrecisionPolicy& policy = default_precision_policy());

struct HittingReport {
  std::vector<long long> hits;
  std::vector<long long> not_found;  // undecided within the horizon
  long long misses = 0;
};

/// N(p, U, V) on [lo, hi].
HittingReport hitting_times(const SymbolicSystem& sys, const OpenSetSpec& u, const OpenSetSpec& v, const Expr& p,
                            long long lo, long long hi, long long horizon = 100000,
                            const EnumerateOptions& options = {});

struct DensityOptions {
  unsigned depth = 2;           // subshift word length
  long grid = 8;                // rotation cells per axis
  long long window_cap = 10'000'000;
  unsigned max_dim = 3;
  unsigned max_depth = 6;
  long max_grid = 64;
  unsigned jobs = 1;
  std::vector<long long> checkpoints;  // radii for the coverage curve; empty picks 1-2-5 steps
  PrecisionPolicy policy = default_precision_policy();
};

struct CoveragePoint {
  long long window_hi = 0;
  double coverage = 0;
  long long boxes_hit = 0;
};

struct DensityReport {
  std::vector<std::string> polys;
  std::string resolution;  // "depth 2" or "grid 8x8"
  long long lo = 0;
  long long hi = 0;
  long long boxes_total = 0;
  long long boxes_hit = 0;
  double coverage = 0;
  std::vector<std::string> missing;  // at most 20
  std::vector<CoveragePoint> curve;  // nested windows [max(lo,-R), min(hi,R)]
  bool monotone = true;
};

/// Fraction of admissible product boxes visited by (T^{p_1(n)} x, ..., T^{p_d(n)} x) for n in the
/// window. Throws PreconditionError on a degenerate system, ResolutionTooFine and CapExceeded.
DensityReport density_coverage(const SymbolicSystem& sys, const std::vector<Expr>& polys, long long lo, long long hi,
                               const DensityOptions& options = {});

std::string coverage_csv(const DensityReport& r);

struct SyndeticReport {
  WindowReport window;
  long long candidates = 0;       // members of C in the window
  long long not_found = 0;        // undecided within the horizon, counted as non-members
  std::string note;
};

/// N ∩ C on the window, classified. N = {n : U ∩ T^{-p_1(n)} V_1 ∩ ... != ∅}.
SyndeticReport syndetic_check(const SymbolicSystem& sys, const OpenSetSpec& u, const std::vector<OpenSetSpec>& v,
                              const std::vector<Expr>& polys, const ConstraintSet& c, long long lo, long long hi,
                              long long probe, long long horizon = 100000, const EnumerateOptions& options = {});

}  // namespace genpoly
