#include "genpoly/dynamics.hpp"

#include <algorithm>
#include <climits>
#include <exception>
#include <map>
#include <set>
#include <thread>
#include <unordered_map>

#include "genpoly/calculus.hpp"
#include "genpoly/errors.hpp"

namespace genpoly {

namespace {

constexpr unsigned kLookupLevels = 38;  // |B_38| < 2^63
constexpr unsigned kTableLevel = 12;

const std::string& chacon_table() {
  static const std::string table = chacon_block(kTableLevel);
  return table;
}

// B_level is a prefix of every later block, so small levels read straight from the table.
int block_symbol(unsigned level, std::uint64_t idx) {
  while (level > kTableLevel) {
    std::uint64_t len = chacon_length(level - 1);
    if (idx >= len) {
      if (idx < 2 * len) {
        idx -= len;
      } else if (idx == 2 * len) {
        return 1;
      } else {
        idx -= 2 * len + 1;
      }
    }
    --level;
  }
  return chacon_table()[idx] - '0';
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::int64_t to_index(const Integer& t) {
  if (!t.fits_slong_p()) throw CapExceeded("time " + t.get_str() + " is outside the indexed range of the point");
  return t.get_si();
}

Integer floor_of(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

// Runs fn(job, begin, end) over [0, count) split into contiguous chunks.
template <class Fn>
void run_jobs(unsigned jobs, std::size_t count, Fn&& fn) {
  jobs = std::max(1u, jobs);
  if (count < 2048) jobs = 1;
  std::vector<std::exception_ptr> errors(jobs);
  auto work = [&](unsigned k) {
    try {
      fn(k, count * k / jobs, count * (k + 1) / jobs);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(work, k);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<Integer> times_at(PointEvaluator& ev, const std::vector<Expr>& polys, const Integer& n) {
  std::vector<Integer> t;
  t.reserve(polys.size());
  for (const auto& p : polys) t.push_back(ev.eval_integer(p, n));
  return t;
}

// Signed circle offset of z from the nearest integer, in (-1/2, 1/2].
CertifiedReal lift(const CertifiedReal& z) {
  auto k = try_nearest_integer(z);
  if (!k) throw TieUndecidable("lift");
  return z + Rational(-*k);
}

class HitTester {
 public:
  HitTester(const SymbolicSystem& sys, const OpenSetSpec& u, const std::vector<OpenSetSpec>& v, long long horizon,
            const PrecisionPolicy& policy)
      : sys_(sys), u_(u), v_(v), horizon_(horizon), policy_(policy) {
    u.validate(sys);
    for (const auto& s : v) s.validate(sys);
    if (sys.kind == SystemKind::Chacon) {
      if (horizon <= 0) throw PreconditionError("horizon must be positive");
      std::size_t pad = u.word.size();
      for (const auto& s : v) pad = std::max(pad, s.word.size());
      seg_lo_ = -horizon - static_cast<long long>(pad);
      seg_.reserve(static_cast<std::size_t>(2 * (horizon + static_cast<long long>(pad)) + 1));
      for (long long i = seg_lo_; i <= horizon + static_cast<long long>(pad); ++i) seg_.push_back(static_cast<char>('0' + chacon_symbol(i)));
      for (std::size_t p = seg_.find(u.word); p != std::string::npos; p = seg_.find(u.word, p + 1)) {
        long long j = seg_lo_ + static_cast<long long>(p);
        if (j >= -horizon && j <= horizon) occurrences_.push_back(j);
      }
      std::stable_sort(occurrences_.begin(), occurrences_.end(),
                       [](long long a, long long b) { return std::llabs(a) < std::llabs(b); });
    }
  }

  HitStatus test(const std::vector<Integer>& times) const {
    if (times.size() != v_.size()) throw PreconditionError("one time per target set is required");
    switch (sys_.kind) {
      case SystemKind::Rotation:
        return test_rotation(times);
      case SystemKind::FullShift:
        return test_full(times);
      case SystemKind::Chacon:
        return test_chacon(times);
    }
    return HitStatus::Miss;
  }

 private:
  bool matches(long long at, const std::string& w) const {
    for (std::size_t k = 0; k < w.size(); ++k) {
      long long i = at + static_cast<long long>(k);
      long long local = i - seg_lo_;
      int s = local >= 0 && local < static_cast<long long>(seg_.size()) ? seg_[static_cast<std::size_t>(local)] - '0'
                                                                         : chacon_symbol(i);
      if (s != w[k] - '0') return false;
    }
    return true;
  }

  HitStatus test_chacon(const std::vector<Integer>& times) const {
    if (!cylinders_compatible(times)) return HitStatus::Miss;
    std::vector<long long> t;
    for (const auto& x : times) t.push_back(to_index(x));
    for (long long j : occurrences_) {
      bool ok = true;
      for (std::size_t i = 0; i < t.size() && ok; ++i) ok = matches(j + t[i], v_[i].word);
      if (ok) return HitStatus::Hit;
    }
    return HitStatus::NotFoundWithinHorizon;
  }

  // Cylinders pinned at 0 and t_i can share a point iff they agree wherever they overlap.
  bool cylinders_compatible(const std::vector<Integer>& times) const {
    std::map<Integer, char> fixed;
    auto place = [&](const Integer& at, const std::string& w) {
      for (std::size_t k = 0; k < w.size(); ++k) {
        auto [it, fresh] = fixed.emplace(at + static_cast<unsigned long>(k), w[k]);
        if (!fresh && it->second != w[k]) return false;
      }
      return true;
    };
    if (!place(Integer(0), u_.word)) return false;
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (!place(times[i], v_[i].word)) return false;
    }
    return true;
  }

  HitStatus test_full(const std::vector<Integer>& times) const {
    return cylinders_compatible(times) ? HitStatus::Hit : HitStatus::Miss;
  }

  // Arcs have radius < 1/4, so every arc meeting U lifts to one interval near c_U and the
  // intersection is an interval problem on the line.
  HitStatus test_rotation(const std::vector<Integer>& times) const {
    if (sys_.alpha.is_rational()) {
      std::vector<Rational> d;
      for (std::size_t i = 0; i < times.size(); ++i) {
        Rational z = v_[i].center - Rational(times[i]) * sys_.alpha.rational_value() - u_.center;
        Rational delta = frac(z);
        if (!(abs(delta) < u_.radius + v_[i].radius)) return HitStatus::Miss;
        d.push_back(delta);
      }
      for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = i + 1; j < d.size(); ++j) {
          if (!(abs(d[i] - d[j]) < v_[i].radius + v_[j].radius)) return HitStatus::Miss;
        }
      }
      return HitStatus::Hit;
    }
    for (unsigned bits = policy_.start_bits;; bits = std::min(bits * 2, policy_.cap_bits)) {
      try {
        CertifiedReal a = sys_.alpha.enclose(bits);
        std::vector<CertifiedReal> d;
        bool undecided = false;
        for (std::size_t i = 0; i < times.size(); ++i) {
          CertifiedReal z = (a * times[i]) * Rational(-1) + (v_[i].center - u_.center);
          d.push_back(lift(z));
          auto close = d.back().abs().less_than(u_.radius + v_[i].radius);
          if (!close) {
            undecided = true;
          } else if (!*close) {
            return HitStatus::Miss;
          }
        }
        for (std::size_t i = 0; i < d.size() && !undecided; ++i) {
          for (std::size_t j = i + 1; j < d.size(); ++j) {
            auto close = (d[i] - d[j]).abs().less_than(v_[i].radius + v_[j].radius);
            if (!close) {
              undecided = true;
            } else if (!*close) {
              return HitStatus::Miss;
            }
          }
        }
        if (!undecided) return HitStatus::Hit;
      } catch (const TieUndecidable&) {
      }
      if (bits >= policy_.cap_bits) break;
    }
    throw Undecidable("arc intersection undecided at the precision cap");
  }

  const SymbolicSystem& sys_;
  OpenSetSpec u_;
  std::vector<OpenSetSpec> v_;
  long long horizon_;
  PrecisionPolicy policy_;
  long long seg_lo_ = 0;
  std::string seg_;
  std::vector<long long> occurrences_;
};

std::vector<long long> default_checkpoints(long long radius) {
  std::vector<long long> out;
  for (long long scale = 1; scale <= radius && scale <= LLONG_MAX / 10; scale *= 10) {
    for (long long m : {1LL, 2LL, 5LL}) {
      if (m * scale < radius) out.push_back(m * scale);
    }
  }
  out.push_back(radius);
  return out;
}

}  // namespace

std::uint64_t chacon_length(unsigned level) {
  std::uint64_t len = 1;
  for (unsigned k = 0; k < level; ++k) len = 3 * len + 1;
  return len;
}

std::string chacon_block(unsigned level, unsigned cap) {
  if (level > cap) throw LevelTooLarge("Chacon level " + std::to_string(level) + " exceeds cap " + std::to_string(cap));
  if (level > kChaconMaterializeCap) {
    throw LevelTooLarge("Chacon level " + std::to_string(level) + " has " + std::to_string(chacon_length(level)) +
                        " symbols; blocks above level " + std::to_string(kChaconMaterializeCap) +
                        " are served symbol by symbol");
  }
  std::string b = "0";
  for (unsigned k = 0; k < level; ++k) {
    std::string next;
    next.reserve(3 * b.size() + 1);
    next += b;
    next += b;
    next += '1';
    next += b;
    b = std::move(next);
  }
  return b;
}

int chacon_symbol(std::int64_t i) {
  std::uint64_t s = 0;  // s_n
  for (unsigned n = 0; n <= kLookupLevels; ++n) {
    std::uint64_t len = chacon_length(n);
    std::int64_t lo = -static_cast<std::int64_t>(s);
    std::int64_t hi = static_cast<std::int64_t>(len - s);
    if (i >= lo && i < hi) return block_symbol(n, static_cast<std::uint64_t>(i - lo));
    s += len;
  }
  throw CapExceeded("index " + std::to_string(i) + " is outside the indexed range of the Chacon point");
}

SymbolicSystem SymbolicSystem::chacon() { return SymbolicSystem{}; }

SymbolicSystem SymbolicSystem::full_shift(unsigned alphabet, std::uint64_t seed) {
  if (alphabet < 2 || alphabet > 10) throw PreconditionError("full shift alphabet must have 2..10 letters");
  SymbolicSystem s;
  s.kind = SystemKind::FullShift;
  s.alphabet = alphabet;
  s.seed = seed;
  return s;
}

SymbolicSystem SymbolicSystem::rotation(const Coefficient& alpha, const Rational& base_point) {
  if (base_point < 0 || base_point >= 1) throw PreconditionError("rotation base point must lie in [0, 1)");
  SymbolicSystem s;
  s.kind = SystemKind::Rotation;
  s.alpha = alpha;
  s.base_point = base_point;
  return s;
}

std::string SymbolicSystem::name() const {
  switch (kind) {
    case SystemKind::Chacon:
      return "chacon";
    case SystemKind::FullShift:
      return "full-shift(" + std::to_string(alphabet) + ")";
    case SystemKind::Rotation:
      return "rotation(" + alpha.format() + ")";
  }
  return {};
}

int SymbolicSystem::symbol(std::int64_t i) const {
  switch (kind) {
    case SystemKind::Chacon:
      return chacon_symbol(i);
    case SystemKind::FullShift:
      return static_cast<int>(splitmix64(seed ^ (static_cast<std::uint64_t>(i) * 0xd1b54a32d192ed03ULL)) % alphabet);
    case SystemKind::Rotation:
      break;
  }
  throw PreconditionError("a rotation has no symbols");
}

std::string SymbolicSystem::word(const Integer& offset, unsigned length) const {
  std::int64_t at = to_index(offset);
  std::string w;
  w.reserve(length);
  for (unsigned k = 0; k < length; ++k) w.push_back(static_cast<char>('0' + symbol(at + k)));
  return w;
}

std::vector<std::string> SymbolicSystem::language(unsigned length) const {
  if (length == 0) return {""};
  if (kind == SystemKind::Chacon) {
    const std::string& t = chacon_table();
    std::set<std::string> words;
    for (std::size_t i = 0; i + length <= t.size(); ++i) words.insert(t.substr(i, length));
    return {words.begin(), words.end()};
  }
  if (kind == SystemKind::FullShift) {
    std::vector<std::string> out{""};
    for (unsigned k = 0; k < length; ++k) {
      std::vector<std::string> next;
      for (const auto& w : out) {
        for (unsigned a = 0; a < alphabet; ++a) next.push_back(w + static_cast<char>('0' + a));
      }
      out = std::move(next);
    }
    return out;
  }
  throw PreconditionError("a rotation has no language");
}

OpenSetSpec OpenSetSpec::cylinder(std::string word) {
  OpenSetSpec s;
  s.word = std::move(word);
  return s;
}

OpenSetSpec OpenSetSpec::arc(const Rational& center, const Rational& radius) {
  OpenSetSpec s;
  s.center = center;
  s.radius = radius;
  return s;
}

void OpenSetSpec::validate(const SymbolicSystem& sys) const {
  if (sys.kind == SystemKind::Rotation) {
    if (!(radius > 0 && radius < Rational(1, 4))) throw PreconditionError("arc radius must lie in (0, 1/4)");
    if (center < 0 || center >= 1) throw PreconditionError("arc center must lie in [0, 1)");
    return;
  }
  if (word.empty()) throw PreconditionError("cylinder word is empty");
  for (char ch : word) {
    if (ch < '0' || ch >= static_cast<char>('0' + sys.alphabet)) throw PreconditionError("cylinder word '" + word + "' uses a letter outside the alphabet");
  }
  if (sys.kind == SystemKind::Chacon && chacon_table().find(word) == std::string::npos) {
    throw PreconditionError("cylinder word '" + word + "' does not occur in the Chacon language");
  }
}

CertifiedReal rotation_coordinate(const SymbolicSystem& sys, const Integer& t, unsigned bits) {
  if (sys.alpha.is_rational()) {
    Rational y = sys.base_point + Rational(t) * sys.alpha.rational_value();
    return CertifiedReal(y - Rational(floor_of(y)), bits);
  }
  CertifiedReal y = sys.alpha.enclose(bits) * t + sys.base_point;
  return y + Rational(-floor_of(y.lower_rational()));
}

long rotation_cell(const SymbolicSystem& sys, const Integer& t, long grid, const PrecisionPolicy& policy) {
  auto wrap = [grid](const Integer& f) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), f.get_mpz_t(), static_cast<unsigned long>(grid));
    return r.get_si();
  };
  if (sys.alpha.is_rational()) {
    return wrap(floor_of((sys.base_point + Rational(t) * sys.alpha.rational_value()) * grid));
  }
  for (unsigned bits = policy.start_bits;; bits = std::min(bits * 2, policy.cap_bits)) {
    CertifiedReal y = (sys.alpha.enclose(bits) * t + sys.base_point) * Rational(grid);
    Integer a = floor_of(y.lower_rational());
    Integer b = floor_of(y.upper_rational());
    if (a == b) return wrap(a);
    if (bits >= policy.cap_bits) break;
  }
  throw Undecidable("grid cell of time " + t.get_str() + " undecided at the precision cap");
}

OrbitTuple orbit_tuple(const SymbolicSystem& sys, const std::vector<Expr>& polys, const Integer& n,
                       const PrecisionPolicy& policy) {
  PointEvaluator ev(policy);
  OrbitTuple out;
  out.times = times_at(ev, polys, n);
  if (sys.kind == SystemKind::Rotation) {
    for (const auto& t : out.times) out.coordinates.push_back(rotation_coordinate(sys, t, policy.start_bits).midpoint_double());
  }
  return out;
}

std::string to_string(HitStatus s) {
  switch (s) {
    case HitStatus::Hit:
      return "hit";
    case HitStatus::Miss:
      return "miss";
    case HitStatus::NotFoundWithinHorizon:
      return "not found within horizon";
  }
  return {};
}

HitStatus intersects(const SymbolicSystem& sys, const OpenSetSpec& u, const std::vector<OpenSetSpec>& v,
                     const std::vector<Integer>& times, long long horizon, const PrecisionPolicy& policy) {
  return HitTester(sys, u, v, horizon, policy).test(times);
}

HittingReport hitting_times(const SymbolicSystem& sys, const OpenSetSpec& u, const OpenSetSpec& v, const Expr& p,
                            long long lo, long long hi, long long horizon, const EnumerateOptions& options) {
  if (lo > hi) throw PreconditionError("empty window");
  if (hi - lo > options.window_cap) throw WindowTooLarge("window width " + std::to_string(hi - lo) + " exceeds cap");
  HitTester tester(sys, u, {v}, horizon, options.policy);
  auto count = static_cast<std::size_t>(hi - lo + 1);
  std::vector<HittingReport> parts(std::max(1u, options.jobs));
  run_jobs(options.jobs, count, [&](unsigned k, std::size_t a, std::size_t b) {
    PointEvaluator ev(options.policy);
    for (std::size_t idx = a; idx < b; ++idx) {
      long long n = lo + static_cast<long long>(idx);
      HitStatus s = tester.test({ev.eval_integer(p, Integer(static_cast<long>(n)))});
      if (s == HitStatus::Hit) parts[k].hits.push_back(n);
      if (s == HitStatus::NotFoundWithinHorizon) parts[k].not_found.push_back(n);
      if (s == HitStatus::Miss) ++parts[k].misses;
    }
  });
  HittingReport out;
  for (auto& r : parts) {
    out.hits.insert(out.hits.end(), r.hits.begin(), r.hits.end());
    out.not_found.insert(out.not_found.end(), r.not_found.begin(), r.not_found.end());
    out.misses += r.misses;
  }
  return out;
}

DensityReport density_coverage(const SymbolicSystem& sys, const std::vector<Expr>& polys, long long lo, long long hi,
                               const DensityOptions& options) {
  const std::size_t d = polys.size();
  if (d == 0) throw PreconditionError("at least one polynomial is required");
  if (d > options.max_dim) throw CapExceeded("dimension " + std::to_string(d) + " exceeds cap " + std::to_string(options.max_dim));
  if (lo > hi) throw PreconditionError("empty window");
  if (hi - lo > options.window_cap) throw WindowTooLarge("window width " + std::to_string(hi - lo) + " exceeds cap");

  std::vector<SgpNormal> normal;
  for (const auto& p : polys) normal.push_back(normalize_to_sgp(p).h);
  auto nd = nondegenerate(normal, options.policy);
  if (!nd.nondegenerate) throw PreconditionError("degenerate system: " + nd.reason);

  DensityReport r;
  for (const auto& p : polys) r.polys.push_back(pretty(p));
  r.lo = lo;
  r.hi = hi;

  std::vector<std::string> words;
  std::unordered_map<std::string, long long> word_id;
  long long per_axis = 0;
  if (sys.is_subshift()) {
    if (options.depth == 0 || options.depth > options.max_depth) {
      throw ResolutionTooFine("depth " + std::to_string(options.depth) + " outside 1.." + std::to_string(options.max_depth));
    }
    words = sys.language(options.depth);
    for (std::size_t i = 0; i < words.size(); ++i) word_id.emplace(words[i], static_cast<long long>(i));
    per_axis = static_cast<long long>(words.size());
    r.resolution = "depth " + std::to_string(options.depth);
  } else {
    if (options.grid < 1 || options.grid > options.max_grid) {
      throw ResolutionTooFine("grid " + std::to_string(options.grid) + " outside 1.." + std::to_string(options.max_grid));
    }
    per_axis = options.grid;
    r.resolution = "grid " + std::to_string(options.grid) + (d > 1 ? "^" + std::to_string(d) : "");
  }
  long long total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    total *= per_axis;
    if (total > 1'000'000) throw ResolutionTooFine("more than 10^6 boxes");
  }
  r.boxes_total = total;

  // alpha enclosed once at the starting precision; rotation_cell takes over when a cell is undecided
  std::optional<CertifiedReal> alpha;
  if (!sys.is_subshift() && !sys.alpha.is_rational()) alpha = sys.alpha.enclose(options.policy.start_bits);
  auto cell = [&](const Integer& t) -> long {
    if (alpha) {
      CertifiedReal y = (*alpha * t + sys.base_point) * Rational(options.grid);
      Integer a = floor_of(y.lower_rational());
      if (a == floor_of(y.upper_rational())) {
        Integer m;
        mpz_fdiv_r_ui(m.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(options.grid));
        return m.get_si();
      }
    }
    return rotation_cell(sys, t, options.grid, options.policy);
  };

  const auto count = static_cast<std::size_t>(hi - lo + 1);
  const unsigned jobs = std::max(1u, options.jobs);
  std::vector<std::vector<long long>> first(jobs, std::vector<long long>(static_cast<std::size_t>(total), LLONG_MAX));
  run_jobs(jobs, count, [&](unsigned k, std::size_t a, std::size_t b) {
    PointEvaluator ev(options.policy);
    auto& mine = first[k];
    for (std::size_t idx = a; idx < b; ++idx) {
      long long n = lo + static_cast<long long>(idx);
      std::vector<Integer> t = times_at(ev, polys, Integer(static_cast<long>(n)));
      long long box = 0;
      for (std::size_t i = d; i-- > 0;) {
        long long c = sys.is_subshift() ? word_id.at(sys.word(t[i], options.depth))
                                        : cell(t[i]);
        box = box * per_axis + c;
      }
      auto& slot = mine[static_cast<std::size_t>(box)];
      slot = std::min(slot, std::llabs(n));
    }
  });
  std::vector<long long> hit(static_cast<std::size_t>(total), LLONG_MAX);
  for (const auto& part : first) {
    for (std::size_t b = 0; b < hit.size(); ++b) hit[b] = std::min(hit[b], part[b]);
  }

  auto describe = [&](long long box) {
    std::string s;
    for (std::size_t i = 0; i < d; ++i) {
      long long c = box % per_axis;
      box /= per_axis;
      if (i) s += sys.is_subshift() ? "|" : ",";
      s += sys.is_subshift() ? words[static_cast<std::size_t>(c)] : std::to_string(c);
    }
    return sys.is_subshift() ? s : "(" + s + ")";
  };
  for (std::size_t b = 0; b < hit.size(); ++b) {
    if (hit[b] != LLONG_MAX) {
      ++r.boxes_hit;
    } else if (r.missing.size() < 20) {
      r.missing.push_back(describe(static_cast<long long>(b)));
    }
  }
  r.coverage = static_cast<double>(r.boxes_hit) / static_cast<double>(total);

  long long radius = std::max(std::llabs(lo), std::llabs(hi));
  std::vector<long long> checkpoints = options.checkpoints.empty() ? default_checkpoints(radius) : options.checkpoints;
  std::sort(checkpoints.begin(), checkpoints.end());
  double prev = -1;
  for (long long R : checkpoints) {
    long long c = std::count_if(hit.begin(), hit.end(), [R](long long h) { return h <= R; });
    CoveragePoint pt{std::min(hi, R), static_cast<double>(c) / static_cast<double>(total), c};
    if (pt.coverage < prev) r.monotone = false;
    prev = pt.coverage;
    r.curve.push_back(pt);
  }
  return r;
}

std::string coverage_csv(const DensityReport& r) {
  std::string s = "window_hi,coverage\n";
  for (const auto& p : r.curve) s += std::to_string(p.window_hi) + "," + std::to_string(p.coverage) + "\n";
  return s;
}

SyndeticReport syndetic_check(const SymbolicSystem& sys, const OpenSetSpec& u, const std::vector<OpenSetSpec>& v,
                              const std::vector<Expr>& polys, const ConstraintSet& c, long long lo, long long hi,
                              long long probe, long long horizon, const EnumerateOptions& options) {
  if (v.size() != polys.size()) throw PreconditionError("one target set per polynomial is required");
  if (v.empty()) throw PreconditionError("at least one target set is required");
  HitTester tester(sys, u, v, horizon, options.policy);
  std::vector<long long> candidates = enumerate(c, lo, hi, options);
  const unsigned jobs = std::max(1u, options.jobs);
  std::vector<std::vector<long long>> hits(jobs);
  std::vector<long long> missing(jobs, 0);
  run_jobs(jobs, candidates.size(), [&](unsigned k, std::size_t a, std::size_t b) {
    PointEvaluator ev(options.policy);
    for (std::size_t idx = a; idx < b; ++idx) {
      long long n = candidates[idx];
      HitStatus s = tester.test(times_at(ev, polys, Integer(static_cast<long>(n))));
      if (s == HitStatus::Hit) hits[k].push_back(n);
      if (s == HitStatus::NotFoundWithinHorizon) ++missing[k];
    }
  });
  std::vector<long long> n_cap_c;
  for (auto& h : hits) n_cap_c.insert(n_cap_c.end(), h.begin(), h.end());
  SyndeticReport out;
  out.window = classify(n_cap_c, lo, hi, probe);
  out.candidates = static_cast<long long>(candidates.size());
  for (long long m : missing) out.not_found += m;
  out.note = "window evidence only: no effective syndeticity bound is available";
  if (out.not_found > 0) out.note += "; " + std::to_string(out.not_found) + " candidates not found within the horizon";
  return out;
}

}  // namespace genpoly
