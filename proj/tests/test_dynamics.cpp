#include <gtest/gtest.h>

#include <set>

#include "genpoly/dynamics.hpp"
#include "genpoly/errors.hpp"
#include "genpoly/parse.hpp"
#include "oracle.hpp"

using namespace genpoly;

namespace {

// Two-sided Chacon point rebuilt from the blocks alone: x[-s_n, |B_n| - s_n) = B_n.
int naive_chacon(long long i) {
  static const std::string b = chacon_block(10);
  long long s = 0;
  for (unsigned n = 0; n < 10; ++n) s += static_cast<long long>(chacon_length(n));
  return b.at(static_cast<std::size_t>(i + s)) - '0';
}

}  // namespace

TEST(Chacon, Blocks) {
  EXPECT_EQ(chacon_block(0), "0");
  EXPECT_EQ(chacon_block(1), "0010");
  EXPECT_EQ(chacon_block(2), "0010001010010");
  for (unsigned n = 0; n <= 9; ++n) {
    std::string b = chacon_block(n);
    EXPECT_EQ(b.size(), chacon_length(n));
    if (n > 0) {
      std::string prev = chacon_block(n - 1);
      EXPECT_EQ(b, prev + prev + "1" + prev);
    }
  }
  EXPECT_THROW(chacon_block(21), LevelTooLarge);
}

TEST(Chacon, SymbolsMatchNestedBlocks) {
  for (long long i = -20000; i <= 20000; ++i) ASSERT_EQ(chacon_symbol(i), naive_chacon(i)) << i;
  // far indices fall in blocks above the materialization cap
  EXPECT_NO_THROW(chacon_symbol(1000000000000LL));
  EXPECT_NO_THROW(chacon_symbol(-1000000000000LL));
}

TEST(Chacon, LanguageIsTheSetOfBlockFactors) {
  SymbolicSystem ch = SymbolicSystem::chacon();
  std::string big = chacon_block(13);
  for (unsigned k = 1; k <= 6; ++k) {
    std::set<std::string> factors;
    for (std::size_t i = 0; i + k <= big.size(); ++i) factors.insert(big.substr(i, k));
    auto lang = ch.language(k);
    EXPECT_EQ(std::set<std::string>(lang.begin(), lang.end()), factors) << k;
  }
  // every admissible word occurs in the two-sided point near the origin
  for (const auto& w : ch.language(4)) {
    bool seen = false;
    for (long long j = -1000; j <= 1000 && !seen; ++j) seen = ch.word(Integer(static_cast<long>(j)), 4) == w;
    EXPECT_TRUE(seen) << w;
  }
}

TEST(Shift, WordsMatchRepeatedShifting) {
  for (const SymbolicSystem& sys : {SymbolicSystem::chacon(), SymbolicSystem::full_shift(3, 7)}) {
    std::string x;
    for (long long i = -1500; i < 1500; ++i) x.push_back(static_cast<char>('0' + sys.symbol(i)));
    // T drops the leading symbol; x is indexed from -1500
    std::string shifted = x;
    for (int t = 0; t <= 1000; ++t) {
      ASSERT_EQ(sys.word(Integer(t), 12), shifted.substr(1500, 12)) << sys.name() << " t=" << t;
      shifted.erase(0, 1);
    }
  }
}

TEST(Shift, RotationMatchesRepeatedAddition) {
  SymbolicSystem rot = SymbolicSystem::rotation(Coefficient::sqrt(2), Rational(1, 3));
  oracle::Float alpha = oracle::coefficient(Coefficient::sqrt(2));
  oracle::Float x = oracle::Float(1) / 3;
  for (int t = 0; t <= 1000; ++t) {
    CertifiedReal c = rotation_coordinate(rot, Integer(t), 256);
    ASSERT_NEAR(c.midpoint_double(), x.convert_to<double>(), 1e-12) << t;
    x += alpha;
    x -= boost::multiprecision::floor(x);
  }
}

TEST(Orbit, Examples) {
  SymbolicSystem rot = SymbolicSystem::rotation(Coefficient::sqrt(2));
  auto o = orbit_tuple(rot, {parse("n")}, Integer(5));
  ASSERT_EQ(o.coordinates.size(), 1u);
  EXPECT_NEAR(o.coordinates[0], 0.0710678, 1e-7);

  auto zero = orbit_tuple(SymbolicSystem::rotation(Coefficient::pi(), Rational(1, 5)),
                          {parse("n"), parse("[| sqrt3*n^2 |]")}, Integer(0));
  EXPECT_DOUBLE_EQ(zero.coordinates[0], 0.2);
  EXPECT_DOUBLE_EQ(zero.coordinates[1], 0.2);

  auto ch = orbit_tuple(SymbolicSystem::chacon(), {parse("n^2"), parse("n^2 + n")}, Integer(2));
  EXPECT_EQ(ch.times, (std::vector<Integer>{4, 6}));
}

TEST(Hits, RotationArcs) {
  SymbolicSystem rot = SymbolicSystem::rotation(Coefficient::sqrt(2));
  auto arc = OpenSetSpec::arc(Rational(0), Rational(1, 10));
  auto r = hitting_times(rot, arc, arc, parse("n"), 0, 20);
  for (long long n : {0LL, 5LL, 12LL, 17LL}) {
    EXPECT_NE(std::find(r.hits.begin(), r.hits.end(), n), r.hits.end()) << n;
  }
  // exact criterion: two arcs of radius 1/10 meet after rotation by n alpha iff ||n alpha|| < 1/5
  for (long long n = 0; n <= 200; ++n) {
    oracle::Float f = boost::multiprecision::abs(oracle::frac(oracle::evaluate(parse("sqrt2*n"), n)));
    bool expect = f < oracle::Float(0.2);
    bool got = std::find(r.hits.begin(), r.hits.end(), n) != r.hits.end();
    if (n <= 20) EXPECT_EQ(got, expect) << n;
  }
  EXPECT_TRUE(r.not_found.empty());
}

TEST(Hits, FullShiftCylindersByCompatibility) {
  SymbolicSystem full = SymbolicSystem::full_shift(2, 3);
  auto u = OpenSetSpec::cylinder("011");
  auto v = OpenSetSpec::cylinder("110");
  auto r = hitting_times(full, u, v, parse("n"), -40, 40);
  std::set<long long> hits(r.hits.begin(), r.hits.end());
  for (long long n = -40; n <= 40; ++n) {
    // some point has x[0,3) = 011 and x[n, n+3) = 110 iff the overlap agrees
    bool ok = true;
    for (long long i = 0; i < 3; ++i) {
      long long j = i - n;
      if (j >= 0 && j < 3 && u.word[i] != v.word[j]) ok = false;
    }
    EXPECT_EQ(hits.count(n) == 1, ok) << n;
    if (std::llabs(n) >= 3) EXPECT_TRUE(hits.count(n)) << n;
  }
}

TEST(Hits, ChaconMatchesSearch) {
  SymbolicSystem ch = SymbolicSystem::chacon();
  auto u = OpenSetSpec::cylinder("01");
  auto v = OpenSetSpec::cylinder("10");
  const long long horizon = 3000;
  auto r = hitting_times(ch, u, v, parse("n"), -60, 60, horizon);
  std::set<long long> hits(r.hits.begin(), r.hits.end());
  for (long long n = -60; n <= 60; ++n) {
    bool found = false;
    for (long long j = -horizon; j <= horizon && !found; ++j) {
      found = naive_chacon(j) == 0 && naive_chacon(j + 1) == 1 && naive_chacon(j + n) == 1 && naive_chacon(j + n + 1) == 0;
    }
    EXPECT_EQ(hits.count(n) == 1, found) << n;
  }
}

TEST(OpenSets, Validation) {
  EXPECT_THROW(OpenSetSpec::cylinder("").validate(SymbolicSystem::chacon()), PreconditionError);
  EXPECT_THROW(OpenSetSpec::arc(Rational(0), Rational(0)).validate(SymbolicSystem::rotation(Coefficient::sqrt(2))),
               PreconditionError);
  EXPECT_THROW(OpenSetSpec::cylinder("2").validate(SymbolicSystem::full_shift(2)), PreconditionError);
  EXPECT_THROW(OpenSetSpec::cylinder("01").validate(SymbolicSystem::rotation(Coefficient::sqrt(2))), PreconditionError);
  EXPECT_NO_THROW(OpenSetSpec::cylinder("0010").validate(SymbolicSystem::chacon()));
}

TEST(Density, ChaconSingleOrbitIsFull) {
  DensityOptions o;
  o.depth = 3;
  auto r = density_coverage(SymbolicSystem::chacon(), {parse("n")}, -10000, 10000, o);
  EXPECT_EQ(r.boxes_total, static_cast<long long>(SymbolicSystem::chacon().language(3).size()));
  EXPECT_DOUBLE_EQ(r.coverage, 1.0);
  EXPECT_TRUE(r.monotone);
  EXPECT_TRUE(r.missing.empty());
}

TEST(Density, RotationNegativeControl) {
  DensityOptions o;
  o.grid = 8;
  auto r = density_coverage(SymbolicSystem::rotation(Coefficient::sqrt(2)), {parse("n"), parse("2*n")}, -10000, 10000, o);
  EXPECT_EQ(r.boxes_total, 64);
  EXPECT_LT(r.coverage, 1.0);
  EXPECT_TRUE(r.monotone);
  for (std::size_t k = 1; k < r.curve.size(); ++k) EXPECT_GE(r.curve[k].coverage, r.curve[k - 1].coverage);
  std::string csv = coverage_csv(r);
  EXPECT_EQ(csv.rfind("window_hi,coverage", 0), 0u);
}

TEST(Density, Preconditions) {
  DensityOptions deep;
  deep.depth = 7;
  EXPECT_THROW(density_coverage(SymbolicSystem::chacon(), {parse("n")}, -10, 10, deep), CapExceeded);
  EXPECT_THROW(density_coverage(SymbolicSystem::chacon(), {parse("n"), parse("n")}, -10, 10), PreconditionError);
  DensityOptions fine;
  fine.grid = 64;
  fine.max_dim = 4;
  EXPECT_THROW(density_coverage(SymbolicSystem::rotation(Coefficient::sqrt(2)),
                                {parse("n"), parse("2*n"), parse("3*n^2"), parse("n^3")}, -10, 10, fine),
               ResolutionTooFine);
}

TEST(Syndetic, ChaconLinearReturnTimes) {
  auto r = syndetic_check(SymbolicSystem::chacon(), OpenSetSpec::cylinder("0"), {OpenSetSpec::cylinder("01")},
                          {parse("n")}, ConstraintSet{}, -10000, 10000, 5);
  EXPECT_EQ(r.window.syndetic.kind, VerdictKind::HoldsOnWindow);
  EXPECT_LE(r.window.max_gap, 10);
  EXPECT_EQ(r.not_found, 0);
}

TEST(Syndetic, RotationIntersectedWithConstraintSet) {
  SymbolicSystem rot = SymbolicSystem::rotation(Coefficient::sqrt(2));
  auto arc = OpenSetSpec::arc(Rational(0), Rational(1, 10));
  ConstraintSet c(Rational(1, 10), {parse("sqrt2*n")});
  auto r = syndetic_check(rot, arc, {arc}, {parse("n")}, c, -10000, 10000, 1);
  // ||n sqrt2|| < 1/10 already forces the arcs to meet
  EXPECT_EQ(r.window.members, enumerate(c, -10000, 10000));
  EXPECT_EQ(r.window.syndetic.kind, VerdictKind::HoldsOnWindow);
}
