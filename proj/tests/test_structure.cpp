#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "generators.hpp"
#include "genpoly/calculus.hpp"
#include "genpoly/errors.hpp"
#include "genpoly/parse.hpp"
#include "genpoly/structure.hpp"

using namespace genpoly;

namespace {

// Named irrationals standing in for the letters of the worked examples:
// a = sqrt2, b = sqrt3, c = pi, d = e, e = sqrt5, f = sqrt6, h = sqrt7.
SgpNormal sgp(const std::string& text) { return to_sgp(parse(text)); }

std::vector<SgpNormal> five_member_system() {
  return {
      sgp("[| sqrt2*n |] + 2*n"),
      sgp("[| sqrt3*n^3*[| pi*n |] |] + [| sqrt5*n^3 |]"),
      sgp("4*n^4"),
      sgp("4*n^4 + n^3"),
      sgp("[| sqrt6*n |]*[| sqrt7*n |]"),
  };
}

}  // namespace

TEST(Degree, Examples) {
  EXPECT_EQ(degree(sgp("[| sqrt3*n^3*[| pi*n |] |] + [| sqrt5*n^3 |]")), 4u);
  EXPECT_EQ(degree(sgp("4*n^4 + n^3")), 4u);
  EXPECT_EQ(degree(sgp("n")), 1u);
  EXPECT_EQ(degree(sgp("n^2 - n^2 + n")), 1u);
  EXPECT_EQ(raw_degree(sgp("n^2 - n^2 + n")), 2u);
}

TEST(LeadingSum, GoldenNestedExample) {
  Coefficient a = leading_sum(parse("[| sqrt2*n^2*[| sqrt3*n |] + [| pi*n^3 |] |] + e*n^3 + 2*n^2"));
  EXPECT_EQ(a, Coefficient::sqrt(6) + Coefficient::pi() + Coefficient::euler());
}

TEST(LeadingSum, OppositeComponentsCancelToZero) {
  Coefficient a = leading_sum(parse("n + n*[| 2*pi*n - [| 2*pi*n |] |]"));
  EXPECT_TRUE(a.is_zero()) << a.format();
}

TEST(LeadingSum, Examples) {
  EXPECT_EQ(leading_sum(sgp("5*n^2")), Coefficient(5));
  EXPECT_EQ(leading_sum(sgp("[| sqrt2*n |]*[| sqrt3*n |] + n")), Coefficient::sqrt(6));
  // as written: opposite terms stay separate yet their coefficients still sum to zero
  EXPECT_TRUE(leading_sum(sgp("n*[| pi*n |] - n*[| pi*n |] + n")).is_zero());
}

TEST(LeadingSum, IntegerScaling) {
  std::mt19937_64 rng(21);
  for (int s = 0; s < 500; ++s) {
    Hat h = gen::hat(rng, 4, 2);
    long c = gen::uniform(rng, -9, 9);
    if (c == 0) continue;
    SgpNormal one;
    one.add(Integer(1), h);
    SgpNormal scaled;
    scaled.add(Integer(c), h);
    EXPECT_EQ(leading_sum(scaled), Coefficient(c) * leading_sum(one));
    // agreement between the normal-form and general-expression forms
    EXPECT_EQ(leading_sum(scaled), leading_sum(scaled.to_expr()));
  }
}

TEST(Equivalence, Examples) {
  EXPECT_TRUE(equivalent(sgp("4*n^4"), sgp("4*n^4 + n^3")));
  EXPECT_FALSE(equivalent(sgp("4*n^4"), sgp("[| sqrt3*n^3*[| pi*n |] |] + [| sqrt5*n^3 |]")));
  SgpNormal p = sgp("[| sqrt2*n^2 |] + n");
  EXPECT_TRUE(equivalent(p, p));
  EXPECT_FALSE(equivalent(sgp("n^2"), sgp("n^3")));
}

TEST(Equivalence, IsAnEquivalenceRelation) {
  std::mt19937_64 rng(22);
  // shared tops make equivalent pairs common
  std::vector<SgpNormal> tops;
  for (int k = 0; k < 4; ++k) tops.push_back(gen::sgp(rng, 3, 3, 1));
  auto draw = [&] {
    SgpNormal p = tops[gen::uniform(rng, 0, 3)];
    if (gen::uniform(rng, 0, 1)) p = p + gen::sgp(rng, 1, 2, 2);
    return p;
  };
  int related = 0;
  for (int s = 0; s < 1000; ++s) {
    SgpNormal p = draw(), q = draw(), r = draw();
    ASSERT_TRUE(equivalent(p, p));
    bool pq = equivalent(p, q);
    bool qr = equivalent(q, r);
    ASSERT_EQ(pq, equivalent(q, p));
    if (pq && qr) {
      ASSERT_TRUE(equivalent(p, r)) << p.format() << " | " << q.format() << " | " << r.format();
      ++related;
    }
  }
  EXPECT_GT(related, 50);
}

TEST(WeightVector, FiveMemberSystem) {
  EXPECT_EQ(weight_vector(five_member_system()), (WeightVector{1, 1, 0, 2}));
  EXPECT_EQ(format_weight_vector(weight_vector(five_member_system())), "(1, 1, 0, 2)");
}

TEST(WeightVector, SmallSystems) {
  EXPECT_EQ(weight_vector({sgp("n")}), (WeightVector{1}));
  EXPECT_EQ(weight_vector({sgp("n^2"), sgp("n^2 + n"), sgp("n^2 + 2*n")}), (WeightVector{0, 1}));
}

TEST(WeightVector, PermutationInvariant) {
  std::mt19937_64 rng(23);
  for (int s = 0; s < 200; ++s) {
    std::vector<SgpNormal> system;
    long size = gen::uniform(rng, 1, 6);
    for (long k = 0; k < size; ++k) system.push_back(gen::sgp(rng, 1, 3, 2));
    WeightVector w = weight_vector(system);
    std::shuffle(system.begin(), system.end(), rng);
    EXPECT_EQ(weight_vector(system), w);
  }
  auto five = five_member_system();
  std::reverse(five.begin(), five.end());
  EXPECT_EQ(weight_vector(five), (WeightVector{1, 1, 0, 2}));
}

TEST(PetOrder, Examples) {
  EXPECT_TRUE(pet_less({5, 3, 0, 1}, {1, 1, 0, 2}));
  EXPECT_FALSE(pet_less({1, 1, 0, 2}, {5, 3, 0, 1}));
  EXPECT_FALSE(pet_less({2}, {2}));
  EXPECT_TRUE(pet_less({1}, {0, 1}));
  EXPECT_FALSE(pet_less({0, 1}, {1}));
}

TEST(PetOrder, StrictTotalOrder) {
  std::mt19937_64 rng(24);
  auto draw = [&] {
    WeightVector w(gen::uniform(rng, 0, 4));
    for (auto& x : w) x = gen::uniform(rng, 0, 3);
    while (!w.empty() && w.back() == 0) w.pop_back();
    return w;
  };
  for (int s = 0; s < 5000; ++s) {
    WeightVector u = draw(), v = draw(), w = draw();
    ASSERT_FALSE(pet_less(u, u));
    if (u != v) ASSERT_NE(pet_less(u, v), pet_less(v, u));
    else ASSERT_FALSE(pet_less(u, v));
    if (pet_less(u, v) && pet_less(v, w)) ASSERT_TRUE(pet_less(u, w));
  }
}

TEST(Nondegeneracy, Examples) {
  EXPECT_TRUE(nondegenerate({sgp("n^2 + n"), sgp("n^2 + [| sqrt3*n |]")}).nondegenerate);
  auto bad = nondegenerate({sgp("n*[| 2*pi*n |] + n"), sgp("[| 2*pi*n^2 |] + 2*n")});
  EXPECT_FALSE(bad.nondegenerate);
  EXPECT_EQ(bad.i, 0);
  EXPECT_EQ(bad.j, 1);
  EXPECT_TRUE(nondegenerate({sgp("n")}).nondegenerate);
  auto zero_lead = nondegenerate({sgp("n*[| pi*n |] - n*[| pi*n |] + n")});
  EXPECT_FALSE(zero_lead.nondegenerate);
  EXPECT_EQ(zero_lead.j, -1);
}

TEST(MuchGreater, Examples) {
  EXPECT_TRUE(much_greater(Coefficient(10000000), Coefficient(1), kDefaultThreshold));
  Coefficient a = Coefficient(10000) * Coefficient::sqrt(2);
  CertifiedReal ea = a.enclose(256);
  CertifiedReal k(nearest_integer(ea), 256);
  EXPECT_TRUE(much_greater(ea, (ea - k).abs(), kDefaultThreshold));
  EXPECT_TRUE(approx(k, ea, kDefaultThreshold));
  EXPECT_FALSE(much_greater(Coefficient(3), Coefficient(2), kDefaultThreshold));
}

TEST(MuchGreater, RoundingIsApproximateForLargeValues) {
  std::mt19937_64 rng(25);
  for (int s = 0; s < 1000; ++s) {
    Coefficient a = Coefficient(gen::uniform(rng, 10000, 10000000)) * gen::coefficient(rng, 0.0).abs();
    Coefficient c = Coefficient(gen::uniform(rng, 10000, 10000000)) * gen::coefficient(rng, 0.0).abs();
    if (a.sign() <= 0 || c.sign() <= 0) continue;
    CertifiedReal ea = a.enclose(256), ec = c.enclose(256);
    if (ea.lower_double() < 1e4 || ec.lower_double() < 1e4) continue;
    CertifiedReal ka(nearest_integer(ea), 256), kc(nearest_integer(ec), 256);
    ASSERT_TRUE(approx(ka, ea, kDefaultThreshold));
    ASSERT_TRUE(approx(ka + kc, ea + ec, kDefaultThreshold));
    ASSERT_TRUE(approx(ka * kc, ea * ec, kDefaultThreshold));
  }
}
