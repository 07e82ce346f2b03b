#pragma once

// Seeded random generators shared by the property suites and the acceptance binary.

#include <random>
#include <vector>

#include "genpoly/sgp.hpp"

namespace gen {

using genpoly::Coefficient;
using genpoly::Hat;
using genpoly::Integer;
using genpoly::Rational;

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Rational small_rational(std::mt19937_64& rng) {
  long p = 0;
  while (p == 0) p = uniform(rng, -7, 7);
  Rational q(p, uniform(rng, 1, 6));
  q.canonicalize();
  return q;
}

/// Rational, sqrt, pi, e or golden multiples; `rational_bias` in [0, 1] is the chance of a plain rational.
inline Coefficient coefficient(std::mt19937_64& rng, double rational_bias = 0.3) {
  if (std::uniform_real_distribution<double>(0, 1)(rng) < rational_bias) {
    Rational q = small_rational(rng);
    if (q.get_den() == 1) q /= 7;  // keep the hat non-integer
    return Coefficient(q);
  }
  static const unsigned long radicands[] = {2, 3, 5, 6, 7, 10};
  Coefficient base;
  switch (uniform(rng, 0, 4)) {
    case 0:
    case 1:
      base = Coefficient::sqrt(radicands[uniform(rng, 0, 5)]);
      break;
    case 2:
      base = Coefficient::pi();
      break;
    case 3:
      base = Coefficient::euler();
      break;
    default:
      base = Coefficient::golden();
      break;
  }
  return Coefficient(small_rational(rng)) * base;
}

/// Random hat of degree in [1, max_degree]; nesting depth at most `depth`.
inline Hat hat(std::mt19937_64& rng, unsigned max_degree, unsigned depth, double rational_bias = 0.3) {
  for (;;) {
    Hat h{coefficient(rng, rational_bias), static_cast<unsigned>(uniform(rng, 0, max_degree)), {}};
    if (depth > 0) {
      long nf = uniform(rng, 0, 2);
      for (long k = 0; k < nf; ++k) {
        unsigned room = max_degree > h.degree() ? max_degree - h.degree() : 0;
        if (room == 0) break;
        h.factors.push_back(hat(rng, room, depth - 1, rational_bias));
      }
    }
    h = genpoly::canonical(h);
    unsigned d = h.degree();
    if (!h.is_zero() && d >= 1 && d <= max_degree) return h;
  }
}

/// Integer combination of bracketed hats with degree exactly in [min_degree, max_degree].
inline genpoly::SgpNormal sgp(std::mt19937_64& rng, unsigned min_degree, unsigned max_degree, unsigned max_terms,
                              double rational_bias = 0.3, unsigned depth = 2) {
  for (;;) {
    genpoly::SgpNormal p;
    long count = uniform(rng, 1, max_terms);
    for (long k = 0; k < count; ++k) {
      long c = 0;
      while (c == 0) c = uniform(rng, -3, 3);
      p.add(Integer(c), hat(rng, max_degree, depth, rational_bias));
    }
    p = genpoly::combine(p);
    if (p.empty()) continue;
    unsigned d = 0;
    for (const auto& t : p.terms) d = std::max(d, t.degree());
    if (d >= min_degree && d <= max_degree) return p;
  }
}

/// Real-valued generalized polynomial: sums of hats, brackets of sums, rational and irrational
/// multiples. Used where integer-valuedness does not matter (parsing, evaluation).
inline genpoly::Expr real_gp(std::mt19937_64& rng, unsigned max_degree, unsigned depth) {
  std::vector<genpoly::Expr> parts;
  long count = uniform(rng, 1, 3);
  for (long k = 0; k < count; ++k) {
    genpoly::Expr part = hat(rng, max_degree, depth > 0 ? depth - 1 : 0).to_expr();
    if (depth > 0 && uniform(rng, 0, 2) == 0) part = genpoly::make_bracket(real_gp(rng, max_degree, depth - 1));
    if (uniform(rng, 0, 3) == 0) part = genpoly::make_scale(coefficient(rng, 0.5), part);
    parts.push_back(part);
  }
  return genpoly::make_sum(std::move(parts));
}

/// Integer-valued GP: integer combinations of brackets of real GPs, plus integer monomials.
inline genpoly::Expr integer_gp(std::mt19937_64& rng, unsigned max_degree, unsigned depth) {
  std::vector<genpoly::Expr> parts;
  long count = uniform(rng, 1, 3);
  for (long k = 0; k < count; ++k) {
    long c = 0;
    while (c == 0) c = uniform(rng, -3, 3);
    if (uniform(rng, 0, 4) == 0) {
      parts.push_back(genpoly::make_monomial(Coefficient(c), static_cast<unsigned>(uniform(rng, 1, max_degree))));
    } else {
      parts.push_back(genpoly::make_scale(Coefficient(c), genpoly::make_bracket(real_gp(rng, max_degree, depth))));
    }
  }
  return genpoly::make_sum(std::move(parts));
}

}  // namespace gen
