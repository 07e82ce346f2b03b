#pragma once

// Independent reference evaluator: Boost.Multiprecision floats and rationals with Boost's own
// pi, e and square roots. Shares only the expression tree with the library.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <optional>

#include "genpoly/expr.hpp"

namespace oracle {

using Float = boost::multiprecision::cpp_bin_float_100;
using Z = boost::multiprecision::cpp_int;
using Q = boost::multiprecision::cpp_rational;

struct Value {
  std::optional<Q> exact;
  Float approx;
  bool reliable = true;  // false when a bracket sat within the guard band of a half-integer
};

inline Z to_z(const genpoly::Integer& z) { return Z(z.get_str()); }
inline Q to_q(const genpoly::Rational& q) { return Q(to_z(q.get_num()), to_z(q.get_den())); }
inline Float to_float(const Q& q) { return Float(boost::multiprecision::numerator(q)) / Float(boost::multiprecision::denominator(q)); }

inline Z floor_div(const Z& a, const Z& b) {
  Z q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Ties to the smaller integer: ceil(x - 1/2).
inline Z nearest(const Q& x) {
  Q y = x - Q(1, 2);
  Z num = boost::multiprecision::numerator(y);
  Z den = boost::multiprecision::denominator(y);
  return -floor_div(-num, den);
}

inline Z nearest(const Float& x) {
  Float k = boost::multiprecision::ceil(x - Float(0.5));
  return Z(k);
}

inline const Float& guard() {
  static const Float g("1e-70");
  return g;
}

inline Float coefficient(const genpoly::Coefficient& c) {
  using boost::math::constants::e;
  using boost::math::constants::pi;
  Float total = 0;
  for (const auto& [basis, q] : c.terms()) {
    Float v = to_float(to_q(q));
    for (unsigned k = 0; k < basis.pi_power; ++k) v *= pi<Float>();
    for (unsigned k = 0; k < basis.e_power; ++k) v *= e<Float>();
    if (basis.radicand != 1) v *= boost::multiprecision::sqrt(Float(basis.radicand));
    total += v;
  }
  return total;
}

inline Value evaluate(const genpoly::Expr& e, const Z& n) {
  using genpoly::ExprKind;
  Value out;
  switch (e->kind) {
    case ExprKind::Monomial: {
      Z np = boost::multiprecision::pow(n, e->power);
      if (e->coeff.is_rational()) {
        out.exact = to_q(e->coeff.rational_value()) * Q(np);
        out.approx = to_float(*out.exact);
      } else {
        out.approx = coefficient(e->coeff) * Float(np);
      }
      return out;
    }
    case ExprKind::Bracket: {
      Value v = evaluate(e->child(), n);
      Z k;
      if (v.exact) {
        k = nearest(*v.exact);
      } else {
        k = nearest(v.approx);
        Float f = v.approx - Float(k);
        if (Float(0.5) - boost::multiprecision::abs(f) < guard()) out.reliable = false;
      }
      out.reliable = out.reliable && v.reliable;
      out.exact = Q(k);
      out.approx = Float(k);
      return out;
    }
    case ExprKind::Scale: {
      Value v = evaluate(e->child(), n);
      out.reliable = v.reliable;
      if (e->coeff.is_rational() && v.exact) {
        out.exact = to_q(e->coeff.rational_value()) * *v.exact;
        out.approx = to_float(*out.exact);
      } else {
        out.approx = coefficient(e->coeff) * v.approx;
      }
      return out;
    }
    case ExprKind::Sum:
    case ExprKind::Product: {
      bool sum = e->kind == ExprKind::Sum;
      Q exact = sum ? Q(0) : Q(1);
      Float approx = sum ? Float(0) : Float(1);
      bool all_exact = true;
      for (const auto& c : e->children) {
        Value v = evaluate(c, n);
        out.reliable = out.reliable && v.reliable;
        if (v.exact && all_exact) {
          exact = sum ? Q(exact + *v.exact) : Q(exact * *v.exact);
        } else {
          all_exact = false;
        }
        approx = sum ? Float(approx + v.approx) : Float(approx * v.approx);
      }
      if (all_exact) {
        out.exact = exact;
        out.approx = to_float(exact);
      } else {
        out.approx = approx;
      }
      return out;
    }
  }
  return out;
}

inline Value evaluate(const genpoly::Expr& e, long long n) { return evaluate(e, Z(n)); }

/// {x} in (-1/2, 1/2].
inline Float frac(const Value& v) {
  if (v.exact) {
    Q f = *v.exact - Q(nearest(*v.exact));
    return to_float(f);
  }
  return v.approx - Float(nearest(v.approx));
}

inline std::optional<Z> integer_value(const Value& v) {
  if (!v.reliable) return std::nullopt;
  if (v.exact && boost::multiprecision::denominator(*v.exact) == 1) return boost::multiprecision::numerator(*v.exact);
  Z k = nearest(v.approx);
  if (boost::multiprecision::abs(v.approx - Float(k)) > Float("1e-60")) return std::nullopt;
  return k;
}

/// Brute-force |{g(n)}| < eps; nullopt when the value sits within the guard band of the boundary.
inline std::optional<bool> inside(const genpoly::Expr& g, long long n, const genpoly::Rational& eps) {
  Value v = evaluate(g, n);
  if (!v.reliable) return std::nullopt;
  if (v.exact) {
    Q f = *v.exact - Q(nearest(*v.exact));
    Q e = to_q(eps);
    return f > -e && f < e;
  }
  Float f = boost::multiprecision::abs(frac(v));
  Float e = to_float(to_q(eps));
  if (boost::multiprecision::abs(f - e) < guard()) return std::nullopt;
  return f < e;
}

}  // namespace oracle
