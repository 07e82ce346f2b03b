#include "genpoly/sgp.hpp"

#include <algorithm>

#include "genpoly/errors.hpp"

namespace genpoly {

unsigned Hat::degree() const {
  unsigned d = power;
  for (const auto& f : factors) d += f.degree();
  return d;
}

Coefficient Hat::coefficient_product() const {
  Coefficient c = coeff;
  for (const auto& f : factors) c *= f.coefficient_product();
  return c;
}

Expr Hat::to_expr() const {
  std::vector<Expr> parts;
  if (power > 0) parts.push_back(make_monomial(coeff, power));
  for (const auto& f : factors) parts.push_back(make_bracket(f.to_expr()));
  if (parts.empty()) throw NotSGP("hat of degree 0 has no expression form");
  Expr body = make_product(std::move(parts));
  return power > 0 ? body : make_scale(coeff, body);
}

int compare(const Hat& a, const Hat& b) {
  if (a.power != b.power) return a.power < b.power ? -1 : 1;
  if (auto c = a.coeff <=> b.coeff; c != 0) return c < 0 ? -1 : 1;
  if (a.factors.size() != b.factors.size()) return a.factors.size() < b.factors.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.factors.size(); ++i) {
    if (int c = compare(a.factors[i], b.factors[i]); c != 0) return c;
  }
  return 0;
}

Hat canonical(Hat h) {
  if (h.coeff.is_zero()) return Hat{};
  std::vector<Hat> pending = std::move(h.factors);
  h.factors.clear();
  while (!pending.empty()) {
    Hat f = canonical(std::move(pending.back()));
    pending.pop_back();
    if (f.coeff.is_zero()) return Hat{};
    if (f.is_integer_valued()) {
      h.coeff *= f.coeff;
      h.power += f.power;
      for (auto& g : f.factors) h.factors.push_back(std::move(g));
    } else {
      h.factors.push_back(std::move(f));
    }
  }
  std::sort(h.factors.begin(), h.factors.end());
  return h;
}

Expr SgpTerm::to_expr() const {
  Expr body = hat.to_expr();
  if (bracketed()) body = make_bracket(body);
  return make_scale(Coefficient(Rational(coeff)), body);
}

void SgpNormal::add(const Integer& c, const Hat& raw) {
  if (sgn(c) == 0) return;
  Hat h = canonical(raw);
  if (h.is_zero()) return;
  Integer k = c;
  if (h.is_integer_valued()) {
    k *= h.coeff.rational_value().get_num();
    h.coeff = Coefficient(1);
    // [ [F] ] is [F]
    if (h.power == 0 && h.factors.size() == 1) {
      Hat inner = std::move(h.factors.front());
      h = std::move(inner);
    }
  }
  if (h.degree() == 0) throw NotSGP("constant term " + h.coeff.format() + " in a normal form");
  terms.push_back(SgpTerm{k, std::move(h)});
}

Expr SgpNormal::to_expr() const {
  if (terms.empty()) return make_zero();
  std::vector<Expr> parts;
  for (const auto& t : terms) parts.push_back(t.to_expr());
  return make_sum(std::move(parts));
}

std::string SgpNormal::format() const { return pretty(to_expr()); }

SgpNormal operator+(const SgpNormal& a, const SgpNormal& b) {
  SgpNormal r = a;
  r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
  return r;
}

SgpNormal operator*(const Integer& c, const SgpNormal& a) {
  SgpNormal r;
  if (sgn(c) == 0) return r;
  r.terms = a.terms;
  for (auto& t : r.terms) t.coeff *= c;
  return r;
}

SgpNormal operator-(const SgpNormal& a, const SgpNormal& b) { return a + Integer(-1) * b; }

SgpNormal combine(const SgpNormal& p) {
  SgpNormal r;
  for (const auto& t : p.terms) {
    auto it = std::find_if(r.terms.begin(), r.terms.end(), [&](const SgpTerm& u) { return u.hat == t.hat; });
    if (it == r.terms.end()) {
      r.terms.push_back(t);
    } else {
      it->coeff += t.coeff;
    }
  }
  std::erase_if(r.terms, [](const SgpTerm& t) { return sgn(t.coeff) == 0; });
  return r;
}

bool structurally_equal(const SgpNormal& a, const SgpNormal& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    if (a.terms[i].coeff != b.terms[i].coeff || !(a.terms[i].hat == b.terms[i].hat)) return false;
  }
  return true;
}

Hat hat_of(const Expr& e) {
  switch (e->kind) {
    case ExprKind::Monomial:
      return Hat{e->coeff, e->power, {}};
    case ExprKind::Scale: {
      Hat h = hat_of(e->child());
      h.coeff = e->coeff * h.coeff;
      return h;
    }
    case ExprKind::Bracket:
      return Hat{Coefficient(1), 0, {hat_of(e->child())}};
    case ExprKind::Product: {
      Hat h{Coefficient(1), 0, {}};
      for (const auto& c : e->children) {
        Hat part = hat_of(c);
        h.coeff *= part.coeff;
        h.power += part.power;
        for (auto& f : part.factors) h.factors.push_back(std::move(f));
      }
      return h;
    }
    case ExprKind::Sum:
      throw NotSGP("sum inside a bracket: " + pretty(e));
  }
  throw NotSGP("unrecognized node");
}

SgpNormal to_sgp(const Expr& e) {
  SgpNormal r;
  switch (e->kind) {
    case ExprKind::Sum:
      for (const auto& c : e->children) r = r + to_sgp(c);
      return r;
    case ExprKind::Scale:
      if (!e->coeff.is_integer()) throw NotSGP("non-integer multiple " + e->coeff.format() + " outside brackets");
      return Integer(e->coeff.rational_value().get_num()) * to_sgp(e->child());
    case ExprKind::Bracket:
      r.add(Integer(1), hat_of(e->child()));
      return r;
    case ExprKind::Monomial:
    case ExprKind::Product: {
      Hat h = hat_of(e);
      if (!h.coeff.is_integer()) throw NotSGP("term " + pretty(e) + " is not integer-valued");
      r.add(Integer(1), h);
      return r;
    }
  }
  return r;
}

std::vector<const Hat*> hat_nodes(const Hat& h) {
  std::vector<const Hat*> out{&h};
  for (const auto& f : h.factors) {
    auto sub = hat_nodes(f);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

namespace {

Hat scale_hat(const Hat& h, const Integer& k) {
  Integer kp;
  mpz_pow_ui(kp.get_mpz_t(), k.get_mpz_t(), h.power);
  Hat r{h.coeff * Coefficient(Rational(kp)), h.power, {}};
  for (const auto& f : h.factors) r.factors.push_back(scale_hat(f, k));
  return r;
}

}  // namespace

SgpNormal substitute_scale(const SgpNormal& p, const Integer& k) {
  SgpNormal r;
  for (const auto& t : p.terms) {
    // a hat that was integer-valued stays integer-valued after scaling n, so re-adding is safe
    r.add(t.coeff, scale_hat(t.hat, k));
  }
  return r;
}

}  // namespace genpoly
