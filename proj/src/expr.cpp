#include "genpoly/expr.hpp"

#include <algorithm>

#include "genpoly/errors.hpp"

namespace genpoly {

namespace {

Expr node(ExprKind kind, Coefficient c, unsigned power, std::vector<Expr> children) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->coeff = std::move(c);
  n->power = power;
  n->children = std::move(children);
  return n;
}

std::string coeff_atom(const Coefficient& c) {
  std::string s = c.format();
  bool plain = c.is_single_term() && s.front() != '-';
  return plain ? s : "(" + s + ")";
}

std::string n_power(unsigned p) { return p == 1 ? "n" : "n^" + std::to_string(p); }

}  // namespace

Expr make_monomial(const Coefficient& c, unsigned power) {
  if (power == 0) throw ConstantTermError("monomial of degree 0 is a constant term");
  return node(ExprKind::Monomial, c, power, {});
}

Expr make_zero() { return make_monomial(Coefficient(), 1); }

bool is_zero_expr(const Expr& e) { return e->kind == ExprKind::Monomial && e->coeff.is_zero(); }

Expr make_bracket(Expr child) { return node(ExprKind::Bracket, Coefficient(1), 0, {std::move(child)}); }

Expr make_scale(const Coefficient& c, Expr child) {
  if (c.is_zero() || is_zero_expr(child)) return make_zero();
  if (c.is_one()) return child;
  switch (child->kind) {
    case ExprKind::Monomial:
      return make_monomial(c * child->coeff, child->power);
    case ExprKind::Scale:
      return make_scale(c * child->coeff, child->child());
    case ExprKind::Product:
      if (child->children.front()->kind == ExprKind::Monomial) {
        auto kids = child->children;
        kids.front() = make_monomial(c * kids.front()->coeff, kids.front()->power);
        return node(ExprKind::Product, Coefficient(1), 0, std::move(kids));
      }
      break;
    default:
      break;
  }
  return node(ExprKind::Scale, c, 0, {std::move(child)});
}

Expr negate(const Expr& e) { return make_scale(Coefficient(-1), e); }

Expr make_sum(std::vector<Expr> children) {
  std::vector<Expr> flat;
  for (auto& c : children) {
    if (c->kind == ExprKind::Sum) {
      flat.insert(flat.end(), c->children.begin(), c->children.end());
    } else if (!is_zero_expr(c)) {
      flat.push_back(std::move(c));
    }
  }
  if (flat.empty()) return make_zero();
  if (flat.size() == 1) return flat.front();
  return node(ExprKind::Sum, Coefficient(1), 0, std::move(flat));
}

Expr make_difference(const Expr& a, const Expr& b) { return make_sum({a, negate(b)}); }

Expr make_product(std::vector<Expr> children) {
  Coefficient scalar(1);
  unsigned power = 0;
  std::vector<Expr> rest;
  std::vector<Expr> stack(children.rbegin(), children.rend());
  while (!stack.empty()) {
    Expr c = stack.back();
    stack.pop_back();
    switch (c->kind) {
      case ExprKind::Product:
        stack.insert(stack.end(), c->children.rbegin(), c->children.rend());
        break;
      case ExprKind::Scale:
        scalar *= c->coeff;
        stack.push_back(c->child());
        break;
      case ExprKind::Monomial:
        scalar *= c->coeff;
        power += c->power;
        break;
      default:
        rest.push_back(c);
    }
  }
  if (scalar.is_zero()) return make_zero();
  if (rest.empty()) return make_monomial(scalar, power);
  if (power == 0) {
    Expr body = rest.size() == 1 ? rest.front() : node(ExprKind::Product, Coefficient(1), 0, rest);
    return make_scale(scalar, body);
  }
  rest.insert(rest.begin(), make_monomial(scalar, power));
  return node(ExprKind::Product, Coefficient(1), 0, std::move(rest));
}

int structural_compare(const Expr& a, const Expr& b) {
  if (a == b) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (a->power != b->power) return a->power < b->power ? -1 : 1;
  if (auto c = a->coeff <=> b->coeff; c != 0) return c < 0 ? -1 : 1;
  if (a->children.size() != b->children.size()) return a->children.size() < b->children.size() ? -1 : 1;
  for (std::size_t i = 0; i < a->children.size(); ++i) {
    if (int c = structural_compare(a->children[i], b->children[i]); c != 0) return c;
  }
  return 0;
}

bool structurally_equal(const Expr& a, const Expr& b) { return structural_compare(a, b) == 0; }

std::string format(const Expr& e) {
  switch (e->kind) {
    case ExprKind::Monomial:
      if (e->coeff.is_one()) return n_power(e->power);
      return "(" + coeff_atom(e->coeff) + "*" + n_power(e->power) + ")";
    case ExprKind::Bracket:
      return "[|" + format(e->child()) + "|]";
    case ExprKind::Scale:
      return "(" + coeff_atom(e->coeff) + "*" + format(e->child()) + ")";
    case ExprKind::Sum:
    case ExprKind::Product: {
      std::string sep = e->kind == ExprKind::Sum ? " + " : " * ";
      std::string s = "(";
      for (std::size_t i = 0; i < e->children.size(); ++i) {
        if (i) s += sep;
        s += format(e->children[i]);
      }
      return s + ")";
    }
  }
  return {};
}

namespace {

// precedence: 0 sum, 1 product, 2 atom
bool negative_lead(const Expr& e) {
  switch (e->kind) {
    case ExprKind::Monomial:
    case ExprKind::Scale:
      return e->coeff.is_single_term() && !e->coeff.is_zero() && sgn(e->coeff.terms().begin()->second) < 0;
    case ExprKind::Product:
      return negative_lead(e->children.front());
    default:
      return false;
  }
}

std::string pretty_at(const Expr& e, int context) {
  switch (e->kind) {
    case ExprKind::Monomial: {
      if (e->coeff.is_one()) return n_power(e->power);
      std::string s = coeff_atom(e->coeff) + "*" + n_power(e->power);
      return context >= 2 ? "(" + s + ")" : s;
    }
    case ExprKind::Bracket:
      return "[| " + pretty_at(e->child(), 0) + " |]";
    case ExprKind::Scale: {
      std::string s = coeff_atom(e->coeff) + "*" + pretty_at(e->child(), 2);
      return context >= 2 ? "(" + s + ")" : s;
    }
    case ExprKind::Sum: {
      std::string s;
      for (std::size_t i = 0; i < e->children.size(); ++i) {
        if (i && negative_lead(e->children[i])) {
          s += " - " + pretty_at(negate(e->children[i]), 1);
          continue;
        }
        if (i) s += " + ";
        s += pretty_at(e->children[i], 1);
      }
      return context >= 1 ? "(" + s + ")" : s;
    }
    case ExprKind::Product: {
      std::string s;
      for (std::size_t i = 0; i < e->children.size(); ++i) {
        if (i) s += "*";
        s += pretty_at(e->children[i], 2);
      }
      return context >= 2 ? "(" + s + ")" : s;
    }
  }
  return {};
}

}  // namespace

std::string pretty(const Expr& e) { return pretty_at(e, 0); }

unsigned total_power(const Expr& e) {
  switch (e->kind) {
    case ExprKind::Monomial:
      return e->power;
    case ExprKind::Bracket:
    case ExprKind::Scale:
      return total_power(e->child());
    case ExprKind::Sum: {
      unsigned m = 0;
      for (const auto& c : e->children) m = std::max(m, total_power(c));
      return m;
    }
    case ExprKind::Product: {
      unsigned s = 0;
      for (const auto& c : e->children) s += total_power(c);
      return s;
    }
  }
  return 0;
}

bool contains_bracket(const Expr& e) {
  if (e->kind == ExprKind::Bracket) return true;
  return std::any_of(e->children.begin(), e->children.end(), contains_bracket);
}

Expr substitute_scale(const Expr& p, const Integer& k) {
  switch (p->kind) {
    case ExprKind::Monomial: {
      Integer kp;
      mpz_pow_ui(kp.get_mpz_t(), k.get_mpz_t(), p->power);
      return make_monomial(p->coeff * Coefficient(Rational(kp)), p->power);
    }
    case ExprKind::Bracket:
      return make_bracket(substitute_scale(p->child(), k));
    case ExprKind::Scale:
      return make_scale(p->coeff, substitute_scale(p->child(), k));
    case ExprKind::Sum:
    case ExprKind::Product: {
      std::vector<Expr> kids;
      for (const auto& c : p->children) kids.push_back(substitute_scale(c, k));
      return p->kind == ExprKind::Sum ? make_sum(std::move(kids)) : make_product(std::move(kids));
    }
  }
  return p;
}

}  // namespace genpoly
