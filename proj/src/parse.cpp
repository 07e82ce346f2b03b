#include "genpoly/parse.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "genpoly/errors.hpp"

namespace genpoly {

namespace {

// A parsed fragment: either a constant (no n) or a genuine expression.
struct Fragment {
  std::optional<Coefficient> constant;
  Expr expr;

  static Fragment of(Coefficient c) { return Fragment{std::move(c), nullptr}; }
  static Fragment of(Expr e) { return Fragment{std::nullopt, std::move(e)}; }
  bool is_constant() const { return constant.has_value(); }
};

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  Fragment parse_all() {
    Fragment f = sum();
    skip();
    if (pos_ != s_.size()) throw SyntaxError(pos_, "operator or end of input", "unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(const char* tok) {
    skip();
    return s_.compare(pos_, std::char_traits<char>::length(tok), tok) == 0;
  }

  bool accept(const char* tok) {
    if (!peek(tok)) return false;
    pos_ += std::char_traits<char>::length(tok);
    return true;
  }

  void expect(const char* tok) {
    if (!accept(tok)) throw SyntaxError(pos_, std::string("'") + tok + "'", "");
  }

  Fragment sum() {
    std::size_t start = pos_;
    Coefficient constant;
    std::vector<Expr> terms;
    bool negative = false;
    if (accept("-")) negative = true;
    else accept("+");
    for (;;) {
      Fragment t = product();
      if (negative) t = negate_fragment(t);
      if (t.is_constant()) {
        constant += *t.constant;
      } else {
        terms.push_back(t.expr);
      }
      if (accept("+")) {
        negative = false;
      } else if (peek("-")) {
        ++pos_;
        negative = true;
      } else {
        break;
      }
    }
    if (terms.empty()) return Fragment::of(constant);
    if (!constant.is_zero()) {
      throw ConstantTermError("constant summand " + constant.format() + " in expression at position " +
                              std::to_string(start));
    }
    return Fragment::of(make_sum(std::move(terms)));
  }

  static Fragment negate_fragment(const Fragment& f) {
    if (f.is_constant()) return Fragment::of(-*f.constant);
    return Fragment::of(negate(f.expr));
  }

  Fragment product() {
    Coefficient scalar(1);
    std::vector<Expr> factors;
    auto absorb = [&](const Fragment& f) {
      if (f.is_constant()) scalar *= *f.constant;
      else factors.push_back(f.expr);
    };
    absorb(unary());
    for (;;) {
      if (accept("*")) {
        absorb(unary());
      } else if (peek("/")) {
        std::size_t at = ++pos_;
        Fragment d = unary();
        if (!d.is_constant() || !d.constant->is_rational() || d.constant->is_zero()) {
          throw SyntaxError(at, "nonzero rational divisor", "");
        }
        scalar *= Coefficient(1 / d.constant->rational_value());
      } else {
        break;
      }
    }
    if (factors.empty()) return Fragment::of(scalar);
    return Fragment::of(make_scale(scalar, make_product(std::move(factors))));
  }

  Fragment unary() {
    if (accept("-")) return negate_fragment(unary());
    if (accept("+")) return unary();
    return power();
  }

  Fragment power() {
    Fragment base = atom();
    if (!accept("^")) return base;
    skip();
    std::size_t at = pos_;
    std::string digits;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];
    if (digits.empty() || digits.size() > 4) throw SyntaxError(at, "nonnegative integer exponent", "");
    unsigned k = static_cast<unsigned>(std::stoul(digits));
    if (base.is_constant()) return Fragment::of(base.constant->pow(k));
    if (k == 0) return Fragment::of(Coefficient(1));
    if (base.expr->kind == ExprKind::Monomial) {
      return Fragment::of(make_monomial(base.expr->coeff.pow(k), base.expr->power * k));
    }
    std::vector<Expr> copies(k, base.expr);
    return Fragment::of(make_product(std::move(copies)));
  }

  Fragment atom() {
    skip();
    if (pos_ >= s_.size()) throw SyntaxError(pos_, "operand", "end of input");
    if (accept("[|")) {
      std::size_t at = pos_;
      Fragment inner = sum();
      expect("|]");
      if (inner.is_constant()) {
        throw ConstantTermError("bracket of the constant " + inner.constant->format() + " at position " +
                                std::to_string(at));
      }
      return Fragment::of(make_bracket(inner.expr));
    }
    if (accept("(")) {
      Fragment inner = sum();
      expect(")");
      return inner;
    }
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Fragment::of(Coefficient(number()));
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    throw SyntaxError(pos_, "operand", "unexpected '" + std::string(1, c) + "'");
  }

  Rational number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    std::string lit = s_.substr(start, pos_ - start);
    if (lit == "." || std::count(lit.begin(), lit.end(), '.') > 1) throw SyntaxError(start, "number", lit);
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E') && pos_ + 1 < s_.size() &&
        (std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 1] == '-' || s_[pos_ + 1] == '+')) {
      throw SyntaxError(pos_, "operator", "exponent notation is not supported; write 10^k");
    }
    return parse_rational(lit);
  }

  Fragment identifier() {
    std::size_t start = pos_;
    std::string word;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) word += s_[pos_++];
    if (word == "n") return Fragment::of(make_monomial(Coefficient(1), 1));
    if (word == "pi") return Fragment::of(Coefficient::pi());
    if (word == "e") return Fragment::of(Coefficient::euler());
    if (word == "golden") return Fragment::of(Coefficient::golden());
    if (word == "sqrt") {
      bool paren = accept("(");
      skip();
      std::string digits;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];
      if (digits.empty() || digits.size() > 12) throw SyntaxError(pos_, "radicand digits after sqrt", "");
      if (paren) expect(")");
      return Fragment::of(Coefficient::sqrt(std::stoul(digits)));
    }
    throw SyntaxError(start, "n, pi, e, golden or sqrt<k>", "unknown identifier '" + word + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(const std::string& text) {
  Fragment f = Parser(text).parse_all();
  if (f.is_constant()) {
    throw ConstantTermError("expression '" + text + "' has no occurrence of n");
  }
  return f.expr;
}

Coefficient parse_coefficient(const std::string& text) {
  Fragment f = Parser(text).parse_all();
  if (!f.is_constant()) throw SyntaxError(0, "constant expression", text);
  return *f.constant;
}

}  // namespace genpoly
