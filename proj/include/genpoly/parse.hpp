#pragma once

#include <string>

#include "genpoly/expr.hpp"

namespace genpoly {

/// Grammar: sums/differences of products of powers of atoms. Atoms are `n`, literals (`3`,
/// `0.25`, `7/3` via division by a rational), `sqrt<k>` or `sqrt(k)`, `pi`, `e`, `golden`,
/// `( expr )` and `[| expr |]`. Exponents are nonnegative integer literals.
/// Throws SyntaxError, or ConstantTermError for a nonzero constant summand or bracket.
Expr parse(const std::string& text);

/// A constant-only expression such as "1/2 + sqrt3" (used for CLI coefficients).
Coefficient parse_coefficient(const std::string& text);

}  // namespace genpoly
