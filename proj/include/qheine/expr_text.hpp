#pragma once

#include <string>

#include "qheine/rational_func.hpp"

namespace qheine {

/// Canonical expression text: expanded sum of terms
/// `coeff * a^i b^j c^k z^l q^m`, terms in descending graded-lex order,
/// rational coefficients printed as `p/q`.
std::string render_poly(const LaurentPoly& p);

/// `num` or `(num) / (den)` when the denominator is nontrivial.
std::string render_rational_func(const RationalFunc& f);

/// Parses the canonical format (and harmless variations: optional `*`,
/// `^` optional for exponent 1). Throws std::invalid_argument on errors.
LaurentPoly parse_poly(const std::string& text);
RationalFunc parse_rational_func(const std::string& text);

std::string latex_poly(const LaurentPoly& p);
std::string latex_rational_func(const RationalFunc& f);

}  // namespace qheine
