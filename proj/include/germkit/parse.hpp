#pragma once

#include <string>
#include <string_view>

#include "germkit/poly.hpp"

namespace germ {

inline constexpr unsigned kMaxParsedExponent = 255;

/// Recursive-descent parser for the polynomial grammar in docs/grammar.md.
/// Every identifier must be a variable of `ring`. Errors are ParseError
/// with 1-based line and column.
Poly parse_poly(std::string_view text, const RingPtr& ring);

/// Canonical text: terms in descending degrevlex order over the declared
/// variable order, e.g. "x^2*y + x*y^2", "-3/2*x", "0".
std::string print_poly(const Poly& p);

std::string print_monomial(const Monomial& m, const Ring& ring);

}  // namespace germ
