#pragma once

#include "weilgamma/laurent.hpp"
#include "weilgamma/ring.hpp"

#include <string>

namespace weilgamma {

// Textual element syntax: integer literals, z<m> (distinguished m-th root of
// unity), g (finite-field generator), polynomial variables, X (reserved for
// Laurent polynomials), operators + - * / ^ and parentheses. Division is only
// by units (or into the fraction ring when parsing fractions).

Value parse_element(const RingPtr& ring, const std::string& text);
LaurentPoly parse_laurent(const RingPtr& ring, const std::string& text);
SFraction parse_fraction(const RingPtr& ring, const std::string& text);

} // namespace weilgamma
