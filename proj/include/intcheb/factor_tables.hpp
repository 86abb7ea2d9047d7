#pragma once

#include <string_view>
#include <vector>

#include "intcheb/poly.hpp"

namespace intcheb {

// Known small factors of integer Chebyshev polynomials.

// The eight factors for [0, 1/4] (ascending coefficients):
// z, 4z-1, 5z-1, 6z-1, 29z^2-11z+1, 169z^3-94z^2+17z-1,
// 961z^4-712z^3+194z^2-23z+1, 4921z^5-4594z^4+1697z^3-310z^2+28z-1.
const std::vector<IntPoly>& quarterFactorTable();

// The corresponding factors for [0, 1]:
// x(1-x), 2x-1, 5x^2-5x+1, 6x^2-6x+1, and the degree 4/6/8/10 companions.
const std::vector<IntPoly>& unitFactorTable();

// Exponent scale of each quarter factor under the x(1-x) substitution:
// a relative multiplicity alpha on [0,1] becomes scale*alpha on [0,1/4]
// (2 for every factor except 4z-1, whose preimage 2x-1 enters squared).
const std::vector<double>& quarterFactorScales();

// Alias lookup for CLI factor lists: "z", "4z-1", "5z-1", "6z-1",
// "q5".."q8".  Returns the table index or -1.
int quarterFactorIndex(std::string_view alias);

// Reverse lookup: alias of a table polynomial, empty when unknown.
std::string quarterFactorAlias(const IntPoly& poly);

// Default known-factor list for a search domain: the quarter table for
// subsets of [0, 1/4], the unit table for subsets of [0, 1], else empty.
std::vector<IntPoly> defaultFactorTableFor(const IntervalUnion& domain);

}  // namespace intcheb
