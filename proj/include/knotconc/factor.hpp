#pragma once

#include "knotconc/laurent.hpp"

#include <utility>
#include <vector>

namespace knotconc {

struct FactorTerm {
    LaurentPoly factor;   // normalized irreducible
    int multiplicity = 0;

    friend bool operator==(const FactorTerm&, const FactorTerm&) = default;
};

inline constexpr int kDefaultDegreeCap = 24;

/// Complete factorization over Q into normalized irreducibles, up to units.
///
/// Squarefree decomposition, then Zassenhaus on each primitive integer part:
/// Cantor-Zassenhaus modulo a small prime, multifactor Hensel lifting past the
/// Mignotte bound, and subset recombination with exact trial division.
/// Factors come back sorted by span, then coefficients. f must be nonzero;
/// units factor as the empty list. Throws ResourceError when span(f) exceeds
/// degree_cap.
std::vector<FactorTerm> factor(const LaurentPoly& f, int degree_cap = kDefaultDegreeCap);

/// Product of factor^multiplicity over the list (normalized).
LaurentPoly expand(const std::vector<FactorTerm>& factors);

} // namespace knotconc
