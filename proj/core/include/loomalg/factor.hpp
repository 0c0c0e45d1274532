#pragma once

#include <utility>
#include <vector>

#include "loomalg/poly.hpp"

namespace loomalg {

/// Complete factorisation over Q into monic irreducibles with multiplicity.
/// Squarefree parts are factored by the Berlekamp-Zassenhaus method:
/// Cantor-Zassenhaus modulo a small prime, quadratic Hensel lifting past a
/// Mignotte bound and exhaustive recombination.
std::vector<std::pair<QPoly, int>> factor_rational(const QPoly& f);

/// Complete factorisation over Q(zeta_N) into monic irreducibles, via the
/// norm (resultant) reduction to Q.
std::vector<std::pair<KPoly, int>> factor_cyclotomic(const KPoly& f, unsigned order);

/// Distinct roots of f in Q(zeta_N).
std::vector<CycloNumber> roots_in_field(const KPoly& f, unsigned order);

/// N_{K/Q}(f) as a polynomial over Q, K = Q(zeta_N).
QPoly norm_polynomial(const KPoly& f, unsigned order);

bool is_irreducible(const KPoly& f, unsigned order);

}  // namespace loomalg
