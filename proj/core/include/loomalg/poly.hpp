#pragma once

#include <string>
#include <utility>
#include <vector>

#include "loomalg/cyclo.hpp"
#include "loomalg/linalg.hpp"

namespace loomalg {

// Univariate polynomials, coefficient lists lowest degree first, trimmed so
// that the zero polynomial is the empty list.
using KPoly = std::vector<CycloNumber>;
using QPoly = std::vector<Rational>;

namespace poly {

void trim(KPoly& p);
void trim(QPoly& p);
long degree(const KPoly& p);  // -1 for zero
long degree(const QPoly& p);

KPoly add(const KPoly& a, const KPoly& b);
KPoly sub(const KPoly& a, const KPoly& b);
KPoly mul(const KPoly& a, const KPoly& b);
KPoly scale(const CycloNumber& s, const KPoly& a);
void divmod(const KPoly& a, const KPoly& b, KPoly& q, KPoly& r);
KPoly rem(const KPoly& a, const KPoly& b);
KPoly monic(const KPoly& a);
/// Monic gcd; gcd(0, 0) = 0.
KPoly gcd(const KPoly& a, const KPoly& b);
KPoly derivative(const KPoly& a);
CycloNumber eval(const KPoly& a, const CycloNumber& x);
/// a(x + c)
KPoly shift(const KPoly& a, const CycloNumber& c);
/// Yun's algorithm: monic squarefree factors with multiplicities.
std::vector<std::pair<KPoly, int>> squarefree(const KPoly& a);

QPoly add(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly mul(const QPoly& a, const QPoly& b);
void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly monic(const QPoly& a);
QPoly gcd(const QPoly& a, const QPoly& b);
QPoly derivative(const QPoly& a);
std::vector<std::pair<QPoly, int>> squarefree(const QPoly& a);

KPoly to_k(const QPoly& a);
bool is_rational(const KPoly& a);
QPoly to_q(const KPoly& a);

std::string to_string(const KPoly& a, const std::string& var = "x");

}  // namespace poly

/// Monic minimal polynomial of a square matrix over Q(zeta_N).
KPoly minimal_polynomial(const Matrix& m);
/// p(M) for a polynomial p and square matrix M.
Matrix evaluate(const KPoly& p, const Matrix& m);

}  // namespace loomalg
