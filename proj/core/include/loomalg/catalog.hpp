#pragma once

#include <string>
#include <vector>

#include "loomalg/tower.hpp"

namespace loomalg::catalog {

/// diag(1, zeta, ..., zeta^(l-1)) and the cyclic shift with a2 a1 = zeta a1 a2.
Matrix clock_matrix(unsigned l, unsigned order);
Matrix shift_matrix(unsigned l, unsigned order);

/// Multiloop of Ad a1, Ad a2 on M_l, both of period l, over Q(zeta_l).
LoopTower quantum_torus(unsigned l);

/// Antidiagonal matrix of ones.
Matrix antidiagonal(size_t n, unsigned order);

/// Base sl(l+1), sigma_1(a) = -J a^t J with m_1 = 2, then the reflection
/// z_1 -> z_1^-1 with m_2 = 2.
LoopTower hermitian(unsigned l);

/// Two-step tower over the one-dimensional algebra k with sigma_1 = id, and
/// sigma_2(z_1) = lambda z_1^(sign).
struct SyntheticTower {
  std::string name;
  unsigned m1, m2;
  int sign;  // +1 or -1
  CycloNumber lambda;
  bool first_kind;
};
std::vector<SyntheticTower> synthetic_specs();
LoopTower synthetic_tower(const SyntheticTower& s);

/// One-step loop of sl2 + sl2 under the swap, m = 2.
LoopTower sl2_pair_swap();

/// A (x) k[z_1^+-1, ..., z_n^+-1].
LoopTower untwisted(const StructureAlgebra& a, size_t n);

}  // namespace loomalg::catalog
