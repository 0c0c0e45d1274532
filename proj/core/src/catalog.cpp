#include "loomalg/catalog.hpp"

namespace loomalg::catalog {

Matrix clock_matrix(unsigned l, unsigned order) {
  const CycloNumber z = primitive_root(l, order);
  Matrix m(l, l);
  for (unsigned i = 0; i < l; ++i) m(i, i) = z.pow(i);
  return m;
}

Matrix shift_matrix(unsigned l, unsigned /*order*/) {
  Matrix m(l, l);
  for (unsigned i = 0; i < l; ++i) m(i, (i + 1) % l) = CycloNumber(1);
  return m;
}

LoopTower quantum_torus(unsigned l) {
  auto a = algebras::mat(l, l);
  a.set_name("M" + std::to_string(l));
  const CycloNumber z = primitive_root(l, l);
  std::vector<FiniteOrderAuto> autos{FiniteOrderAuto::make(a, conjugation_map(a, clock_matrix(l, l))),
                                     FiniteOrderAuto::make(a, conjugation_map(a, shift_matrix(l, l)))};
  auto t = multiloop(a, autos, {z, z});
  t.set_name("quantum_torus_" + std::to_string(l));
  return t;
}

Matrix antidiagonal(size_t n, unsigned /*order*/) {
  Matrix j(n, n);
  for (size_t i = 0; i < n; ++i) j(i, n - 1 - i) = CycloNumber(1);
  return j;
}

LoopTower hermitian(unsigned l) {
  auto a = algebras::sl(l + 1, 2);
  a.set_name("sl" + std::to_string(l + 1));
  const Matrix sigma1 = outer_map(a, antidiagonal(l + 1, 2));
  const Matrix id = Matrix::identity(a.dim());
  std::vector<TowerStage> stages{
      {ToralMonomialAuto::base_only(sigma1, 0), 2, CycloNumber(-1)},
      {ToralMonomialAuto(id, {{-1}}, {CycloNumber(1)}), 2, CycloNumber(-1)},
  };
  auto t = LoopTower::make(a, std::move(stages));
  t.set_name("hermitian_" + std::to_string(l));
  return t;
}

std::vector<SyntheticTower> synthetic_specs() {
  const CycloNumber i = CycloNumber::zeta(4);
  const CycloNumber one(1);
  return {
      {"first_m1_1_m2_2_rho_-1", 1, 2, +1, CycloNumber(-1), true},
      {"first_m1_2_m2_2_rho_1", 2, 2, +1, one, true},
      {"first_m1_1_m2_4_rho_i", 1, 4, +1, i, true},
      {"first_m1_1_m2_4_rho_-1", 1, 4, +1, CycloNumber(-1), true},
      {"first_m1_1_m2_4_rho_-i", 1, 4, +1, i.pow(3), true},
      {"second_m1_1_m2_2_rho_1", 1, 2, -1, one, false},
      {"second_m1_1_m2_2_rho_2", 1, 2, -1, CycloNumber(2), false},
      {"second_m1_2_m2_2_rho_9", 2, 2, -1, CycloNumber(3), false},
      {"second_m1_1_m2_4_rho_1", 1, 4, -1, one, false},
      {"second_m1_1_m2_4_rho_-1/2", 1, 4, -1, CycloNumber(Rational(-1, 2)), false},
  };
}

LoopTower synthetic_tower(const SyntheticTower& s) {
  auto k = algebras::mat(1, 4);
  k.set_name("k");
  const Matrix id = Matrix::identity(1);
  std::vector<TowerStage> stages{
      {ToralMonomialAuto::base_only(id, 0), s.m1, primitive_root(s.m1, 4)},
      {ToralMonomialAuto(id, {{s.sign}}, {s.lambda}), s.m2, primitive_root(s.m2, 4)},
  };
  auto t = LoopTower::make(k, std::move(stages));
  t.set_name(s.name);
  return t;
}

LoopTower sl2_pair_swap() {
  auto a = algebras::direct_sum(algebras::sl(2, 2), algebras::sl(2, 2));
  a.set_name("sl2+sl2");
  auto t = multiloop(a, {FiniteOrderAuto::make(a, swap_map(a.dim()))}, {CycloNumber(-1)});
  t.set_name("sl2_pair_swap");
  return t;
}

LoopTower untwisted(const StructureAlgebra& a, size_t n) {
  std::vector<TowerStage> stages;
  for (size_t p = 0; p < n; ++p)
    stages.push_back({ToralMonomialAuto::base_only(Matrix::identity(a.dim()), p), 1, CycloNumber(1)});
  auto t = LoopTower::make(a, std::move(stages));
  t.set_name("untwisted");
  return t;
}

}  // namespace loomalg::catalog
