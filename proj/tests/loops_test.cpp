#include <gtest/gtest.h>

#include <random>

#include "loomalg/catalog.hpp"
#include "loomalg/error.hpp"
#include "loomalg/tower.hpp"

using namespace loomalg;

namespace {

Matrix diag2(long a, long b) {
  Matrix m(2, 2);
  m(0, 0) = CycloNumber(a);
  m(1, 1) = CycloNumber(b);
  return m;
}

LoopTower sl2_parity_loop() {
  auto s = algebras::sl(2, 2);
  return multiloop(s, {FiniteOrderAuto::make(s, conjugation_map(s, diag2(1, -1)))}, {CycloNumber(-1)});
}

Vector label(const StructureAlgebra& a, const std::string& l) { return a.basis_vector(*a.label_index(l)); }

LaurentElement random_window_element(std::mt19937_64& rng, const DegreeBox& box, size_t dim, unsigned order,
                                     int terms) {
  std::uniform_int_distribution<int> coef(-4, 4);
  LaurentElement y(box.arity(), dim);
  for (int t = 0; t < terms; ++t) {
    Degree j;
    for (long r : box.radius) j.push_back(std::uniform_int_distribution<long>(-r, r)(rng));
    Vector v = zero_vector(dim);
    v[std::uniform_int_distribution<size_t>(0, dim - 1)(rng)] =
        CycloNumber::rational(order, Rational(coef(rng))) + CycloNumber::zeta(order) * CycloNumber(coef(rng));
    y.add_term(j, v);
  }
  return y;
}

// Oracle for towers with M = I and trivial characters: window dimension is the
// sum over degrees of the simultaneous eigenspace dimensions.
size_t eigen_count_oracle(const LoopTower& t, const DegreeBox& box) {
  const size_t d = t.base().dim();
  size_t total = 0;
  for (const auto& j : box.degrees()) {
    Subspace common = Subspace::full(d);
    for (size_t p = 0; p < t.steps(); ++p) {
      const auto& s = t.stages()[p];
      Matrix shifted = s.twist.theta();
      const CycloNumber z = s.zeta.pow(floor_mod(j[p], s.modulus));
      for (size_t r = 0; r < d; ++r) shifted(r, r) -= z;
      common = common.intersect(Subspace::span(d, kernel(shifted)));
    }
    total += common.dim();
  }
  return total;
}

}  // namespace

TEST(Laurent, MultiplyExamples) {
  auto m2 = algebras::mat(2, 1);
  const auto a = label(m2, "E12"), b = label(m2, "E21");
  auto x = LaurentElement::monomial(a, {1});
  auto y = LaurentElement::monomial(b, {-1});
  EXPECT_EQ(laurent_multiply(m2, x, y), LaurentElement::monomial(m2.multiply(a, b), {0}));
  EXPECT_TRUE(laurent_multiply(m2, x, LaurentElement(1, 4)).is_zero());
  EXPECT_THROW(laurent_multiply(m2, x, LaurentElement(2, 4)), Error);
}

TEST(Laurent, QuantumTorusRelation) {
  for (unsigned l : {2u, 3u}) {
    auto t = catalog::quantum_torus(l);
    const auto& a = t.base();
    const Matrix a1 = catalog::clock_matrix(l, l), a2 = catalog::shift_matrix(l, l);
    auto x1 = LaurentElement::monomial(a.coords_of_matrix(a2.pow(-1)), {1, 0});
    auto x2 = LaurentElement::monomial(a.coords_of_matrix(a1), {0, 1});
    EXPECT_TRUE(t.contains(x1));
    EXPECT_TRUE(t.contains(x2));
    EXPECT_EQ(laurent_multiply(a, x2, x1), laurent_multiply(a, x1, x2).scaled(primitive_root(l, l)));
  }
}

TEST(Laurent, SlicesJoinRoundTrip) {
  std::mt19937_64 rng(3);
  auto y = random_window_element(rng, DegreeBox{{3, 3}}, 3, 4, 12);
  EXPECT_EQ(LaurentElement::join(y.slices(), 2, 3), y);
  EXPECT_EQ(y.shifted({2, -1}).shifted({-2, 1}), y);
}

TEST(Box, Enumeration) {
  DegreeBox b{{1, 2}};
  EXPECT_EQ(b.size(), 15u);
  auto ds = b.degrees();
  ASSERT_EQ(ds.size(), 15u);
  EXPECT_EQ(ds.front(), (Degree{-1, -2}));
  EXPECT_EQ(ds.back(), (Degree{1, 2}));
  EXPECT_TRUE(std::is_sorted(ds.begin(), ds.end()));
  EXPECT_EQ(DegreeBox{}.degrees().size(), 1u);
}

TEST(Membership, Examples) {
  auto u = catalog::untwisted(algebras::sl(2, 1), 2);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) EXPECT_TRUE(u.contains(random_window_element(rng, DegreeBox{{3, 3}}, 3, 1, 6)));

  auto t = sl2_parity_loop();
  const auto& s = t.base();
  EXPECT_FALSE(t.contains(LaurentElement::monomial(label(s, "h"), {1})));
  EXPECT_TRUE(t.contains(LaurentElement::monomial(label(s, "h"), {2})));
  EXPECT_TRUE(t.contains(LaurentElement::monomial(label(s, "e"), {1})));

  auto q = catalog::quantum_torus(2);
  const Matrix a1 = catalog::clock_matrix(2, 2), a2 = catalog::shift_matrix(2, 2);
  EXPECT_TRUE(q.contains(LaurentElement::monomial(q.base().coords_of_matrix(a2.pow(-1) * a1), {1, 1})));
  EXPECT_FALSE(q.contains(LaurentElement::monomial(q.base().coords_of_matrix(a1), {1, 1})));
}

TEST(BasisInBox, Examples) {
  auto u = catalog::untwisted(algebras::sl(2, 1), 1);
  EXPECT_EQ(u.basis_in_box(DegreeBox{{3}}).size(), 3u * 7u);

  auto t = sl2_parity_loop();
  EXPECT_EQ(t.basis_in_box(DegreeBox{{2}}).size(), 7u);
  EXPECT_EQ(eigen_count_oracle(t, DegreeBox{{2}}), 7u);

  auto q = catalog::quantum_torus(2);
  EXPECT_EQ(q.basis_in_box(DegreeBox{{2, 2}}).size(), 25u);
  EXPECT_EQ(eigen_count_oracle(q, DegreeBox{{2, 2}}), 25u);
  auto q3 = catalog::quantum_torus(3);
  EXPECT_EQ(q3.basis_in_box(DegreeBox{{3, 3}}).size(), eigen_count_oracle(q3, DegreeBox{{3, 3}}));
}

TEST(BasisInBox, HermitianOrbits) {
  // sl2 hermitian: stage one keeps h at even and e,f at odd degrees of z1;
  // stage two pairs degree i with -i.
  auto t = catalog::hermitian(1);
  const DegreeBox box{{2, 2}};
  size_t expected = 0;
  for (const auto& j : box.degrees()) {
    if (j[0] < 0) continue;
    const size_t line = (j[0] % 2 == 0) ? 1 : 2;  // dim of the z1-degree component of sl2
    if (j[0] > 0) expected += line;              // the pair {i, -i} contributes one line per vector
    else if (j[1] % 2 == 0) expected += line;    // i = 0 needs the +1 eigenvalue of the reflection
  }
  EXPECT_EQ(t.basis_in_box(box).size(), expected);
  for (const auto& x : t.basis_in_box(box)) EXPECT_TRUE(t.contains(x));
}

TEST(CanonicalForm, Examples) {
  auto t = sl2_parity_loop();
  const auto& s = t.base();
  auto y = LaurentElement::monomial(label(s, "h"), {2});
  auto f = canonical_form(t, y);
  EXPECT_EQ(f.at({0}), y);
  EXPECT_TRUE(f.at({1}).is_zero());

  auto e1 = LaurentElement::monomial(label(s, "e"), {0});
  auto g = canonical_form(t, e1);
  EXPECT_TRUE(g.at({0}).is_zero());
  EXPECT_EQ(g.at({1}), LaurentElement::monomial(label(s, "e"), {-1}));
}

TEST(CanonicalForm, RandomRoundTrips) {
  std::mt19937_64 rng(20261019);
  std::vector<LoopTower> towers{catalog::quantum_torus(2), catalog::hermitian(1), catalog::hermitian(2),
                                catalog::sl2_pair_swap()};
  for (const auto& t : towers) {
    const auto box = t.default_box();
    for (int trial = 0; trial < 30; ++trial) {
      auto y = random_window_element(rng, box, t.base().dim(), t.base().order(), 6);
      auto f = canonical_form(t, y);
      EXPECT_EQ(f.size(), residue_indices(t.moduli()).size());
      for (const auto& [i, x] : f) EXPECT_TRUE(t.contains(x)) << t.name();
      EXPECT_EQ(reconstruct(t, f), y) << t.name();
      EXPECT_EQ(canonical_form(t, reconstruct(t, f)), f);
    }
  }
}

TEST(CanonicalForm, FamiliesFromLAreRecovered) {
  std::mt19937_64 rng(5);
  auto t = catalog::hermitian(1);
  auto basis = t.basis_in_box(DegreeBox{{2, 2}});
  for (int trial = 0; trial < 20; ++trial) {
    CanonicalForm fam;
    for (const auto& i : residue_indices(t.moduli())) {
      LaurentElement x(2, 3);
      for (int k = 0; k < 3; ++k)
        x.add_scaled(CycloNumber(std::uniform_int_distribution<int>(-3, 3)(rng)),
                     basis[std::uniform_int_distribution<size_t>(0, basis.size() - 1)(rng)]);
      fam.emplace(i, x);
    }
    EXPECT_EQ(canonical_form(t, reconstruct(t, fam)), fam);
  }
}

TEST(Multiloop, Construction) {
  auto t = sl2_parity_loop();
  EXPECT_EQ(t.steps(), 1u);
  EXPECT_EQ(t.moduli(), (std::vector<unsigned>{2}));

  auto s = algebras::sl(2, 1);
  auto id = FiniteOrderAuto::make(s, Matrix::identity(3));
  auto u = multiloop(s, {id, id}, {CycloNumber(1), CycloNumber(1)});
  EXPECT_EQ(u.basis_in_box(DegreeBox{{1, 1}}).size(), 27u);

  Matrix g(2, 2);
  g(0, 0) = CycloNumber(1);
  g(1, 0) = CycloNumber(1);
  g(1, 1) = CycloNumber(-1);
  auto s1 = FiniteOrderAuto::make(s, conjugation_map(s, diag2(1, -1)));
  auto s2 = FiniteOrderAuto::make(s, conjugation_map(s, g));
  try {
    multiloop(s, {s1, s2}, {CycloNumber(-1), CycloNumber(-1)});
    FAIL() << "expected a commutation error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("1 and 2 do not commute"), std::string::npos);
  }
}

TEST(FreeBasis, Examples) {
  auto u = catalog::untwisted(algebras::mat(2, 1), 1);
  auto r = free_basis_check(u, DegreeBox{{2}});
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.rank, 1u);
  EXPECT_EQ(r.basis, (std::vector<std::string>{"1 @ 1"}));

  auto q = catalog::quantum_torus(2);
  auto rq = free_basis_check(q, DegreeBox{{2, 2}});
  EXPECT_TRUE(rq.ok);
  EXPECT_EQ(rq.rank, 4u);
  EXPECT_EQ(rq.basis, (std::vector<std::string>{"1 @ 1", "1 @ z2", "1 @ z1", "1 @ z1 z2"}));

  EXPECT_THROW(free_basis_check(catalog::hermitian(1), DegreeBox{{2, 2}}), Error);
}

TEST(Flags, Examples) {
  auto m2 = catalog::untwisted(algebras::mat(2, 1), 1);
  auto f = inherited_flags(m2);
  EXPECT_EQ(f.find("prime")->tower_status, "true");
  EXPECT_EQ(f.find("prime")->tower_provenance, "derived-by-theorem");
  EXPECT_EQ(f.find("unital")->tower_status, "true");
  EXPECT_EQ(f.find("commutative")->tower_status, "not applicable");

  auto fs = inherited_flags(sl2_parity_loop());
  EXPECT_TRUE(fs.find("perfect")->box_passed);
  EXPECT_EQ(fs.find("perfect")->tower_provenance, "derived-by-theorem, verified-in-box");

  auto z = catalog::untwisted(algebras::zero(2, 1), 1);
  auto fz = inherited_flags(z);
  EXPECT_EQ(fz.find("perfect")->tower_status, "not applicable");
  EXPECT_EQ(fz.find("pfgc")->tower_status, "not applicable");
  EXPECT_EQ(fz.find("prime")->base_status, "false");
  EXPECT_FALSE(fz.find("perfect")->box_passed);
}

TEST(Tower, RejectsBadStages) {
  auto s = algebras::sl(2, 2);
  // sigma^2 != id for a period-4 map declared with modulus 2
  Matrix g(2, 2);
  g(0, 1) = CycloNumber(1);
  g(1, 0) = CycloNumber(-1);
  auto bad_period = ToralMonomialAuto::base_only(conjugation_map(s, diag2(1, 1)), 0);
  EXPECT_NO_THROW(LoopTower::make(s, {{bad_period, 1, CycloNumber(1)}}));
  EXPECT_THROW(LoopTower::make(s, {{ToralMonomialAuto::base_only(Matrix::identity(3), 0), 2, CycloNumber(1)}}), Error);
  EXPECT_THROW(ToralMonomialAuto(Matrix::identity(3), {{2}}, {CycloNumber(1)}), Error);
}

// ---- invariants ----

TEST(Invariants, WindowBasisMatchesMembership) {
  std::mt19937_64 rng(17);
  for (const auto& t : {catalog::hermitian(1), catalog::quantum_torus(2), catalog::sl2_pair_swap()}) {
    const auto box = t.default_box();
    const auto basis = t.basis_in_box(box);
    WindowIndex w(box, t.base().dim());
    const Subspace sp = t.window_subspace(box);
    EXPECT_EQ(sp.dim(), basis.size());
    for (int trial = 0; trial < 20; ++trial) {
      LaurentElement x(box.arity(), t.base().dim());
      for (int k = 0; k < 4; ++k)
        x.add_scaled(CycloNumber(std::uniform_int_distribution<int>(-5, 5)(rng)),
                     basis[std::uniform_int_distribution<size_t>(0, basis.size() - 1)(rng)]);
      EXPECT_TRUE(t.contains(x));
      auto y = random_window_element(rng, box, t.base().dim(), t.base().order(), 3);
      EXPECT_EQ(t.contains(y), sp.contains(to_dense(w.flatten(y), w.size())));
    }
  }
}

TEST(Invariants, ClosedUnderProducts) {
  for (const auto& t : {catalog::hermitian(1), catalog::quantum_torus(2)}) {
    DegreeBox small;
    for (unsigned m : t.moduli()) small.radius.push_back(m);
    const auto basis = t.basis_in_box(small);
    for (const auto& x : basis)
      for (const auto& y : basis) EXPECT_TRUE(t.contains(laurent_multiply(t.base(), x, y)));
  }
}

TEST(Invariants, MultiloopMatchesFineGrading) {
  std::mt19937_64 rng(99);
  auto q = catalog::quantum_torus(3);
  const auto& a = q.base();
  std::vector<Subspace> fine;  // index i1*3+i2
  for (unsigned i1 = 0; i1 < 3; ++i1)
    for (unsigned i2 = 0; i2 < 3; ++i2) {
      Subspace c = Subspace::full(a.dim());
      const unsigned idx[2] = {i1, i2};
      for (size_t p = 0; p < 2; ++p) {
        Matrix sh = q.stages()[p].twist.theta();
        const CycloNumber z = q.stages()[p].zeta.pow(idx[p]);
        for (size_t r = 0; r < a.dim(); ++r) sh(r, r) -= z;
        c = c.intersect(Subspace::span(a.dim(), kernel(sh)));
      }
      fine.push_back(c);
    }
  size_t members = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const long j1 = std::uniform_int_distribution<long>(-5, 5)(rng);
    const long j2 = std::uniform_int_distribution<long>(-5, 5)(rng);
    Vector v;
    if (trial % 2 == 0) {
      const auto& comp = fine[floor_mod(j1, 3) * 3 + floor_mod(j2, 3)];
      v = scale(CycloNumber(trial + 1), comp.basis().at(0));
    } else {
      v = zero_vector(a.dim());
      v[std::uniform_int_distribution<size_t>(0, a.dim() - 1)(rng)] = CycloNumber(1);
    }
    const bool rule = fine[floor_mod(j1, 3) * 3 + floor_mod(j2, 3)].contains(v);
    const bool member = q.contains(LaurentElement::monomial(v, {j1, j2}));
    EXPECT_EQ(rule, member);
    members += member;
  }
  EXPECT_GE(members, 50u);
}

TEST(Invariants, StagePeriodsExact) {
  for (const auto& t : {catalog::hermitian(2), catalog::quantum_torus(3)}) {
    for (const auto& c : t.stage_checks()) {
      EXPECT_TRUE(c.stabilizes);
      EXPECT_EQ(c.period_on_window, t.stages()[c.stage - 1].modulus);
    }
  }
  // an identity twist with modulus 2 has period 1 on the window
  auto spec = catalog::synthetic_specs()[1];
  auto t = catalog::synthetic_tower(spec);
  EXPECT_EQ(t.stage_checks()[1].period_on_window, 1u);
}
