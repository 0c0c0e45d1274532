#include <gtest/gtest.h>

#include "loomalg/error.hpp"
#include "loomalg/grading.hpp"

using namespace loomalg;

namespace {

Matrix diag(std::vector<CycloNumber> d) {
  Matrix m(d.size(), d.size());
  for (size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Subspace span_of(const StructureAlgebra& a, std::initializer_list<const char*> labels) {
  std::vector<Vector> v;
  for (auto l : labels) v.push_back(a.basis_vector(*a.label_index(l)));
  return Subspace::span(a.dim(), v);
}

// Oracle for the sl2 diag(1,-1) grading: e and f are negated, h fixed.
ModGrading sl2_parity(const StructureAlgebra& s) {
  return ModGrading{2, {span_of(s, {"h"}), span_of(s, {"e", "f"})}};
}

}  // namespace

TEST(Auto, PeriodIsExact) {
  auto s = algebras::sl(2, 1);
  auto sigma = FiniteOrderAuto::make(s, conjugation_map(s, diag({CycloNumber(1), CycloNumber(-1)})));
  EXPECT_EQ(sigma.period(), 2u);
  EXPECT_THROW(FiniteOrderAuto::make(s, Matrix::identity(3), 2u), Error);
  EXPECT_NO_THROW(FiniteOrderAuto::make(s, Matrix::identity(3), 1u));
  Matrix bad = Matrix::identity(3);
  bad(0, 0) = CycloNumber(2);
  EXPECT_THROW(FiniteOrderAuto::make(s, bad), Error);
}

TEST(FromAuto, Identity) {
  auto s = algebras::sl(2, 1);
  auto id = FiniteOrderAuto::make(s, Matrix::identity(3));
  auto g = grading_from_auto(s, id, CycloNumber(1));
  EXPECT_EQ(g.modulus, 1u);
  EXPECT_EQ(g.components[0].dim(), 3u);
}

TEST(FromAuto, Sl2Parity) {
  auto s = algebras::sl(2, 1);
  auto sigma = FiniteOrderAuto::make(s, conjugation_map(s, diag({CycloNumber(1), CycloNumber(-1)})));
  auto g = grading_from_auto(s, sigma, CycloNumber(-1));
  EXPECT_EQ(g.components[0], span_of(s, {"h"}));
  EXPECT_EQ(g.components[1], span_of(s, {"e", "f"}));
  EXPECT_THROW(grading_from_auto(s, sigma, CycloNumber::zeta(3)), Error);
}

TEST(FromAuto, QuantumTorusComponents) {
  for (unsigned l : {2u, 3u, 4u}) {
    auto a = algebras::mat(l, l);
    const CycloNumber z = primitive_root(l, l);
    std::vector<CycloNumber> d;
    for (unsigned i = 0; i < l; ++i) d.push_back(z.pow(i));
    Matrix a1 = diag(d), a2(l, l);
    for (unsigned i = 0; i < l; ++i) a2(i, (i + 1) % l) = CycloNumber(1);
    auto sigma1 = FiniteOrderAuto::make(a, conjugation_map(a, a1));
    auto sigma2 = FiniteOrderAuto::make(a, conjugation_map(a, a2));
    EXPECT_EQ(sigma1.period(), l);
    auto g1 = grading_from_auto(a, sigma1, z);
    auto g2 = grading_from_auto(a, sigma2, z);
    for (int i1 = -2; i1 < 3; ++i1)
      for (int i2 = -2; i2 < 3; ++i2) {
        const Vector x = a.coords_of_matrix(a2.pow(-i1) * a1.pow(i2));
        EXPECT_TRUE(g1.components[floor_mod(i1, l)].contains(x));
        EXPECT_TRUE(g2.components[floor_mod(i2, l)].contains(x));
      }
  }
}

TEST(ToAuto, TrivialAndRoundTrip) {
  auto s = algebras::sl(2, 1);
  auto triv = auto_from_grading(s, trivial_grading(3, 1), CycloNumber(1));
  EXPECT_TRUE(triv.matrix().is_identity());

  auto g = sl2_parity(s);
  auto sigma = auto_from_grading(s, g, CycloNumber(-1));
  EXPECT_EQ(sigma.matrix(), conjugation_map(s, diag({CycloNumber(1), CycloNumber(-1)})));
  auto back = grading_from_auto(s, sigma, CycloNumber(-1));
  EXPECT_EQ(back.components, g.components);
}

TEST(ToAuto, EmptyComponentsGiveSmallerPeriod) {
  auto s = algebras::sl(2, 4);
  // modulus 4 with degrees 0 and 2 only: the automorphism has period 2
  ModGrading g{4, {span_of(s, {"h"}), Subspace::span(3, {}), span_of(s, {"e", "f"}), Subspace::span(3, {})}};
  auto sigma = auto_from_grading(s, g, CycloNumber::zeta(4));
  EXPECT_EQ(sigma.period(), 2u);
  EXPECT_TRUE(sigma.matrix().pow(4).is_identity());
  EXPECT_EQ(grading_from_auto(s, sigma, CycloNumber::zeta(4)).components, g.components);
}

TEST(ToAuto, RoundTripOnAutomorphisms) {
  auto a = algebras::mat(3, 3);
  const CycloNumber z = CycloNumber::zeta(3);
  Matrix g(3, 3);
  for (unsigned i = 0; i < 3; ++i) g(i, (i + 1) % 3) = CycloNumber(1);
  g(0, 1) = CycloNumber(2);  // g^3 is scalar 2, so Ad g has period 3
  auto sigma = FiniteOrderAuto::make(a, conjugation_map(a, g));
  ASSERT_EQ(sigma.period(), 3u);
  auto round = auto_from_grading(a, grading_from_auto(a, sigma, z), z);
  EXPECT_EQ(round.matrix(), sigma.matrix());
}

TEST(Validate, Examples) {
  auto s = algebras::sl(2, 1);
  EXPECT_TRUE(validate_grading(s, sl2_parity(s)).valid());

  ModGrading bad{2, {span_of(s, {"e"}), span_of(s, {"h", "f"})}};
  auto rep = validate_grading(s, bad);
  ASSERT_FALSE(rep.valid());
  bool named = false;
  for (const auto& v : rep.violations)
    if (v.kind == GradingViolation::Kind::ProductLeak && v.i == 0 && v.j == 1) {
      named = true;
      EXPECT_NE(v.message.find("A_0 * A_1 not in A_1"), std::string::npos) << v.message;
    }
  EXPECT_TRUE(named);

  ModGrading overlap{2, {span_of(s, {"e", "h"}), span_of(s, {"h", "f"})}};
  auto rep2 = validate_grading(s, overlap);
  ASSERT_FALSE(rep2.valid());
  EXPECT_EQ(rep2.violations.front().kind, GradingViolation::Kind::NotDirect);

  EXPECT_THROW(auto_from_grading(s, bad, CycloNumber(-1)), Error);
}

TEST(CentroidGradingTest, CentralIsDegreeZero) {
  auto s = algebras::sl(2, 1);
  auto cg = centroid_grading(s, sl2_parity(s));
  EXPECT_EQ(cg.grading.components[0].dim(), 1u);
  EXPECT_EQ(cg.grading.components[1].dim(), 0u);
}

TEST(CentroidGradingTest, SwapOnSl2Sum) {
  auto a = algebras::direct_sum(algebras::sl(2, 1), algebras::sl(2, 1));
  auto sigma = FiniteOrderAuto::make(a, swap_map(6));
  auto g = grading_from_auto(a, sigma, CycloNumber(-1));
  auto cg = centroid_grading(a, g);
  ASSERT_EQ(cg.grading.components.size(), 2u);
  EXPECT_EQ(cg.grading.components[0].dim(), 1u);
  EXPECT_EQ(cg.grading.components[1].dim(), 1u);
  const Matrix even = cg.centroid.matrix(cg.grading.components[0].basis()[0]);
  EXPECT_EQ(even, Matrix::identity(6).scaled(even(0, 0)));
  // degree 1: a multiple of pi_1 - pi_2
  const Matrix odd = cg.centroid.matrix(cg.grading.components[1].basis()[0]);
  Matrix diff = Matrix::identity(6);
  for (size_t i = 3; i < 6; ++i) diff(i, i) = CycloNumber(-1);
  EXPECT_EQ(odd, diff.scaled(odd(0, 0)));
  EXPECT_TRUE(validate_grading(cg.centroid.algebra, cg.grading).valid());
}

TEST(CentroidGradingTest, ZeroComponentsStayZero) {
  auto s = algebras::sl(2, 4);
  ModGrading g{4, {span_of(s, {"h"}), Subspace::span(3, {}), span_of(s, {"e", "f"}), Subspace::span(3, {})}};
  auto cg = centroid_grading(s, g);
  for (unsigned i = 1; i < 4; ++i) EXPECT_EQ(cg.grading.components[i].dim(), 0u);
}

TEST(Invariants, GradingsValidateAndCentroidGradingValid) {
  auto a = algebras::mat(2, 2);
  auto g = grading_from_auto(a, FiniteOrderAuto::make(a, conjugation_map(a, diag({CycloNumber(1), CycloNumber(-1)}))),
                             CycloNumber(-1));
  EXPECT_TRUE(validate_grading(a, g).valid());
  auto cg = centroid_grading(a, g);
  EXPECT_TRUE(validate_grading(cg.centroid.algebra, cg.grading).valid());
}
