#include <gtest/gtest.h>

#include <random>

#include "loomalg/catalog.hpp"
#include "loomalg/centroid_loop.hpp"
#include "loomalg/error.hpp"

using namespace loomalg;

namespace {

DegreeBox box2(long a, long b) { return DegreeBox{{a, b}}; }

LaurentElement scalar_poly(const std::vector<std::pair<CycloNumber, Degree>>& terms, unsigned order) {
  LaurentElement u(terms.front().second.size(), 1);
  for (const auto& [c, j] : terms) u.add_term(j, Vector{CycloNumber::rational(order, Rational(1)) * c});
  return u;
}

bool in_window(const StabilizerBasis& s, const LaurentElement& u) {
  const size_t dc = s.centroid.basis.size();
  auto base = window_echelon(s.elements, s.box, dc);
  auto more = s.elements;
  more.push_back(u);
  return window_echelon(more, s.box, dc).size() == base.size();
}

// Oracle for the hermitian tower over sl(l+1): the stabilizer is the fixed
// ring of k[y1^+-1, z2^+-1] (y1 = z1^2) under y1 -> y1^-1, z2 -> -z2.
std::vector<LaurentElement> hermitian_fixed_ring(const DegreeBox& box) {
  std::vector<LaurentElement> out;
  const long amax = box.radius[0] / 2;
  for (long b = -box.radius[1]; b <= box.radius[1]; ++b) {
    const bool even = b % 2 == 0;
    if (even) out.push_back(scalar_poly({{CycloNumber(1), {0, b}}}, 2));
    for (long a = 1; a <= amax; ++a)
      out.push_back(scalar_poly({{CycloNumber(1), {2 * a, b}}, {CycloNumber(even ? 1 : -1), {-2 * a, b}}}, 2));
  }
  return out;
}

}  // namespace

TEST(Stabilizer, UntwistedIsEverything) {
  auto t = catalog::untwisted(algebras::sl(2, 1), 2);
  auto s = stabilizer_in_box(t, box2(1, 1));
  EXPECT_EQ(s.elements.size(), 9u);
}

TEST(Stabilizer, QuantumTorusEvenDegrees) {
  auto t = catalog::quantum_torus(2);
  auto s = stabilizer_in_box(t, box2(4, 4));
  EXPECT_EQ(s.elements.size(), 25u);
  for (const auto& [j, n] : s.dim_by_degree()) {
    EXPECT_EQ(floor_mod(j[0], 2), 0);
    EXPECT_EQ(floor_mod(j[1], 2), 0);
    EXPECT_EQ(n, 1u);
  }
}

TEST(Stabilizer, HermitianMatchesFixedRing) {
  for (unsigned l : {1u, 2u}) {
    auto t = catalog::hermitian(l);
    const auto box = box2(4, 4);
    auto s = stabilizer_in_box(t, box);
    EXPECT_EQ(s.elements.size(), 23u);
    const auto oracle = hermitian_fixed_ring(box);
    ASSERT_EQ(oracle.size(), 23u);
    EXPECT_EQ(window_echelon(s.elements, box, 1), window_echelon(oracle, box, 1));
    EXPECT_TRUE(in_window(s, scalar_poly({{CycloNumber(1), {2, 0}}, {CycloNumber(1), {-2, 0}}}, 2)));
    EXPECT_TRUE(in_window(s, scalar_poly({{CycloNumber(1), {2, 1}}, {CycloNumber(-1), {-2, 1}}}, 2)));
    for (long j : {0L, 1L}) {
      const auto mono = scalar_poly({{CycloNumber(1), {2, j}}}, 2);
      EXPECT_FALSE(in_window(s, mono));
      EXPECT_FALSE(stabilizes(t, s.centroid, mono, t.default_box()));
    }
    for (const auto& u : oracle) EXPECT_TRUE(stabilizes(t, s.centroid, u, t.default_box()));
  }
}

TEST(MultiloopCentroid, QuantumTori) {
  for (unsigned l : {2u, 3u}) {
    auto rep = multiloop_centroid_check(catalog::quantum_torus(l), box2(6, 6));
    EXPECT_TRUE(rep.ok) << l;
    EXPECT_EQ(rep.window_dim, rep.expected_dim);
    const std::string g = std::to_string(l);
    EXPECT_EQ(rep.generators, (std::vector<std::string>{"z1^" + g, "z2^" + g}));
  }
  auto rep = multiloop_centroid_check(catalog::quantum_torus(2), box2(6, 6));
  EXPECT_EQ(rep.window_dim, 49u);
}

TEST(MultiloopCentroid, RejectsNonCentral) {
  auto t = catalog::sl2_pair_swap();
  EXPECT_THROW(multiloop_centroid_check(t, DegreeBox{{4}}), Error);
}

TEST(Psi, PairSwap) {
  auto rep = psi_check(catalog::sl2_pair_swap(), DegreeBox{{4}});
  EXPECT_TRUE(rep.ok);
  EXPECT_TRUE(rep.product_rule);
  // C(A) = k x k with the swap: each degree contributes one dimension.
  size_t total = 0;
  for (const auto& [j, n] : rep.stabilizer_dims) {
    EXPECT_EQ(n, 1u);
    total += n;
  }
  EXPECT_EQ(total, 9u);
}

TEST(Psi, CentralSimpleGrading) {
  auto a = algebras::sl(2, 2);
  auto g = trivial_grading(a.dim(), 2);
  auto rep = psi_check(a, g, DegreeBox{{4}});
  EXPECT_TRUE(rep.ok);
  auto sl3 = algebras::sl(3, 3);
  auto rep3 = psi_check(sl3, trivial_grading(sl3.dim(), 3), DegreeBox{{3}});
  EXPECT_TRUE(rep3.ok);
}

TEST(Untwist, QuantumTorusRankFour) {
  auto rep = untwist_check(catalog::quantum_torus(2), box2(2, 2));
  EXPECT_TRUE(rep.ok);
  EXPECT_EQ(rep.rank, 4u);
  EXPECT_EQ(rep.basis, (std::vector<std::string>{"1 @ 1", "1 @ z2", "1 @ z1", "1 @ z1 z2"}));
}

TEST(Untwist, Hermitian) {
  auto rep = untwist_check(catalog::hermitian(1), box2(2, 2));
  EXPECT_TRUE(rep.free_over_stabilizer);
  EXPECT_TRUE(rep.omega_surjective);
  EXPECT_TRUE(rep.omega_injective);
  EXPECT_EQ(rep.rank, 4u);
}

TEST(Kind, Examples) {
  EXPECT_EQ(kind_classify(catalog::hermitian(2)).kind, Kind::Second);
  auto h = kind_classify(catalog::hermitian(1));
  EXPECT_EQ(h.kind, Kind::Second);
  EXPECT_EQ(h.rho, CycloNumber(1));
  EXPECT_FALSE(h.monomial_j.has_value());
  ASSERT_TRUE(h.strange.has_value());

  auto q = kind_classify(catalog::quantum_torus(2));
  EXPECT_EQ(q.kind, Kind::First);

  auto u = kind_classify(catalog::untwisted(algebras::sl(2, 1), 2));
  EXPECT_EQ(u.kind, Kind::First);
  EXPECT_EQ(u.generator_names, (std::vector<std::string>{"z1", "z2"}));
  EXPECT_EQ(kind_name(Kind::Second), "Second");
}

TEST(Kind, RejectsOneStep) { EXPECT_THROW(kind_classify(catalog::sl2_pair_swap()), Error); }

TEST(Strange, Audit) {
  for (long rho : {1L, 2L}) {
    const auto spec = catalog::synthetic_specs()[rho == 1 ? 5 : 6];
    auto v = kind_classify(catalog::synthetic_tower(spec));
    ASSERT_EQ(v.kind, Kind::Second);
    EXPECT_EQ(v.rho, CycloNumber(rho));
    auto audit = strange_ring_audit(*v.strange, 3);
    EXPECT_TRUE(audit.relation);
    EXPECT_EQ(audit.expected, 56u);
    EXPECT_EQ(audit.independent, 56u);
    EXPECT_TRUE(audit.norm_multiplicative);
  }
}

TEST(Strange, BrokenRelationThrows) {
  auto v = kind_classify(catalog::hermitian(1));
  auto d = *v.strange;
  d.rho = CycloNumber(3);
  try {
    strange_ring_audit(d, 1);
    FAIL() << "expected a throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "strange-relation");
  }
}

TEST(Identify, HermitianAndQuantumTorus) {
  auto h = catalog::hermitian(1);
  auto s = identify_centroid(h, kind_classify(h), box2(4, 4));
  EXPECT_TRUE(s.certified);
  EXPECT_EQ(s.kind, Kind::Second);
  EXPECT_EQ(s.window_dim, 23u);
  EXPECT_EQ(s.krull_dimension, 2);

  auto q = catalog::quantum_torus(2);
  auto sq = identify_centroid(q, kind_classify(q), box2(4, 4));
  EXPECT_TRUE(sq.certified);
  EXPECT_EQ(sq.window_dim, 25u);
}

// Invariants

TEST(Invariant, StabilizerClosedUnderProduct) {
  auto t = catalog::hermitian(1);
  auto s = stabilizer_in_box(t, box2(4, 2));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<size_t> pick(0, s.elements.size() - 1);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = laurent_multiply(s.centroid.algebra, s.elements[pick(rng)], s.elements[pick(rng)]);
    EXPECT_TRUE(stabilizes(t, s.centroid, p, t.default_box()));
  }
}

TEST(Invariant, BoxGrowthStable) {
  for (const auto& t : {catalog::hermitian(1), catalog::quantum_torus(2)}) {
    const auto small = box2(2, 2), big = box2(4, 4);
    auto s = stabilizer_in_box(t, small);
    auto b = stabilizer_in_box(t, big);
    const size_t dc = s.centroid.basis.size();
    // big window restricted to the small box: rank(big) - rank(projection outside small)
    std::vector<LaurentElement> outside;
    for (const auto& u : b.elements) {
      LaurentElement o(2, dc);
      for (const auto& [j, c] : u.support())
        if (!small.contains(j)) o.add_term(j, c);
      outside.push_back(o);
    }
    const size_t restricted = window_echelon(b.elements, big, dc).size() - window_echelon(outside, big, dc).size();
    EXPECT_EQ(s.elements.size(), restricted);
    for (const auto& u : s.elements) EXPECT_TRUE(in_window(b, u));
  }
}

TEST(Invariant, CentroidActionFaithful) {
  for (const auto& t : {catalog::hermitian(1), catalog::sl2_pair_swap()}) {
    auto s = stabilizer_in_box(t, t.default_box());
    const auto xs = t.basis_in_box(t.default_box());
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int trial = 0; trial < 5; ++trial) {
      LaurentElement u(t.steps(), s.centroid.basis.size());
      for (const auto& e : s.elements) u.add_scaled(CycloNumber(coef(rng)), e);
      if (u.is_zero()) continue;
      bool acts = false;
      for (const auto& x : xs) acts = acts || !centroid_act(s.centroid, u, x).is_zero();
      EXPECT_TRUE(acts);
    }
  }
}

TEST(Invariant, KindDichotomy) {
  for (const auto& spec : catalog::synthetic_specs()) {
    auto t = catalog::synthetic_tower(spec);
    auto v = kind_classify(t);
    EXPECT_EQ(v.kind == Kind::First, spec.first_kind) << spec.name;
    EXPECT_EQ(v.kind == Kind::First, v.monomial_j.has_value()) << spec.name;
    EXPECT_EQ(v.rho, spec.lambda.pow(spec.m1)) << spec.name;
    auto s = identify_centroid(t, v, t.default_box());
    EXPECT_TRUE(s.certified) << spec.name;
  }
}

TEST(Invariant, CentroidTowerMatchesStabilizer) {
  std::vector<LoopTower> towers{catalog::hermitian(1), catalog::quantum_torus(2), catalog::sl2_pair_swap()};
  for (const auto& spec : catalog::synthetic_specs()) towers.push_back(catalog::synthetic_tower(spec));
  for (const auto& t : towers) {
    const auto box = t.default_box();
    auto s = stabilizer_in_box(t, box);
    auto ct = centroid_tower(t);
    const size_t dc = s.centroid.basis.size();
    EXPECT_EQ(window_echelon(ct.basis_in_box(box), box, dc), window_echelon(s.elements, box, dc)) << t.name();
  }
}

TEST(Strange, IsomorphismAdvisory) {
  EXPECT_TRUE(strange_isomorphism_advisory(CycloNumber(1), CycloNumber(4), 1).same_class);
  EXPECT_FALSE(strange_isomorphism_advisory(CycloNumber(1), CycloNumber(2), 1).same_class);
  EXPECT_FALSE(strange_isomorphism_advisory(CycloNumber(1), CycloNumber(-1), 1).same_class);
  // -1 = i^2 and 2 = (1 + i)^2 / i... only -1 becomes a square over Q(i).
  EXPECT_TRUE(strange_isomorphism_advisory(CycloNumber(1), CycloNumber(-1), 4).same_class);
  EXPECT_FALSE(strange_isomorphism_advisory(CycloNumber(1), CycloNumber(3), 4).same_class);
  // 2 = -i (1 + i)^2 is a square over Q(zeta_8).
  EXPECT_TRUE(strange_isomorphism_advisory(CycloNumber(1), CycloNumber(2), 8).same_class);
  EXPECT_NE(strange_isomorphism_advisory(CycloNumber(1), CycloNumber(2), 1).label.find("advisory"), std::string::npos);
}
