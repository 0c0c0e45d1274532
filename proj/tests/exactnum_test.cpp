#include <gtest/gtest.h>

#include <random>

#include "loomalg/cyclo.hpp"
#include "loomalg/error.hpp"
#include "loomalg/factor.hpp"
#include "loomalg/linalg.hpp"
#include "loomalg/poly.hpp"

using namespace loomalg;

namespace {

CycloNumber random_cyclo(std::mt19937_64& rng, unsigned order) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  std::vector<Rational> c(euler_phi(order));
  for (auto& x : c) {
    x = Rational(num(rng), den(rng));
    x.canonicalize();
  }
  return CycloNumber::from_coeffs(order, c);
}

QPoly q_of(std::initializer_list<long> coeffs) {
  QPoly p;
  for (long c : coeffs) p.emplace_back(c);
  return p;
}

QPoly cyclotomic_q(unsigned n) {
  QPoly p;
  for (long c : cyclotomic_polynomial(n)) p.emplace_back(c);
  return p;
}

}  // namespace

TEST(CycloNumber, PowerBasisAddition) {
  const auto one = CycloNumber::rational(4, 1);
  const auto z = CycloNumber::zeta(4);
  EXPECT_EQ((one + z).to_string(), "1 + z");
}

TEST(CycloNumber, ISquared) {
  const auto z = CycloNumber::zeta(4);
  EXPECT_EQ(z * z, CycloNumber::rational(4, -1));
}

TEST(CycloNumber, SelfQuotient) {
  const auto z = CycloNumber::zeta(3);
  EXPECT_TRUE((z / z).is_one());
}

TEST(CycloNumber, DivisionByZeroThrows) {
  EXPECT_THROW(CycloNumber::zeta(5) / CycloNumber::rational(5, 0), Error);
}

TEST(CycloNumber, CanonicalReductionMakesEqualityComponentwise) {
  // 1 + z + z^2 = 0 in Q(zeta_3)
  auto s = CycloNumber::from_coeffs(3, {Rational(1), Rational(1), Rational(1)});
  EXPECT_TRUE(s.is_zero());
  EXPECT_EQ(CycloNumber::zeta(3, 2), -(CycloNumber::rational(3, 1) + CycloNumber::zeta(3)));
}

TEST(CycloNumber, OrderMismatchThrows) {
  EXPECT_THROW(CycloNumber::zeta(3) + CycloNumber::zeta(4), Error);
  // rationals embed in any field
  EXPECT_EQ(CycloNumber::zeta(4) * 2 - CycloNumber::zeta(4), CycloNumber::zeta(4));
}

TEST(PrimitiveRoot, Examples) {
  EXPECT_TRUE(primitive_root(1, 12).is_one());
  EXPECT_EQ(primitive_root(2, 12), CycloNumber::rational(12, -1));
  const auto i = primitive_root(4, 4);
  EXPECT_EQ(i, CycloNumber::zeta(4));
  EXPECT_EQ(i.pow(2), CycloNumber::rational(4, -1));
  EXPECT_TRUE(i.pow(4).is_one());
  EXPECT_THROW(primitive_root(5, 12), Error);
}

TEST(PrimitiveRoot, ExactOrderForAllDivisors) {
  for (unsigned n : {1u, 2u, 3u, 4u, 5u, 6u, 8u, 9u, 12u, 15u, 24u}) {
    for (unsigned m = 1; m <= n; ++m) {
      if (n % m) continue;
      const auto r = primitive_root(m, n);
      EXPECT_TRUE(r.pow(m).is_one());
      for (unsigned d = 1; d < m; ++d)
        if (m % d == 0) EXPECT_FALSE(r.pow(d).is_one()) << n << " " << m << " " << d;
      EXPECT_EQ(root_of_unity_order(r, n), m);
    }
  }
}

TEST(Lift, Examples) {
  EXPECT_EQ(CycloNumber::rational(2, -1).lift(4), CycloNumber::rational(4, -1));
  EXPECT_EQ(CycloNumber::zeta(3).lift(6), CycloNumber::zeta(6, 2));
  EXPECT_THROW(CycloNumber::zeta(3).lift(4), Error);
}

TEST(Lift, HomomorphismAndTransitivity) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_cyclo(rng, 3), b = random_cyclo(rng, 3);
    EXPECT_EQ((a * b).lift(12), a.lift(12) * b.lift(12));
    EXPECT_EQ((a + b).lift(12), a.lift(12) + b.lift(12));
    EXPECT_EQ(a.lift(6).lift(12), a.lift(12));
    if (!(a == b)) EXPECT_NE(a.lift(12), b.lift(12));
  }
}

TEST(CycloNumber, FieldAxiomsOnSamples) {
  std::mt19937_64 rng(42);
  for (unsigned order : {1u, 4u, 5u, 8u, 12u}) {
    for (int trial = 0; trial < 25; ++trial) {
      const auto a = random_cyclo(rng, order), b = random_cyclo(rng, order),
                 c = random_cyclo(rng, order);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a * b, b * a);
      if (!a.is_zero()) EXPECT_TRUE((a * a.inverse()).is_one());
    }
  }
}

TEST(CycloNumber, SerialisationRoundTrip) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_cyclo(rng, 12);
    EXPECT_EQ(CycloNumber::parse(a.to_string(), 12), a) << a.to_string();
  }
  EXPECT_EQ(CycloNumber::parse("1/2 + 1*z", 4), CycloNumber::parse("1/2 + z", 4));
  EXPECT_EQ(CycloNumber::rational(7, Rational(-3, 4)).to_string(), "-3/4");
}

TEST(Linalg, KernelAndRank) {
  Matrix m(2, 3);
  m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3;
  m(1, 0) = 2; m(1, 1) = 4; m(1, 2) = 6;
  EXPECT_EQ(rank(m), 1u);
  auto k = kernel(m);
  ASSERT_EQ(k.size(), 2u);
  for (const auto& v : k) EXPECT_TRUE(is_zero(m * v));
}

TEST(Linalg, SubspaceCanonicalForm) {
  auto s1 = Subspace::span(3, {Vector{1, 1, 0}, Vector{0, 1, 1}});
  auto s2 = Subspace::span(3, {Vector{1, 2, 1}, Vector{1, 0, -1}});
  EXPECT_EQ(s1, s2);
  EXPECT_TRUE(s1.contains(Vector{2, 3, 1}));
  EXPECT_FALSE(s1.contains(Vector{0, 0, 1}));
  auto line = Subspace::span(3, {Vector{0, 0, 1}});
  EXPECT_EQ(s1.intersect(line).dim(), 0u);
  EXPECT_EQ(s1.sum(line).dim(), 3u);
}

TEST(Poly, MinimalPolynomial) {
  Matrix m(3, 3);
  m(0, 0) = 2; m(1, 1) = 2; m(2, 2) = 3;
  auto p = minimal_polynomial(m);
  // (x-2)(x-3) = x^2 - 5x + 6
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p[0], CycloNumber(6));
  EXPECT_EQ(p[1], CycloNumber(-5));
  EXPECT_TRUE(evaluate(p, m).is_zero());
}

TEST(Factor, RationalExamples) {
  // (x^2+1)(x-3)(x^3-2)
  QPoly f = poly::mul(poly::mul(q_of({1, 0, 1}), q_of({-3, 1})), q_of({-2, 0, 0, 1}));
  auto fac = factor_rational(f);
  ASSERT_EQ(fac.size(), 3u);
  EXPECT_EQ(fac[0].first, q_of({-3, 1}));
  EXPECT_EQ(fac[1].first, q_of({1, 0, 1}));
  EXPECT_EQ(fac[2].first, q_of({-2, 0, 0, 1}));
}

TEST(Factor, SwinnertonDyerNeedsRecombination) {
  // x^4 - 10x^2 + 1 is irreducible over Q but splits modulo every prime.
  auto fac = factor_rational(q_of({1, 0, -10, 0, 1}));
  ASSERT_EQ(fac.size(), 1u);
  auto sq = factor_rational(poly::mul(q_of({1, 0, -10, 0, 1}), q_of({1, 0, -10, 0, 1})));
  ASSERT_EQ(sq.size(), 1u);
  EXPECT_EQ(sq[0].second, 2);
}

TEST(Factor, ProductsOfCyclotomicPolynomialsOverQ) {
  // Oracle: cyclotomic polynomials are irreducible over Q.
  std::vector<unsigned> ns{3, 5, 7, 8, 9, 12, 15, 16, 20, 21};
  QPoly f{Rational(1)};
  for (auto n : ns) f = poly::mul(f, cyclotomic_q(n));
  auto fac = factor_rational(f);
  ASSERT_EQ(fac.size(), ns.size());
  for (auto n : ns) {
    bool seen = false;
    for (const auto& [g, m] : fac) seen = seen || g == cyclotomic_q(n);
    EXPECT_TRUE(seen) << n;
  }
}

TEST(Factor, CyclotomicSplittingOverField) {
  // Phi_d splits into linear factors over Q(zeta_N) exactly when d | N.
  for (unsigned N : {4u, 5u, 8u, 12u}) {
    for (unsigned d : {3u, 4u, 5u, 8u}) {
      auto fac = factor_cyclotomic(poly::to_k(cyclotomic_q(d)), N);
      size_t total = 0;
      bool all_linear = true;
      for (const auto& [g, m] : fac) {
        total += static_cast<size_t>(poly::degree(g));
        all_linear = all_linear && poly::degree(g) == 1;
      }
      EXPECT_EQ(total, euler_phi(d));
      EXPECT_EQ(all_linear, N % d == 0) << "N=" << N << " d=" << d;
      KPoly prod{CycloNumber(1)};
      for (const auto& [g, m] : fac) prod = poly::mul(prod, g);
      EXPECT_EQ(prod, poly::to_k(cyclotomic_q(d)));
    }
  }
}

TEST(Factor, SqrtTwoInQZeta8) {
  auto roots = roots_in_field(poly::to_k(q_of({-2, 0, 1})), 8);
  ASSERT_EQ(roots.size(), 2u);
  for (const auto& r : roots) EXPECT_EQ(r * r, CycloNumber::rational(8, 2));
  EXPECT_TRUE(roots_in_field(poly::to_k(q_of({-2, 0, 1})), 4).empty());
  EXPECT_TRUE(is_irreducible(poly::to_k(q_of({1, 0, -10, 0, 1})), 8) == false);
  EXPECT_EQ(roots_in_field(poly::to_k(q_of({1, 0, -10, 0, 1})), 24).size(), 4u);
}

TEST(Factor, RandomProductsReconstruct) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int trial = 0; trial < 10; ++trial) {
    KPoly f{CycloNumber(1)};
    for (int k = 0; k < 3; ++k) {
      KPoly g{random_cyclo(rng, 5), random_cyclo(rng, 5), CycloNumber(1)};
      f = poly::mul(f, g);
    }
    auto fac = factor_cyclotomic(f, 5);
    KPoly prod{CycloNumber(1)};
    for (const auto& [g, m] : fac)
      for (int i = 0; i < m; ++i) prod = poly::mul(prod, g);
    EXPECT_EQ(prod, poly::monic(f));
  }
}
