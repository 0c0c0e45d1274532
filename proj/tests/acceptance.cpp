// Acceptance suite: one PASS/FAIL line per criterion. Every arithmetic
// comparison is exact; the tolerance column is printed for the record.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "loomalg/catalog.hpp"
#include "loomalg/centroid_loop.hpp"
#include "loomalg/error.hpp"
#include "loomalg/findim.hpp"
#include "loomalg/typing.hpp"

using namespace loomalg;

namespace {

constexpr unsigned kSeed = 20261019;

struct Fixture {
  std::string name;
  LoopTower tower;
};

std::vector<Fixture> fixtures() {
  std::vector<Fixture> out;
  out.push_back({"quantum-torus-2", catalog::quantum_torus(2)});
  out.push_back({"quantum-torus-3", catalog::quantum_torus(3)});
  out.push_back({"hermitian-1", catalog::hermitian(1)});
  out.push_back({"hermitian-2", catalog::hermitian(2)});
  out.push_back({"pair-swap", catalog::sl2_pair_swap()});
  for (const auto& s : catalog::synthetic_specs()) out.push_back({s.name, catalog::synthetic_tower(s)});
  return out;
}

// Collects failure notes for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok && notes_.size() < 8) notes_.push_back(what);
    failed_ = failed_ || !ok;
  }
  bool ok() const { return !failed_; }
  size_t count() const { return count_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  bool failed_ = false;
  size_t count_ = 0;
  std::vector<std::string> notes_;
};

CycloNumber unit_coordinate(const findim::CentroidAlgebra& c) {
  return c.coordinates(Matrix::identity(c.basis.front().rows()))[0];
}

// Scalar Laurent polynomial in the centroid coordinates of a central base.
LaurentElement scalar_poly(const findim::CentroidAlgebra& c, const std::vector<std::pair<CycloNumber, Degree>>& terms) {
  const CycloNumber one = unit_coordinate(c);
  LaurentElement u(terms.front().second.size(), 1);
  for (const auto& [k, j] : terms) u.add_term(j, Vector{k * one});
  return u;
}

bool same_span(const std::vector<LaurentElement>& a, const std::vector<LaurentElement>& b, const DegreeBox& box,
               size_t dim) {
  return window_echelon(a, box, dim) == window_echelon(b, box, dim);
}

LaurentElement random_element(std::mt19937_64& rng, const DegreeBox& box, size_t dim, unsigned order, int terms) {
  LaurentElement y(box.arity(), dim);
  std::uniform_int_distribution<int> coef(-4, 4), dimpick(0, static_cast<int>(dim) - 1), zpow(0, 5);
  for (int k = 0; k < terms; ++k) {
    Degree j;
    for (long r : box.radius) j.push_back(std::uniform_int_distribution<long>(-r, r)(rng));
    Vector v = zero_vector(dim);
    CycloNumber c = CycloNumber(coef(rng));
    if (order > 2) c = c * CycloNumber::zeta(order, zpow(rng)) + CycloNumber(coef(rng));
    v[dimpick(rng)] = c;
    y.add_term(j, v);
  }
  return y;
}

// Orbit-sum oracle for a finite group of signed monomial maps on
// k[z1^+-1, z2^+-1]: each generator sends z^j to sign(j) z^(M j).
struct MonomialMap {
  std::function<Degree(const Degree&)> degree;
  std::function<long(const Degree&)> sign;
};

std::vector<LaurentElement> fixed_ring_window(const std::vector<MonomialMap>& group, const DegreeBox& box,
                                              const findim::CentroidAlgebra& c) {
  std::vector<LaurentElement> out;
  std::set<Degree> seen;
  for (const auto& j : box.degrees()) {
    if (seen.count(j)) continue;
    std::map<Degree, long> sum;
    for (const auto& g : group) {
      sum[g.degree(j)] += g.sign(j);
      seen.insert(g.degree(j));
    }
    std::vector<std::pair<CycloNumber, Degree>> terms;
    for (const auto& [d, s] : sum)
      if (s != 0) terms.push_back({CycloNumber(s), d});
    bool inside = !terms.empty();
    for (const auto& [s, d] : terms) inside = inside && box.contains(d);
    if (inside) out.push_back(scalar_poly(c, terms));
  }
  return out;
}

// Elements of span(s) supported in the small box, as a window echelon.
std::vector<SparseVec<size_t>> restrict_to(const std::vector<LaurentElement>& s, const DegreeBox& big,
                                           const DegreeBox& small, size_t dim) {
  WindowIndex w(big, dim);
  std::vector<SparseVec<size_t>> outside;
  for (const auto& u : s) {
    LaurentElement o(u.arity(), dim);
    for (const auto& [j, v] : u.support())
      if (!small.contains(j)) o.add_term(j, v);
    outside.push_back(w.flatten(o));
  }
  std::vector<LaurentElement> inner;
  for (const auto& rel : linear_relations(outside)) {
    LaurentElement x(big.arity(), dim);
    for (size_t i = 0; i < s.size(); ++i)
      if (!rel[i].is_zero()) x.add_scaled(rel[i], s[i]);
    inner.push_back(x);
  }
  return window_echelon(inner, small, dim);
}

// ---- criteria

void quantum_torus(Check& c) {
  for (unsigned l : {2u, 3u}) {
    const auto t = catalog::quantum_torus(l);
    const auto& a = t.base();
    const std::string tag = "l=" + std::to_string(l) + ": ";
    // x1 = a2^-1 (x) z1, x2 = a1 (x) z2
    const auto a2inv = *inverse(catalog::shift_matrix(l, l));
    const auto x1 = LaurentElement::monomial(a.coords_of_matrix(a2inv), {1, 0});
    const auto x2 = LaurentElement::monomial(a.coords_of_matrix(catalog::clock_matrix(l, l)), {0, 1});
    c.expect(t.contains(x1) && t.contains(x2), tag + "generators lie in L");
    const auto lhs = laurent_multiply(a, x2, x1);
    const auto rhs = laurent_multiply(a, x1, x2).scaled(CycloNumber::zeta(l));
    c.expect(lhs == rhs && !lhs.is_zero(), tag + "x2 x1 = zeta x1 x2");

    const DegreeBox box{{2L * l, 2L * l}};
    const auto s = stabilizer_in_box(t, box);
    std::vector<LaurentElement> monomials;
    for (long i = -2; i <= 2; ++i)
      for (long j = -2; j <= 2; ++j) monomials.push_back(scalar_poly(s.centroid, {{CycloNumber(1), {i * l, j * l}}}));
    c.expect(s.centroid.basis.size() == 1, tag + "central base");
    c.expect(same_span(s.elements, monomials, box, 1) && s.elements.size() == 25, tag + "stabilizer = monomials");

    const auto u = untwist_check(t, t.default_box());
    std::set<std::string> want, got(u.basis.begin(), u.basis.end());
    for (long i = 0; i < static_cast<long>(l); ++i)
      for (long j = 0; j < static_cast<long>(l); ++j) want.insert("1 @ " + monomial_name({i, j}));
    c.expect(u.ok && u.rank == l * l && got == want, tag + "untwist rank l^2 with basis 1 (x) z1^i z2^j");
  }
}

void hermitian(Check& c) {
  for (unsigned l : {1u, 2u}) {
    const auto t = catalog::hermitian(l);
    const std::string tag = "l=" + std::to_string(l) + ": ";
    const auto v = kind_classify(t);
    c.expect(v.kind == Kind::Second && v.rho == CycloNumber(1), tag + "second kind, rho = 1");
    const auto cen = findim::centroid_algebra(t.base());
    for (long j : {0L, 1L})
      c.expect(!stabilizes(t, cen, scalar_poly(cen, {{CycloNumber(1), {2, j}}}), t.default_box()),
               tag + "z1^2 z2^" + std::to_string(j) + " rejected");
    // Group generated by eta_1: z1 -> -z1 and kappa_1 eta_2: z1 -> z1^-1, z2 -> -z2.
    auto id = MonomialMap{[](const Degree& j) { return j; }, [](const Degree&) { return 1L; }};
    auto eta1 = MonomialMap{[](const Degree& j) { return j; }, [](const Degree& j) { return j[0] % 2 ? -1L : 1L; }};
    auto ke2 = MonomialMap{[](const Degree& j) { return Degree{-j[0], j[1]}; },
                           [](const Degree& j) { return j[1] % 2 ? -1L : 1L; }};
    auto both = MonomialMap{[](const Degree& j) { return Degree{-j[0], j[1]}; },
                            [](const Degree& j) { return (j[0] + j[1]) % 2 ? -1L : 1L; }};
    const DegreeBox box{{4, 4}};
    const auto oracle = fixed_ring_window({id, eta1, ke2, both}, box, cen);
    const auto s = stabilizer_in_box(t, box);
    c.expect(s.elements.size() == oracle.size() && oracle.size() == 23,
             tag + "window dim " + std::to_string(s.elements.size()) + " vs orbit oracle " +
                 std::to_string(oracle.size()));
    c.expect(same_span(s.elements, oracle, box, 1), tag + "window equals the fixed ring");
    const auto audit = strange_ring_audit(*v.strange, 2, kSeed);
    c.expect(audit.relation && audit.ok(), tag + "w^2 = (u1^2 - 4) u2");
  }
}

void dichotomy(Check& c) {
  size_t first = 0, second = 0;
  std::set<unsigned> m2s;
  for (const auto& spec : catalog::synthetic_specs()) {
    const auto t = catalog::synthetic_tower(spec);
    const auto v = kind_classify(t);
    const auto& a = findim::centroid_algebra(t.base()).algebra;
    const std::string tag = spec.name + ": ";
    m2s.insert(spec.m2);
    c.expect((v.kind == Kind::First) == spec.first_kind, tag + "kind matches construction");
    const long m1 = spec.m1, m2 = spec.m2;
    const auto cen = findim::centroid_algebra(t.base());
    auto mono = [&](long i, long j, CycloNumber k = CycloNumber(1)) {
      return scalar_poly(cen, {{k, {i, j}}});
    };
    const CycloNumber rho = spec.lambda.pow(m1);
    if (spec.first_kind) {
      ++first;
      // rho = zeta_m2^(p2 r) with n2 the order of rho; t1 = y1^n2, t2 = y1^s z2^p2.
      const unsigned n2 = root_of_unity_order(rho, static_cast<unsigned>(m2));
      const long p2 = m2 / n2;
      long r = 0;
      while (r < static_cast<long>(n2) && primitive_root(m2, t.base().order()).pow(p2 * r) != rho) ++r;
      long s = 0;
      if (n2 > 1)
        while ((s * r) % n2 != 1) ++s;
      c.expect(v.generators.size() == 2, tag + "two generators");
      if (v.generators.size() != 2) continue;
      c.expect(v.generators[0] == mono(m1 * n2, 0), tag + "t1 = y1^n2");
      c.expect(v.generators[1] == mono(m1 * s, p2), tag + "t2 = y1^s z2^p2");
      for (const auto& g : v.generators) c.expect(stabilizes(t, cen, g, t.default_box()), tag + "generator in C(L)");
      c.expect(stabilizes(t, cen, mono(-m1 * n2, 0), t.default_box()) &&
                   stabilizes(t, cen, mono(-m1 * s, -p2), t.default_box()),
               tag + "inverses in C(L)");
    } else {
      ++second;
      c.expect(m2 % 2 == 0, tag + "m2 even");
      const long p2 = m2 / 2;
      const auto& d = *v.strange;
      const auto u1 = mono(m1, 0) + mono(-m1, 0, rho);
      const auto u2 = mono(0, m2);
      const auto w = mono(m1, p2) - mono(-m1, p2, rho);
      c.expect(v.rho == rho, tag + "rho");
      c.expect(d.u1 == u1, tag + "u1 = y1 + rho y1^-1");
      c.expect(d.u2 == u2, tag + "u2 = y2^2");
      c.expect(d.w == w, tag + "w = (y1 - rho y1^-1) y2");
      const auto lhs = laurent_multiply(a, w, w);
      const auto rhs = laurent_multiply(a, laurent_multiply(a, u1, u1) - mono(0, 0, 4 * rho), u2);
      c.expect(lhs == rhs, tag + "w^2 = (u1^2 - 4 rho) u2");
      c.expect(laurent_multiply(a, d.u2, d.u2_inv) == mono(0, 0), tag + "u2 invertible");
      for (const auto& g : {d.u1, d.u2, d.u2_inv, d.w})
        c.expect(stabilizes(t, cen, g, t.default_box()), tag + "witness in C(L)");
    }
  }
  c.expect(first == 5 && second == 5, "5 towers of each kind");
  c.expect(m2s == std::set<unsigned>{2, 4}, "m2 varies over {2, 4}");
}

void canonical_forms(Check& c, const std::vector<Fixture>& fx) {
  std::mt19937_64 rng(kSeed);
  for (const auto& f : fx) {
    const auto& t = f.tower;
    const auto box = t.default_box();
    for (int trial = 0; trial < 200; ++trial) {
      const auto y = random_element(rng, box, t.base().dim(), t.base().order(), 1 + trial % 5);
      const auto form = canonical_form(t, y);
      bool members = form.size() == residue_indices(t.moduli()).size();
      for (const auto& [i, x] : form) members = members && t.contains(x);
      c.expect(members, f.name + ": components lie in L");
      c.expect(reconstruct(t, form) == y, f.name + ": reconstructs");
      c.expect(canonical_form(t, reconstruct(t, form)) == form, f.name + ": unique");
    }
  }
}

void psi(Check& c) {
  const auto t = catalog::sl2_pair_swap();
  const DegreeBox box{{4}};
  const auto rep = psi_check(t, box);
  c.expect(rep.ok && rep.same_window && rep.product_rule, "psi report");
  // Independent tower over k x k with the exchange of factors.
  auto kk = algebras::direct_sum(algebras::mat(1, t.base().order()), algebras::mat(1, t.base().order()));
  const auto sw = FiniteOrderAuto::make(kk, swap_map(2));
  const auto lc = multiloop(kk, {sw}, {primitive_root(2, t.base().order())});
  const auto s = stabilizer_in_box(t, box);
  c.expect(s.centroid.basis.size() == 2, "C(A) has dimension 2");
  const auto dims = s.dim_by_degree();
  const auto oracle = pivot_degrees(window_echelon(lc.basis_in_box(box), box, 2), box, 2);
  c.expect(dims == oracle, "stabilizer dims match L(k x k) degree by degree");
  size_t total = 0;
  for (const auto& [j, n] : oracle) total += n;
  c.expect(total == box.size(), "one dimension per degree");
}

void inheritance(Check& c, const std::vector<Fixture>& fx) {
  for (const auto& f : fx) {
    const auto& a = f.tower.base();
    const auto flags = inherited_flags(f.tower);
    for (const char* name : {"nonzero", "perfect"}) {
      const Flag* x = flags.find(name);
      c.expect(x && x->box_checked && x->box_passed, f.name + ": " + name + " verified in box");
    }
    // Base facts computed here: prime is known when the base is simple.
    const bool simple = findim::is_simple(a);
    const std::map<std::string, std::optional<bool>> base{
        {"unital", findim::find_unit(a).has_value()},
        {"associative", a.is_associative()},
        {"commutative", a.is_commutative()},
        {"prime", simple ? std::optional<bool>(true) : std::nullopt}};
    for (const auto& [name, truth] : base) {
      const Flag* x = flags.find(name);
      if (!x) {
        c.expect(false, f.name + ": missing flag " + name);
        continue;
      }
      if (truth) {
        c.expect(x->base_status == (*truth ? "true" : "false"), f.name + ": base " + name);
        c.expect((x->tower_status == "true") == *truth, f.name + ": tower " + name);
      } else {
        c.expect(x->tower_status != "true", f.name + ": tower " + name + " not claimed");
      }
    }
  }
}

void types(Check& c, const std::vector<Fixture>& fx) {
  auto label = [](const typing::Archetype& a) { return a.label; };
  c.expect(label(typing::lie_split_type(algebras::sl(2, 1), std::nullopt, kSeed)) == "A_1", "sl2 is A_1");
  c.expect(label(typing::lie_split_type(algebras::sl(3, 1), std::nullopt, kSeed)) == "A_2", "sl3 is A_2");
  for (unsigned l : {1u, 2u}) {
    const auto t = catalog::hermitian(l);
    c.expect(label(typing::lie_split_type(t.base(), std::nullopt, kSeed)) == "A_" + std::to_string(l),
             "hermitian base is A_l");
  }
  for (size_t l : {2u, 3u})
    c.expect(label(typing::associative_type(algebras::mat(l, 1), kSeed)) == "Mat_" + std::to_string(l), "M_l is Mat_l");
  try {
    typing::associative_type(algebras::quaternion(CycloNumber(-1), CycloNumber(-1), 1), kSeed);
    c.expect(false, "rational quaternions rejected");
  } catch (const Error& e) {
    c.expect(e.code() == "not-split", "rational quaternions rejected as not split");
  }
  for (const auto& f : fx) {
    const auto& a = f.tower.base();
    if (!findim::is_simple(a)) {
      // The permanence argument needs a prime base; the pair swap base is not.
      try {
        typing::tower_type(f.tower, kSeed);
        c.expect(false, f.name + ": refused without a prime base");
      } catch (const Error& e) {
        c.expect(e.code() == "hypothesis", f.name + ": refused without a prime base");
      }
      continue;
    }
    const auto base = a.is_lie() ? typing::lie_split_type(a, std::nullopt, kSeed) : typing::associative_type(a, kSeed);
    const auto tt = typing::tower_type(f.tower, kSeed);
    c.expect(tt.archetype.label == base.label && tt.archetype.variety == base.variety,
             f.name + ": tower type is the base type");
    c.expect(tt.steps == f.tower.steps(), f.name + ": step count");
    c.expect(tt.archetype.provenance == "by permanence", f.name + ": provenance");
  }
}

void krull(Check& c, const std::vector<Fixture>& fx) {
  size_t n = 0;
  for (const auto& f : fx) {
    if (f.tower.steps() != 2) continue;
    ++n;
    const auto v = kind_classify(f.tower);
    const auto s = identify_centroid(f.tower, v, f.tower.default_box());
    c.expect(s.certified, f.name + ": centroid identified");
    c.expect(s.kind == v.kind, f.name + ": identification matches kind");
    c.expect(s.krull_dimension == 2, f.name + ": dimension annotated as 2");
    c.expect(s.window_dim == s.model_dim, f.name + ": window matches model");
  }
  c.expect(n == 14, "all two-step fixtures covered");
}

void box_growth(Check& c, const std::vector<Fixture>& fx) {
  for (const auto& f : fx) {
    const auto d = f.tower.default_box();
    const auto d2 = d.scaled(2), half = d.scaled(1, 2);
    const auto s1 = stabilizer_in_box(f.tower, d);
    const auto s2 = stabilizer_in_box(f.tower, d2);
    const size_t dc = s1.centroid.basis.size();
    c.expect(restrict_to(s1.elements, d, half, dc) == restrict_to(s2.elements, d2, half, dc),
             f.name + ": radius D and 2D agree on D/2");
  }
}

}  // namespace

int main() {
  const auto fx = fixtures();
  struct Criterion {
    int id;
    std::string title;
    std::string tolerance;
    std::function<void(Check&)> body;
  };
  const std::vector<Criterion> criteria{
      {1, "quantum torus relation, stabilizer monomials, untwist rank", "exact", quantum_torus},
      {2, "hermitian tower: second kind, rejected monomials, fixed-ring window, strange relation", "exact", hermitian},
      {3, "kind dichotomy on 10 synthetic towers with witness relations", "exact", dichotomy},
      {4, "canonical form: 200 round trips per fixture", "exact", [&](Check& c) { canonical_forms(c, fx); }},
      {5, "centroid of loop equals loop of centroid (pair swap)", "mismatch 0", psi},
      {6, "flag inheritance for every fixture", "exact", [&](Check& c) { inheritance(c, fx); }},
      {7, "types and permanence", "exact", [&](Check& c) { types(c, fx); }},
      {8, "centroid structure identified for every two-step fixture", "exact", [&](Check& c) { krull(c, fx); }},
      {9, "stabilizer box growth D vs 2D on the D/2 window", "exact", [&](Check& c) { box_growth(c, fx); }},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s [tolerance %s; %zu checks; %.1fs]\n", check.ok() ? "PASS" : "FAIL", cr.id,
                cr.title.c_str(), cr.tolerance.c_str(), check.count(), secs);
    for (const auto& n : check.notes()) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    if (!check.ok()) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
