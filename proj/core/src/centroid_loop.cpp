#include "loomalg/centroid_loop.hpp"

#include <random>
#include <set>

#include "loomalg/error.hpp"
#include "loomalg/factor.hpp"

namespace loomalg {

namespace {

using Key = std::pair<Degree, size_t>;

SparseVec<Key> keyed(const LaurentElement& x) {
  SparseVec<Key> v;
  for (const auto& [j, c] : x.support())
    for (size_t r = 0; r < c.size(); ++r)
      if (!c[r].is_zero()) v.emplace(Key{j, r}, c[r]);
  return v;
}

void require_central_simple(const StructureAlgebra& a, const std::string& what) {
  if (!findim::is_simple(a) || !findim::is_central(a))
    throw Error("hypothesis", what + " needs a central simple base");
}

}  // namespace

LaurentElement centroid_act(const findim::CentroidAlgebra& c, const LaurentElement& u, const LaurentElement& x) {
  if (u.arity() != x.arity()) throw Error("arity", "centroid element and algebra element have different arity");
  const size_t d = c.basis.at(0).rows();
  LaurentElement out(x.arity(), d);
  for (const auto& [j1, uc] : u.support()) {
    const Matrix chi = c.matrix(uc);
    for (const auto& [j2, v] : x.support()) {
      Degree t = j1;
      for (size_t p = 0; p < t.size(); ++p) t[p] += j2[p];
      out.add_term(t, chi * v);
    }
  }
  return out;
}

bool stabilizes(const LoopTower& t, const findim::CentroidAlgebra& c, const LaurentElement& u,
                const DegreeBox& check_box) {
  for (const auto& x : t.basis_in_box(check_box))
    if (!t.contains(centroid_act(c, u, x))) return false;
  return true;
}

std::vector<SparseVec<size_t>> window_echelon(const std::vector<LaurentElement>& elements, const DegreeBox& box,
                                              size_t dim) {
  WindowIndex w(box, dim);
  SparseEchelon<size_t> ech;
  for (const auto& x : elements) ech.insert(w.flatten(x));
  return ech.reduced_basis();
}

std::map<Degree, size_t> pivot_degrees(const std::vector<SparseVec<size_t>>& echelon, const DegreeBox& box,
                                       size_t dim) {
  WindowIndex w(box, dim);
  std::map<Degree, size_t> out;
  for (const auto& row : echelon) ++out[w.degrees()[row.begin()->first / dim]];
  return out;
}

std::map<Degree, size_t> StabilizerBasis::dim_by_degree() const {
  const size_t dc = centroid.basis.size();
  return pivot_degrees(window_echelon(elements, box, dc), box, dc);
}

StabilizerBasis stabilizer_in_box(const LoopTower& t, const DegreeBox& box, std::optional<DegreeBox> check_box) {
  if (box.arity() != t.steps()) throw Error("arity", "stabilizer box needs one radius per step");
  StabilizerBasis out{box, check_box ? *check_box : t.default_box(), findim::centroid_algebra(t.base()), {}};
  const size_t dc = out.centroid.basis.size();
  WindowIndex w(box, dc);
  const auto xs = t.basis_in_box(out.verified_radius);
  SparseEchelon<size_t> ech;
  std::set<size_t> dead;  // variables already forced to zero
  for (const auto& x : xs) {
    std::map<std::tuple<size_t, Degree, size_t>, SparseVec<size_t>> eqs;
    for (size_t c = 0; c < dc; ++c) {
      const LaurentElement gx = x.mapped(out.centroid.basis[c]);
      if (gx.is_zero()) continue;
      for (size_t pos = 0; pos < w.degrees().size(); ++pos) {
        const size_t var = w.index(pos, c);
        if (dead.count(var)) continue;
        for (const auto& [key, val] : t.defect(gx.shifted(w.degrees()[pos]))) {
          auto& eq = eqs[key];
          auto it = eq.find(var);
          if (it == eq.end()) {
            eq.emplace(var, val);
          } else {
            it->second += val;
            if (it->second.is_zero()) eq.erase(it);
          }
        }
      }
    }
    for (auto& [key, eq] : eqs) {
      if (eq.empty()) continue;
      if (eq.size() == 1) dead.insert(eq.begin()->first);
      ech.insert(std::move(eq));
    }
  }
  std::vector<SparseVec<size_t>> rows;
  for (const auto& [pivot, row] : ech.rows()) rows.push_back(row);
  for (const auto& v : solve_homogeneous(rows, w.size())) out.elements.push_back(w.unflatten(v));
  return out;
}

LoopTower centroid_tower(const LoopTower& t) {
  const auto c = findim::centroid_algebra(t.base());
  std::vector<TowerStage> stages;
  for (const auto& s : t.stages()) stages.push_back({s.twist.induced_on_centroid(c), s.modulus, s.zeta});
  auto ct = LoopTower::make(c.algebra, std::move(stages));
  ct.set_name("C(" + t.name() + ")");
  return ct;
}

MultiloopCentroidReport multiloop_centroid_check(const LoopTower& t, const DegreeBox& box) {
  for (const auto& s : t.stages())
    if (!s.twist.is_base_only()) throw Error("hypothesis", "multiloop centroid check needs a multiloop tower");
  require_central_simple(t.base(), "multiloop centroid check");
  MultiloopCentroidReport rep;
  const auto stab = stabilizer_in_box(t, box);
  const Vector one = *stab.centroid.algebra.unit();
  const auto moduli = t.moduli();
  std::vector<LaurentElement> expected;
  for (const auto& j : box.degrees()) {
    bool ok = true;
    for (size_t p = 0; p < j.size(); ++p) ok = ok && floor_mod(j[p], moduli[p]) == 0;
    if (ok) expected.push_back(LaurentElement::monomial(one, j));
  }
  for (size_t p = 0; p < moduli.size(); ++p) {
    Degree g(moduli.size(), 0);
    g[p] = moduli[p];
    rep.generators.push_back(monomial_name(g));
  }
  const size_t dc = stab.centroid.basis.size();
  const auto got = window_echelon(stab.elements, box, dc);
  const auto want = window_echelon(expected, box, dc);
  rep.window_dim = got.size();
  rep.expected_dim = want.size();
  if (got != want) {
    const auto gd = pivot_degrees(got, box, dc), wd = pivot_degrees(want, box, dc);
    std::set<Degree> all;
    for (const auto& [j, n] : gd) all.insert(j);
    for (const auto& [j, n] : wd) all.insert(j);
    for (const auto& j : all) {
      const size_t a = gd.count(j) ? gd.at(j) : 0, b = wd.count(j) ? wd.at(j) : 0;
      if (a != b)
        rep.discrepancies.push_back(monomial_name(j) + ": stabilizer " + std::to_string(a) + ", expected " +
                                    std::to_string(b));
    }
    if (rep.discrepancies.empty()) rep.discrepancies.push_back("windows differ with equal dimensions by degree");
  }
  rep.ok = rep.discrepancies.empty();
  return rep;
}

PsiReport psi_check(const LoopTower& t, const DegreeBox& box) {
  if (t.steps() != 1) throw Error("hypothesis", "psi check compares one-step towers");
  if (!findim::is_pfgc_findim(t.base())) throw Error("hypothesis", "psi check needs a pfgc base");
  PsiReport rep;
  const auto ct = centroid_tower(t);
  const auto loop = ct.basis_in_box(box);
  const auto stab = stabilizer_in_box(t, box);
  const size_t dc = stab.centroid.basis.size();
  const auto e1 = window_echelon(loop, box, dc);
  const auto e2 = window_echelon(stab.elements, box, dc);
  rep.loop_of_centroid_dims = pivot_degrees(e1, box, dc);
  rep.stabilizer_dims = pivot_degrees(e2, box, dc);
  rep.same_window = e1 == e2;
  // product rule u.(xy) = (u.x)y = x(u.y) on a small window of L
  DegreeBox small;
  for (unsigned m : t.moduli()) small.radius.push_back(m);
  const auto xs = t.basis_in_box(small);
  rep.product_rule = true;
  for (const auto& u : loop) {
    for (const auto& x : xs)
      for (const auto& y : xs) {
        const auto xy = laurent_multiply(t.base(), x, y);
        const auto lhs = centroid_act(stab.centroid, u, xy);
        if (lhs != laurent_multiply(t.base(), centroid_act(stab.centroid, u, x), y) ||
            lhs != laurent_multiply(t.base(), x, centroid_act(stab.centroid, u, y))) {
          rep.product_rule = false;
        }
      }
    if (!rep.product_rule) break;
  }
  rep.ok = rep.same_window && rep.product_rule && rep.loop_of_centroid_dims == rep.stabilizer_dims;
  return rep;
}

PsiReport psi_check(const StructureAlgebra& a, const ModGrading& g, const DegreeBox& box) {
  const CycloNumber zeta = primitive_root(g.modulus, a.order());
  auto sigma = auto_from_grading(a, g, zeta);
  return psi_check(multiloop(a, {sigma}, {zeta}), box);
}

UntwistReport untwist_check(const LoopTower& t, const DegreeBox& box) {
  if (!findim::is_pfgc_findim(t.base())) throw Error("hypothesis", "untwist check needs a pfgc base");
  UntwistReport rep;
  rep.box = box;
  const auto idxs = residue_indices(t.moduli());
  rep.rank = idxs.size();
  for (const auto& i : idxs) rep.basis.push_back("1 @ " + monomial_name(i));

  // (i) through the canonical form of the centroid tower, whose window must
  // coincide with the directly computed stabilizer window.
  const auto ct = centroid_tower(t);
  const auto stab = stabilizer_in_box(t, box);
  const size_t dc = stab.centroid.basis.size();
  bool ok_i = window_echelon(ct.basis_in_box(box), box, dc) == window_echelon(stab.elements, box, dc);
  for (const auto& j : box.degrees()) {
    if (!ok_i) break;
    for (size_t b = 0; b < dc && ok_i; ++b) {
      const auto y = LaurentElement::monomial(unit_vector(dc, b), j);
      const auto f = canonical_form(ct, y);
      for (const auto& [i, x] : f) ok_i = ok_i && ct.contains(x);
      ok_i = ok_i && reconstruct(ct, f) == y && canonical_form(ct, reconstruct(ct, f)) == f;
    }
  }
  rep.free_over_stabilizer = ok_i;

  // (ii) omega: surjective on the window, and injective on the windowed
  // tensor product, which is the direct sum of shifted copies of the L window.
  const auto& a = t.base();
  bool surj = true;
  for (const auto& j : box.degrees())
    for (size_t k = 0; k < a.dim() && surj; ++k) {
      const auto y = LaurentElement::monomial(a.basis_vector(k), j);
      surj = reconstruct(t, canonical_form(t, y)) == y;
    }
  rep.omega_surjective = surj;
  const auto lwin = t.basis_in_box(box);
  SparseEchelon<Key> ech;
  size_t inserted = 0;
  for (const auto& i : idxs)
    for (const auto& x : lwin) {
      ++inserted;
      ech.insert(keyed(x.shifted(i)));
    }
  rep.omega_injective = ech.rank() == inserted;
  rep.ok = rep.free_over_stabilizer && rep.omega_surjective && rep.omega_injective;
  const std::string ring = dc == 1 ? "S^(" + std::to_string(t.steps()) + ")" : "C(A) (x) S^(" + std::to_string(t.steps()) + ")";
  rep.notes.push_back(ring + " free of rank " + std::to_string(rep.rank) + " over the stabilizer");
  return rep;
}

std::string kind_name(Kind k) { return k == Kind::First ? "First" : "Second"; }

KindVerdict kind_classify(const LoopTower& t) {
  if (t.steps() != 2) throw Error("hypothesis", "kind is defined for two-step towers");
  require_central_simple(t.base(), "kind classification");
  const auto c = findim::centroid_algebra(t.base());
  const Vector one = *c.algebra.unit();
  const long m1 = t.stages()[0].modulus, m2 = t.stages()[1].modulus;
  KindVerdict v{Kind::First, std::nullopt, CycloNumber(1), {}, std::nullopt, {}};

  const DegreeBox check = t.default_box();
  for (long j = 0; j < m2 && !v.monomial_j; ++j)
    if (stabilizes(t, c, LaurentElement::monomial(one, {m1, j}), check)) v.monomial_j = j;

  // action of the induced second twist on y1 = z1^m1
  const auto ct = centroid_tower(t);
  const auto img = ct.stages()[1].twist.apply(LaurentElement::monomial(one, {m1}));
  if (img.support().size() != 1) throw Error("internal", "induced twist does not map y1 to a monomial");
  const auto& [deg, coeff] = *img.support().begin();
  size_t lead = 0;
  while (one[lead].is_zero()) ++lead;
  v.rho = coeff[lead] / one[lead];
  if (coeff != scale(v.rho, one) || (deg[0] != m1 && deg[0] != -m1))
    throw Error("internal", "induced twist does not act on y1 by a scalar");
  const bool first = deg[0] == m1;
  if (first != v.monomial_j.has_value())
    throw Error("internal", "monomial criterion disagrees with the induced twist");

  if (first) {
    v.kind = Kind::First;
    const long n2 = root_of_unity_order(v.rho, m2);
    if (n2 == 0 || m2 % n2 != 0) throw Error("internal", "rho is not an m2-th root of unity");
    const long p2 = m2 / n2;
    const CycloNumber zp = t.stages()[1].zeta.pow(p2);
    long r = 0;
    while (zp.pow(r) != v.rho) ++r;
    long s = 0;
    if (n2 > 1)
      while (floor_mod(r * s, n2) != 1) ++s;
    v.generators = {LaurentElement::monomial(one, {m1 * n2, 0}), LaurentElement::monomial(one, {m1 * s, p2})};
    v.generator_names = {monomial_name({m1 * n2, 0}), monomial_name({m1 * s, p2})};
    return v;
  }
  v.kind = Kind::Second;
  if (m2 % 2) throw Error("internal", "second kind needs an even second modulus");
  const long p2 = m2 / 2;
  auto mono = [&](long a, long b) { return LaurentElement::monomial(one, {a, b}); };
  StrangeRingData d{v.rho, c.algebra, mono(m1, 0) + mono(-m1, 0).scaled(v.rho), mono(0, 2 * p2), mono(0, -2 * p2),
                    mono(m1, p2) - mono(-m1, p2).scaled(v.rho)};
  v.generator_names = {"u1", "u2", "w"};
  v.strange = std::move(d);
  return v;
}

StrangeAudit strange_ring_audit(const StrangeRingData& d, long degree_bound, unsigned seed) {
  const auto& a = d.coefficients;
  auto mul = [&](const LaurentElement& x, const LaurentElement& y) { return laurent_multiply(a, x, y); };
  const Vector one = *a.unit();
  const size_t arity = d.u1.arity();
  const LaurentElement unit = LaurentElement::monomial(one, Degree(arity, 0));
  StrangeAudit rep;
  const auto w2 = mul(d.w, d.w);
  if (w2 != mul(mul(d.u1, d.u1) - unit.scaled(CycloNumber(4) * d.rho), d.u2))
    throw Error("strange-relation", "w^2 != (u1^2 - 4 rho) u2");
  rep.relation = true;
  if (mul(d.u2, d.u2_inv) != unit) throw Error("strange-relation", "u2 u2^-1 != 1");

  // powers of u2 in both directions
  auto u2pow = [&](long b) {
    LaurentElement r = unit;
    for (long i = 0; i < std::abs(b); ++i) r = mul(r, b > 0 ? d.u2 : d.u2_inv);
    return r;
  };
  SparseEchelon<Key> ech;
  LaurentElement u1a = unit;
  for (long e = 0; e <= degree_bound; ++e) {
    for (long b = -degree_bound; b <= degree_bound; ++b) {
      const auto base = mul(u1a, u2pow(b));
      ech.insert(keyed(base));
      ech.insert(keyed(mul(base, d.w)));
      rep.expected += 2;
    }
    u1a = mul(u1a, d.u1);
  }
  rep.independent = ech.rank();

  // N(x1 + x2 w) = x1^2 - x2^2 w^2 is multiplicative
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  auto random_poly = [&]() {
    LaurentElement r(arity, a.dim());
    LaurentElement p = unit;
    for (int e = 0; e <= 2; ++e) {
      for (long b = -1; b <= 1; ++b) r.add_scaled(CycloNumber(coef(rng)), mul(p, u2pow(b)));
      p = mul(p, d.u1);
    }
    return r;
  };
  auto norm = [&](const LaurentElement& x1, const LaurentElement& x2) { return mul(x1, x1) - mul(mul(x2, x2), w2); };
  rep.norm_multiplicative = true;
  for (int trial = 0; trial < 5; ++trial) {
    const auto x1 = random_poly(), x2 = random_poly(), y1 = random_poly(), y2 = random_poly();
    const auto p1 = mul(x1, y1) + mul(mul(x2, y2), w2);
    const auto p2 = mul(x1, y2) + mul(x2, y1);
    if (norm(p1, p2) != mul(norm(x1, x2), norm(y1, y2))) rep.norm_multiplicative = false;
  }
  return rep;
}

CentroidStructure identify_centroid(const LoopTower& t, const KindVerdict& v, const DegreeBox& box) {
  CentroidStructure out;
  out.kind = v.kind;
  const auto stab = stabilizer_in_box(t, box);
  const size_t dc = stab.centroid.basis.size();
  const auto& ca = stab.centroid.algebra;
  auto mul = [&](const LaurentElement& x, const LaurentElement& y) { return laurent_multiply(ca, x, y); };
  auto inside = [&](const LaurentElement& x) {
    for (const auto& [j, c] : x.support())
      if (!box.contains(j)) return false;
    return true;
  };
  const Vector one = *ca.unit();
  const LaurentElement unit = LaurentElement::monomial(one, Degree(2, 0));
  std::vector<LaurentElement> model;
  const long span = box.radius[0] + box.radius[1] + 1;
  if (v.kind == Kind::First) {
    const Degree g1 = v.generators[0].support().begin()->first, g2 = v.generators[1].support().begin()->first;
    bool units = true;
    for (const Degree& g : {g1, g2})
      units = units && stabilizes(t, stab.centroid, LaurentElement::monomial(one, {-g[0], -g[1]}), t.default_box());
    for (long a = -span; a <= span; ++a)
      for (long b = -span; b <= span; ++b) {
        const Degree j{a * g1[0] + b * g2[0], a * g1[1] + b * g2[1]};
        if (box.contains(j)) model.push_back(LaurentElement::monomial(one, j));
      }
    out.description = "Laurent polynomial ring k[t1^+-1, t2^+-1] with t1 = " + v.generator_names[0] +
                      ", t2 = " + v.generator_names[1];
    out.certified = units;
  } else {
    const auto& d = *v.strange;
    const auto audit = strange_ring_audit(d, 1);
    out.certified = audit.ok();
    LaurentElement u1a = unit;
    for (long e = 0; e <= span; ++e) {
      for (long b = -span; b <= span; ++b) {
        LaurentElement base = u1a;
        for (long i = 0; i < std::abs(b); ++i) base = mul(base, b > 0 ? d.u2 : d.u2_inv);
        for (const auto& x : {base, mul(base, d.w)})
          if (inside(x)) model.push_back(x);
      }
      u1a = mul(u1a, d.u1);
    }
    out.description = "strange ring k[u1, u2^+-1, w] with w^2 = (u1^2 - 4 rho) u2, rho = " + d.rho.to_string();
  }
  const auto got = window_echelon(stab.elements, box, dc);
  const auto want = window_echelon(model, box, dc);
  out.window_dim = got.size();
  out.model_dim = want.size();
  out.certified = out.certified && got == want;
  out.krull_dimension = 2;
  return out;
}

StrangeIsomorphismAdvisory strange_isomorphism_advisory(const CycloNumber& rho, const CycloNumber& rho2,
                                                        unsigned order) {
  if (rho.is_zero() || rho2.is_zero()) throw Error("domain", "rho must be nonzero");
  const CycloNumber q = rho2 / rho;
  const bool square = !roots_in_field(KPoly{-q, CycloNumber(0), CycloNumber(1)}, order).empty();
  StrangeIsomorphismAdvisory a;
  a.same_class = square;
  a.label = std::string(square ? "same" : "different") +
            " square class; advisory only, the isomorphism criterion is stated without proof";
  return a;
}

}  // namespace loomalg
