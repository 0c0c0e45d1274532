#include "loomalg/tower.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

#include "loomalg/error.hpp"

namespace loomalg {

namespace {

IntMatrix int_identity(size_t n) {
  IntMatrix m(n, std::vector<long>(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b) {
  const size_t n = a.size();
  IntMatrix c(n, std::vector<long>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k)
      for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Degree int_apply(const IntMatrix& m, const Degree& j) {
  Degree out(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t k = 0; k < m.size(); ++k) out[i] += m[i][k] * j[k];
  return out;
}

Degree concat(Degree head, const Degree& tail, size_t from) {
  head.insert(head.end(), tail.begin() + from, tail.end());
  return head;
}

unsigned exact_root_order(const CycloNumber& z) { return root_of_unity_order(z, 2 * z.order()); }

}  // namespace

// ---------------------------------------------------------------- twists

ToralMonomialAuto::ToralMonomialAuto(Matrix theta, IntMatrix m, std::vector<CycloNumber> lambda)
    : theta_(std::move(theta)), m_(std::move(m)), lambda_(std::move(lambda)) {
  const size_t p = m_.size();
  for (const auto& row : m_)
    if (row.size() != p) throw Error("twist", "variable action must be a square matrix");
  if (lambda_.size() != p) throw Error("twist", "character needs one scalar per variable");
  for (const auto& l : lambda_)
    if (l.is_zero()) throw Error("twist", "character scalars must be nonzero");
  if (theta_.rows() != theta_.cols() || !inverse(theta_)) throw Error("twist", "coefficient map must be invertible");
  IntMatrix power = m_;
  const IntMatrix id = int_identity(p);
  unsigned order = 1;
  while (power != id) {
    if (++order > 120) throw Error("twist", "variable action must have finite order and determinant +-1");
    power = int_mul(power, m_);
  }
  minv_ = id;
  for (unsigned k = 1; k < order; ++k) minv_ = int_mul(minv_, m_);
}

ToralMonomialAuto ToralMonomialAuto::base_only(Matrix theta, size_t arity) {
  return ToralMonomialAuto(std::move(theta), int_identity(arity), std::vector<CycloNumber>(arity, CycloNumber(1)));
}

ToralMonomialAuto ToralMonomialAuto::with_character(Matrix theta, IntMatrix m, const std::vector<long>& c,
                                                    const CycloNumber& zeta) {
  std::vector<CycloNumber> lambda;
  for (long ci : c) lambda.push_back(zeta.pow(ci));
  return ToralMonomialAuto(std::move(theta), std::move(m), std::move(lambda));
}

bool ToralMonomialAuto::is_base_only() const {
  if (m_ != int_identity(arity())) return false;
  for (const auto& l : lambda_)
    if (!l.is_one()) return false;
  return true;
}

Degree ToralMonomialAuto::map_degree(const Degree& j) const { return int_apply(m_, j); }
Degree ToralMonomialAuto::unmap_degree(const Degree& j) const { return int_apply(minv_, j); }

CycloNumber ToralMonomialAuto::character(const Degree& j) const {
  CycloNumber c(1);
  for (size_t i = 0; i < j.size(); ++i)
    if (j[i] != 0 && !lambda_[i].is_one()) c *= lambda_[i].pow(j[i]);
  return c;
}

LaurentElement ToralMonomialAuto::apply(const LaurentElement& x) const {
  if (x.arity() != arity()) throw Error("arity", "twist applied to an element of the wrong arity");
  LaurentElement out(x.arity(), theta_.rows());
  for (const auto& [j, v] : x.support()) out.add_term(map_degree(j), scale(character(j), theta_ * v));
  return out;
}

ToralMonomialAuto ToralMonomialAuto::induced_on_centroid(const findim::CentroidAlgebra& c) const {
  const Matrix tinv = *inverse(theta_);
  std::vector<Vector> cols;
  for (const auto& chi : c.basis) cols.push_back(c.coordinates(theta_ * chi * tinv));
  return ToralMonomialAuto(Matrix::from_columns(cols, c.basis.size()), m_, lambda_);
}

// ---------------------------------------------------------------- towers

std::vector<unsigned> LoopTower::moduli() const {
  std::vector<unsigned> out;
  for (const auto& s : stages_) out.push_back(s.modulus);
  return out;
}

DegreeBox LoopTower::default_box(size_t p) const {
  DegreeBox b;
  for (size_t i = 0; i < p; ++i) b.radius.push_back(2 * static_cast<long>(stages_.at(i).modulus));
  return b;
}

LoopTower LoopTower::make(StructureAlgebra base, std::vector<TowerStage> stages) {
  const size_t d = base.dim();
  for (size_t p = 0; p < stages.size(); ++p) {
    const auto& s = stages[p];
    const std::string where = "stage " + std::to_string(p + 1) + ": ";
    if (s.twist.arity() != p) throw Error("tower", where + "twist must act on " + std::to_string(p) + " variables");
    if (s.twist.theta().rows() != d) throw Error("tower", where + "twist does not act on the base");
    if (s.modulus == 0 || exact_root_order(s.zeta) != s.modulus)
      throw Error("root-order", where + "zeta must be a primitive root of order " + std::to_string(s.modulus));
    if (!is_automorphism(base, s.twist.theta()))
      throw Error("tower", where + "coefficient map is not an automorphism of the base");
  }
  LoopTower t(std::move(base), {});
  for (size_t p = 0; p < stages.size(); ++p) {
    // t currently holds stages 1..p; check stage p+1 on a window of L_p.
    const auto& s = stages[p];
    StageCheck chk;
    chk.stage = p + 1;
    chk.box = t.default_box(p);
    const auto window = t.basis_in_box(chk.box);
    chk.window_dim = window.size();
    chk.stabilizes = true;
    std::vector<LaurentElement> images = window;
    unsigned period = 0;
    for (unsigned k = 1; k <= s.modulus; ++k) {
      for (auto& x : images) {
        x = s.twist.apply(x);
        if (k == 1 && !t.contains(x)) chk.stabilizes = false;
      }
      if (period == 0 && s.modulus % k == 0 && images == window) period = k;
    }
    chk.period_on_window = period;
    const std::string where = "stage " + std::to_string(p + 1) + ": ";
    if (!chk.stabilizes) throw Error("tower", where + "twist does not preserve L_" + std::to_string(p) + " on the window " + chk.box.to_string());
    if (period == 0) throw Error("period", where + "twist^" + std::to_string(s.modulus) + " is not the identity on L_" + std::to_string(p));
    t.stages_.push_back(s);
    t.checks_.push_back(chk);
  }
  return t;
}

bool LoopTower::contains(const LaurentElement& x) const {
  if (x.arity() > steps()) throw Error("arity", "element has more variables than the tower has steps");
  if (x.dim() != base_.dim()) throw Error("dimension", "element does not live over the base");
  return contains_at(x, x.arity());
}

bool LoopTower::contains_at(const LaurentElement& x, size_t p) const {
  if (p == 0 || x.is_zero()) return true;
  const auto& s = stages_[p - 1];
  for (const auto& [j, xj] : x.slices()) {
    if (!contains_at(xj, p - 1)) return false;
    if (s.twist.apply(xj) != xj.scaled(s.zeta.pow(floor_mod(j, s.modulus)))) return false;
  }
  return true;
}

std::map<std::tuple<size_t, Degree, size_t>, CycloNumber> LoopTower::defect(const LaurentElement& x) const {
  std::map<std::tuple<size_t, Degree, size_t>, CycloNumber> out;
  const size_t n = x.arity();
  for (size_t q = 1; q <= n; ++q) {
    const auto& s = stages_[q - 1];
    std::set<Degree> targets;
    for (const auto& [j, v] : x.support()) {
      targets.insert(j);
      targets.insert(concat(s.twist.map_degree(Degree(j.begin(), j.begin() + (q - 1))), j, q - 1));
    }
    for (const auto& t : targets) {
      const Degree src = concat(s.twist.unmap_degree(Degree(t.begin(), t.begin() + (q - 1))), t, q - 1);
      Vector val = scale(CycloNumber(-1) * s.zeta.pow(floor_mod(t[q - 1], s.modulus)), x.coefficient(t));
      const Vector xs = x.coefficient(src);
      if (!is_zero(xs)) {
        const Degree k(src.begin(), src.begin() + (q - 1));
        axpy(val, s.twist.character(k), s.twist.theta() * xs);
      }
      for (size_t r = 0; r < val.size(); ++r)
        if (!val[r].is_zero()) out.emplace(std::make_tuple(q, t, r), val[r]);
    }
  }
  return out;
}

std::vector<LaurentElement> LoopTower::basis_in_box(const DegreeBox& box) const {
  const size_t p = box.arity();
  if (p > steps()) throw Error("arity", "box has more variables than the tower has steps");
  const size_t d = base_.dim();
  WindowIndex w(box, d);
  const auto& degs = w.degrees();
  std::vector<size_t> parent(degs.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  std::vector<std::pair<size_t, SparseVec<size_t>>> eqs;
  for (size_t q = 1; q <= p; ++q) {
    const auto& s = stages_[q - 1];
    const Matrix& th = s.twist.theta();
    for (size_t pos = 0; pos < degs.size(); ++pos) {
      const Degree& dg = degs[pos];
      const Degree k(dg.begin(), dg.begin() + (q - 1));
      const Degree srck = s.twist.unmap_degree(k);
      const auto spos = w.position(concat(srck, dg, q - 1));
      const CycloNumber z = s.zeta.pow(floor_mod(dg[q - 1], s.modulus));
      const CycloNumber lam = s.twist.character(srck);
      // lambda^s theta(x_src) - zeta^i x_dg = 0
      for (size_t r = 0; r < d; ++r) {
        SparseVec<size_t> eq;
        if (spos)
          for (size_t c = 0; c < d; ++c)
            if (!th(r, c).is_zero()) sparse_axpy(eq, lam * th(r, c), {{w.index(*spos, c), CycloNumber(1)}});
        sparse_axpy(eq, -z, {{w.index(pos, r), CycloNumber(1)}});
        if (!eq.empty()) eqs.emplace_back(pos, std::move(eq));
      }
      if (spos) parent[find(pos)] = find(*spos);
      // the image degree leaves the box, so x_dg must vanish
      if (!w.position(concat(s.twist.map_degree(k), dg, q - 1)))
        for (size_t c = 0; c < d; ++c) eqs.emplace_back(pos, SparseVec<size_t>{{w.index(pos, c), CycloNumber(1)}});
    }
  }
  std::map<size_t, std::vector<size_t>> comps;
  for (size_t pos = 0; pos < degs.size(); ++pos) comps[find(pos)].push_back(pos);
  std::map<size_t, std::vector<SparseVec<size_t>>> comp_eqs;
  for (auto& [pos, eq] : eqs) comp_eqs[find(pos)].push_back(std::move(eq));
  // order components by their first degree
  std::vector<std::pair<size_t, size_t>> order;
  for (const auto& [root, members] : comps) order.emplace_back(members.front(), root);
  std::sort(order.begin(), order.end());

  std::vector<LaurentElement> out;
  for (const auto& [first, root] : order) {
    const auto& members = comps[root];
    std::map<size_t, size_t> local;  // global var -> local var
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t r = 0; r < d; ++r) local.emplace(w.index(members[i], r), i * d + r);
    std::vector<SparseVec<size_t>> leq;
    for (const auto& eq : comp_eqs[root]) {
      SparseVec<size_t> e;
      for (const auto& [g, c] : eq) e.emplace(local.at(g), c);
      leq.push_back(std::move(e));
    }
    for (const auto& v : solve_homogeneous(leq, members.size() * d)) {
      LaurentElement x(p, d);
      for (size_t i = 0; i < members.size(); ++i) {
        Vector coeff(v.begin() + i * d, v.begin() + (i + 1) * d);
        x.add_term(degs[members[i]], coeff);
      }
      out.push_back(std::move(x));
    }
  }
  return out;
}

Subspace LoopTower::window_subspace(const DegreeBox& box) const {
  WindowIndex w(box, base_.dim());
  std::vector<Vector> vs;
  for (const auto& x : basis_in_box(box)) vs.push_back(to_dense(w.flatten(x), w.size()));
  return Subspace::span(w.size(), vs);
}

LoopTower multiloop(const StructureAlgebra& a, const std::vector<FiniteOrderAuto>& autos,
                    const std::vector<CycloNumber>& zetas) {
  if (autos.size() != zetas.size()) throw Error("multiloop", "need one root of unity per automorphism");
  for (size_t i = 0; i < autos.size(); ++i)
    for (size_t j = i + 1; j < autos.size(); ++j)
      if (autos[i].matrix() * autos[j].matrix() != autos[j].matrix() * autos[i].matrix())
        throw Error("multiloop", "automorphisms " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                     " do not commute");
  std::vector<TowerStage> stages;
  for (size_t p = 0; p < autos.size(); ++p) {
    const unsigned m = exact_root_order(zetas[p]);
    if (m == 0 || m % autos[p].period() != 0)
      throw Error("root-order", "period of automorphism " + std::to_string(p + 1) +
                                    " does not divide the order of its root of unity");
    stages.push_back({ToralMonomialAuto::base_only(autos[p].matrix(), p), m, zetas[p]});
  }
  return LoopTower::make(a, std::move(stages));
}

// ---------------------------------------------------------------- canonical form

std::vector<Degree> residue_indices(const std::vector<unsigned>& moduli) {
  std::vector<Degree> out{Degree{}};
  for (unsigned m : moduli) {
    std::vector<Degree> next;
    for (const auto& d : out)
      for (unsigned i = 0; i < m; ++i) {
        Degree e = d;
        e.push_back(i);
        next.push_back(std::move(e));
      }
    out = std::move(next);
  }
  return out;
}

namespace {

CanonicalForm canonical_at(const LoopTower& t, const LaurentElement& y, size_t p) {
  const size_t d = y.dim();
  CanonicalForm out;
  if (p == 0) {
    out.emplace(Degree{}, y);
    return out;
  }
  std::vector<unsigned> mods = t.moduli();
  mods.resize(p);
  for (const auto& idx : residue_indices(mods)) out.emplace(idx, LaurentElement(p, d));
  const auto& s = t.stages()[p - 1];
  const unsigned m = s.modulus;
  const CycloNumber inv_m = CycloNumber(Rational(1, m));
  const CycloNumber zinv = s.zeta.inverse();
  for (const auto& [j, yj] : y.slices()) {
    for (const auto& [inner, x] : canonical_at(t, yj, p - 1)) {
      if (x.is_zero()) continue;
      std::vector<LaurentElement> powers{x};
      for (unsigned k = 1; k < m; ++k) powers.push_back(s.twist.apply(powers.back()));
      for (unsigned l = 0; l < m; ++l) {
        // eigenprojection onto the zeta^l component
        LaurentElement comp(p - 1, d);
        const CycloNumber step = zinv.pow(l);
        CycloNumber c(1);
        for (unsigned k = 0; k < m; ++k) {
          comp.add_scaled(c * inv_m, powers[k]);
          c *= step;
        }
        if (comp.is_zero()) continue;
        const long i = floor_mod(j - static_cast<long>(l), m);
        Degree idx = inner;
        idx.push_back(i);
        LaurentElement& target = out.at(idx);
        for (const auto& [k, v] : comp.support()) {
          Degree deg = k;
          deg.push_back(j - i);
          target.add_term(deg, v);
        }
      }
    }
  }
  return out;
}

}  // namespace

CanonicalForm canonical_form(const LoopTower& t, const LaurentElement& y) {
  if (y.arity() != t.steps()) throw Error("arity", "canonical form needs an element with one variable per step");
  return canonical_at(t, y, t.steps());
}

LaurentElement reconstruct(const LoopTower& t, const CanonicalForm& f) {
  LaurentElement y(t.steps(), t.base().dim());
  for (const auto& [idx, x] : f) y.add_scaled(CycloNumber(1), x.shifted(idx));
  return y;
}

// ---------------------------------------------------------------- reports

FreeBasisReport free_basis_check(const LoopTower& t, const DegreeBox& box) {
  const auto& a = t.base();
  const auto unit = findim::find_unit(a);
  if (!unit || !a.is_associative())
    throw Error("hypothesis", "free basis check needs a unital associative base");
  FreeBasisReport rep;
  rep.box = box;
  const auto idxs = residue_indices(t.moduli());
  rep.rank = idxs.size();
  for (const auto& i : idxs) rep.basis.push_back("1 @ " + monomial_name(i));
  for (const auto& j : box.degrees())
    for (size_t k = 0; k < a.dim(); ++k) {
      const auto y = LaurentElement::monomial(a.basis_vector(k), j);
      const auto f = canonical_form(t, y);
      LaurentElement sum(t.steps(), a.dim());
      for (const auto& [i, x] : f) {
        if (!t.contains(x)) rep.failures.push_back("coefficient of " + monomial_name(i) + " not in L");
        sum.add_scaled(CycloNumber(1), laurent_multiply(a, LaurentElement::monomial(*unit, i), x));
      }
      if (sum != y) rep.failures.push_back("reconstruction failed at " + monomial_name(j));
      if (canonical_form(t, sum) != f) rep.failures.push_back("decomposition not unique at " + monomial_name(j));
      ++rep.elements_checked;
    }
  rep.ok = rep.failures.empty();
  return rep;
}

bool perfect_in_box(const LoopTower& t, const DegreeBox& factor_box, const DegreeBox& target_box) {
  using Key = std::pair<Degree, size_t>;
  auto keyed = [](const LaurentElement& x) {
    SparseVec<Key> v;
    for (const auto& [j, c] : x.support())
      for (size_t r = 0; r < c.size(); ++r)
        if (!c[r].is_zero()) v.emplace(Key{j, r}, c[r]);
    return v;
  };
  const auto factors = t.basis_in_box(factor_box);
  std::vector<SparseVec<Key>> pending;
  for (const auto& x : t.basis_in_box(target_box)) pending.push_back(keyed(x));
  SparseEchelon<Key> ech;
  for (const auto& x : factors) {
    for (const auto& y : factors) {
      const auto p = laurent_multiply(t.base(), x, y);
      if (!p.is_zero()) ech.insert(keyed(p));
    }
    std::vector<SparseVec<Key>> still;
    for (auto& v : pending)
      if (!ech.contains(v)) still.push_back(std::move(v));
    pending = std::move(still);
    if (pending.empty()) return true;
  }
  return pending.empty();
}

const Flag* InheritedFlags::find(const std::string& name) const {
  for (const auto& f : flags)
    if (f.name == name) return &f;
  return nullptr;
}

InheritedFlags inherited_flags(const LoopTower& t) {
  const auto& a = t.base();
  InheritedFlags out;
  out.factor_box = t.default_box();
  for (unsigned m : t.moduli()) out.target_box.radius.push_back(m);

  const bool nonzero = a.dim() >= 1;
  const bool perfect = findim::is_perfect(a);
  const auto simple = findim::simplicity(a);
  std::string prime = "undecided", prime_prov = "no decision procedure for primeness";
  if (simple.simple) {
    prime = "true";
    prime_prov = "verified (simple implies prime)";
  } else if (findim::product_space(a).dim() == 0) {
    prime = "false";
    prime_prov = "verified (AA = 0)";
  }
  auto add = [&](std::string name, std::string status, std::string prov) {
    Flag f;
    f.name = std::move(name);
    f.base_status = std::move(status);
    f.base_provenance = std::move(prov);
    if (f.base_status == "true") {
      f.tower_status = "true";
      f.tower_provenance = "derived-by-theorem";
    } else {
      f.tower_status = "not applicable";
      f.tower_provenance = f.base_status == "false" ? "base property fails" : "base property undecided";
    }
    out.flags.push_back(std::move(f));
  };
  auto tf = [](bool b) { return std::string(b ? "true" : "false"); };
  add("nonzero", tf(nonzero), "verified");
  add("perfect", tf(perfect), "verified");
  add("pfgc", tf(nonzero && perfect), "verified (finite generation is automatic in finite dimension)");
  add("prime", prime, prime_prov);
  add("unital", tf(findim::find_unit(a).has_value()), "verified");
  add("commutative", tf(a.is_commutative()), "verified");
  add("associative", tf(a.is_associative()), "verified");

  Flag& nz = out.flags[0];
  nz.box_checked = true;
  nz.box_passed = !t.basis_in_box(out.factor_box).empty();
  Flag& pf = out.flags[1];
  pf.box_checked = true;
  pf.box_passed = perfect_in_box(t, out.factor_box, out.target_box);
  for (Flag* f : {&nz, &pf}) {
    if (!f->box_passed) continue;
    if (f->tower_status == "true") {
      f->tower_provenance += ", verified-in-box";
    } else {
      f->tower_status = "true";
      f->tower_provenance = "verified-in-box";
    }
  }
  return out;
}

}  // namespace loomalg
