#include "loomalg/typing.hpp"

#include <algorithm>
#include <random>
#include <regex>
#include <set>

#include "loomalg/error.hpp"
#include "loomalg/factor.hpp"
#include "loomalg/findim.hpp"
#include "loomalg/poly.hpp"

namespace loomalg::typing {

std::string variety_name(Variety v) {
  switch (v) {
    case Variety::Lie: return "Lie";
    case Variety::Associative: return "Associative";
    case Variety::CommAssociative: return "CommAssociative";
    case Variety::Alternative: return "Alternative";
    case Variety::Jordan: return "Jordan";
  }
  return "?";
}

const std::vector<RegistryFamily>& registry() {
  static const std::vector<RegistryFamily> r{
      {Variety::Lie, "A_l (l >= 1)", "split simple Lie algebra of type A", true},
      {Variety::Lie, "B_l (l >= 2)", "split simple Lie algebra of type B", true},
      {Variety::Lie, "C_l (l >= 3)", "split simple Lie algebra of type C", true},
      {Variety::Lie, "D_l (l >= 4)", "split simple Lie algebra of type D", true},
      {Variety::Lie, "E_6, E_7, E_8", "split exceptional Lie algebras of type E", true},
      {Variety::Lie, "F_4", "split exceptional Lie algebra of type F", true},
      {Variety::Lie, "G_2", "split exceptional Lie algebra of type G", true},
      {Variety::Associative, "Mat_l (l >= 1)", "l x l matrices", true},
      {Variety::CommAssociative, "Unit", "the base field", true},
      {Variety::Alternative, "Mat_l (l >= 1)", "l x l matrices", false},
      {Variety::Alternative, "O", "split octonions", false},
      {Variety::Jordan, "Unit", "the base field", false},
      {Variety::Jordan, "Spin_n (n >= 2)", "Jordan algebra of a split symmetric form of dimension n", false},
      {Variety::Jordan, "Herm_l(C) (l >= 3, C in k, k+k, Mat_2)", "hermitian matrices over a split composition algebra", false},
      {Variety::Jordan, "Herm_3(O)", "hermitian 3 x 3 matrices over split octonions", false},
  };
  return r;
}

bool in_registry(Variety v, const std::string& label) {
  std::smatch m;
  auto rank_of = [&](const std::regex& re) -> long {
    return std::regex_match(label, m, re) ? std::stol(m[1].str()) : -1;
  };
  switch (v) {
    case Variety::Lie: {
      if (!std::regex_match(label, m, std::regex("([A-G])_([1-9][0-9]*)"))) return false;
      const char f = m[1].str()[0];
      const long l = std::stol(m[2].str());
      switch (f) {
        case 'A': return l >= 1;
        case 'B': return l >= 2;
        case 'C': return l >= 3;
        case 'D': return l >= 4;
        case 'E': return l >= 6 && l <= 8;
        case 'F': return l == 4;
        case 'G': return l == 2;
        default: return false;
      }
    }
    case Variety::Associative: return rank_of(std::regex("Mat_([1-9][0-9]*)")) >= 1;
    case Variety::CommAssociative: return label == "Unit";
    case Variety::Alternative: return label == "O" || rank_of(std::regex("Mat_([1-9][0-9]*)")) >= 1;
    case Variety::Jordan:
      if (label == "Unit" || label == "Herm_3(O)") return true;
      if (rank_of(std::regex("Spin_([1-9][0-9]*)")) >= 2) return true;
      return rank_of(std::regex("Herm_([1-9][0-9]*)\\((k|k\\+k|Mat_2)\\)")) >= 3;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Dynkin diagrams

std::string dynkin_label(const IntMatrix& c) {
  const size_t r = c.size();
  auto bad = [](const std::string& why) { return Error("invalid-cartan", "not a Cartan matrix: " + why); };
  if (r == 0) throw bad("empty");
  std::vector<std::vector<size_t>> adj(r);
  size_t edges = 0;
  std::vector<std::pair<size_t, size_t>> doubles, triples;
  for (size_t i = 0; i < r; ++i) {
    if (c[i].size() != r) throw bad("not square");
    if (c[i][i] != 2) throw bad("diagonal entry is not 2");
    for (size_t j = i + 1; j < r; ++j) {
      if (c[i][j] > 0 || c[j][i] > 0 || (c[i][j] == 0) != (c[j][i] == 0)) throw bad("off-diagonal sign pattern");
      const long p = c[i][j] * c[j][i];
      if (p == 0) continue;
      if (p > 3) throw bad("edge multiplicity above 3");
      adj[i].push_back(j);
      adj[j].push_back(i);
      ++edges;
      if (p == 2) doubles.push_back({i, j});
      if (p == 3) triples.push_back({i, j});
    }
  }
  // connected tree
  std::vector<bool> seen(r, false);
  std::vector<size_t> stack{0};
  seen[0] = true;
  size_t reached = 1;
  while (!stack.empty()) {
    const size_t v = stack.back();
    stack.pop_back();
    for (size_t w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
  }
  if (reached != r) throw bad("diagram is not connected");
  if (edges != r - 1) throw bad("diagram has a cycle");
  const std::string rs = std::to_string(r);
  if (r == 1) return "A_1";
  if (!triples.empty()) {
    if (r == 2) return "G_2";
    throw bad("triple edge in a diagram of rank " + rs);
  }
  size_t branch = r, branches = 0;
  for (size_t i = 0; i < r; ++i) {
    if (adj[i].size() > 3) throw bad("node of degree above 3");
    if (adj[i].size() == 3) {
      branch = i;
      ++branches;
    }
  }
  if (!doubles.empty()) {
    if (doubles.size() > 1 || branches > 0) throw bad("double edge in a branched diagram");
    if (r == 2) return "B_2";
    // walk the path from an end
    size_t start = 0;
    while (adj[start].size() != 1) ++start;
    std::vector<size_t> path{start};
    while (path.size() < r) {
      for (size_t w : adj[path.back()])
        if (path.size() < 2 || w != path[path.size() - 2]) {
          path.push_back(w);
          break;
        }
    }
    size_t k = 0;
    while (!((path[k] == doubles[0].first && path[k + 1] == doubles[0].second) ||
             (path[k] == doubles[0].second && path[k + 1] == doubles[0].first)))
      ++k;
    if (r == 4 && k == 1) return "F_4";
    if (k == 0) {
      std::reverse(path.begin(), path.end());
      k = r - 2;
    }
    if (k != r - 2) throw bad("double edge inside a path of rank " + rs);
    const size_t i = path[r - 2], j = path[r - 1];
    // end node short: one short simple root
    return (c[i][j] == -2 ? "B_" : "C_") + rs;
  }
  if (branches == 0) return "A_" + rs;
  if (branches > 1) throw bad("more than one branch node");
  std::vector<size_t> arms;
  for (size_t first : adj[branch]) {
    size_t prev = branch, cur = first, len = 1;
    while (adj[cur].size() == 2) {
      const size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return "D_" + rs;
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return "E_" + rs;
  throw bad("branched diagram with arms " + std::to_string(arms[0]) + "," + std::to_string(arms[1]) + "," +
            std::to_string(arms[2]));
}

// ---------------------------------------------------------------------------
// Lie algebras

namespace {

Matrix ad(const StructureAlgebra& a, const Vector& x) { return a.left_mult(x); }

// Eigenvalues of ad x when it is diagonalizable over the field.
std::optional<std::vector<CycloNumber>> split_eigenvalues(const StructureAlgebra& a, const Vector& x) {
  const KPoly mp = minimal_polynomial(ad(a, x));
  auto roots = roots_in_field(mp, a.order());
  if (static_cast<long>(roots.size()) != poly::degree(mp)) return std::nullopt;
  return roots;
}

Subspace centralizer(const StructureAlgebra& a, const Subspace& z, const Vector& x) {
  return z.intersect(Subspace::span(a.dim(), kernel(ad(a, x))));
}

// Deterministic candidate stream inside a subspace.
class Candidates {
 public:
  Candidates(const StructureAlgebra& a, const Subspace& z, unsigned seed) : a_(a), z_(z), rng_(seed) {
    const auto& b = z.basis();
    for (const auto& v : b) fixed_.push_back(v);
    for (size_t i = 0; i < b.size(); ++i)
      for (size_t j = i + 1; j < b.size(); ++j) fixed_.push_back(a.multiply(b[i], b[j]));
    for (size_t i = 0; i < b.size(); ++i)
      for (size_t j = i + 1; j < b.size(); ++j) {
        fixed_.push_back(add(b[i], b[j]));
        fixed_.push_back(sub(b[i], b[j]));
      }
  }
  std::optional<Vector> next() {
    if (pos_ < fixed_.size()) return fixed_[pos_++];
    if (random_left_ == 0) return std::nullopt;
    --random_left_;
    const auto& b = z_.basis();
    std::uniform_int_distribution<size_t> pick(0, b.size() - 1);
    std::uniform_int_distribution<int> coef(-2, 2);
    Vector v = zero_vector(a_.dim());
    const int terms = std::uniform_int_distribution<int>(2, 3)(rng_);
    for (int t = 0; t < terms; ++t) axpy(v, CycloNumber(coef(rng_)), b[pick(rng_)]);
    return v;
  }

 private:
  const StructureAlgebra& a_;
  const Subspace& z_;
  std::mt19937_64 rng_;
  std::vector<Vector> fixed_;
  size_t pos_ = 0;
  size_t random_left_ = 400;
};

Subspace find_split_cartan(const StructureAlgebra& a, unsigned seed) {
  std::vector<Vector> h;
  Subspace z = Subspace::full(a.dim());
  while (true) {
    const Subspace hs = Subspace::span(a.dim(), h);
    if (hs.contains(z)) return hs;
    Candidates cands(a, z, seed + static_cast<unsigned>(h.size()));
    bool found = false;
    while (auto x = cands.next()) {
      if (is_zero(*x) || hs.contains(*x)) continue;
      if (!split_eigenvalues(a, *x)) continue;
      h.push_back(*x);
      z = centralizer(a, z, *x);
      found = true;
      break;
    }
    if (!found) throw Error("not-split", "no split Cartan subalgebra found; supply cartan_hint");
  }
}

void check_hint(const StructureAlgebra& a, const Subspace& h) {
  const auto& b = h.basis();
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = i + 1; j < b.size(); ++j)
      if (!is_zero(a.multiply(b[i], b[j]))) throw Error("invalid-hint", "cartan_hint is not abelian");
  Subspace z = Subspace::full(a.dim());
  for (const auto& x : b) {
    if (!split_eigenvalues(a, x)) throw Error("invalid-hint", "cartan_hint element is not split semisimple");
    z = centralizer(a, z, x);
  }
  if (!h.contains(z)) throw Error("invalid-hint", "cartan_hint is not self-centralizing");
}

long as_integer(const CycloNumber& c) {
  if (!c.is_rational()) throw Error("internal", "Cartan integer is irrational");
  const Rational q = c.to_rational();
  if (q.get_den() != 1) throw Error("internal", "Cartan integer is not an integer");
  return q.get_num().get_si();
}

}  // namespace

RootSystemData root_system(const StructureAlgebra& a, const std::optional<Subspace>& cartan_hint, unsigned seed) {
  if (!a.is_lie()) throw Error("not-lie", "algebra fails anticommutativity or the Jacobi identity");
  if (!findim::is_simple(a)) throw Error("not-simple", "algebra is not simple");
  RootSystemData out;
  if (cartan_hint) {
    check_hint(a, *cartan_hint);
    out.cartan = *cartan_hint;
  } else {
    out.cartan = find_split_cartan(a, seed);
  }
  const auto& hb = out.cartan.basis();
  const size_t r = hb.size(), d = a.dim();

  // simultaneous eigenspaces
  std::vector<std::pair<Vector, Subspace>> spaces{{Vector{}, Subspace::full(d)}};
  for (const auto& h : hb) {
    const Matrix m = ad(a, h);
    std::vector<std::pair<Vector, Subspace>> next;
    const auto eigenvalues = split_eigenvalues(a, h);
    for (const auto& c : *eigenvalues) {
      Matrix shifted = m;
      for (size_t i = 0; i < d; ++i) shifted(i, i) -= c;
      const Subspace eig = Subspace::span(d, kernel(shifted));
      for (const auto& [w, v] : spaces) {
        Subspace part = v.intersect(eig);
        if (part.dim() == 0) continue;
        Vector w2 = w;
        w2.push_back(c);
        next.push_back({std::move(w2), std::move(part)});
      }
    }
    spaces = std::move(next);
  }
  std::vector<Vector> root_vectors;
  for (const auto& [w, v] : spaces) {
    if (is_zero(w)) {
      if (v.dim() != r) throw Error("internal", "zero weight space differs from the Cartan subalgebra");
      continue;
    }
    if (v.dim() != 1) throw Error("not-split", "root space of dimension " + std::to_string(v.dim()));
    out.roots.push_back(w);
    root_vectors.push_back(v.basis()[0]);
  }
  if (r + out.roots.size() != d) throw Error("internal", "root decomposition does not span");
  const size_t nr = out.roots.size();
  auto find_root = [&](const Vector& w) -> size_t {
    for (size_t i = 0; i < nr; ++i)
      if (out.roots[i] == w) return i;
    throw Error("internal", "root system is not closed under negation");
  };
  auto value = [&](const Vector& w, const Vector& h) {
    const auto co = out.cartan.coordinates(h);
    if (!co) throw Error("internal", "bracket of opposite root vectors leaves the Cartan subalgebra");
    CycloNumber s(0);
    for (size_t k = 0; k < r; ++k) s += (*co)[k] * w[k];
    return s;
  };
  // coroots h_alpha with alpha(h_alpha) = 2
  std::vector<Vector> coroots;
  for (size_t i = 0; i < nr; ++i) {
    Vector neg = out.roots[i];
    for (auto& x : neg) x = -x;
    const Vector hp = a.multiply(root_vectors[i], root_vectors[find_root(neg)]);
    const CycloNumber n = value(out.roots[i], hp);
    if (n.is_zero()) throw Error("internal", "degenerate coroot");
    coroots.push_back(scale(CycloNumber(2) / n, hp));
  }
  std::vector<std::vector<long>> ints(nr, std::vector<long>(nr));
  for (size_t i = 0; i < nr; ++i)
    for (size_t j = 0; j < nr; ++j) ints[i][j] = as_integer(value(out.roots[i], coroots[j]));
  // lexicographic order on the integer images
  std::vector<size_t> positive;
  for (size_t i = 0; i < nr; ++i) {
    auto it = std::find_if(ints[i].begin(), ints[i].end(), [](long x) { return x != 0; });
    if (it == ints[i].end()) throw Error("internal", "root with zero Cartan integers");
    if (*it > 0) positive.push_back(i);
  }
  std::set<std::vector<long>> sums;
  for (size_t i : positive)
    for (size_t j : positive) {
      std::vector<long> s(nr);
      for (size_t k = 0; k < nr; ++k) s[k] = ints[i][k] + ints[j][k];
      sums.insert(s);
    }
  for (size_t i : positive)
    if (!sums.count(ints[i])) out.simple.push_back(i);
  if (out.simple.size() != r) throw Error("internal", "simple root count differs from the rank");
  out.cartan_matrix.assign(r, std::vector<long>(r));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) {
      out.cartan_matrix[i][j] = ints[out.simple[i]][out.simple[j]];
      if (i < j && out.cartan_matrix[i][j] != 0) out.diagram.push_back({i, j});
    }
  return out;
}

Archetype lie_split_type(const StructureAlgebra& a, const std::optional<Subspace>& cartan_hint, unsigned seed) {
  const auto rs = root_system(a, cartan_hint, seed);
  return {Variety::Lie, dynkin_label(rs.cartan_matrix), "verified (root system)"};
}

// ---------------------------------------------------------------------------
// Associative algebras

namespace {

struct Unital {
  const StructureAlgebra& a;
  Vector e;

  Vector eval(const KPoly& p, const Vector& x) const {
    Vector r = zero_vector(a.dim());
    for (size_t i = p.size(); i-- > 0;) {
      r = a.multiply(r, x);
      axpy(r, p[i], e);
    }
    return r;
  }

  KPoly minpoly(const Vector& x) const {
    std::vector<Vector> powers{e};
    while (true) {
      const Vector next = a.multiply(powers.back(), x);
      const Matrix m = Matrix::from_columns(powers, a.dim());
      if (auto c = solve(m, next)) {
        KPoly p(powers.size() + 1, CycloNumber(0));
        for (size_t i = 0; i < powers.size(); ++i) p[i] = -(*c)[i];
        p.back() = CycloNumber(1);
        return p;
      }
      powers.push_back(next);
    }
  }
};

// Bezout: u f + v g = 1 for coprime f, g.
std::pair<KPoly, KPoly> bezout(const KPoly& f, const KPoly& g) {
  KPoly r0 = f, r1 = g, s0{CycloNumber(1)}, s1{}, t0{}, t1{CycloNumber(1)};
  while (poly::degree(r1) >= 0) {
    KPoly q, r;
    poly::divmod(r0, r1, q, r);
    KPoly s2 = poly::sub(s0, poly::mul(q, s1)), t2 = poly::sub(t0, poly::mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const CycloNumber lead = r0.back();
  return {poly::scale(lead.inverse(), s0), poly::scale(lead.inverse(), t0)};
}

// Nontrivial idempotent of eAe from x when the minimal polynomial of x has two
// coprime factors.
std::optional<Vector> idempotent_from(const Unital& u, const Vector& x, unsigned order) {
  const KPoly mp = u.minpoly(x);
  const auto fac = factor_cyclotomic(mp, order);
  if (fac.size() < 2) return std::nullopt;
  KPoly f{CycloNumber(1)};
  for (int i = 0; i < fac[0].second; ++i) f = poly::mul(f, fac[0].first);
  KPoly g, rest;
  poly::divmod(mp, f, g, rest);
  auto [s, t] = bezout(f, g);
  return u.eval(poly::mul(s, f), x);
}

}  // namespace

std::optional<Vector> splitting_idempotent(const StructureAlgebra& a, unsigned seed) {
  const auto unit = findim::find_unit(a);
  if (!unit) return std::nullopt;
  size_t l = 0;
  while ((l + 1) * (l + 1) <= a.dim()) ++l;
  if (l * l != a.dim()) return std::nullopt;
  Vector e = *unit;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-2, 2);
  while (true) {
    // corner algebra eAe
    std::vector<Vector> span;
    for (size_t i = 0; i < a.dim(); ++i) span.push_back(a.multiply(a.multiply(e, a.basis_vector(i)), e));
    const Subspace corner = Subspace::span(a.dim(), span);
    if (corner.dim() == 1) break;
    const Unital u{a, e};
    std::optional<Vector> eps;
    const auto& b = corner.basis();
    std::vector<Vector> cands = b;
    for (int t = 0; t < 200; ++t) {
      Vector v = zero_vector(a.dim());
      for (const auto& bi : b) axpy(v, CycloNumber(coef(rng)), bi);
      cands.push_back(v);
    }
    for (const auto& x : cands) {
      if (is_zero(x)) continue;
      if ((eps = idempotent_from(u, x, a.order()))) break;
      // a nilpotent y turns into a zero divisor b y that is not nilpotent
      const KPoly mp = u.minpoly(x);
      const auto fac = factor_cyclotomic(mp, a.order());
      if (fac.size() != 1 || fac[0].second < 2) continue;
      Vector y = u.eval(fac[0].first, x);
      for (int k = 1; k < fac[0].second - 1; ++k) y = a.multiply(y, u.eval(fac[0].first, x));
      for (const auto& bi : b) {
        if ((eps = idempotent_from(u, a.multiply(bi, y), a.order()))) break;
      }
      if (eps) break;
    }
    if (!eps) return std::nullopt;
    // keep the smaller corner
    const Vector other = sub(e, *eps);
    auto corner_dim = [&](const Vector& f) {
      std::vector<Vector> s;
      for (size_t i = 0; i < a.dim(); ++i) s.push_back(a.multiply(a.multiply(f, a.basis_vector(i)), f));
      return Subspace::span(a.dim(), s).dim();
    };
    e = corner_dim(*eps) <= corner_dim(other) ? *eps : other;
  }
  // certificate: the left ideal Ae has dimension l
  std::vector<Vector> left;
  for (size_t i = 0; i < a.dim(); ++i) left.push_back(a.multiply(a.basis_vector(i), e));
  if (Subspace::span(a.dim(), left).dim() != l) return std::nullopt;
  return e;
}

Archetype associative_type(const StructureAlgebra& a, unsigned seed) {
  if (!a.is_associative()) throw Error("not-associative", "algebra is not associative");
  if (!findim::is_simple(a)) throw Error("not-simple", "algebra is not simple");
  if (!findim::is_central(a)) throw Error("not-central", "algebra is not central");
  if (a.dim() == 1) return {Variety::CommAssociative, "Unit", "verified"};
  size_t l = 0;
  while ((l + 1) * (l + 1) <= a.dim()) ++l;
  if (l * l != a.dim())
    throw Error("not-split", "central simple, not split over session field (dimension is not a square)");
  if (!splitting_idempotent(a, seed))
    throw Error("not-split", "central simple, not split over session field (no rank-one idempotent found)");
  return {Variety::Associative, "Mat_" + std::to_string(l), "verified (rank-one idempotent)"};
}

TowerType tower_type(const LoopTower& t, unsigned seed) {
  const auto& a = t.base();
  std::vector<std::string> missing;
  if (a.dim() == 0) missing.push_back("nonzero");
  if (!findim::is_perfect(a)) missing.push_back("perfect");
  if (!findim::is_simple(a)) missing.push_back("prime");
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw Error("hypothesis", "tower type needs a prime pfgc base; unverified: " + list);
  }
  Archetype base;
  if (a.is_lie()) {
    base = lie_split_type(a, std::nullopt, seed);
  } else if (a.is_associative()) {
    base = associative_type(a, seed);
  } else {
    throw Error("unsupported-variety", "type detection covers Lie and associative bases only");
  }
  base.provenance = "by permanence";
  return {base, t.steps()};
}

}  // namespace loomalg::typing
