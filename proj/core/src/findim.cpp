#include "loomalg/findim.hpp"

#include <deque>

#include "loomalg/error.hpp"
#include "loomalg/factor.hpp"
#include "loomalg/poly.hpp"

namespace loomalg::findim {

Subspace mult_module_closure(const StructureAlgebra& a, const std::vector<Vector>& s) {
  const size_t d = a.dim();
  SparseEchelon<size_t> ech;
  std::deque<Vector> queue;
  for (const auto& v : s) {
    if (v.size() != d) throw Error("dimension", "closure seed has wrong length");
    if (ech.insert(to_sparse(v))) queue.push_back(v);
  }
  while (!queue.empty() && ech.rank() < d) {
    const Vector v = std::move(queue.front());
    queue.pop_front();
    for (size_t i = 0; i < d && ech.rank() < d; ++i) {
      const Vector e = a.basis_vector(i);
      for (const Vector& w : {a.multiply(e, v), a.multiply(v, e)}) {
        if (!is_zero(w) && ech.insert(to_sparse(w))) queue.push_back(w);
      }
    }
  }
  std::vector<Vector> basis;
  for (const auto& r : ech.reduced_basis()) basis.push_back(to_dense(r, d));
  return Subspace::span(d, basis);
}

Subspace ideal_generated(const StructureAlgebra& a, const Vector& x) {
  if (is_zero(x)) throw Error("zero-vector", "ideal_generated needs a nonzero element");
  return mult_module_closure(a, {x});
}

Subspace product_space(const StructureAlgebra& a) {
  const size_t d = a.dim();
  SparseEchelon<size_t> ech;
  for (size_t i = 0; i < d && ech.rank() < d; ++i)
    for (size_t j = 0; j < d && ech.rank() < d; ++j)
      if (!a.product(i, j).empty()) ech.insert(a.product(i, j));
  std::vector<Vector> basis;
  for (const auto& r : ech.reduced_basis()) basis.push_back(to_dense(r, d));
  return Subspace::span(d, basis);
}

bool is_perfect(const StructureAlgebra& a) { return product_space(a).dim() == a.dim(); }

namespace {

Vector basis_product(const StructureAlgebra& a, size_t i, size_t j) {
  return to_dense(a.product(i, j), a.dim());
}

Vector associator(const StructureAlgebra& a, size_t x, size_t y, size_t z) {
  const Vector left = a.multiply(basis_product(a, x, y), a.basis_vector(z));
  const Vector right = a.multiply(a.basis_vector(x), basis_product(a, y, z));
  return sub(left, right);
}

}  // namespace

Subspace centre(const StructureAlgebra& a) {
  const size_t d = a.dim();
  std::vector<SparseVec<size_t>> eqs;
  // z x - x z = 0
  for (size_t i = 0; i < d; ++i) {
    std::vector<SparseVec<size_t>> rows(d);
    for (size_t s = 0; s < d; ++s) {
      for (const auto& [r, c] : a.product(s, i)) sparse_axpy(rows[r], c, {{s, CycloNumber(1)}});
      for (const auto& [r, c] : a.product(i, s)) sparse_axpy(rows[r], -c, {{s, CycloNumber(1)}});
    }
    for (auto& r : rows)
      if (!r.empty()) eqs.push_back(std::move(r));
  }
  // the three associator conditions
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      std::vector<SparseVec<size_t>> r1(d), r2(d), r3(d);
      for (size_t s = 0; s < d; ++s) {
        const Vector v1 = associator(a, s, i, j);
        const Vector v2 = associator(a, i, s, j);
        const Vector v3 = associator(a, i, j, s);
        for (size_t r = 0; r < d; ++r) {
          if (!v1[r].is_zero()) sparse_axpy(r1[r], v1[r], {{s, CycloNumber(1)}});
          if (!v2[r].is_zero()) sparse_axpy(r2[r], v2[r], {{s, CycloNumber(1)}});
          if (!v3[r].is_zero()) sparse_axpy(r3[r], v3[r], {{s, CycloNumber(1)}});
        }
      }
      for (auto* rows : {&r1, &r2, &r3})
        for (auto& r : *rows)
          if (!r.empty()) eqs.push_back(std::move(r));
    }
  return Subspace::span(d, solve_homogeneous(eqs, d));
}

std::vector<Matrix> centroid(const StructureAlgebra& a) {
  const size_t d = a.dim();
  auto var = [d](size_t r, size_t k) { return r * d + k; };
  std::vector<SparseVec<size_t>> eqs;
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      std::vector<SparseVec<size_t>> lhs(d), mid(d), rhs(d);
      for (const auto& [k, c] : a.product(i, j))
        for (size_t r = 0; r < d; ++r) lhs[r].emplace(var(r, k), c);
      for (size_t s = 0; s < d; ++s) {
        for (const auto& [r, c] : a.product(s, j)) sparse_axpy(mid[r], c, {{var(s, i), CycloNumber(1)}});
        for (const auto& [r, c] : a.product(i, s)) sparse_axpy(rhs[r], c, {{var(s, j), CycloNumber(1)}});
      }
      for (size_t r = 0; r < d; ++r) {
        SparseVec<size_t> e1 = lhs[r];
        sparse_axpy(e1, CycloNumber(-1), mid[r]);
        if (!e1.empty()) eqs.push_back(std::move(e1));
        SparseVec<size_t> e2 = lhs[r];
        sparse_axpy(e2, CycloNumber(-1), rhs[r]);
        if (!e2.empty()) eqs.push_back(std::move(e2));
      }
    }
  std::vector<Matrix> out;
  for (const auto& v : solve_homogeneous(eqs, d * d)) out.push_back(Matrix::unflatten(v, d, d));
  return out;
}

bool is_centroid_element(const StructureAlgebra& a, const Matrix& chi) {
  const size_t d = a.dim();
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      const Vector lhs = chi * basis_product(a, i, j);
      if (lhs != a.multiply(chi.column(i), a.basis_vector(j))) return false;
      if (lhs != a.multiply(a.basis_vector(i), chi.column(j))) return false;
    }
  return true;
}

bool is_central(const StructureAlgebra& a) { return centroid(a).size() == 1; }

std::vector<Matrix> multiplication_algebra(const StructureAlgebra& a) {
  const size_t d = a.dim();
  std::vector<Matrix> gens;
  for (size_t i = 0; i < d; ++i) {
    gens.push_back(a.left_mult(a.basis_vector(i)));
    gens.push_back(a.right_mult(a.basis_vector(i)));
  }
  SparseEchelon<size_t> ech;
  std::vector<Matrix> basis;
  auto consider = [&](const Matrix& m) {
    if (ech.insert(to_sparse(m.flatten()))) basis.push_back(m);
  };
  consider(Matrix::identity(d));
  for (const auto& g : gens) consider(g);
  for (size_t next = 0; next < basis.size() && ech.rank() < d * d; ++next) {
    const Matrix x = basis[next];
    for (const auto& g : gens) {
      consider(g * x);
      if (ech.rank() == d * d) break;
    }
  }
  std::vector<Matrix> out;
  for (const auto& r : ech.reduced_basis()) out.push_back(Matrix::unflatten(to_dense(r, d * d), d, d));
  return out;
}

namespace {

CycloNumber trace_of_product(const Matrix& x, const Matrix& y) {
  CycloNumber t(0);
  for (size_t i = 0; i < x.rows(); ++i)
    for (size_t k = 0; k < x.cols(); ++k)
      if (!x(i, k).is_zero() && !y(k, i).is_zero()) t += x(i, k) * y(k, i);
  return t;
}

// Elements of span(basis) in the kernel of the trace form; for a matrix
// algebra in characteristic zero this is its radical.
std::vector<Matrix> trace_radical(const std::vector<Matrix>& basis) {
  const size_t n = basis.size();
  Matrix gram(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      gram(i, j) = trace_of_product(basis[i], basis[j]);
      gram(j, i) = gram(i, j);
    }
  std::vector<Matrix> out;
  for (const auto& k : kernel(gram)) {
    Matrix m(basis[0].rows(), basis[0].cols());
    for (size_t i = 0; i < n; ++i)
      if (!k[i].is_zero()) m = m + basis[i].scaled(k[i]);
    out.push_back(m);
  }
  return out;
}

Subspace image_of(const std::vector<Matrix>& maps, size_t d) {
  std::vector<Vector> cols;
  for (const auto& m : maps)
    for (size_t j = 0; j < d; ++j) cols.push_back(m.column(j));
  return Subspace::span(d, cols);
}

}  // namespace

SimplicityReport simplicity(const StructureAlgebra& a) {
  const size_t d = a.dim();
  SimplicityReport rep;
  const Subspace aa = product_space(a);
  if (aa.dim() == 0) {
    rep.reason = "AA = 0";
    return rep;
  }
  if (aa.dim() < d) {
    rep.reason = "AA is a proper nonzero ideal";
    rep.witness_ideal = aa;
    return rep;
  }
  const auto gamma = centroid(a);
  rep.centroid_dim = gamma.size();
  if (gamma.size() > 1) {
    auto nil = trace_radical(gamma);
    if (!nil.empty()) {
      rep.reason = "the centroid has nonzero nilpotent elements";
      rep.witness_ideal = image_of({nil.front()}, d);
      return rep;
    }
    // Search a primitive element along the moment curve and factor its
    // minimal polynomial.
    bool decided = false;
    for (long lambda = 1; lambda <= 400 && !decided; ++lambda) {
      Matrix g(d, d);
      CycloNumber c(1);
      for (const auto& basis_map : gamma) {
        g = g + basis_map.scaled(c);
        c *= CycloNumber(lambda);
      }
      const KPoly f = minimal_polynomial(g);
      if (static_cast<size_t>(poly::degree(f)) < gamma.size()) continue;
      decided = true;
      const auto factors = factor_cyclotomic(f, a.order());
      if (factors.size() > 1 || factors[0].second > 1) {
        rep.reason = "the centroid is not a field";
        rep.witness_ideal = image_of({evaluate(factors.front().first, g)}, d);
        return rep;
      }
    }
    if (!decided) throw Error("internal", "no primitive element found in the centroid");
  }
  const auto mult = multiplication_algebra(a);
  rep.mult_algebra_dim = mult.size();
  if (mult.size() * gamma.size() == d * d) {
    rep.simple = true;
    rep.reason = "irreducible: dim Mult(A) * dim C(A) = dim(A)^2 with C(A) a field";
    return rep;
  }
  auto rad = trace_radical(mult);
  if (rad.empty()) throw Error("internal", "reducible module without radical over a field centroid");
  rep.reason = "the multiplication algebra has a nonzero radical";
  rep.witness_ideal = image_of(rad, d);
  return rep;
}

bool is_simple(const StructureAlgebra& a) { return simplicity(a).simple; }

std::optional<Vector> find_unit(const StructureAlgebra& a) {
  if (a.unit()) return a.unit();
  const size_t d = a.dim();
  // rows: (u e_i)_r and (e_i u)_r for all i, r
  Matrix m(2 * d * d, d);
  Vector rhs = zero_vector(2 * d * d);
  for (size_t i = 0; i < d; ++i) {
    rhs[i * d + i] = CycloNumber(1);
    rhs[d * d + i * d + i] = CycloNumber(1);
    for (size_t s = 0; s < d; ++s) {
      for (const auto& [r, c] : a.product(s, i)) m(i * d + r, s) = c;
      for (const auto& [r, c] : a.product(i, s)) m(d * d + i * d + r, s) = c;
    }
  }
  return solve(m, rhs);
}

bool is_pfgc_findim(const StructureAlgebra& a) { return a.dim() >= 1 && is_perfect(a); }

Vector CentroidAlgebra::coordinates(const Matrix& chi) const {
  const size_t n = basis.size();
  std::vector<Vector> flat;
  for (const auto& b : basis) flat.push_back(b.flatten());
  auto sol = solve(Matrix::from_columns(flat, chi.rows() * chi.cols()), chi.flatten());
  if (!sol) throw Error("centroid", "map is not in the centroid");
  (void)n;
  return *sol;
}

Matrix CentroidAlgebra::matrix(const Vector& coords) const {
  Matrix out(basis.at(0).rows(), basis.at(0).cols());
  for (size_t i = 0; i < basis.size(); ++i)
    if (!coords[i].is_zero()) out = out + basis[i].scaled(coords[i]);
  return out;
}

CentroidAlgebra centroid_algebra(const StructureAlgebra& a) {
  auto basis = centroid(a);
  const size_t n = basis.size();
  CentroidAlgebra out{basis, StructureAlgebra(n, a.order())};
  std::vector<std::string> labels;
  for (size_t i = 0; i < n; ++i) labels.push_back(n == 1 ? "1" : "chi" + std::to_string(i + 1));
  out.algebra.set_labels(labels);
  out.algebra.set_name("C(" + a.name() + ")");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out.algebra.set_product(i, j, out.coordinates(basis[i] * basis[j]));
  out.algebra.set_unit(out.coordinates(Matrix::identity(a.dim())));
  return out;
}

}  // namespace loomalg::findim
