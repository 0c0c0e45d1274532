#include "loomalg/grading.hpp"

#include "loomalg/error.hpp"

namespace loomalg {

namespace {

// Every root of unity in Q(zeta_N) has order dividing lcm(2, N).
unsigned root_order(const CycloNumber& z) { return root_of_unity_order(z, 2 * z.order()); }

}  // namespace

bool is_automorphism(const StructureAlgebra& a, const Matrix& m) {
  const size_t d = a.dim();
  if (m.rows() != d || m.cols() != d || rank(m) != d) return false;
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      const Vector lhs = m * to_dense(a.product(i, j), d);
      if (lhs != a.multiply(m.column(i), m.column(j))) return false;
    }
  return true;
}

std::optional<unsigned> matrix_period(const Matrix& m, unsigned bound) {
  Matrix p = m;
  for (unsigned n = 1; n <= bound; ++n) {
    if (p.is_identity()) return n;
    p = p * m;
  }
  return std::nullopt;
}

FiniteOrderAuto FiniteOrderAuto::make(const StructureAlgebra& a, Matrix m,
                                      std::optional<unsigned> declared_period,
                                      unsigned max_period) {
  if (!is_automorphism(a, m)) throw Error("not-automorphism", "map is not an algebra automorphism");
  if (declared_period) {
    if (*declared_period == 0) throw Error("period", "period must be positive");
    auto exact = matrix_period(m, *declared_period);
    if (!exact || *exact != *declared_period) {
      throw Error("period", "declared period " + std::to_string(*declared_period) +
                                " is not exact" +
                                (exact ? " (exact period " + std::to_string(*exact) + ")" : ""));
    }
    return FiniteOrderAuto(std::move(m), *declared_period);
  }
  auto exact = matrix_period(m, max_period);
  if (!exact) throw Error("period", "automorphism has no finite period up to " + std::to_string(max_period));
  return FiniteOrderAuto(std::move(m), *exact);
}

std::optional<unsigned> ModGrading::degree_of(const Vector& v) const {
  for (unsigned i = 0; i < components.size(); ++i)
    if (components[i].contains(v)) return i;
  return std::nullopt;
}

namespace {

template <class F>
Matrix model_map(const StructureAlgebra& a, F f) {
  if (a.matrix_model().empty()) throw Error("no-model", "algebra " + a.name() + " has no matrix model");
  const size_t d = a.dim();
  Matrix out(d, d);
  for (size_t i = 0; i < d; ++i) out.set_column(i, a.coords_of_matrix(f(a.matrix_model()[i])));
  return out;
}

}  // namespace

Matrix conjugation_map(const StructureAlgebra& a, const Matrix& g) {
  auto ginv = inverse(g);
  if (!ginv) throw Error("singular", "conjugating matrix is singular");
  return model_map(a, [&](const Matrix& x) { return g * x * *ginv; });
}

Matrix outer_map(const StructureAlgebra& a, const Matrix& j) {
  auto jinv = inverse(j);
  if (!jinv) throw Error("singular", "outer-twist matrix is singular");
  return model_map(a, [&](const Matrix& x) { return (j * x.transpose() * *jinv).scaled(CycloNumber(-1)); });
}

Matrix swap_map(size_t dim) {
  if (dim % 2) throw Error("swap", "swap needs an even-dimensional direct sum");
  const size_t h = dim / 2;
  Matrix out(dim, dim);
  for (size_t i = 0; i < h; ++i) {
    out(i + h, i) = CycloNumber(1);
    out(i, i + h) = CycloNumber(1);
  }
  return out;
}

ModGrading trivial_grading(size_t dim, unsigned modulus) {
  ModGrading g;
  g.modulus = modulus;
  g.components.assign(modulus, Subspace::span(dim, {}));
  g.components[0] = Subspace::full(dim);
  return g;
}

GradingReport validate_grading(const StructureAlgebra& a, const ModGrading& g) {
  GradingReport rep;
  using K = GradingViolation::Kind;
  const size_t d = a.dim();
  if (g.modulus == 0 || g.components.size() != g.modulus) {
    rep.violations.push_back({K::Shape, 0, 0, "expected one component per residue"});
    return rep;
  }
  for (const auto& c : g.components)
    if (c.ambient_dim() != d) {
      rep.violations.push_back({K::Shape, 0, 0, "component lives in the wrong ambient space"});
      return rep;
    }
  size_t total = 0;
  std::vector<Vector> all;
  for (const auto& c : g.components) {
    total += c.dim();
    all.insert(all.end(), c.basis().begin(), c.basis().end());
  }
  const size_t spanned = Subspace::span(d, all).dim();
  if (spanned != total) rep.violations.push_back({K::NotDirect, 0, 0, "components overlap: the sum is not direct"});
  if (spanned != d) {
    rep.violations.push_back({K::NotSpanning, 0, 0,
                              "components span " + std::to_string(spanned) + " of " + std::to_string(d) +
                                  " dimensions"});
  }
  const unsigned m = g.modulus;
  for (unsigned i = 0; i < m; ++i)
    for (unsigned j = 0; j < m; ++j) {
      const unsigned k = (i + j) % m;
      bool leaked = false;
      for (const auto& x : g.components[i].basis()) {
        for (const auto& y : g.components[j].basis()) {
          const Vector p = a.multiply(x, y);
          if (!g.components[k].contains(p)) {
            rep.violations.push_back({K::ProductLeak, i, j,
                                      "A_" + std::to_string(i) + " * A_" + std::to_string(j) + " not in A_" +
                                          std::to_string(k) + ": " + a.vector_to_string(x) + " * " +
                                          a.vector_to_string(y) + " = " + a.vector_to_string(p)});
            leaked = true;
            break;
          }
        }
        if (leaked) break;
      }
    }
  return rep;
}

ModGrading grading_from_auto(const StructureAlgebra& a, const FiniteOrderAuto& sigma,
                             const CycloNumber& zeta) {
  const unsigned m = root_order(zeta);
  if (m == 0) throw Error("root-order", "zeta is not a root of unity");
  if (m % sigma.period() != 0) {
    throw Error("root-order", "period " + std::to_string(sigma.period()) + " does not divide the order " +
                                  std::to_string(m) + " of zeta");
  }
  const size_t d = a.dim();
  ModGrading g;
  g.modulus = m;
  size_t total = 0;
  CycloNumber power(1);
  for (unsigned i = 0; i < m; ++i) {
    Matrix shifted = sigma.matrix();
    for (size_t r = 0; r < d; ++r) shifted(r, r) -= power;
    g.components.push_back(Subspace::span(d, kernel(shifted)));
    total += g.components.back().dim();
    power *= zeta;
  }
  if (total != d) throw Error("internal", "eigenspaces of a finite-order automorphism do not fill the algebra");
  return g;
}

namespace {

// Columns: component bases in degree order.
Matrix adapted_basis(const ModGrading& g, size_t d) {
  std::vector<Vector> cols;
  for (const auto& c : g.components) cols.insert(cols.end(), c.basis().begin(), c.basis().end());
  return Matrix::from_columns(cols, d);
}

}  // namespace

Matrix component_projector(const ModGrading& g, unsigned k) {
  const size_t d = g.components.at(0).ambient_dim();
  const Matrix p = adapted_basis(g, d);
  auto pinv = inverse(p);
  if (!pinv) throw Error("grading", "components do not form a direct decomposition");
  Matrix sel(d, d);
  size_t offset = 0;
  for (unsigned i = 0; i < g.components.size(); ++i) {
    const size_t n = g.components[i].dim();
    if (i == k)
      for (size_t r = 0; r < n; ++r) sel(offset + r, offset + r) = CycloNumber(1);
    offset += n;
  }
  return p * sel * *pinv;
}

FiniteOrderAuto auto_from_grading(const StructureAlgebra& a, const ModGrading& g,
                                  const CycloNumber& zeta) {
  const auto rep = validate_grading(a, g);
  if (!rep.valid()) throw Error("invalid-grading", rep.violations.front().message);
  if (root_order(zeta) != g.modulus) throw Error("root-order", "zeta must be a primitive root of order equal to the modulus");
  const size_t d = a.dim();
  const Matrix p = adapted_basis(g, d);
  Matrix diag(d, d);
  size_t offset = 0;
  CycloNumber power(1);
  for (const auto& c : g.components) {
    for (size_t r = 0; r < c.dim(); ++r) diag(offset + r, offset + r) = power;
    offset += c.dim();
    power *= zeta;
  }
  return FiniteOrderAuto::make(a, p * diag * *inverse(p), std::nullopt, g.modulus);
}

CentroidGrading centroid_grading(const StructureAlgebra& a, const ModGrading& g) {
  const auto rep = validate_grading(a, g);
  if (!rep.valid()) throw Error("invalid-grading", rep.violations.front().message);
  CentroidGrading out{findim::centroid_algebra(a), ModGrading{}};
  const unsigned m = g.modulus;
  const size_t n = out.centroid.basis.size();
  std::vector<Matrix> proj;
  for (unsigned k = 0; k < m; ++k) proj.push_back(component_projector(g, k));
  out.grading.modulus = m;
  for (unsigned lam = 0; lam < m; ++lam) {
    // E(chi) = sum_j pi_(lam+j) chi pi_j projects onto the degree-lam maps;
    // the centroid is stable under it.
    std::vector<Vector> coords;
    for (const auto& chi : out.centroid.basis) {
      Matrix e(a.dim(), a.dim());
      for (unsigned j = 0; j < m; ++j) {
        if (g.components[j].dim() == 0) continue;
        e = e + proj[(lam + j) % m] * chi * proj[j];
      }
      coords.push_back(out.centroid.coordinates(e));
    }
    out.grading.components.push_back(Subspace::span(n, coords));
  }
  return out;
}

}  // namespace loomalg
