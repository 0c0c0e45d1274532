#include "loomalg/algebra.hpp"

#include "loomalg/error.hpp"

namespace loomalg {

StructureAlgebra::StructureAlgebra(size_t dim, unsigned order)
    : dim_(dim), order_(order), c_(dim * dim) {
  if (dim == 0) throw Error("dimension", "algebra dimension must be at least 1");
  if (order == 0) throw Error("field", "field order must be positive");
  labels_.reserve(dim);
  for (size_t i = 0; i < dim; ++i) labels_.push_back("e" + std::to_string(i + 1));
}

void StructureAlgebra::set_labels(std::vector<std::string> labels) {
  if (labels.size() != dim_) throw Error("dimension", "label count does not match dimension");
  labels_ = std::move(labels);
}

std::optional<size_t> StructureAlgebra::label_index(const std::string& label) const {
  for (size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

void StructureAlgebra::set_product(size_t i, size_t j, const Vector& value) {
  if (i >= dim_ || j >= dim_ || value.size() != dim_)
    throw Error("dimension", "structure constant index out of range");
  SparseVec<size_t> s;
  for (size_t k = 0; k < dim_; ++k)
    if (!value[k].is_zero()) s.emplace(k, value[k].lift(order_));
  c_[i * dim_ + j] = std::move(s);
}

Vector StructureAlgebra::multiply(const Vector& x, const Vector& y) const {
  if (x.size() != dim_ || y.size() != dim_)
    throw Error("dimension", "multiply: vectors must have length " + std::to_string(dim_));
  Vector out = zero_vector(dim_);
  for (size_t i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    for (size_t j = 0; j < dim_; ++j) {
      if (y[j].is_zero()) continue;
      const auto& p = c_[i * dim_ + j];
      if (p.empty()) continue;
      const CycloNumber s = x[i] * y[j];
      for (const auto& [k, v] : p) out[k] += s * v;
    }
  }
  return out;
}

void StructureAlgebra::set_unit(const Vector& unit) {
  if (unit.size() != dim_) throw Error("dimension", "unit has wrong length");
  for (size_t i = 0; i < dim_; ++i) {
    const Vector e = basis_vector(i);
    if (multiply(unit, e) != e || multiply(e, unit) != e)
      throw Error("unit", "declared unit is not a two-sided identity on " + labels_[i]);
  }
  unit_ = unit;
}

Matrix StructureAlgebra::left_mult(const Vector& x) const {
  Matrix m(dim_, dim_);
  for (size_t j = 0; j < dim_; ++j) m.set_column(j, multiply(x, basis_vector(j)));
  return m;
}

Matrix StructureAlgebra::right_mult(const Vector& x) const {
  Matrix m(dim_, dim_);
  for (size_t j = 0; j < dim_; ++j) m.set_column(j, multiply(basis_vector(j), x));
  return m;
}

void StructureAlgebra::set_matrix_model(std::vector<Matrix> model) {
  if (model.size() != dim_) throw Error("dimension", "matrix model size mismatch");
  model_ = std::move(model);
}

Vector StructureAlgebra::coords_of_matrix(const Matrix& x) const {
  if (model_.empty()) throw Error("model", "algebra has no matrix realisation");
  std::vector<Vector> cols;
  for (const auto& m : model_) cols.push_back(m.flatten());
  const Vector target = x.flatten();
  Matrix b = Matrix::from_columns(cols, target.size());
  auto sol = solve(b, target);
  if (!sol) throw Error("model", "matrix lies outside the span of the algebra's realisation");
  return *sol;
}

Matrix StructureAlgebra::matrix_of(const Vector& x) const {
  if (model_.empty()) throw Error("model", "algebra has no matrix realisation");
  Matrix out(model_[0].rows(), model_[0].cols());
  for (size_t i = 0; i < dim_; ++i)
    if (!x[i].is_zero()) out = out + model_[i].scaled(x[i]);
  return out;
}

bool StructureAlgebra::is_associative() const {
  for (size_t a = 0; a < dim_; ++a)
    for (size_t b = 0; b < dim_; ++b) {
      const Vector ab = to_dense(product(a, b), dim_);
      for (size_t c = 0; c < dim_; ++c) {
        const Vector left = multiply(ab, basis_vector(c));
        const Vector right = multiply(basis_vector(a), to_dense(product(b, c), dim_));
        if (left != right) return false;
      }
    }
  return true;
}

bool StructureAlgebra::is_commutative() const {
  for (size_t a = 0; a < dim_; ++a)
    for (size_t b = a + 1; b < dim_; ++b)
      if (product(a, b) != product(b, a)) return false;
  return true;
}

bool StructureAlgebra::is_anticommutative() const {
  for (size_t a = 0; a < dim_; ++a) {
    if (!product(a, a).empty()) return false;
    for (size_t b = a + 1; b < dim_; ++b) {
      SparseVec<size_t> s = product(a, b);
      sparse_axpy(s, CycloNumber(1), product(b, a));
      if (!s.empty()) return false;
    }
  }
  return true;
}

bool StructureAlgebra::satisfies_jacobi() const {
  for (size_t a = 0; a < dim_; ++a)
    for (size_t b = a + 1; b < dim_; ++b)
      for (size_t c = b + 1; c < dim_; ++c) {
        const Vector ea = basis_vector(a), eb = basis_vector(b), ec = basis_vector(c);
        Vector s = multiply(ea, to_dense(product(b, c), dim_));
        s = add(s, multiply(eb, to_dense(product(c, a), dim_)));
        s = add(s, multiply(ec, to_dense(product(a, b), dim_)));
        if (!is_zero(s)) return false;
      }
  return true;
}

StructureAlgebra StructureAlgebra::change_basis(const Matrix& p) const {
  auto pinv = inverse(p);
  if (!pinv) throw Error("singular", "change of basis matrix is singular");
  StructureAlgebra out(dim_, order_);
  out.name_ = name_;
  for (size_t a = 0; a < dim_; ++a)
    for (size_t b = 0; b < dim_; ++b)
      out.set_product(a, b, (*pinv) * multiply(p.column(a), p.column(b)));
  if (unit_) out.set_unit((*pinv) * *unit_);
  if (!model_.empty()) {
    std::vector<Matrix> model;
    for (size_t j = 0; j < dim_; ++j) model.push_back(matrix_of(p.column(j)));
    out.set_matrix_model(std::move(model));
  }
  return out;
}

std::string StructureAlgebra::vector_to_string(const Vector& v) const {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (v[i].is_one()) {
      out += labels_[i];
    } else {
      out += "(" + v[i].to_string() + ")*" + labels_[i];
    }
  }
  return out.empty() ? "0" : out;
}

namespace algebras {

namespace {

Matrix matrix_unit(size_t n, size_t i, size_t j) {
  Matrix m(n, n);
  m(i, j) = 1;
  return m;
}

std::string unit_label(size_t n, size_t i, size_t j) {
  if (n <= 9) return "E" + std::to_string(i + 1) + std::to_string(j + 1);
  return "E" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

// Fills products from the realisation using the supplied bilinear rule.
template <class Rule>
void products_from_model(StructureAlgebra& a, Rule rule) {
  const auto& model = a.matrix_model();
  for (size_t i = 0; i < a.dim(); ++i)
    for (size_t j = 0; j < a.dim(); ++j) a.set_product(i, j, a.coords_of_matrix(rule(model[i], model[j])));
}

}  // namespace

StructureAlgebra mat(size_t n, unsigned order) {
  if (n == 0) throw Error("dimension", "mat(n) needs n >= 1");
  StructureAlgebra a(n * n, order);
  a.set_name("mat(" + std::to_string(n) + ")");
  std::vector<std::string> labels;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) labels.push_back(unit_label(n, i, j));
  a.set_labels(labels);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t l = 0; l < n; ++l) a.set_product(i * n + j, j * n + l, unit_vector(n * n, i * n + l));
  std::vector<Matrix> model;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) model.push_back(matrix_unit(n, i, j));
  a.set_matrix_model(std::move(model));
  Vector unit = zero_vector(n * n);
  for (size_t i = 0; i < n; ++i) unit[i * n + i] = 1;
  a.set_unit(unit);
  return a;
}

StructureAlgebra gl(size_t n, unsigned order) {
  if (n == 0) throw Error("dimension", "gl(n) needs n >= 1");
  StructureAlgebra a(n * n, order);
  a.set_name("gl(" + std::to_string(n) + ")");
  std::vector<std::string> labels;
  std::vector<Matrix> model;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      labels.push_back(unit_label(n, i, j));
      model.push_back(matrix_unit(n, i, j));
    }
  a.set_labels(labels);
  a.set_matrix_model(std::move(model));
  products_from_model(a, [](const Matrix& x, const Matrix& y) { return x * y - y * x; });
  return a;
}

StructureAlgebra sl(size_t n, unsigned order) {
  if (n < 2) throw Error("dimension", "sl(n) needs n >= 2");
  StructureAlgebra a(n * n - 1, order);
  a.set_name("sl(" + std::to_string(n) + ")");
  std::vector<std::string> labels;
  std::vector<Matrix> model;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      labels.push_back(unit_label(n, i, j));
      model.push_back(matrix_unit(n, i, j));
    }
  for (size_t i = 0; i + 1 < n; ++i) {
    labels.push_back("H" + std::to_string(i + 1));
    Matrix h(n, n);
    h(i, i) = 1;
    h(i + 1, i + 1) = -1;
    model.push_back(h);
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < i; ++j) {
      labels.push_back(unit_label(n, i, j));
      model.push_back(matrix_unit(n, i, j));
    }
  if (n == 2) labels = {"e", "h", "f"};
  a.set_labels(labels);
  a.set_matrix_model(std::move(model));
  products_from_model(a, [](const Matrix& x, const Matrix& y) { return x * y - y * x; });
  return a;
}

StructureAlgebra zero(size_t n, unsigned order) {
  StructureAlgebra a(n, order);
  a.set_name("zero(" + std::to_string(n) + ")");
  std::vector<std::string> labels;
  for (size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i + 1));
  a.set_labels(labels);
  return a;
}

StructureAlgebra direct_sum(const StructureAlgebra& a, const StructureAlgebra& b) {
  if (a.order() != b.order()) throw Error("field", "direct sum of algebras over different fields");
  const size_t da = a.dim(), db = b.dim(), d = da + db;
  StructureAlgebra s(d, a.order());
  s.set_name("direct_sum(" + a.name() + ", " + b.name() + ")");
  std::vector<std::string> labels;
  for (const auto& l : a.labels()) labels.push_back(l + "_1");
  for (const auto& l : b.labels()) labels.push_back(l + "_2");
  s.set_labels(labels);
  for (size_t i = 0; i < da; ++i)
    for (size_t j = 0; j < da; ++j) {
      Vector v = zero_vector(d);
      for (const auto& [k, c] : a.product(i, j)) v[k] = c;
      s.set_product(i, j, v);
    }
  for (size_t i = 0; i < db; ++i)
    for (size_t j = 0; j < db; ++j) {
      Vector v = zero_vector(d);
      for (const auto& [k, c] : b.product(i, j)) v[da + k] = c;
      s.set_product(da + i, da + j, v);
    }
  if (a.unit() && b.unit()) {
    Vector u = zero_vector(d);
    for (size_t i = 0; i < da; ++i) u[i] = (*a.unit())[i];
    for (size_t i = 0; i < db; ++i) u[da + i] = (*b.unit())[i];
    s.set_unit(u);
  }
  return s;
}

StructureAlgebra quaternion(const CycloNumber& qa, const CycloNumber& qb, unsigned order) {
  if (qa.is_zero() || qb.is_zero()) throw Error("dimension", "quaternion parameters must be nonzero");
  StructureAlgebra q(4, order);
  q.set_name("quaternion(" + qa.to_string() + ", " + qb.to_string() + ")");
  q.set_labels({"one", "i", "j", "k"});
  auto v = [](CycloNumber c0, CycloNumber c1, CycloNumber c2, CycloNumber c3) {
    return Vector{c0, c1, c2, c3};
  };
  const CycloNumber z(0), o(1);
  const CycloNumber ab = qa * qb;
  // rows: one, i, j, k
  q.set_product(0, 0, v(o, z, z, z));
  q.set_product(0, 1, v(z, o, z, z));
  q.set_product(0, 2, v(z, z, o, z));
  q.set_product(0, 3, v(z, z, z, o));
  q.set_product(1, 0, v(z, o, z, z));
  q.set_product(1, 1, v(qa, z, z, z));
  q.set_product(1, 2, v(z, z, z, o));
  q.set_product(1, 3, v(z, z, qa, z));
  q.set_product(2, 0, v(z, z, o, z));
  q.set_product(2, 1, v(z, z, z, -o));
  q.set_product(2, 2, v(qb, z, z, z));
  q.set_product(2, 3, v(z, -qb, z, z));
  q.set_product(3, 0, v(z, z, z, o));
  q.set_product(3, 1, v(z, z, -qa, z));
  q.set_product(3, 2, v(z, qb, z, z));
  q.set_product(3, 3, v(-ab, z, z, z));
  q.set_unit(v(o, z, z, z));
  return q;
}

}  // namespace algebras

}  // namespace loomalg
