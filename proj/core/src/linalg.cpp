#include "loomalg/linalg.hpp"

#include "loomalg/error.hpp"

namespace loomalg {

Vector zero_vector(size_t n) { return Vector(n, CycloNumber(0)); }

Vector unit_vector(size_t n, size_t i) {
  Vector v = zero_vector(n);
  v.at(i) = 1;
  return v;
}

bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

namespace {
void check_same(const Vector& a, const Vector& b) {
  if (a.size() != b.size())
    throw Error("dimension", "vector length mismatch: " + std::to_string(a.size()) + " vs " +
                                 std::to_string(b.size()));
}
}  // namespace

Vector add(const Vector& a, const Vector& b) {
  check_same(a, b);
  Vector out = a;
  for (size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

Vector sub(const Vector& a, const Vector& b) {
  check_same(a, b);
  Vector out = a;
  for (size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

Vector scale(const CycloNumber& s, const Vector& v) {
  Vector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(s * x);
  return out;
}

void axpy(Vector& a, const CycloNumber& s, const Vector& b) {
  check_same(a, b);
  if (s.is_zero()) return;
  for (size_t i = 0; i < a.size(); ++i)
    if (!b[i].is_zero()) a[i] += s * b[i];
}

std::string to_string(const Vector& v) {
  std::string out = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].to_string();
  }
  return out + ")";
}

Matrix::Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(size_t n) {
  Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns, size_t rows) {
  Matrix m(rows, columns.size());
  for (size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, size_t cols) {
  Matrix m(rows.size(), cols);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error("dimension", "row length mismatch");
    for (size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::unflatten(const Vector& v, size_t rows, size_t cols) {
  if (v.size() != rows * cols) throw Error("dimension", "flattened size mismatch");
  Matrix m(rows, cols);
  m.data_ = v;
  return m;
}

Vector Matrix::row(size_t r) const {
  return Vector(data_.begin() + static_cast<long>(r * cols_),
                data_.begin() + static_cast<long>((r + 1) * cols_));
}

Vector Matrix::column(size_t c) const {
  Vector v(rows_);
  for (size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::set_column(size_t c, const Vector& v) {
  if (v.size() != rows_) throw Error("dimension", "column length mismatch");
  for (size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw Error("dimension", "matrix product shape mismatch");
  Matrix out(rows_, other.cols_);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t k = 0; k < cols_; ++k) {
      const CycloNumber& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (size_t j = 0; j < other.cols_; ++j) {
        const CycloNumber& b = other(k, j);
        if (!b.is_zero()) out(i, j) += a * b;
      }
    }
  }
  return out;
}

Vector Matrix::operator*(const Vector& v) const {
  if (v.size() != cols_) throw Error("dimension", "matrix-vector shape mismatch");
  Vector out = zero_vector(rows_);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t k = 0; k < cols_; ++k) {
      const CycloNumber& a = (*this)(i, k);
      if (!a.is_zero() && !v[k].is_zero()) out[i] += a * v[k];
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw Error("dimension", "shape mismatch");
  Matrix out = *this;
  for (size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw Error("dimension", "shape mismatch");
  Matrix out = *this;
  for (size_t i = 0; i < data_.size(); ++i) out.data_[i] -= other.data_[i];
  return out;
}

Matrix Matrix::scaled(const CycloNumber& s) const {
  Matrix out = *this;
  for (auto& x : out.data_) x *= s;
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Matrix Matrix::pow(long e) const {
  if (rows_ != cols_) throw Error("dimension", "power of non-square matrix");
  Matrix base = *this;
  if (e < 0) {
    auto inv = inverse(*this);
    if (!inv) throw Error("singular", "negative power of a singular matrix");
    base = *inv;
    e = -e;
  }
  Matrix result = identity(rows_);
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) {
      const CycloNumber& x = (*this)(i, j);
      if (i == j ? !x.is_one() : !x.is_zero()) return false;
    }
  return true;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::vector<size_t> rref(Matrix& m) {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const CycloNumber inv = m(r, c).inverse();
    for (size_t j = c; j < m.cols(); ++j)
      if (!m(r, j).is_zero()) m(r, j) *= inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const CycloNumber f = m(i, c);
      for (size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

size_t rank(Matrix m) { return rref(m).size(); }

CycloNumber determinant(Matrix m) {
  if (m.rows() != m.cols()) throw Error("dimension", "determinant of non-square matrix");
  const size_t n = m.rows();
  CycloNumber det(1);
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return CycloNumber(0);
    if (p != c) {
      for (size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    const CycloNumber inv = m(c, c).inverse();
    for (size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      const CycloNumber f = m(i, c) * inv;
      for (size_t j = c; j < n; ++j)
        if (!m(c, j).is_zero()) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error("dimension", "inverse of non-square matrix");
  const size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  Matrix out(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw Error("dimension", "right-hand side length mismatch");
  Matrix aug(a.rows(), a.cols() + 1);
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto piv = rref(aug);
  Vector x = zero_vector(a.cols());
  for (size_t r = 0; r < piv.size(); ++r) {
    if (piv[r] == a.cols()) return std::nullopt;
    x[piv[r]] = aug(r, a.cols());
  }
  return x;
}

std::vector<Vector> kernel(const Matrix& m) {
  Matrix r = m;
  auto piv = rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v = zero_vector(m.cols());
    v[f] = 1;
    for (size_t row = 0; row < piv.size(); ++row) v[piv[row]] = -r(row, f);
    basis.push_back(std::move(v));
  }
  return Subspace::span(m.cols(), basis).basis();
}

SparseVec<size_t> to_sparse(const Vector& v) {
  SparseVec<size_t> out;
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.emplace(i, v[i]);
  return out;
}

Vector to_dense(const SparseVec<size_t>& v, size_t n) {
  Vector out = zero_vector(n);
  for (const auto& [i, c] : v) out.at(i) = c;
  return out;
}

std::vector<Vector> solve_homogeneous(const std::vector<SparseVec<size_t>>& equations,
                                      size_t nvars) {
  SparseEchelon<size_t> ech;
  for (const auto& e : equations) {
    if (ech.rank() == nvars) break;
    ech.insert(e);
  }
  auto rows = ech.reduced_basis();
  std::vector<bool> is_pivot(nvars, false);
  for (const auto& r : rows) is_pivot[r.begin()->first] = true;
  // Kernel vectors: free variable f set to 1, pivots solved from reduced rows.
  std::vector<SparseVec<size_t>> kernel_rows;
  std::map<size_t, std::vector<std::pair<size_t, CycloNumber>>> by_free;
  for (const auto& r : rows) {
    const size_t p = r.begin()->first;
    for (const auto& [k, c] : r)
      if (k != p) by_free[k].emplace_back(p, -c);
  }
  std::vector<Vector> out;
  for (size_t f = 0; f < nvars; ++f) {
    if (is_pivot[f]) continue;
    Vector v = zero_vector(nvars);
    v[f] = 1;
    if (auto it = by_free.find(f); it != by_free.end())
      for (const auto& [p, c] : it->second) v[p] = c;
    out.push_back(std::move(v));
  }
  // Kernel vectors of a reduced system are already in canonical form after
  // one more echelon pass (pivots sit at the free variables).
  return Subspace::span(nvars, out).basis();
}

Subspace Subspace::span(size_t ambient_dim, const std::vector<Vector>& vectors) {
  Subspace s(ambient_dim);
  if (vectors.empty()) return s;
  SparseEchelon<size_t> ech;
  for (const auto& v : vectors) {
    if (v.size() != ambient_dim) throw Error("dimension", "vector outside ambient space");
    ech.insert(to_sparse(v));
  }
  for (const auto& r : ech.reduced_basis()) {
    s.pivots_.push_back(r.begin()->first);
    s.basis_.push_back(to_dense(r, ambient_dim));
  }
  return s;
}

Subspace Subspace::full(size_t ambient_dim) {
  Subspace s(ambient_dim);
  for (size_t i = 0; i < ambient_dim; ++i) {
    s.basis_.push_back(unit_vector(ambient_dim, i));
    s.pivots_.push_back(i);
  }
  return s;
}

std::optional<Vector> Subspace::coordinates(const Vector& v) const {
  if (v.size() != ambient_) throw Error("dimension", "vector outside ambient space");
  Vector coords = zero_vector(basis_.size());
  Vector rest = v;
  for (size_t i = 0; i < basis_.size(); ++i) {
    const CycloNumber c = rest[pivots_[i]];
    if (c.is_zero()) continue;
    coords[i] = c;
    axpy(rest, -c, basis_[i]);
  }
  if (!is_zero(rest)) return std::nullopt;
  return coords;
}

bool Subspace::contains(const Vector& v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& other) const {
  for (const auto& b : other.basis_)
    if (!contains(b)) return false;
  return true;
}

Subspace Subspace::sum(const Subspace& other) const {
  std::vector<Vector> all = basis_;
  all.insert(all.end(), other.basis_.begin(), other.basis_.end());
  return span(ambient_, all);
}

Subspace Subspace::intersect(const Subspace& other) const {
  // Solve sum a_i u_i = sum b_j w_j; the intersection is spanned by sum a_i u_i.
  const size_t k = basis_.size();
  const size_t l = other.basis_.size();
  if (k == 0 || l == 0) return Subspace(ambient_);
  Matrix m(ambient_, k + l);
  for (size_t i = 0; i < k; ++i) m.set_column(i, basis_[i]);
  for (size_t j = 0; j < l; ++j) m.set_column(k + j, scale(CycloNumber(-1), other.basis_[j]));
  std::vector<Vector> vecs;
  for (const auto& z : kernel(m)) {
    Vector v = zero_vector(ambient_);
    for (size_t i = 0; i < k; ++i) axpy(v, z[i], basis_[i]);
    vecs.push_back(std::move(v));
  }
  return span(ambient_, vecs);
}

}  // namespace loomalg
