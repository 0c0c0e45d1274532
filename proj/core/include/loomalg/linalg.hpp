#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "loomalg/cyclo.hpp"

namespace loomalg {

using Vector = std::vector<CycloNumber>;

Vector zero_vector(size_t n);
Vector unit_vector(size_t n, size_t i);
bool is_zero(const Vector& v);
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(const CycloNumber& s, const Vector& v);
/// a += s * b
void axpy(Vector& a, const CycloNumber& s, const Vector& b);
std::string to_string(const Vector& v);

/// Dense matrix over Q(zeta_N), row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols);
  static Matrix identity(size_t n);
  /// Matrix whose columns are the given vectors.
  static Matrix from_columns(const std::vector<Vector>& columns, size_t rows);
  static Matrix from_rows(const std::vector<Vector>& rows, size_t cols);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  CycloNumber& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const CycloNumber& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  Vector row(size_t r) const;
  Vector column(size_t c) const;
  void set_column(size_t c, const Vector& v);

  Matrix operator*(const Matrix& other) const;
  Vector operator*(const Vector& v) const;
  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix scaled(const CycloNumber& s) const;
  Matrix transpose() const;
  Matrix pow(long e) const;  // negative exponents invert
  bool is_identity() const;
  bool is_zero() const;
  /// Entries flattened row by row.
  Vector flatten() const { return data_; }
  static Matrix unflatten(const Vector& v, size_t rows, size_t cols);

  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<CycloNumber> data_;
};

/// Gauss-Jordan to reduced row echelon form; returns the pivot columns.
std::vector<size_t> rref(Matrix& m);
size_t rank(Matrix m);
CycloNumber determinant(Matrix m);
std::optional<Matrix> inverse(const Matrix& m);
/// One solution of a x = b, if any.
std::optional<Vector> solve(const Matrix& a, const Vector& b);
/// Null space of m, as the canonical (RREF) basis.
std::vector<Vector> kernel(const Matrix& m);

/// Sparse vectors keyed by an ordered coordinate type. No stored zeros.
template <class Key>
using SparseVec = std::map<Key, CycloNumber>;

template <class Key>
void sparse_axpy(SparseVec<Key>& a, const CycloNumber& s, const SparseVec<Key>& b) {
  for (const auto& [k, v] : b) {
    auto it = a.find(k);
    if (it == a.end()) {
      a.emplace(k, s * v);
    } else {
      it->second += s * v;
      if (it->second.is_zero()) a.erase(it);
    }
  }
}

/// Incremental row echelon over sparse vectors. Each stored row is normalised
/// so that its smallest key (the pivot) has coefficient 1.
template <class Key>
class SparseEchelon {
 public:
  /// Reduce v so that it has no entry on any pivot key.
  SparseVec<Key> reduce(SparseVec<Key> v) const {
    auto it = v.begin();
    while (it != v.end()) {
      auto row = rows_.find(it->first);
      if (row == rows_.end()) {
        ++it;
        continue;
      }
      const Key key = it->first;
      const CycloNumber c = it->second;
      sparse_axpy(v, -c, row->second);
      it = v.upper_bound(key);
    }
    return v;
  }

  /// Inserts v; returns false when v was already in the row space.
  bool insert(SparseVec<Key> v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    const CycloNumber inv = v.begin()->second.inverse();
    for (auto& [k, c] : v) c *= inv;
    const Key pivot = v.begin()->first;
    rows_.emplace(pivot, std::move(v));
    return true;
  }

  bool contains(const SparseVec<Key>& v) const { return reduce(v).empty(); }
  size_t rank() const { return rows_.size(); }
  bool is_pivot(const Key& k) const { return rows_.count(k) != 0; }

  /// Fully reduced basis, ordered by pivot; canonical for the row space.
  std::vector<SparseVec<Key>> reduced_basis() const {
    std::map<Key, SparseVec<Key>> rows = rows_;
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
      SparseVec<Key>& r = it->second;
      auto e = r.upper_bound(it->first);
      while (e != r.end()) {
        auto other = rows.find(e->first);
        if (other == rows.end() || other->first == it->first) {
          ++e;
          continue;
        }
        const Key key = e->first;
        const CycloNumber c = e->second;
        sparse_axpy(r, -c, other->second);
        e = r.upper_bound(key);
      }
    }
    std::vector<SparseVec<Key>> out;
    out.reserve(rows.size());
    for (auto& [k, r] : rows) out.push_back(std::move(r));
    return out;
  }

  const std::map<Key, SparseVec<Key>>& rows() const { return rows_; }

 private:
  std::map<Key, SparseVec<Key>> rows_;
};

/// Null space of a sparse linear system in variables 0..nvars-1, each
/// equation being a sparse row. Returned basis is canonical (RREF).
std::vector<Vector> solve_homogeneous(const std::vector<SparseVec<size_t>>& equations,
                                      size_t nvars);

/// Basis of the linear relations {c : sum c_i v_i = 0} among sparse vectors.
template <class Key>
std::vector<Vector> linear_relations(const std::vector<SparseVec<Key>>& vectors) {
  const size_t k = vectors.size();
  struct Row {
    SparseVec<Key> vec;
    SparseVec<size_t> tag;
  };
  std::map<Key, Row> rows;
  std::vector<SparseVec<size_t>> relations;
  for (size_t i = 0; i < k; ++i) {
    SparseVec<Key> v = vectors[i];
    SparseVec<size_t> tag{{i, CycloNumber(1)}};
    auto it = v.begin();
    while (it != v.end()) {
      auto row = rows.find(it->first);
      if (row == rows.end()) {
        ++it;
        continue;
      }
      const Key key = it->first;
      const CycloNumber c = it->second;
      sparse_axpy(v, -c, row->second.vec);
      sparse_axpy(tag, -c, row->second.tag);
      it = v.upper_bound(key);
    }
    if (v.empty()) {
      relations.push_back(std::move(tag));
      continue;
    }
    const CycloNumber inv = v.begin()->second.inverse();
    for (auto& [kk, c] : v) c *= inv;
    for (auto& [kk, c] : tag) c *= inv;
    const Key pivot = v.begin()->first;
    rows.emplace(pivot, Row{std::move(v), std::move(tag)});
  }
  SparseEchelon<size_t> ech;
  for (auto& r : relations) ech.insert(std::move(r));
  std::vector<Vector> out;
  for (const auto& r : ech.reduced_basis()) {
    Vector dense = zero_vector(k);
    for (const auto& [i, c] : r) dense[i] = c;
    out.push_back(std::move(dense));
  }
  return out;
}

SparseVec<size_t> to_sparse(const Vector& v);
Vector to_dense(const SparseVec<size_t>& v, size_t n);

/// A subspace of K^n stored by its canonical reduced row echelon basis.
class Subspace {
 public:
  explicit Subspace(size_t ambient_dim = 0) : ambient_(ambient_dim) {}
  static Subspace span(size_t ambient_dim, const std::vector<Vector>& vectors);
  static Subspace full(size_t ambient_dim);

  size_t ambient_dim() const { return ambient_; }
  size_t dim() const { return basis_.size(); }
  const std::vector<Vector>& basis() const { return basis_; }
  const std::vector<size_t>& pivots() const { return pivots_; }

  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v in the echelon basis; nullopt if v is not in the span.
  std::optional<Vector> coordinates(const Vector& v) const;
  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  size_t ambient_;
  std::vector<Vector> basis_;
  std::vector<size_t> pivots_;
};

}  // namespace loomalg
