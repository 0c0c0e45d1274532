#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loomalg/cyclo.hpp"
#include "loomalg/linalg.hpp"

namespace loomalg {

/// Finite-dimensional algebra over Q(zeta_N) given by structure constants
/// e_i * e_j = sum_k c[i][j][k] e_k.
class StructureAlgebra {
 public:
  /// The zero-multiplication algebra of the given dimension.
  StructureAlgebra(size_t dim, unsigned order);

  size_t dim() const { return dim_; }
  unsigned order() const { return order_; }

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels);
  std::optional<size_t> label_index(const std::string& label) const;

  /// Sets e_i * e_j. Entries are lifted to the algebra's field.
  void set_product(size_t i, size_t j, const Vector& value);
  const SparseVec<size_t>& product(size_t i, size_t j) const { return c_[i * dim_ + j]; }

  /// Declares a unit; throws unless it is a two-sided identity on the basis.
  void set_unit(const Vector& unit);
  const std::optional<Vector>& unit() const { return unit_; }

  Vector multiply(const Vector& x, const Vector& y) const;
  Vector basis_vector(size_t i) const { return unit_vector(dim_, i); }
  /// Matrix of y -> x*y.
  Matrix left_mult(const Vector& x) const;
  /// Matrix of y -> y*x.
  Matrix right_mult(const Vector& x) const;

  /// Optional faithful matrix realisation: basis element i is the matrix
  /// model()[i] and the product is computed by the algebra's own rule.
  const std::vector<Matrix>& matrix_model() const { return model_; }
  void set_matrix_model(std::vector<Matrix> model);
  /// Coordinates of a matrix in the span of the model; throws if outside.
  Vector coords_of_matrix(const Matrix& x) const;
  Matrix matrix_of(const Vector& x) const;

  bool is_associative() const;
  bool is_commutative() const;
  bool is_anticommutative() const;  // x*x = 0 on the basis and c_ij = -c_ji
  bool satisfies_jacobi() const;
  bool is_lie() const { return is_anticommutative() && satisfies_jacobi(); }

  /// Change of basis: new basis vector j is column j of p (old coordinates).
  StructureAlgebra change_basis(const Matrix& p) const;

  std::string vector_to_string(const Vector& v) const;

 private:
  size_t dim_;
  unsigned order_;
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<SparseVec<size_t>> c_;
  std::optional<Vector> unit_;
  std::vector<Matrix> model_;
};

namespace algebras {

/// Matrix units E_ij, ordinary product, unit the identity matrix.
StructureAlgebra mat(size_t n, unsigned order);
/// gl(n) with the commutator bracket on matrix units.
StructureAlgebra gl(size_t n, unsigned order);
/// sl(n): basis E_ij (i<j), H_i = E_ii - E_(i+1)(i+1), E_ij (i>j). For n = 2
/// the basis is labelled e, h, f.
StructureAlgebra sl(size_t n, unsigned order);
StructureAlgebra zero(size_t n, unsigned order);
/// Direct product of algebras; labels get suffixes _1 and _2.
StructureAlgebra direct_sum(const StructureAlgebra& a, const StructureAlgebra& b);
/// Quaternion algebra (a, b): basis 1, i, j, k with i^2 = a, j^2 = b, ij = -ji = k.
StructureAlgebra quaternion(const CycloNumber& a, const CycloNumber& b, unsigned order);

}  // namespace algebras

}  // namespace loomalg
