#pragma once

#include <map>
#include <string>
#include <vector>

#include "loomalg/algebra.hpp"

namespace loomalg {

/// Multidegree (i_1, ..., i_p) of a Laurent monomial z_1^i_1 ... z_p^i_p.
using Degree = std::vector<long>;

/// Finitely supported element of V (x) k[z_1^+-1, ..., z_p^+-1] where V is a
/// coordinate space of dimension dim. Only nonzero coefficients are stored.
class LaurentElement {
 public:
  LaurentElement(size_t arity, size_t dim) : arity_(arity), dim_(dim) {}
  static LaurentElement monomial(const Vector& a, Degree j);

  size_t arity() const { return arity_; }
  size_t dim() const { return dim_; }
  const std::map<Degree, Vector>& support() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Zero vector when j is outside the support.
  Vector coefficient(const Degree& j) const;

  /// Adds v (x) z^j.
  void add_term(const Degree& j, const Vector& v);
  void add_scaled(const CycloNumber& s, const LaurentElement& x);

  LaurentElement operator+(const LaurentElement& o) const;
  LaurentElement operator-(const LaurentElement& o) const;
  LaurentElement scaled(const CycloNumber& s) const;
  /// Multiplication by the monomial z^k.
  LaurentElement shifted(const Degree& k) const;
  /// Applies a linear map to every coefficient.
  LaurentElement mapped(const Matrix& m) const;

  /// Splits by the last variable: result[j] has arity - 1.
  std::map<long, LaurentElement> slices() const;
  /// Inverse of slices().
  static LaurentElement join(const std::map<long, LaurentElement>& slices, size_t arity, size_t dim);

  friend bool operator==(const LaurentElement& a, const LaurentElement& b) {
    return a.arity_ == b.arity_ && a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const LaurentElement& a, const LaurentElement& b) { return !(a == b); }

  /// "(e + 2*f) (x) z1^2 z2^-1 + ..." using the given basis labels.
  std::string to_string(const std::vector<std::string>& labels) const;

 private:
  size_t arity_;
  size_t dim_;
  std::map<Degree, Vector> terms_;
};

/// "z1^2 z2^-1", or "1" for the zero degree.
std::string monomial_name(const Degree& j);

/// Convolution product over the structure constants of a.
LaurentElement laurent_multiply(const StructureAlgebra& a, const LaurentElement& x, const LaurentElement& y);

/// Degrees j with |j_p| <= radius_p.
struct DegreeBox {
  std::vector<long> radius;

  size_t arity() const { return radius.size(); }
  bool contains(const Degree& j) const;
  /// All degrees in lexicographic order.
  std::vector<Degree> degrees() const;
  size_t size() const;
  DegreeBox scaled(long num, long den = 1) const;
  std::string to_string() const;
};

/// Coordinates of window elements: index = position(degree) * dim + r.
class WindowIndex {
 public:
  WindowIndex(const DegreeBox& box, size_t dim);
  const DegreeBox& box() const { return box_; }
  size_t dim() const { return dim_; }
  size_t size() const { return degrees_.size() * dim_; }
  const std::vector<Degree>& degrees() const { return degrees_; }
  std::optional<size_t> position(const Degree& j) const;
  size_t index(size_t pos, size_t r) const { return pos * dim_ + r; }

  /// Throws if x has support outside the box.
  SparseVec<size_t> flatten(const LaurentElement& x) const;
  LaurentElement unflatten(const SparseVec<size_t>& v) const;
  LaurentElement unflatten(const Vector& v) const;

 private:
  DegreeBox box_;
  size_t dim_;
  std::vector<Degree> degrees_;
  std::map<Degree, size_t> pos_;
};

}  // namespace loomalg
