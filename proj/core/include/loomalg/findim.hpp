#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loomalg/algebra.hpp"

namespace loomalg::findim {

/// Smallest subspace containing S and stable under every left and right
/// multiplication, found by spinning to a fixed point.
Subspace mult_module_closure(const StructureAlgebra& a, const std::vector<Vector>& s);

/// Smallest two-sided ideal containing x (x itself included).
Subspace ideal_generated(const StructureAlgebra& a, const Vector& x);

/// span{e_i * e_j}.
Subspace product_space(const StructureAlgebra& a);
bool is_perfect(const StructureAlgebra& a);

Subspace centre(const StructureAlgebra& a);

/// Canonical basis of the centroid (echelon over the flattened entries).
std::vector<Matrix> centroid(const StructureAlgebra& a);
bool is_centroid_element(const StructureAlgebra& a, const Matrix& chi);
bool is_central(const StructureAlgebra& a);

/// Basis of the associative multiplication algebra generated by the identity
/// and all left and right multiplications.
std::vector<Matrix> multiplication_algebra(const StructureAlgebra& a);

struct SimplicityReport {
  bool simple = false;
  std::string reason;
  /// A proper nonzero ideal when one was exhibited.
  std::optional<Subspace> witness_ideal;
  size_t mult_algebra_dim = 0;
  size_t centroid_dim = 0;
};

/// Exact simplicity decision; see the README for the algorithm.
SimplicityReport simplicity(const StructureAlgebra& a);
bool is_simple(const StructureAlgebra& a);

/// Two-sided identity element, if one exists.
std::optional<Vector> find_unit(const StructureAlgebra& a);

/// Nonzero and perfect; finite generation over the centroid is automatic in
/// finite dimension.
bool is_pfgc_findim(const StructureAlgebra& a);

/// Centroid as a commutative algebra under composition, in the coordinates of
/// the centroid basis. Its unit is the coordinate vector of the identity map.
struct CentroidAlgebra {
  std::vector<Matrix> basis;
  StructureAlgebra algebra;
  /// Coordinates of a centroid element given as a matrix.
  Vector coordinates(const Matrix& chi) const;
  Matrix matrix(const Vector& coords) const;
};
CentroidAlgebra centroid_algebra(const StructureAlgebra& a);

}  // namespace loomalg::findim
