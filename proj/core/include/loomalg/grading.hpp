#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loomalg/algebra.hpp"
#include "loomalg/findim.hpp"

namespace loomalg {

/// An algebra automorphism together with its exact multiplicative period.
class FiniteOrderAuto {
 public:
  /// Validates that m is an automorphism of a of finite order. When a period
  /// is declared it must be exact; otherwise it is searched up to max_period.
  static FiniteOrderAuto make(const StructureAlgebra& a, Matrix m,
                              std::optional<unsigned> declared_period = std::nullopt,
                              unsigned max_period = 1024);

  const Matrix& matrix() const { return m_; }
  unsigned period() const { return period_; }
  Vector apply(const Vector& x) const { return m_ * x; }

 private:
  FiniteOrderAuto(Matrix m, unsigned period) : m_(std::move(m)), period_(period) {}
  Matrix m_;
  unsigned period_;
};

bool is_automorphism(const StructureAlgebra& a, const Matrix& m);
/// Exact period of an invertible matrix, if it divides some n <= bound.
std::optional<unsigned> matrix_period(const Matrix& m, unsigned bound);

struct ModGrading {
  unsigned modulus = 1;
  std::vector<Subspace> components;  // index i is the component of degree i mod m

  /// Degree of a homogeneous nonzero vector, if it is homogeneous.
  std::optional<unsigned> degree_of(const Vector& v) const;
};

struct GradingViolation {
  enum class Kind { Shape, NotDirect, NotSpanning, ProductLeak };
  Kind kind;
  unsigned i = 0, j = 0;
  std::string message;
};

struct GradingReport {
  std::vector<GradingViolation> violations;
  bool valid() const { return violations.empty(); }
};

GradingReport validate_grading(const StructureAlgebra& a, const ModGrading& g);

/// Component i is the zeta^i eigenspace. The period of sigma must divide the
/// order of zeta.
ModGrading grading_from_auto(const StructureAlgebra& a, const FiniteOrderAuto& sigma,
                             const CycloNumber& zeta);

/// The automorphism acting as zeta^i on component i. Throws on an invalid
/// grading, naming the first violation.
FiniteOrderAuto auto_from_grading(const StructureAlgebra& a, const ModGrading& g,
                                  const CycloNumber& zeta);

/// Projection onto component k along the others.
Matrix component_projector(const ModGrading& g, unsigned k);

struct CentroidGrading {
  findim::CentroidAlgebra centroid;
  /// Grading of the centroid, in the coordinates of centroid.basis.
  ModGrading grading;
};

/// Component i consists of the centroid elements mapping A_j into A_(i+j).
CentroidGrading centroid_grading(const StructureAlgebra& a, const ModGrading& g);

/// Matrix of x -> g x g^-1 for an algebra with a matrix model.
Matrix conjugation_map(const StructureAlgebra& a, const Matrix& g);
/// Matrix of x -> -J x^t J^-1 for an algebra with a matrix model.
Matrix outer_map(const StructureAlgebra& a, const Matrix& j);
/// Exchange of the two halves of a direct sum of equal dimensions.
Matrix swap_map(size_t dim);

/// Trivial grading mod m: everything in degree 0.
ModGrading trivial_grading(size_t dim, unsigned modulus);

}  // namespace loomalg
