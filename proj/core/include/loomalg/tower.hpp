#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loomalg/findim.hpp"
#include "loomalg/grading.hpp"
#include "loomalg/laurent.hpp"

namespace loomalg {

using IntMatrix = std::vector<std::vector<long>>;

/// sigma(a (x) z^j) = lambda^j theta(a) (x) z^(M j) with lambda^j = prod lambda_i^j_i.
/// With lambda_i = zeta^c_i this is the root-of-unity character zeta^<c,j>.
class ToralMonomialAuto {
 public:
  /// Validates det M = +-1, finite order of M, nonzero lambda, invertible theta.
  ToralMonomialAuto(Matrix theta, IntMatrix m, std::vector<CycloNumber> lambda);
  /// theta extended trivially on arity variables.
  static ToralMonomialAuto base_only(Matrix theta, size_t arity);
  static ToralMonomialAuto with_character(Matrix theta, IntMatrix m, const std::vector<long>& c,
                                          const CycloNumber& zeta);

  size_t arity() const { return m_.size(); }
  const Matrix& theta() const { return theta_; }
  const IntMatrix& m() const { return m_; }
  const std::vector<CycloNumber>& lambda() const { return lambda_; }
  bool is_base_only() const;

  Degree map_degree(const Degree& j) const;
  Degree unmap_degree(const Degree& j) const;
  CycloNumber character(const Degree& j) const;

  LaurentElement apply(const LaurentElement& x) const;
  /// The twist chi -> theta chi theta^-1 on the centroid, same M and lambda.
  ToralMonomialAuto induced_on_centroid(const findim::CentroidAlgebra& c) const;

 private:
  Matrix theta_;
  IntMatrix m_, minv_;
  std::vector<CycloNumber> lambda_;
};

struct TowerStage {
  ToralMonomialAuto twist;  // acts on L_(p-1), arity p-1
  unsigned modulus;
  CycloNumber zeta;  // primitive root of order modulus
};

/// Result of checking a stage twist on a window of L_(p-1).
struct StageCheck {
  size_t stage = 0;  // 1-based
  DegreeBox box;
  size_t window_dim = 0;
  bool stabilizes = false;
  /// Smallest d with sigma^d trivial on the window (divides the modulus).
  unsigned period_on_window = 0;
};

class LoopTower {
 public:
  /// Validates the stages; the stabilisation and period checks run on the
  /// default windows and are recorded in stage_checks().
  static LoopTower make(StructureAlgebra base, std::vector<TowerStage> stages);

  const StructureAlgebra& base() const { return base_; }
  size_t steps() const { return stages_.size(); }
  const std::vector<TowerStage>& stages() const { return stages_; }
  std::vector<unsigned> moduli() const;
  const std::vector<StageCheck>& stage_checks() const { return checks_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  /// Radius 2 m_p in each of the first p variables.
  DegreeBox default_box(size_t p) const;
  DegreeBox default_box() const { return default_box(steps()); }

  /// Membership in L_p with p = arity(x), by the recursive definition.
  bool contains(const LaurentElement& x) const;
  /// Basis of L_p within the box, p = box arity; grouped by connected
  /// components of the degree graph.
  std::vector<LaurentElement> basis_in_box(const DegreeBox& box) const;
  /// Same space as flattened echelon rows in the WindowIndex of the box.
  Subspace window_subspace(const DegreeBox& box) const;

  /// Linear defect functionals: x lies in L_p iff all returned entries vanish.
  /// Keys are (stage, degree, coordinate).
  std::map<std::tuple<size_t, Degree, size_t>, CycloNumber> defect(const LaurentElement& x) const;

 private:
  LoopTower(StructureAlgebra base, std::vector<TowerStage> stages)
      : base_(std::move(base)), stages_(std::move(stages)) {}
  bool contains_at(const LaurentElement& x, size_t p) const;
  StructureAlgebra base_;
  std::vector<TowerStage> stages_;
  std::vector<StageCheck> checks_;
  std::string name_;
};

/// Multiloop tower of commuting finite-order automorphisms (M = I, lambda = 1).
LoopTower multiloop(const StructureAlgebra& a, const std::vector<FiniteOrderAuto>& autos,
                    const std::vector<CycloNumber>& zetas);

/// Family {x_i} indexed by 0 <= i_p < m_p with y = sum z^i x_i, x_i in L.
using CanonicalForm = std::map<Degree, LaurentElement>;
CanonicalForm canonical_form(const LoopTower& t, const LaurentElement& y);
LaurentElement reconstruct(const LoopTower& t, const CanonicalForm& f);
/// All indices 0 <= i_p < m_p in lexicographic order.
std::vector<Degree> residue_indices(const std::vector<unsigned>& moduli);

struct FreeBasisReport {
  bool ok = false;
  size_t rank = 0;
  std::vector<std::string> basis;  // "1 @ z1 z2" style labels
  DegreeBox box;
  size_t elements_checked = 0;
  std::vector<std::string> failures;
};
/// Requires a unital associative base; throws otherwise.
FreeBasisReport free_basis_check(const LoopTower& t, const DegreeBox& box);

struct Flag {
  std::string name;
  std::string base_status;  // "true", "false" or "undecided"
  std::string base_provenance;
  std::string tower_status;  // "true" or "not applicable"
  std::string tower_provenance;
  bool box_checked = false;
  bool box_passed = false;
};

struct InheritedFlags {
  std::vector<Flag> flags;
  DegreeBox factor_box, target_box;
  const Flag* find(const std::string& name) const;
};
InheritedFlags inherited_flags(const LoopTower& t);

/// Direct check that every element of L in the target window is a sum of
/// products of elements of L in the factor window.
bool perfect_in_box(const LoopTower& t, const DegreeBox& factor_box, const DegreeBox& target_box);

}  // namespace loomalg
