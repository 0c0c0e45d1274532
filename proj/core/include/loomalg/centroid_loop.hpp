#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loomalg/tower.hpp"

namespace loomalg {

/// Window of the stabilizer {u in C(A) (x) S : u.L in L}. Coefficients are
/// coordinates in the centroid basis of the base.
struct StabilizerBasis {
  DegreeBox box;
  /// Window of L on which u.x in L was checked.
  DegreeBox verified_radius;
  findim::CentroidAlgebra centroid;
  std::vector<LaurentElement> elements;

  /// Echelon pivots counted by degree, in the WindowIndex order of the box.
  std::map<Degree, size_t> dim_by_degree() const;
};

/// u.x for u over the centroid coordinates and x over the base.
LaurentElement centroid_act(const findim::CentroidAlgebra& c, const LaurentElement& u, const LaurentElement& x);

/// Whether u.x lies in L for every basis element x of the check window.
bool stabilizes(const LoopTower& t, const findim::CentroidAlgebra& c, const LaurentElement& u,
                const DegreeBox& check_box);

/// Kernel of the membership defect of u.x over all x in the check window
/// (default: the tower's default box).
StabilizerBasis stabilizer_in_box(const LoopTower& t, const DegreeBox& box,
                                  std::optional<DegreeBox> check_box = std::nullopt);

/// Tower over the centroid algebra with the induced twists.
LoopTower centroid_tower(const LoopTower& t);

/// Echelon rows of span(elements) in the WindowIndex of the box.
std::vector<SparseVec<size_t>> window_echelon(const std::vector<LaurentElement>& elements, const DegreeBox& box,
                                              size_t dim);
std::map<Degree, size_t> pivot_degrees(const std::vector<SparseVec<size_t>>& echelon, const DegreeBox& box,
                                       size_t dim);

struct MultiloopCentroidReport {
  bool ok = false;
  std::vector<std::string> generators;  // "z1^2", "z2^2"
  size_t window_dim = 0, expected_dim = 0;
  std::vector<std::string> discrepancies;
};
/// Requires a multiloop tower over a central simple base.
MultiloopCentroidReport multiloop_centroid_check(const LoopTower& t, const DegreeBox& box);

struct PsiReport {
  bool ok = false;
  std::map<Degree, size_t> loop_of_centroid_dims, stabilizer_dims;
  bool product_rule = false;
  bool same_window = false;
};
/// One-step comparison of L(C(A), C(Sigma)) with the stabilizer of L(A, Sigma).
PsiReport psi_check(const LoopTower& one_step, const DegreeBox& box);
PsiReport psi_check(const StructureAlgebra& a, const ModGrading& g, const DegreeBox& box);

struct UntwistReport {
  bool ok = false;
  size_t rank = 0;
  std::vector<std::string> basis;
  bool free_over_stabilizer = false;  // part (i)
  bool omega_surjective = false;      // part (ii)
  bool omega_injective = false;
  std::vector<std::string> notes;
  DegreeBox box;
};
UntwistReport untwist_check(const LoopTower& t, const DegreeBox& box);

struct StrangeRingData {
  CycloNumber rho;
  StructureAlgebra coefficients;  // the centroid algebra
  LaurentElement u1, u2, u2_inv, w;
};

enum class Kind { First, Second };
std::string kind_name(Kind k);

struct KindVerdict {
  Kind kind;
  /// j in [0, m_2) with z_1^m1 z_2^j in the stabilizer, if any.
  std::optional<long> monomial_j;
  CycloNumber rho;
  std::vector<LaurentElement> generators;  // t1, t2 for the first kind
  std::optional<StrangeRingData> strange;
  std::vector<std::string> generator_names;
};
/// Two-step tower over a central simple base.
KindVerdict kind_classify(const LoopTower& t);

struct StrangeAudit {
  bool relation = false;
  size_t independent = 0, expected = 0;
  bool norm_multiplicative = false;
  bool ok() const { return relation && independent == expected && norm_multiplicative; }
};
/// Advisory only (stated without proof): the strange rings for rho and rho'
/// are isomorphic exactly when rho'/rho is a square in the field.
struct StrangeIsomorphismAdvisory {
  bool same_class = false;
  std::string label;
};
StrangeIsomorphismAdvisory strange_isomorphism_advisory(const CycloNumber& rho, const CycloNumber& rho2,
                                                        unsigned order);

/// Throws Error("strange-relation") if w^2 != (u1^2 - 4 rho) u2.
StrangeAudit strange_ring_audit(const StrangeRingData& d, long degree_bound, unsigned seed = 1);

/// Identification of the centroid ring of a two-step tower in a window.
struct CentroidStructure {
  Kind kind;
  bool certified = false;
  size_t window_dim = 0, model_dim = 0;
  long krull_dimension = 2;
  std::string description;
};
CentroidStructure identify_centroid(const LoopTower& t, const KindVerdict& v, const DegreeBox& box);

}  // namespace loomalg
