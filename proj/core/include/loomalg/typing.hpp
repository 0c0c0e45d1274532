#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loomalg/tower.hpp"

namespace loomalg::typing {

enum class Variety { Lie, Associative, CommAssociative, Alternative, Jordan };
std::string variety_name(Variety v);

struct Archetype {
  Variety variety;
  std::string label;  // "A_2", "Mat_3", "Unit", ...
  std::string provenance;
};

/// One family of archetypes. Families without detection are listed so that
/// labels can be validated, but nothing constructs or recognizes them.
struct RegistryFamily {
  Variety variety;
  std::string pattern;
  std::string description;
  bool detectable;
};
const std::vector<RegistryFamily>& registry();
/// Whether (variety, label) names a member of a registered family.
bool in_registry(Variety v, const std::string& label);

struct RootSystemData {
  Subspace cartan;
  std::vector<Vector> roots;  // values on the cartan basis
  std::vector<size_t> simple;  // indices into roots
  IntMatrix cartan_matrix;     // a_ij = alpha_i(h_alpha_j)
  std::vector<std::pair<size_t, size_t>> diagram;
};

/// Connected Dynkin label of a Cartan matrix; throws Error("invalid-cartan").
std::string dynkin_label(const IntMatrix& cartan);

/// Throws Error("not-lie"), Error("not-simple"), Error("invalid-hint") or
/// Error("not-split") (when no split Cartan subalgebra was found).
RootSystemData root_system(const StructureAlgebra& a, const std::optional<Subspace>& cartan_hint = std::nullopt,
                           unsigned seed = 1);
Archetype lie_split_type(const StructureAlgebra& a, const std::optional<Subspace>& cartan_hint = std::nullopt,
                         unsigned seed = 1);

/// Mat_l once an idempotent e with dim(Ae) = l is found. Throws
/// Error("not-associative"), Error("not-simple"), Error("not-central") or
/// Error("not-split").
Archetype associative_type(const StructureAlgebra& a, unsigned seed = 1);

/// Idempotent e with dim(Ae) = sqrt(dim A), if the seeded search finds one.
std::optional<Vector> splitting_idempotent(const StructureAlgebra& a, unsigned seed = 1);

struct TowerType {
  Archetype archetype;
  size_t steps = 0;
};
/// Type of the base carried to the tower. Throws Error("hypothesis") listing
/// the base flags that could not be verified.
TowerType tower_type(const LoopTower& t, unsigned seed = 1);

}  // namespace loomalg::typing
