#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "delone/geometry.hpp"
#include "delone/patch.hpp"

namespace delone {

enum class Family { C, S, Ch, Cv, D, Dh, Dd, T, Td, Th, O, Oh, I, Ih };

/// Schoenflies symbol.  `n` is used by the axial families only.
///
/// Aliases are resolved the way the regularity table spells them: a lone
/// mirror is S1, the inversion group is S2, and Cnh with odd n is Sn.  With
/// that convention Sn has order n for even n and 2n for odd n.
struct SchoenfliesLabel {
  Family family = Family::C;
  int n = 1;

  bool axial() const;
  std::string str() const;
  /// Group order implied by the symbol; geometric Th counts 24.
  int expected_order() const;

  /// Accepts the spellings produced by str(), e.g. "C4v", "S8", "Oh".
  static std::optional<SchoenfliesLabel> parse(const std::string& text);

  friend bool operator==(const SchoenfliesLabel&, const SchoenfliesLabel&) = default;
};

/// A finite group of orthogonal maps acting about `center`.
struct PointGroup {
  Point3 center = Point3::Zero();
  std::vector<OrthogonalMap> elements;
  SchoenfliesLabel label;

  std::size_t order() const { return elements.size(); }
};

/// Element equality used throughout: max-norm difference below 1e-6.
constexpr double kElementTol = 1e-6;

std::optional<std::size_t> index_of(const std::vector<OrthogonalMap>& elements,
                                    const OrthogonalMap& g, double tol = kElementTol);

/// Closes a generating set under composition.  Throws GroupTooLarge past
/// 120 elements.
std::vector<OrthogonalMap> generate_group(const std::vector<OrthogonalMap>& generators);

/// Identity, composition and inverse checks.  Throws NotAGroup.
void check_closure(const std::vector<OrthogonalMap>& elements);

/// Cluster group S_x(rho): all orthogonal maps about the center that map
/// the member set onto itself.  Throws LowerDimensionalCluster when the
/// members do not span R^3 (the stabilizer is then infinite).
PointGroup stabilizer(const Cluster& c, const ToleranceContext& ctx = {});

/// Builds a labelled group from generators (closure + classification).
PointGroup group_from_generators(const std::vector<OrthogonalMap>& generators,
                                 const ToleranceContext& ctx = {});

/// Throws NotAGroup if closure fails and UnrecognizedGroup if no finite
/// subgroup of O(3) matches.
SchoenfliesLabel schoenflies(const std::vector<OrthogonalMap>& elements,
                             const ToleranceContext& ctx = {});
inline SchoenfliesLabel schoenflies(const PointGroup& g, const ToleranceContext& ctx = {}) {
  return schoenflies(g.elements, ctx);
}

/// Number of prime factors of n counted with multiplicity; omega(1) == 0.
int omega(std::uint64_t n);

/// Length of the longest chain G = H_m > ... > H_1 = {1} of subgroups,
/// counting both ends.  Throws GroupTooLarge above order 120.
int tower_height(const std::vector<OrthogonalMap>& elements);
inline int tower_height(const PointGroup& g) { return tower_height(g.elements); }

/// Largest rotation order in the cluster group (1 if it has no rotation).
int max_rotation_order(const Cluster& c, const ToleranceContext& ctx = {});

/// True iff every element of `sub` is an element of `super`.
bool is_subset(const std::vector<OrthogonalMap>& sub, const std::vector<OrthogonalMap>& super);
bool same_elements(const std::vector<OrthogonalMap>& a, const std::vector<OrthogonalMap>& b);

}  // namespace delone
