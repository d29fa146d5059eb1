#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "delone/geometry.hpp"
#include "delone/patch.hpp"

namespace delone {

/// Point-matching tolerance for cluster bijections: 100 * geom_tol scaled
/// by max(1, rho), i.e. 1e-7 * max(1, rho) at the default geom_tol.
double matching_tolerance(double rho, const ToleranceContext& ctx);

/// An isometry g with g(a.center) == b.center and g(a.members) ==
/// b.members as sets, or nothing.  Clusters with collinear or coplanar
/// members are matched through reduced frames.  Throws RadiusMismatch when
/// the radii differ.
std::optional<Isometry> cluster_isometry(const Cluster& a, const Cluster& b,
                                         const ToleranceContext& ctx = {});

/// Every such isometry with a distinct linear part (deduplicated at 1e-6,
/// sorted canonically).  For a full-dimensional cluster matched with itself
/// this is its cluster group.
std::vector<Isometry> all_cluster_isometries(const Cluster& a, const Cluster& b,
                                             const ToleranceContext& ctx = {});

struct ClusterClassDecomposition {
  double rho = 0.0;
  /// One cluster per class; its center is the lexicographically smallest
  /// center of the class.
  std::vector<Cluster> representatives;
  /// Every usable center, lexicographically sorted, with its class index.
  std::vector<std::pair<Point3, std::size_t>> assignment;

  std::size_t N() const { return representatives.size(); }
};

/// Partition of all usable-center rho-clusters of the patch into
/// equivalence classes.  Throws NoUsableCenters when the trusted box is too
/// small for rho.
ClusterClassDecomposition cluster_classes(const PointPatch& patch, double rho,
                                          const ToleranceContext& ctx = {});

/// Same, over the given centers only (sorted before use).  Each must be a
/// patch point usable for rho.
ClusterClassDecomposition cluster_classes(const PointPatch& patch, double rho,
                                          std::vector<Point3> centers,
                                          const ToleranceContext& ctx = {});

}  // namespace delone
