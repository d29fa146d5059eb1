#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "delone/geometry.hpp"

namespace delone {

/// Closed axis-aligned box.
struct Box {
  Point3 lo = Point3::Zero();
  Point3 hi = Point3::Zero();

  bool valid() const { return (hi.array() > lo.array()).all(); }
  bool contains(const Point3& p, double tol = 0.0) const {
    return (p.array() >= lo.array() - tol).all() && (p.array() <= hi.array() + tol).all();
  }
  /// Distance from p to the nearest face (negative outside).
  double inner_distance(const Point3& p) const {
    return std::min((p - lo).minCoeff(), (hi - p).minCoeff());
  }
  /// True iff the closed ball B_p(r) lies inside the box (within tol).
  bool contains_ball(const Point3& p, double r, double tol = 0.0) const {
    return inner_distance(p) >= r - tol;
  }
};

/// Uniform hash grid for fixed-radius queries.  With cell size 1 and a
/// packing distance of 1 every cell holds O(1) points.
class SpatialHash {
 public:
  explicit SpatialHash(double cell = 1.0) : cell_(cell) {}

  void insert(const Point3& p, std::size_t index);

  template <class Fn>
  void for_each_candidate(const Point3& p, double r, Fn&& fn) const {
    const auto lo = cell_of(p - Vec3::Constant(r));
    const auto hi = cell_of(p + Vec3::Constant(r));
    for (std::int64_t i = lo[0]; i <= hi[0]; ++i)
      for (std::int64_t j = lo[1]; j <= hi[1]; ++j)
        for (std::int64_t k = lo[2]; k <= hi[2]; ++k) {
          const auto it = cells_.find(key(i, j, k));
          if (it == cells_.end()) continue;
          for (std::size_t idx : it->second) fn(idx);
        }
  }

  double cell() const { return cell_; }

  std::array<std::int64_t, 3> cell_of(const Point3& p) const;
  static std::uint64_t key(std::int64_t i, std::int64_t j, std::int64_t k);

  const std::vector<std::size_t>* bucket(std::int64_t i, std::int64_t j, std::int64_t k) const;

 private:
  double cell_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;
};

/// A finite window onto an (intended) infinite Delone set.  Only the part
/// inside `box` is trusted; every cluster query hard-fails when its ball
/// leaves the box.
class PointPatch {
 public:
  PointPatch(std::vector<Point3> points, Box box, std::optional<double> declared_R = {});

  const std::vector<Point3>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const Box& box() const { return box_; }
  const std::optional<double>& declared_R() const { return declared_R_; }

  /// Index of a patch point within tol of p.
  std::optional<std::size_t> find(const Point3& p, double tol) const;
  /// Indices of points with |p q| <= r, in increasing index order.
  std::vector<std::size_t> within(const Point3& p, double r) const;
  /// Distance from p to the nearest patch point other than `skip`, capped
  /// at `cap` (returned when nothing is closer).
  double nearest_distance(const Point3& p, double cap,
                          std::optional<std::size_t> skip = {}) const;

  /// Center x is usable for radius rho iff B_x(rho) lies in the trusted box.
  bool usable_center(const Point3& x, double rho, double tol = 1e-9) const {
    return box_.contains_ball(x, rho, tol);
  }
  /// Patch points usable for rho, sorted lexicographically by (x, y, z).
  std::vector<Point3> usable_centers(double rho, double tol = 1e-9) const;

 private:
  std::vector<Point3> points_;
  Box box_;
  std::optional<double> declared_R_;
  SpatialHash hash_;
  std::array<std::int64_t, 3> cell_lo_{};
  std::array<std::int64_t, 3> cell_hi_{};
};

struct PackingReport {
  double min_distance = 0.0;
  std::size_t first = 0;
  std::size_t second = 0;
  bool violated = false;  // min_distance < 1 - tol
};

/// Minimal pairwise distance of the patch.  Throws TooFewPoints below two
/// points.
double packing_diameter(const PointPatch& patch);
PackingReport check_packing(const PointPatch& patch, double tol = 1e-9);

struct CoveringResult {
  double radius = 0.0;
  Point3 center = Point3::Zero();
  bool exact = false;  // false when only the grid estimate was available
};

/// Largest empty ball whose closed extent stays inside the trusted box.
/// Candidates are the Voronoi vertices (circumcenters of empty
/// circumspheres) located near the maxima of a grid scan of step h; if no
/// vertex validates, the grid value is returned (error below h * sqrt(3)).
CoveringResult covering_radius_details(const PointPatch& patch, double h = 0.1,
                                       double tol = 1e-9);
double covering_radius(const PointPatch& patch, double h = 0.1, double tol = 1e-9);

/// C_x(rho): the patch points in the closed ball.  Members are ordered with
/// the center first, then by distance to the center, then lexicographically.
struct Cluster {
  Point3 center = Point3::Zero();
  double radius = 0.0;
  std::vector<Point3> members;

  std::size_t size() const { return members.size(); }
};

Cluster cluster(const PointPatch& patch, const Point3& center, double rho,
                const ToleranceContext& ctx = {});
/// H_x(rho), sorted lexicographically.
std::vector<Point3> shell(const PointPatch& patch, const Point3& center, double rho,
                          const ToleranceContext& ctx = {});

/// Builds a cluster directly from a member list (center is added if absent).
Cluster make_cluster(const Point3& center, std::vector<Point3> members, double radius);

/// Dimension of the affine hull of the members (0..3).
int affine_dimension(const Cluster& c, double tol = 1e-7);

/// Strict lexicographic order on points, used for every deterministic choice.
bool lex_less(const Point3& a, const Point3& b);

}  // namespace delone
