#include "delone/patch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "delone/errors.hpp"

namespace delone {

bool lex_less(const Point3& a, const Point3& b) {
  if (a.x() != b.x()) return a.x() < b.x();
  if (a.y() != b.y()) return a.y() < b.y();
  return a.z() < b.z();
}

std::array<std::int64_t, 3> SpatialHash::cell_of(const Point3& p) const {
  return {static_cast<std::int64_t>(std::floor(p.x() / cell_)),
          static_cast<std::int64_t>(std::floor(p.y() / cell_)),
          static_cast<std::int64_t>(std::floor(p.z() / cell_))};
}

std::uint64_t SpatialHash::key(std::int64_t i, std::int64_t j, std::int64_t k) {
  constexpr std::int64_t kOffset = 1 << 20;
  constexpr std::uint64_t kMask = (1u << 21) - 1;
  return (static_cast<std::uint64_t>(i + kOffset) & kMask) |
         ((static_cast<std::uint64_t>(j + kOffset) & kMask) << 21) |
         ((static_cast<std::uint64_t>(k + kOffset) & kMask) << 42);
}

void SpatialHash::insert(const Point3& p, std::size_t index) {
  const auto c = cell_of(p);
  cells_[key(c[0], c[1], c[2])].push_back(index);
}

const std::vector<std::size_t>* SpatialHash::bucket(std::int64_t i, std::int64_t j,
                                                    std::int64_t k) const {
  const auto it = cells_.find(key(i, j, k));
  return it == cells_.end() ? nullptr : &it->second;
}

PointPatch::PointPatch(std::vector<Point3> points, Box box, std::optional<double> declared_R)
    : points_(std::move(points)), box_(std::move(box)), declared_R_(declared_R) {
  if (!box_.valid()) {
    throw Error(ErrorCode::BoxTooSmall, "trusted box must satisfy lo < hi on every axis");
  }
  if (declared_R_ && !(*declared_R_ > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "declared R must be positive");
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!points_[i].allFinite()) {
      throw Error(ErrorCode::InvalidArgument, "point " + std::to_string(i) + " is not finite");
    }
    hash_.insert(points_[i], i);
    const auto c = hash_.cell_of(points_[i]);
    for (int a = 0; a < 3; ++a) {
      cell_lo_[a] = i == 0 ? c[a] : std::min(cell_lo_[a], c[a]);
      cell_hi_[a] = i == 0 ? c[a] : std::max(cell_hi_[a], c[a]);
    }
  }
}

std::optional<std::size_t> PointPatch::find(const Point3& p, double tol) const {
  std::optional<std::size_t> best;
  double best_d = tol;
  hash_.for_each_candidate(p, tol, [&](std::size_t i) {
    const double d = (points_[i] - p).norm();
    if (d <= best_d) {
      best_d = d;
      best = i;
    }
  });
  return best;
}

std::vector<std::size_t> PointPatch::within(const Point3& p, double r) const {
  std::vector<std::size_t> out;
  hash_.for_each_candidate(p, r, [&](std::size_t i) {
    if ((points_[i] - p).norm() <= r) out.push_back(i);
  });
  std::sort(out.begin(), out.end());
  return out;
}

double PointPatch::nearest_distance(const Point3& p, double cap,
                                    std::optional<std::size_t> skip) const {
  const double cell = hash_.cell();
  const auto c = hash_.cell_of(p);
  double best = cap;
  // Ring r holds cells at Chebyshev distance r; none of its points is closer
  // than (r - 1) * cell.
  for (std::int64_t r = 0;; ++r) {
    if (r > 0 && static_cast<double>(r - 1) * cell >= best) break;
    for (std::int64_t i = -r; i <= r; ++i)
      for (std::int64_t j = -r; j <= r; ++j)
        for (std::int64_t k = -r; k <= r; ++k) {
          if (std::max({std::abs(i), std::abs(j), std::abs(k)}) != r) continue;
          const auto* b = hash_.bucket(c[0] + i, c[1] + j, c[2] + k);
          if (b == nullptr) continue;
          for (std::size_t idx : *b) {
            if (skip && idx == *skip) continue;
            best = std::min(best, (points_[idx] - p).norm());
          }
        }
    bool covered = true;
    for (int a = 0; a < 3; ++a) covered = covered && c[a] - r <= cell_lo_[a] && c[a] + r >= cell_hi_[a];
    if (covered || points_.empty()) break;
  }
  return best;
}

std::vector<Point3> PointPatch::usable_centers(double rho, double tol) const {
  std::vector<Point3> out;
  for (const auto& p : points_) {
    if (usable_center(p, rho, tol)) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

PackingReport check_packing(const PointPatch& patch, double tol) {
  if (patch.size() < 2) {
    throw Error(ErrorCode::TooFewPoints, "packing diameter needs at least two points");
  }
  PackingReport report;
  report.min_distance = std::numeric_limits<double>::infinity();
  const auto& pts = patch.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d = patch.nearest_distance(pts[i], report.min_distance, i);
    if (d < report.min_distance) {
      report.min_distance = d;
      report.first = i;
      for (std::size_t j : patch.within(pts[i], d)) {
        if (j != i) {
          report.second = j;
          break;
        }
      }
    }
  }
  if (report.second < report.first) std::swap(report.first, report.second);
  report.violated = report.min_distance < 1.0 - tol;
  return report;
}

double packing_diameter(const PointPatch& patch) {
  return check_packing(patch).min_distance;
}

namespace {

// Center of the sphere through four points, if they are not coplanar.
std::optional<Point3> circumcenter(const Point3& p0, const Point3& p1, const Point3& p2,
                                   const Point3& p3) {
  Mat3 a;
  a.row(0) = (p1 - p0).transpose();
  a.row(1) = (p2 - p0).transpose();
  a.row(2) = (p3 - p0).transpose();
  const double scale = a.rowwise().norm().prod();
  const double det = a.determinant();
  if (std::abs(det) <= 1e-10 * std::max(scale, 1e-300)) return std::nullopt;
  const Vec3 rhs(0.5 * a.row(0).squaredNorm(), 0.5 * a.row(1).squaredNorm(),
                 0.5 * a.row(2).squaredNorm());
  return p0 + a.partialPivLu().solve(rhs);
}

}  // namespace

CoveringResult covering_radius_details(const PointPatch& patch, double h, double tol) {
  if (patch.size() == 0) throw Error(ErrorCode::TooFewPoints, "no points");
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid step must be positive");
  const Box& box = patch.box();
  const Vec3 extent = box.hi - box.lo;
  std::array<int, 3> steps{};
  for (int a = 0; a < 3; ++a) steps[a] = static_cast<int>(std::ceil(extent[a] / h));

  auto node = [&](int i, int j, int k) {
    return Point3(box.lo.x() + extent.x() * i / steps[0], box.lo.y() + extent.y() * j / steps[1],
                  box.lo.z() + extent.z() * k / steps[2]);
  };

  // v(g) = radius of the largest empty ball at g that stays in the box.
  // Every such ball is a lower bound for the answer.
  struct Node {
    Point3 p;
    double v;
    double f;
  };
  std::vector<Node> nodes;
  double vmax = 0.0;
  Point3 vmax_at = box.lo;
  for (int i = 0; i <= steps[0]; ++i)
    for (int j = 0; j <= steps[1]; ++j)
      for (int k = 0; k <= steps[2]; ++k) {
        const Point3 g = node(i, j, k);
        const double bd = box.inner_distance(g);
        if (bd <= 0.0) continue;
        const double f = patch.nearest_distance(g, bd + 4.0 * h);
        const double v = std::min(f, bd);
        nodes.push_back({g, v, f});
        if (v > vmax) {
          vmax = v;
          vmax_at = g;
        }
      }
  if (vmax <= 0.0) throw Error(ErrorCode::BoxTooSmall, "trusted box has no interior");

  // The optimal vertex c* has a node within delta = half the cell diagonal;
  // that node has v >= R - delta >= vmax - delta, and the four points
  // defining c* lie within f + 2 delta of it.
  const Vec3 cell = extent.cwiseQuotient(Vec3(steps[0], steps[1], steps[2]));
  const double delta = 0.5 * cell.norm();
  CoveringResult best{vmax, vmax_at, false};
  double best_exact = -1.0;
  const auto& pts = patch.points();
  for (const auto& n : nodes) {
    if (n.v < vmax - delta - tol) continue;
    const auto near = patch.within(n.p, n.f + 2.0 * delta + tol);
    const std::size_t m = near.size();
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b)
        for (std::size_t c = b + 1; c < m; ++c)
          for (std::size_t d = c + 1; d < m; ++d) {
            const auto cc = circumcenter(pts[near[a]], pts[near[b]], pts[near[c]], pts[near[d]]);
            if (!cc || (*cc - n.p).norm() > delta + tol) continue;
            const double r = (*cc - pts[near[a]]).norm();
            if (r <= best_exact) continue;
            if (!box.contains_ball(*cc, r, tol)) continue;
            if (patch.nearest_distance(*cc, r) < r - tol) continue;
            best_exact = r;
            best = {r, *cc, true};
          }
  }
  if (best_exact > 0.0 && best_exact < vmax - tol) {
    // A grid ball beat every vertex: the optimum sits on the box constraint.
    best = {vmax, vmax_at, false};
  }
  return best;
}

double covering_radius(const PointPatch& patch, double h, double tol) {
  return covering_radius_details(patch, h, tol).radius;
}

namespace {

void check_cluster_query(const PointPatch& patch, const Point3& center, double rho,
                         const ToleranceContext& ctx) {
  if (!(rho >= 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be non-negative");
  if (!patch.find(center, ctx.geom_tol)) {
    throw Error(ErrorCode::CenterNotInPatch, "cluster center is not a patch point");
  }
  if (!patch.usable_center(center, rho, ctx.geom_tol)) {
    std::ostringstream msg;
    msg.precision(10);
    msg << "ball of radius " << rho << " around (" << center.x() << ", " << center.y() << ", "
        << center.z() << ") leaves the trusted box";
    throw Error(ErrorCode::MarginViolation, msg.str());
  }
}

void sort_members(const Point3& center, std::vector<Point3>& members) {
  std::sort(members.begin(), members.end(), [&](const Point3& a, const Point3& b) {
    const double da = (a - center).norm();
    const double db = (b - center).norm();
    if (da != db) return da < db;
    return lex_less(a, b);
  });
}

}  // namespace

Cluster cluster(const PointPatch& patch, const Point3& center, double rho,
                const ToleranceContext& ctx) {
  check_cluster_query(patch, center, rho, ctx);
  const Point3 c = patch.points()[*patch.find(center, ctx.geom_tol)];
  Cluster out;
  out.center = c;
  out.radius = rho;
  for (std::size_t i : patch.within(c, rho + ctx.geom_tol)) out.members.push_back(patch.points()[i]);
  sort_members(c, out.members);
  return out;
}

std::vector<Point3> shell(const PointPatch& patch, const Point3& center, double rho,
                          const ToleranceContext& ctx) {
  check_cluster_query(patch, center, rho, ctx);
  std::vector<Point3> out;
  for (std::size_t i : patch.within(center, rho + ctx.geom_tol)) {
    const Point3& p = patch.points()[i];
    if (std::abs((p - center).norm() - rho) <= ctx.geom_tol) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

Cluster make_cluster(const Point3& center, std::vector<Point3> members, double radius) {
  const bool has_center = std::any_of(members.begin(), members.end(), [&](const Point3& p) {
    return (p - center).norm() <= 1e-12;
  });
  if (!has_center) members.push_back(center);
  sort_members(center, members);
  members.front() = center;
  return {center, radius, std::move(members)};
}

int affine_dimension(const Cluster& c, double tol) {
  if (c.members.size() < 2) return 0;
  Eigen::MatrixXd m(3, static_cast<Eigen::Index>(c.members.size()));
  for (std::size_t i = 0; i < c.members.size(); ++i) {
    m.col(static_cast<Eigen::Index>(i)) = c.members[i] - c.center;
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s(0) <= tol) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > tol * std::max(1.0, s(0))) ++rank;
  }
  return rank;
}

}  // namespace delone
