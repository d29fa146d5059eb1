#include "delone/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "delone/errors.hpp"

namespace delone {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Mat3 nearest_orthogonal(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

// Rotation angle in [0, pi] and unit axis of a proper rotation matrix.
std::pair<double, Vec3> angle_axis(const Mat3& p) {
  const Vec3 skew(p(2, 1) - p(1, 2), p(0, 2) - p(2, 0), p(1, 0) - p(0, 1));
  const double s = 0.5 * skew.norm();
  const double c = std::clamp(0.5 * (p.trace() - 1.0), -1.0, 1.0);
  const double angle = std::atan2(s, c);
  if (s < 1e-14 && c > 0.0) return {0.0, Vec3::UnitZ()};
  if (c >= 0.0) return {angle, skew / (2.0 * s)};

  // Near a half turn the skew part vanishes; read the axis off the
  // symmetric part instead: (P + P^T)/2 - c I = (1 - c) k k^T.
  const Mat3 kk = (0.5 * (p + p.transpose()) - c * Mat3::Identity()) / (1.0 - c);
  Eigen::Index col = 0;
  kk.diagonal().maxCoeff(&col);
  Vec3 axis = kk.col(col) / std::sqrt(std::max(kk(col, col), 1e-300));
  if (axis.dot(skew) < 0.0) axis = -axis;
  return {angle, axis.normalized()};
}

// Smallest n in [2, max_order] with angle == 2 pi k / n, or 0.
int commensurate_order(double angle, const ToleranceContext& ctx) {
  for (int n = 2; n <= ctx.max_rotation_order; ++n) {
    const double k = std::round(angle * n / kTwoPi);
    if (k < 1.0) continue;
    if (std::abs(angle - kTwoPi * k / n) <= ctx.angle_tol) return n;
  }
  return 0;
}

}  // namespace

void ToleranceContext::validate() const {
  if (!(geom_tol > 0.0) || !(angle_tol > 0.0) || max_rotation_order < 2) {
    throw Error(ErrorCode::InvalidArgument,
                "tolerances must be positive and max_rotation_order >= 2");
  }
}

OrthogonalMap::OrthogonalMap(const Mat3& projected) : m_(projected) {
  det_ = m_.determinant() > 0.0 ? 1 : -1;
}

OrthogonalMap OrthogonalMap::from_matrix(const Mat3& m, double tol) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::NonOrthogonal, "matrix has non-finite entries");
  }
  const double defect = (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff();
  if (defect > tol) {
    throw Error(ErrorCode::NonOrthogonal,
                "matrix is not orthogonal (max |Q^T Q - I| = " + std::to_string(defect) + ")");
  }
  return OrthogonalMap(nearest_orthogonal(m));
}

OrthogonalMap OrthogonalMap::operator*(const OrthogonalMap& other) const {
  return OrthogonalMap(nearest_orthogonal(m_ * other.m_));
}

OrthogonalMap OrthogonalMap::inverse() const {
  return OrthogonalMap(Mat3(m_.transpose()));
}

double OrthogonalMap::distance(const OrthogonalMap& other) const {
  return (m_ - other.m_).cwiseAbs().maxCoeff();
}

Isometry Isometry::operator*(const Isometry& other) const {
  return {q_ * other.q_, q_(other.t_) + t_};
}

Isometry Isometry::inverse() const {
  const OrthogonalMap qi = q_.inverse();
  return {qi, -qi(t_)};
}

std::string to_string(ElementType type) {
  switch (type) {
    case ElementType::Identity: return "identity";
    case ElementType::Inversion: return "inversion";
    case ElementType::Rotation: return "rotation";
    case ElementType::Reflection: return "reflection";
    case ElementType::Rotoreflection: return "rotoreflection";
    case ElementType::GenericRotation: return "generic_rotation";
    case ElementType::GenericRotoreflection: return "generic_rotoreflection";
  }
  return "unknown";
}

Vec3 canonical_axis(const Vec3& v) {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(v[i]) > 1e-12) return v[i] < 0.0 ? Vec3(-v) : v;
  }
  return v;
}

Mat3 rotation_matrix(const Vec3& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

Mat3 reflection_matrix(const Vec3& normal) {
  const Vec3 k = normal.normalized();
  return Mat3::Identity() - 2.0 * k * k.transpose();
}

ElementKind classify_element(const Mat3& q, const ToleranceContext& ctx) {
  return classify_element(OrthogonalMap::from_matrix(q, ctx.geom_tol), ctx);
}

ElementKind classify_element(const OrthogonalMap& q, const ToleranceContext& ctx) {
  ElementKind kind;
  if (q.proper()) {
    const auto [angle, axis] = angle_axis(q.matrix());
    if (angle <= ctx.angle_tol) return kind;
    kind.angle = angle;
    kind.axis = canonical_axis(axis);
    const int n = commensurate_order(angle, ctx);
    if (n == 0) {
      kind.type = ElementType::GenericRotation;
      kind.n = kind.order = 0;
    } else {
      kind.type = ElementType::Rotation;
      kind.n = kind.order = n;
    }
    return kind;
  }

  // Q = -P with P proper.  If P turns by theta about k, then Q is the turn
  // by pi - theta about -k followed by the mirror perpendicular to k.
  const Mat3 p = -q.matrix();
  const auto [theta, axis] = angle_axis(p);
  const double phi = std::numbers::pi - theta;
  kind.angle = phi;
  if (theta <= ctx.angle_tol) {
    kind.type = ElementType::Inversion;
    kind.n = 2;
    kind.order = 2;
    return kind;
  }
  kind.axis = canonical_axis(axis);
  if (phi <= ctx.angle_tol) {
    kind.type = ElementType::Reflection;
    kind.n = 1;
    kind.order = 2;
    return kind;
  }
  const int n = commensurate_order(phi, ctx);
  if (n == 0) {
    kind.type = ElementType::GenericRotoreflection;
    kind.n = kind.order = 0;
  } else {
    kind.type = ElementType::Rotoreflection;
    kind.n = n;
    kind.order = n % 2 == 0 ? n : 2 * n;
  }
  return kind;
}

std::optional<Isometry> frame_isometry(const Frame& src, const Frame& dst, double tol) {
  Mat3 s;
  Mat3 d;
  for (int i = 0; i < 3; ++i) {
    s.col(i) = src[i + 1] - src[0];
    d.col(i) = dst[i + 1] - dst[0];
  }
  const Eigen::JacobiSVD<Mat3> svd_s(s);
  const auto& sv = svd_s.singularValues();
  if (sv(0) <= 0.0 || sv(2) <= 1e-8 * sv(0)) {
    throw Error(ErrorCode::DegenerateFrame, "frame difference vectors do not span R^3");
  }
  const double scale = std::max(1.0, sv(0));

  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const double ds = (src[i] - src[j]).norm();
      const double dd = (dst[i] - dst[j]).norm();
      if (std::abs(ds - dd) > tol * scale) return std::nullopt;
    }
  }

  Eigen::JacobiSVD<Mat3> svd(d * s.transpose(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat3 q = svd.matrixU() * svd.matrixV().transpose();
  if ((q * s - d).cwiseAbs().maxCoeff() > 4.0 * tol * scale) return std::nullopt;

  const OrthogonalMap map = OrthogonalMap::from_matrix(q, 1e-6);
  return Isometry(map, dst[0] - map(src[0]));
}

}  // namespace delone
