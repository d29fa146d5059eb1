#pragma once

#include <array>
#include <optional>
#include <string>

#include <Eigen/Dense>

namespace delone {

using Vec3 = Eigen::Vector3d;
using Point3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Tolerances shared by every geometric predicate in the library.
///
/// Lengths are dimensionless with the minimal interpoint distance of a
/// well-formed patch equal to 1.
struct ToleranceContext {
  double geom_tol = 1e-9;
  double angle_tol = 1e-9;
  int max_rotation_order = 24;

  /// Throws InvalidArgument unless all fields are strictly positive and
  /// max_rotation_order >= 2.
  void validate() const;
};

/// An element of O(3).  Construction validates orthogonality and projects
/// the matrix onto the nearest orthogonal matrix so long products stay
/// exactly in the group up to roundoff.
class OrthogonalMap {
 public:
  OrthogonalMap() : m_(Mat3::Identity()), det_(1) {}

  static OrthogonalMap identity() { return {}; }

  /// Throws NonOrthogonal if max|M^T M - I| > tol.
  static OrthogonalMap from_matrix(const Mat3& m, double tol = 1e-9);

  const Mat3& matrix() const { return m_; }
  int det() const { return det_; }
  bool proper() const { return det_ > 0; }

  Vec3 operator()(const Vec3& v) const { return m_ * v; }
  OrthogonalMap operator*(const OrthogonalMap& other) const;
  OrthogonalMap inverse() const;

  /// Max-norm distance between the two matrices.
  double distance(const OrthogonalMap& other) const;

 private:
  explicit OrthogonalMap(const Mat3& projected);

  Mat3 m_;
  int det_;
};

/// p -> Q p + t
class Isometry {
 public:
  Isometry() = default;
  Isometry(OrthogonalMap q, Vec3 t) : q_(std::move(q)), t_(std::move(t)) {}

  static Isometry identity() { return {}; }
  static Isometry translation(const Vec3& t) { return {OrthogonalMap{}, t}; }

  const OrthogonalMap& linear() const { return q_; }
  const Vec3& translation() const { return t_; }

  Point3 operator()(const Point3& p) const { return q_(p) + t_; }

  /// (a * b)(p) == a(b(p))
  Isometry operator*(const Isometry& other) const;
  Isometry inverse() const;

 private:
  OrthogonalMap q_;
  Vec3 t_ = Vec3::Zero();
};

enum class ElementType {
  Identity,
  Inversion,
  Rotation,
  Reflection,
  Rotoreflection,
  GenericRotation,
  GenericRotoreflection,
};

std::string to_string(ElementType type);

/// Classification of a single orthogonal map as a symmetry element.
///
/// For Rotation, `n` is the rotation order.  For Rotoreflection, `n` is the
/// Schoenflies index of the element (rotation by 2*pi/n followed by the
/// perpendicular mirror) and `order` is its order as a group element, which
/// is n for even n and 2n for odd n.  `axis` is the rotation axis or the
/// mirror normal, with the first nonzero component made positive.
struct ElementKind {
  ElementType type = ElementType::Identity;
  int n = 1;
  int order = 1;
  Vec3 axis = Vec3::Zero();
  double angle = 0.0;  // radians in [0, pi]
};

ElementKind classify_element(const OrthogonalMap& q, const ToleranceContext& ctx);
/// Validates orthogonality with ctx.geom_tol first.
ElementKind classify_element(const Mat3& q, const ToleranceContext& ctx);

/// Sign-normalizes a direction: first component with |c| > 1e-12 is positive.
Vec3 canonical_axis(const Vec3& v);

Mat3 rotation_matrix(const Vec3& axis, double angle);
Mat3 reflection_matrix(const Vec3& normal);

using Frame = std::array<Point3, 4>;

/// Unique isometry sending src[i] to dst[i] for i = 0..3, if the two
/// quadruples are congruent within tol.  Throws DegenerateFrame when the
/// difference vectors src[1..3] - src[0] do not span R^3.
std::optional<Isometry> frame_isometry(const Frame& src, const Frame& dst,
                                       double tol = 1e-9);

}  // namespace delone
