#pragma once

#include <array>
#include <iosfwd>
#include <string>

#include "delone/patch.hpp"

namespace delone {

/// Lattice with Gram matrix [[l, l/2, 0], [l/2, l, 0], [0, 0, mu]]:
/// a hexagonal layer of side sqrt(l) stacked with period sqrt(mu).
struct HexLatticeSpec {
  double lambda = 1.0;
  double mu = 1.0;
  /// Scale the set so that its minimal distance becomes 1.
  bool rescale = false;

  /// Columns a1 = (sqrt l, 0, 0), a2 = (sqrt l / 2, sqrt(3 l) / 2, 0),
  /// a3 = (0, 0, sqrt mu), before rescaling.
  Mat3 basis() const;
  /// min(sqrt l, sqrt mu), before rescaling.
  double min_distance() const;
  /// sqrt(l / 3 + mu / 4), before rescaling.
  double covering_radius() const;
  void validate() const;
};

/// Gamma union (Gamma + t) with t perpendicular to the hexagonal layers.
struct BiLatticeSpec {
  HexLatticeSpec hex;
  Vec3 t = Vec3(0, 0, 0.5);

  /// min(sqrt l, h1, h2) where h1, h2 are the two alternating layer gaps.
  double min_distance() const;
  double covering_radius() const;
  /// Throws InvalidShift when t is not perpendicular to the layers or lies
  /// in Gamma.
  void validate() const;
};

/// Integer points of the closed box; trusted box = box, R = sqrt(3)/2.
PointPatch cubic_lattice(const Box& box);
PointPatch hex_lattice(const HexLatticeSpec& spec, const Box& box);
PointPatch hex_bilattice(const BiLatticeSpec& spec, const Box& box);
/// {(x, y, z) in Z^3 : z mod 3 != 0}; R = sqrt(3/2).
PointPatch c4v_example(const Box& box);

/// (+-a, 0, b), (0, +-a, b), (+-a/sqrt2, +-a/sqrt2, -b).  The two squares
/// are rotated by 45 degrees against each other.  Throws
/// DegenerateAntiprism for b == 0 and InvalidArgument for a <= 0.
std::array<Point3, 8> antiprism_points(double a, double b);

/// Minimal pairwise distance of a point list (brute force); 0 for < 2
/// points.
double min_pairwise_distance(const std::vector<Point3>& points);

/// Generator configuration read from "key = value" lines.  Keys: kind
/// (cubic | hex | hex_bilattice | c4v | antiprism), lambda, mu, t_z, a, b,
/// box_lo, box_hi (one or three numbers), rescale (true | false).
struct GeneratorConfig {
  std::string kind = "cubic";
  double lambda = 1.0;
  double mu = 1.0;
  double t_z = 0.5;
  double a = 1.0;
  double b = 0.5;
  Box box{Point3::Constant(-3.0), Point3::Constant(3.0)};
  bool rescale = false;
};

/// Throws ParseError with a line number on malformed input or unknown keys.
GeneratorConfig parse_generator_config(std::istream& in);

struct GeneratedSet {
  PointPatch patch;
  double min_distance = 0.0;
};

/// For `antiprism` the set is the origin plus the eight vertices, inside
/// their bounding box.  Throws InvalidArgument for an unknown kind.
GeneratedSet generate(const GeneratorConfig& config);

}  // namespace delone
