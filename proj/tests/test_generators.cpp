#include <doctest.h>

#include <cmath>
#include <sstream>

#include "delone/equivalence.hpp"
#include "delone/generators.hpp"
#include "delone/point_group.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace delone;

namespace {
Box cube(double s) { return Box{Point3::Constant(-s), Point3::Constant(s)}; }

bool has(const PointPatch& p, const Point3& q) { return p.find(q, 1e-9).has_value(); }
}  // namespace

TEST_SUITE("generators") {

TEST_CASE("cubic lattice counts") {
  CHECK(cubic_lattice(cube(1)).size() == 27);
  CHECK(cubic_lattice(cube(2)).size() == 125);
  CHECK(cubic_lattice(Box{Point3(-0.5, -0.5, -0.5), Point3(0.5, 0.5, 0.5)}).size() == 1);
  CHECK(packing_diameter(cubic_lattice(cube(2))) == 1.0);
  CHECK(code_of([] { cubic_lattice(Box{Point3::Zero(), Point3(1, 1, 0)}); }) == ErrorCode::BoxTooSmall);
}

TEST_CASE("points are ordered by z, then y, then x") {
  const auto pts = c4v_example(cube(3)).points();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const auto& a = pts[i - 1];
    const auto& b = pts[i];
    CHECK(std::tie(a.z(), a.y(), a.x()) < std::tie(b.z(), b.y(), b.x()));
  }
}

TEST_CASE("hexagonal basis reproduces the Gram matrix") {
  for (auto [l, m] : {std::pair{1.0, 1.0}, std::pair{2.5, 0.7}, std::pair{1.0, 9.0}}) {
    const Mat3 b = HexLatticeSpec{l, m}.basis();
    Mat3 gram;
    gram << l, l / 2, 0, l / 2, l, 0, 0, 0, m;
    CHECK((b.transpose() * b - gram).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("hexagonal lattice neighbors") {
  const PointPatch p = hex_lattice(HexLatticeSpec{1.0, 1.0}, cube(4));
  CHECK(packing_diameter(p) == doctest::Approx(1.0));
  CHECK(shell(p, Point3::Zero(), 1.0).size() == 8);
  int in_plane = 0;
  for (const auto& q : shell(p, Point3::Zero(), 1.0)) in_plane += std::abs(q.z()) < 1e-12;
  CHECK(in_plane == 6);
  const PointPatch tall = hex_lattice(HexLatticeSpec{1.0, 9.0}, cube(4));
  CHECK(has(tall, Point3(0, 0, 3)));
  CHECK(oracle::nearest(std::vector<Point3>(tall.points()), Point3(0, 0, 1.5)) == doctest::Approx(1.5));
}

TEST_CASE("hexagonal lattice has a sixfold axis") {
  const PointPatch p = hex_lattice(HexLatticeSpec{1.0, 1.0}, cube(4));
  const auto g = stabilizer(cluster(p, Point3::Zero(), 1.0));
  bool six = false;
  for (const auto& e : g.elements) {
    const auto k = classify_element(e, ToleranceContext{});
    six = six || (k.type == ElementType::Rotation && k.n == 6 && std::abs(std::abs(k.axis.z()) - 1) < 1e-9);
  }
  CHECK(six);
  CHECK(max_rotation_order(cluster(p, Point3::Zero(), 1.0)) == 6);
}

TEST_CASE("rescaling restores minimal distance one") {
  const HexLatticeSpec spec{1.0, 0.49, true};
  CHECK(spec.min_distance() == doctest::Approx(0.7));
  CHECK(packing_diameter(hex_lattice(spec, cube(4))) == doctest::Approx(1.0));
  const BiLatticeSpec bi{{1.0, 4.0, true}, Vec3(0, 0, 1.3)};
  CHECK(bi.min_distance() == doctest::Approx(0.7));
  CHECK(packing_diameter(hex_bilattice(bi, cube(5))) == doctest::Approx(1.0));
}

TEST_CASE("bilattice layers alternate") {
  const BiLatticeSpec spec{{1.0, 4.0}, Vec3(0, 0, 1.3)};
  const PointPatch p = hex_bilattice(spec, cube(4));
  for (double z : {-2.0, -0.7, 0.0, 1.3, 2.0, 3.3}) CHECK(has(p, Point3(0, 0, z)));
  CHECK_FALSE(has(p, Point3(0, 0, 1.0)));
  CHECK(packing_diameter(p) == doctest::Approx(0.7));
}

TEST_CASE("bilattice shift validation") {
  const Box b = cube(3);
  CHECK(code_of([&] { hex_bilattice(BiLatticeSpec{{1.0, 4.0}, Vec3(0, 0, 2.0)}, b); }) == ErrorCode::InvalidShift);
  CHECK(code_of([&] { hex_bilattice(BiLatticeSpec{{1.0, 4.0}, Vec3(0, 0, 0)}, b); }) == ErrorCode::InvalidShift);
  CHECK(code_of([&] { hex_bilattice(BiLatticeSpec{{1.0, 4.0}, Vec3(0.1, 0, 1)}, b); }) == ErrorCode::InvalidShift);
}

TEST_CASE("C4v example membership") {
  const PointPatch p = c4v_example(cube(4));
  CHECK(has(p, Point3(0, 0, 1)));
  CHECK_FALSE(has(p, Point3(0, 0, 3)));
  CHECK_FALSE(has(p, Point3(0, 0, -3)));
  CHECK(has(p, Point3(2, -1, -2)));
  CHECK(p.size() == 9 * 9 * 6);
}

TEST_CASE("antiprism vertices") {
  for (const auto& v : antiprism_points(1.0, 0.5)) CHECK(v.norm() == doctest::Approx(std::sqrt(1.25)));
  for (const auto& v : antiprism_points(std::sqrt(0.75), 0.5)) CHECK(v.norm() == doctest::Approx(1.0));
  CHECK(code_of([] { antiprism_points(1.0, 0.0); }) == ErrorCode::DegenerateAntiprism);
  CHECK(code_of([] { antiprism_points(0.0, 1.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("antiprism cluster group is D4d") {
  const auto v = antiprism_points(1.0, 0.5);
  std::vector<Point3> members(v.begin(), v.end());
  const auto g = stabilizer(make_cluster(Point3::Zero(), members, 2.0));
  CHECK(g.label.str() == "D4d");
  CHECK(g.order() == 16);
}

TEST_CASE("regeneration with a larger box is bit exact") {
  const Box small{Point3(-2, -1.5, -3), Point3(2.5, 3, 1)};
  const Box big = cube(6);
  auto clip = [&](const PointPatch& p) {
    std::vector<Point3> out;
    for (const auto& q : p.points()) {
      if (small.contains(q, 1e-12)) out.push_back(q);
    }
    return out;
  };
  CHECK(clip(cubic_lattice(big)) == cubic_lattice(small).points());
  CHECK(clip(c4v_example(big)) == c4v_example(small).points());
  const HexLatticeSpec h{1.3, 0.8};
  CHECK(clip(hex_lattice(h, big)) == hex_lattice(h, small).points());
  const BiLatticeSpec bi{{1.0, 4.0}, Vec3(0, 0, 1.3)};
  CHECK(clip(hex_bilattice(bi, big)) == hex_bilattice(bi, small).points());
}

TEST_CASE("hexagonal sets are vertex transitive on the patch") {
  const PointPatch p = hex_lattice(HexLatticeSpec{1.0, 1.0}, cube(5));
  const double R = std::sqrt(7.0 / 12.0);
  for (double rho : {1.0, 1.5, 2 * R}) CHECK(cluster_classes(p, rho).N() == 1);
  const PointPatch q = hex_bilattice(BiLatticeSpec{{1.0, 4.0, true}, Vec3(0, 0, 1.3)}, cube(6));
  const double Rq = *q.declared_R();
  for (double rho : {1.0, 1.5, 2 * Rq}) CHECK(cluster_classes(q, rho).N() == 1);
}

TEST_CASE("generator config") {
  std::istringstream in(
      "# bilattice\nkind = hex_bilattice\nlambda = 1\nmu = 4\nt_z = 1.3\n"
      "box_lo = -3\nbox_hi = 3 3 4\nrescale = true\n");
  const auto cfg = parse_generator_config(in);
  CHECK(cfg.kind == "hex_bilattice");
  CHECK(cfg.t_z == 1.3);
  CHECK(cfg.box.lo == Point3(-3, -3, -3));
  CHECK(cfg.box.hi == Point3(3, 3, 4));
  CHECK(cfg.rescale);
  const auto set = generate(cfg);
  CHECK(set.min_distance == 1.0);
  CHECK(packing_diameter(set.patch) == doctest::Approx(1.0));

  std::istringstream bad("kind = cubic\ncolour = red\n");
  try {
    parse_generator_config(bad);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  GeneratorConfig unknown;
  unknown.kind = "fcc";
  CHECK(code_of([&] { generate(unknown); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("antiprism generator kind") {
  GeneratorConfig cfg;
  cfg.kind = "antiprism";
  const auto set = generate(cfg);
  CHECK(set.patch.size() == 9);
  CHECK(set.min_distance == doctest::Approx(min_pairwise_distance(set.patch.points())));
}

}  // TEST_SUITE
