#include <doctest.h>

#include <cmath>
#include <sstream>

#include "delone/generators.hpp"
#include "delone/io.hpp"
#include "delone/patch.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace delone;

namespace {
Box cube(double s) { return Box{Point3::Constant(-s), Point3::Constant(s)}; }

std::vector<oracle::V3> pts_of(const PointPatch& p) { return p.points(); }
}  // namespace

TEST_SUITE("patch") {

TEST_CASE("box predicates") {
  const Box b = cube(2);
  CHECK(b.valid());
  CHECK(b.contains(Point3(2, 2, 2)));
  CHECK_FALSE(b.contains(Point3(2.1, 0, 0)));
  CHECK(b.inner_distance(Point3(0, 0, 1.5)) == doctest::Approx(0.5));
  CHECK(b.contains_ball(Point3::Zero(), 2.0));
  CHECK_FALSE(b.contains_ball(Point3(1, 0, 0), 1.5));
  CHECK_FALSE(Box{Point3::Zero(), Point3(1, 1, 0)}.valid());
}

TEST_CASE("patch construction validates the box") {
  CHECK(code_of([] { PointPatch({Point3::Zero()}, Box{Point3::Zero(), Point3::Zero()}); }) ==
        ErrorCode::BoxTooSmall);
}

TEST_CASE("find, within and nearest") {
  const PointPatch p = cubic_lattice(cube(2));
  CHECK(p.size() == 125);
  REQUIRE(p.find(Point3(1, -1, 0), 1e-9).has_value());
  CHECK(p.points()[*p.find(Point3(1, -1, 0), 1e-9)] == Point3(1, -1, 0));
  CHECK_FALSE(p.find(Point3(0.5, 0, 0), 1e-9).has_value());
  CHECK(p.within(Point3::Zero(), 1.0).size() == 7);
  CHECK(p.within(Point3::Zero(), std::sqrt(2.0)).size() == 19);
  CHECK(p.within(Point3::Zero(), std::sqrt(3.0)).size() == 27);
  CHECK(p.nearest_distance(Point3(0.5, 0.5, 0.5), 10.0) == doctest::Approx(std::sqrt(0.75)));
  CHECK(p.nearest_distance(Point3(100, 0, 0), 5.0) == 5.0);
  const auto far = p.nearest_distance(Point3(100, 0, 0), std::numeric_limits<double>::infinity());
  CHECK(far == doctest::Approx(98.0));
}

TEST_CASE("within agrees with brute force") {
  const PointPatch p = c4v_example(cube(4));
  for (double r : {0.9, 1.0, 1.5, 2.2, 3.1}) {
    for (const auto& c : {Point3(0, 0, 1), Point3(1, -1, 2), Point3(0.3, 0.2, 0.1)}) {
      CHECK(p.within(c, r).size() == oracle::ball(pts_of(p), c, r).size());
    }
  }
}

TEST_CASE("packing diameter") {
  CHECK(packing_diameter(cubic_lattice(cube(4))) == doctest::Approx(1.0).epsilon(1e-12));
  const PointPatch bad({Point3(0, 0, 0), Point3(0.5, 0, 0), Point3(3, 3, 3)}, cube(4));
  const auto rep = check_packing(bad);
  CHECK(rep.violated);
  CHECK(rep.min_distance == doctest::Approx(0.5));
  CHECK(rep.first == 0);
  CHECK(rep.second == 1);
  CHECK(code_of([] { packing_diameter(PointPatch({Point3::Zero()}, cube(1))); }) ==
        ErrorCode::TooFewPoints);
}

TEST_CASE("covering radius of the cubic lattice") {
  const PointPatch p = cubic_lattice(cube(4));
  const auto c = covering_radius_details(p);
  CHECK(c.exact);
  CHECK(std::abs(c.radius - std::sqrt(3.0) / 2.0) < 1e-6);
  // The reported center is an empty ball of that radius.
  CHECK(std::abs(oracle::nearest(pts_of(p), c.center) - c.radius) < 1e-9);
  const double grid = oracle::grid_hole(pts_of(p), Point3::Zero(), Point3::Ones(), 0.05);
  CHECK(grid <= c.radius + 1e-12);
  CHECK(c.radius - grid < 0.05 * std::sqrt(3.0));
}

TEST_CASE("covering radius of hexagonal sets") {
  for (auto [l, m] : {std::pair{1.0, 1.0}, std::pair{1.0, 4.0}, std::pair{2.0, 1.0}}) {
    const HexLatticeSpec spec{l, m};
    const PointPatch p = hex_lattice(spec, cube(5));
    const double r = covering_radius(p);
    CHECK(std::abs(r - std::sqrt(l / 3 + m / 4)) < 1e-6);
    const double grid = oracle::grid_hole(pts_of(p), Point3(0, 0, 0), Point3(1.5, 1.5, 2.0), 0.05);
    CHECK(grid <= r + 1e-12);
    CHECK(r - grid < 0.05 * std::sqrt(3.0));
  }
  const BiLatticeSpec bi{{1.0, 4.0}, Vec3(0, 0, 1.3)};
  const PointPatch p = hex_bilattice(bi, cube(6));
  CHECK(std::abs(covering_radius(p) - std::sqrt(1.0 / 3 + 0.65 * 0.65)) < 1e-6);
}

TEST_CASE("covering radius of the C4v set") {
  const PointPatch p = c4v_example(cube(5));
  const double r = covering_radius(p);
  CHECK(std::abs(r - std::sqrt(1.5)) < 1e-6);
  const double grid = oracle::grid_hole(pts_of(p), Point3(0, 0, -0.5), Point3(1, 1, 1), 0.05);
  CHECK(grid <= r + 1e-12);
}

TEST_CASE("clusters and shells") {
  const PointPatch p = cubic_lattice(cube(3));
  const Cluster c = cluster(p, Point3::Zero(), 1.0);
  CHECK(c.size() == 7);
  CHECK(c.members.front() == Point3::Zero());
  for (std::size_t i = 2; i < c.size(); ++i) {
    CHECK((c.members[i] - c.center).norm() >= (c.members[i - 1] - c.center).norm() - 1e-12);
  }
  CHECK(cluster(p, Point3::Zero(), std::sqrt(2.0)).size() == 19);
  CHECK(shell(p, Point3::Zero(), std::sqrt(2.0)).size() == 12);
  CHECK(shell(p, Point3::Zero(), 1.2).empty());
}

TEST_CASE("cluster errors") {
  const PointPatch p = cubic_lattice(cube(2));
  CHECK(code_of([&] { cluster(p, Point3(0.5, 0, 0), 1.0); }) == ErrorCode::CenterNotInPatch);
  CHECK(code_of([&] { cluster(p, Point3(2, 0, 0), 1.0); }) == ErrorCode::MarginViolation);
  try {
    cluster(p, Point3::Zero(), 2.5);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("2.5") != std::string::npos);
  }
}

TEST_CASE("usable centers are sorted and inside the margin") {
  const PointPatch p = cubic_lattice(cube(2));
  const auto cs = p.usable_centers(1.0);
  CHECK(cs.size() == 27);
  CHECK(std::is_sorted(cs.begin(), cs.end(), lex_less));
  CHECK(p.usable_centers(2.0).size() == 1);
  CHECK(p.usable_centers(2.01).empty());
}

TEST_CASE("affine dimension") {
  CHECK(affine_dimension(make_cluster(Point3::Zero(), {}, 1.0)) == 0);
  CHECK(affine_dimension(make_cluster(Point3::Zero(), {Point3(1, 0, 0), Point3(-1, 0, 0)}, 1.0)) == 1);
  CHECK(affine_dimension(make_cluster(Point3::Zero(), {Point3(1, 0, 0), Point3(0, 1, 0)}, 1.0)) == 2);
  CHECK(affine_dimension(cluster(cubic_lattice(cube(2)), Point3::Zero(), 1.0)) == 3);
}

TEST_CASE("point file round trip is bit exact") {
  const PointPatch p = hex_lattice(HexLatticeSpec{1.0, 2.0, false}, cube(3));
  std::stringstream ss;
  write_patch(ss, p, 1.0);
  const PointFile f = parse_point_file(ss);
  REQUIRE(f.points.size() == p.size());
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(f.points[i] == p.points()[i]);
  REQUIRE(f.box.has_value());
  CHECK(f.box->lo == p.box().lo);
  CHECK(*f.declared_R == *p.declared_R());
  CHECK(*f.min_distance == 1.0);
}

TEST_CASE("point file parse errors carry line numbers") {
  std::istringstream in("# comment\n0 0 0\n1 2\n");
  try {
    parse_point_file(in);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  std::istringstream bad_num("0 0 x\n");
  CHECK(code_of([&] { parse_point_file(bad_num); }) == ErrorCode::ParseError);
  std::istringstream empty("# nothing\n");
  CHECK(code_of([&] { to_patch(parse_point_file(empty)); }) == ErrorCode::TooFewPoints);
}

}  // TEST_SUITE
