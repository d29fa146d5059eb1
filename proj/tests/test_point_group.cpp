#include <doctest.h>

#include <numbers>
#include <random>

#include "delone/generators.hpp"
#include "delone/point_group.hpp"
#include "delone/regularity.hpp"
#include "group_fixtures.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace delone;

TEST_SUITE("point_group") {

TEST_CASE("labels print and parse") {
  for (const auto& row : bound_table()) {
    const auto l = SchoenfliesLabel::parse(row.label);
    REQUIRE(l.has_value());
    CHECK(l->str() == row.label);
  }
  for (const char* bad : {"", "X", "C", "C0", "Cv", "S4h", "D3v", "Oh2", "C3x"}) {
    CHECK_FALSE(SchoenfliesLabel::parse(bad).has_value());
  }
  CHECK(SchoenfliesLabel::parse("S3")->expected_order() == 6);
  CHECK(SchoenfliesLabel::parse("S8")->expected_order() == 8);
  CHECK(SchoenfliesLabel::parse("D4d")->expected_order() == 16);
  CHECK(SchoenfliesLabel::parse("Th")->expected_order() == 24);
}

TEST_CASE("every family is recognized from generators") {
  for (const auto& fx : fixtures::all_groups(6)) {
    CAPTURE(fx.name);
    const PointGroup g = group_from_generators(fx.generators);
    CHECK(g.label.str() == fx.expected_label);
    CHECK(static_cast<int>(g.order()) == fx.order);
  }
}

TEST_CASE("labels survive conjugation") {
  std::mt19937_64 rng(3);
  for (const auto& fx : fixtures::all_groups(6)) {
    CAPTURE(fx.name);
    const auto q = OrthogonalMap::from_matrix(oracle::random_rotation(rng));
    std::vector<OrthogonalMap> gens;
    for (const auto& s : fx.generators) gens.push_back(q * s * q.inverse());
    CHECK(group_from_generators(gens).label.str() == fx.expected_label);
  }
}

TEST_CASE("the two antiprism groups") {
  const auto s8 = group_from_generators({fixtures::rotoreflection(8)});
  CHECK(s8.order() == 8);
  CHECK(s8.label.str() == "S8");
  CHECK(tower_height(s8) == 4);
  const auto d4d = group_from_generators({fixtures::rotoreflection(8), fixtures::c2x()});
  CHECK(d4d.order() == 16);
  CHECK(d4d.label.str() == "D4d");
  CHECK(tower_height(d4d) == 5);
}

TEST_CASE("tower heights of known groups") {
  CHECK(tower_height(group_from_generators({})) == 1);
  CHECK(tower_height(group_from_generators({fixtures::rot(5)})) == 2);
  CHECK(tower_height(group_from_generators({fixtures::rot(4)})) == 3);
  CHECK(tower_height(group_from_generators({fixtures::rot(6)})) == 3);
  const auto oh = fixtures::by_name("Oh");
  CHECK(tower_height(group_from_generators(oh.generators)) == 6);
  const auto i = fixtures::by_name("I");
  CHECK(tower_height(group_from_generators(i.generators)) == 5);
  const auto ih = fixtures::by_name("Ih");
  CHECK(tower_height(group_from_generators(ih.generators)) == 6);
}

TEST_CASE("omega") {
  for (int n = 1; n <= 500; ++n) CHECK(omega(static_cast<std::uint64_t>(n)) == oracle::big_omega(n));
  CHECK(omega(48) == 5);
  CHECK(omega(1) == 0);
}

TEST_CASE("closure failures") {
  const std::vector<OrthogonalMap> partial{OrthogonalMap::identity(), fixtures::rot(3)};
  CHECK(code_of([&] { check_closure(partial); }) == ErrorCode::NotAGroup);
  CHECK(code_of([&] { schoenflies(partial); }) == ErrorCode::NotAGroup);
  CHECK(code_of([] { generate_group({fixtures::rot(121)}); }) == ErrorCode::GroupTooLarge);
}

TEST_CASE("unrecognized group") {
  ToleranceContext ctx;
  ctx.max_rotation_order = 6;
  const auto c7 = generate_group({fixtures::rot(7)});
  CHECK(code_of([&] { schoenflies(c7, ctx); }) == ErrorCode::UnrecognizedGroup);
  CHECK(schoenflies(c7).str() == "C7");
}

TEST_CASE("cubic lattice stabilizer is the full cube group") {
  const PointPatch p = cubic_lattice(Box{Point3::Constant(-3), Point3::Constant(3)});
  const auto ref = oracle::signed_permutations();
  for (double rho : {1.0, std::sqrt(2.0), std::sqrt(3.0)}) {
    const auto g = stabilizer(cluster(p, Point3::Zero(), rho));
    CHECK(g.order() == 48);
    CHECK(g.label.str() == "Oh");
    for (const auto& m : ref) CHECK(index_of(g.elements, OrthogonalMap::from_matrix(m)).has_value());
  }
  CHECK(max_rotation_order(cluster(p, Point3::Zero(), 1.0)) == 4);
}

TEST_CASE("C4v example stabilizer") {
  const PointPatch p = c4v_example(Box{Point3::Constant(-5), Point3::Constant(5)});
  const auto g = stabilizer(cluster(p, Point3(0, 0, 1), 2 * std::sqrt(1.5)));
  CHECK(g.label.str() == "C4v");
  CHECK(g.order() == 8);
}

TEST_CASE("lower-dimensional clusters have no finite group") {
  const Cluster flat = make_cluster(Point3::Zero(), {Point3(1, 0, 0), Point3(0, 1, 0), Point3(-1, 0, 0)}, 1.0);
  CHECK(code_of([&] { stabilizer(flat); }) == ErrorCode::LowerDimensionalCluster);
}

TEST_CASE("subset helpers") {
  const auto c4 = generate_group({fixtures::rot(4)});
  const auto c2 = generate_group({fixtures::rot(2)});
  CHECK(is_subset(c2, c4));
  CHECK_FALSE(is_subset(c4, c2));
  CHECK(same_elements(c4, generate_group({fixtures::rot(4).inverse()})));
}

}  // TEST_SUITE
