#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "delone/antiprism_opt.hpp"
#include "delone/equivalence.hpp"
#include "delone/generators.hpp"
#include "delone/point_group.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace delone;

namespace {
const double kLo = std::atan(std::sqrt((std::sqrt(2.0) - 1.0) / 3.0));

// Feasible parameters from the admissible arc (kLo, pi/4).
Lemma1Params sample(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phi(kLo, M_PI / 4), psi(0.0, 2 * M_PI);
  return Lemma1Params::from_angles(phi(rng), psi(rng));
}

double lemma2_direct(double a, double b, double x, double y) {
  const double h = 1.0 - 2.0 * b;
  const double d1 = std::sqrt((a - x) * (a - x) + y * y + h * h);
  const double d2 = std::sqrt((a - y) * (a - y) + x * x + h * h);
  return d1 + d2 - 1.0 - std::sqrt(a * a + b * b);
}
}  // namespace

TEST_SUITE("antiprism") {

TEST_CASE("sampled parameters satisfy the constraints") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto p = sample(rng);
    CHECK(p.feasible());
    CHECK(p.residual() < 1e-12);
    CHECK(p.a * p.x + p.b * p.z == doctest::Approx(p.a * p.a - p.b * p.b));
  }
  CHECK_FALSE(Lemma1Params::from_angles(0.1, 0.0).feasible());
  CHECK_FALSE(Lemma1Params::from_angles(0.0, 0.0).feasible());
}

TEST_CASE("second antiprism is a congruent copy around y") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto p = sample(rng);
    const Point3 y(p.a, 0, p.b);
    const auto q = p_y_vertices(p);
    CHECK(q[0].norm() < 1e-15);
    CHECK((q[1] - y - Vec3(p.x, p.y, p.z)).norm() < 1e-12);
    for (const auto& v : q) CHECK((v - y).norm() == doctest::Approx(1.0).epsilon(1e-12));
    // Same shape as the antiprism with those (a, b), up to isometry.
    const auto mine = antiprism_points(std::abs(p.a), p.b);
    const auto d1 = oracle::sorted_pair_distances(std::vector<Point3>(mine.begin(), mine.end()));
    std::vector<Point3> shifted;
    for (const auto& v : q) shifted.push_back(v - y);
    const auto d2 = oracle::sorted_pair_distances(shifted);
    REQUIRE(d1.size() == d2.size());
    for (std::size_t k = 0; k < d1.size(); ++k) CHECK(d1[k] == doctest::Approx(d2[k]).epsilon(1e-10));
  }
}

TEST_CASE("the nine point antiprism cluster has group D4d") {
  const auto v = antiprism_points(0.9, std::sqrt(1 - 0.81));
  std::vector<Point3> pts(v.begin(), v.end());
  const auto g = stabilizer(make_cluster(Point3::Zero(), pts, 1.0 + 1e-9));
  CHECK(g.label.str() == "D4d");
}

TEST_CASE("objective agrees with the pair scan") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const auto p = sample(rng);
    const double ref = oracle::antiprism_min_distance(p.a, p.b, p.x, p.y, p.z, 0.01);
    CHECK(std::abs(lemma1_objective(p) - ref) < 1e-12);
  }
  CHECK(code_of([] { lemma1_objective(Lemma1Params{1, 0, 1, 0, 0}); }) == ErrorCode::InfeasibleParams);
  CHECK(code_of([] { p_y_vertices(Lemma1Params::from_angles(0.1, 0.3)); }) == ErrorCode::InfeasibleParams);
}

TEST_CASE("second objective") {
  const double a = 0.95, b = 0.4;
  for (double t : {0.0, 0.3, 0.7, M_PI / 4, 1.2, M_PI / 2}) {
    const Lemma2Params p{a, b, a * std::cos(t), a * std::sin(t)};
    REQUIRE(p.feasible());
    CHECK(lemma2_objective(p) == doctest::Approx(lemma2_direct(a, b, p.x, p.y)).epsilon(1e-14));
    // u1 and u2 trade places when x and y do.
    CHECK(lemma2_objective(p) == doctest::Approx(lemma2_objective({a, b, p.y, p.x})).epsilon(1e-14));
  }
  CHECK(code_of([] { lemma2_objective({0.9, 0.3, 0.9, 0.0}); }) == ErrorCode::InfeasibleParams);
  CHECK(code_of([] { lemma2_objective({0.95, 0.5, 0.95, 0.0}); }) == ErrorCode::InfeasibleParams);
  CHECK(code_of([] { lemma2_objective({0.95, 0.4, 0.5, 0.5}); }) == ErrorCode::InfeasibleParams);
}

TEST_CASE("second problem maximum is negative") {
  const auto rep = optimize_lemma2();
  CHECK(rep.best_value > -0.3417);
  CHECK(rep.best_value < -0.3317);
  CHECK(rep.constraint_residual < 1e-9);
  REQUIRE(rep.lemma2.has_value());
  CHECK(rep.lemma2->feasible());
  CHECK(lemma2_objective(*rep.lemma2) == doctest::Approx(rep.best_value));
  for (const auto& s : rep.table) {
    if (s.converged) CHECK(s.value < 0.0);
  }
  CHECK(rep.names == std::vector<std::string>{"a", "b", "x", "y", "theta"});
}

TEST_CASE("second problem is stable when the margin halves") {
  OptBudget half;
  half.epsilon = 5e-7;
  const double v1 = optimize_lemma2().best_value;
  const double v2 = optimize_lemma2(half).best_value;
  CHECK(std::abs(v1 - v2) < 1e-5);
}

TEST_CASE("results do not depend on the thread count") {
  OptBudget b;
  b.grid = 12;
  const auto one = optimize_lemma1(b);
  b.threads = 4;
  const auto four = optimize_lemma1(b);
  CHECK(one.best_value == four.best_value);
  CHECK(one.argmax == four.argmax);
  REQUIRE(one.table.size() == four.table.size());
  for (std::size_t i = 0; i < one.table.size(); ++i) {
    CHECK(one.table[i].params == four.table[i].params);
    CHECK(one.table[i].value == four.table[i].value);
  }
  std::ostringstream x, y;
  write_start_table_csv(x, one);
  write_start_table_csv(y, four);
  CHECK(x.str() == y.str());
}

TEST_CASE("first problem report is consistent") {
  OptBudget b;
  b.grid = 16;
  const auto rep = optimize_lemma1(b);
  REQUIRE(rep.lemma1.has_value());
  CHECK(rep.constraint_residual < 1e-9);
  CHECK(rep.starts == 16 * 16);
  CHECK(rep.converged_starts > 0);
  CHECK(lemma1_objective(*rep.lemma1) == doctest::Approx(rep.best_value).epsilon(1e-12));
  const auto& p = *rep.lemma1;
  CHECK(rep.best_value == doctest::Approx(oracle::antiprism_min_distance(p.a, p.b, p.x, p.y, p.z, 0.01)));
}

TEST_CASE("budget errors") {
  OptBudget b;
  b.range = std::pair{0.1, 0.1};
  CHECK(code_of([&] { optimize_lemma1(b); }) == ErrorCode::InfeasibleParams);
  b.range = std::pair{0.6, 0.7};
  CHECK(code_of([&] { optimize_lemma2(b); }) == ErrorCode::InfeasibleParams);
  OptBudget bad;
  bad.grid = 0;
  CHECK(code_of([&] { optimize_lemma1(bad); }) == ErrorCode::InvalidArgument);
  OptBudget tiny;
  tiny.grid = 3;
  tiny.max_iterations = 1;
  CHECK(code_of([&] { optimize_lemma2(tiny); }) == ErrorCode::BudgetExhausted);
}

}  // TEST_SUITE
