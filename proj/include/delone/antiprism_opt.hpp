#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "delone/geometry.hpp"

namespace delone {

constexpr double kFeasTol = 1e-9;

/// Two unit antiprisms sharing the vertex x = 0.  The first is centered at
/// y = (a, 0, b); (x, y, z) is the vector from y to the vertex z of the
/// second antiprism that lies opposite x.
struct Lemma1Params {
  double a = 0.0;
  double b = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  /// Largest violation over: a^2 + b^2 = 1, a^2 >= b^2,
  /// a^2 (1 - sqrt2) + 3 b^2 >= 0, x^2 + y^2 + z^2 = 1, a x + b z = a^2 - b^2.
  double residual() const;
  bool feasible(double tol = kFeasTol) const { return b != 0.0 && residual() <= tol; }

  /// a = cos phi, b = sin phi and the circle of admissible (x, y, z)
  /// parameterized by psi.  Feasible whenever phi satisfies the (a, b)
  /// inequalities.
  static Lemma1Params from_angles(double phi, double psi);
};

/// z = (a, 0, b) and the base vertex u1 = (x, y, 1 - b); u2 = (y, -x, 1 - b).
struct Lemma2Params {
  double a = 0.0;
  double b = 0.0;
  double x = 0.0;
  double y = 0.0;

  /// Violation of a^2 >= b^2, a^2 (1 - sqrt2) + 3 b^2 >= 0, x^2 + y^2 = a^2,
  /// a, x, y >= 0.  The open constraints are checked separately.
  double residual() const;
  /// residual() <= tol and, strictly, a^2 + b^2 > 1 and 0 < b < 1/2.
  bool feasible(double tol = kFeasTol) const;
};

/// Vertices of the second antiprism: x = 0, z, the two remaining vertices of
/// the base through x and z, then the four of the opposite base.  Throws
/// InfeasibleParams.
std::array<Point3, 8> p_y_vertices(const Lemma1Params& p);

/// Smallest distance between a vertex of antiprism_points(a, b) and a vertex
/// of p_y_vertices(p) among the pairs at least `filter` apart.  Throws
/// InfeasibleParams.
double lemma1_objective(const Lemma1Params& p, double filter = 0.01);

/// |z u1| + |z u2| - 1 - sqrt(a^2 + b^2).  Throws InfeasibleParams.
double lemma2_objective(const Lemma2Params& p);

struct OptBudget {
  int grid = 200;           // seeds per parameter axis
  int max_iterations = 600; // per local search
  int threads = 1;
  double epsilon = 1e-6;    // shrinkage of the open constraints
  double filter = 0.01;     // pair filter of the first objective
  /// Restricts phi (first problem) or b (second problem) to [lo, hi].
  std::optional<std::pair<double, double>> range;
};

struct StartRecord {
  std::vector<double> seed;   // unit-cube coordinates
  std::vector<double> params; // natural parameters at the end of the search
  double value = 0.0;
  bool converged = false;
  int evaluations = 0;
};

struct OptimizationReport {
  double best_value = 0.0;
  std::vector<std::string> names;
  std::vector<double> argmax;
  int starts = 0;
  int converged_starts = 0;
  double constraint_residual = 0.0;
  std::optional<Lemma1Params> lemma1;
  std::optional<Lemma2Params> lemma2;
  std::vector<StartRecord> table;
};

/// Deterministic multistart maximization: a grid of seeds over the feasible
/// set, each refined by a Nelder-Mead search in unit-cube coordinates.
/// Identical for every thread count.  Throws InfeasibleParams when no seed
/// is feasible and BudgetExhausted when no search converges.
OptimizationReport optimize_lemma1(const OptBudget& budget = {});
OptimizationReport optimize_lemma2(const OptBudget& budget = {});

/// One row per start: index, natural parameters, value, converged,
/// evaluations.
void write_start_table_csv(std::ostream& out, const OptimizationReport& report);

}  // namespace delone
