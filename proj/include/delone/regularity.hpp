#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "delone/equivalence.hpp"
#include "delone/patch.hpp"
#include "delone/point_group.hpp"

namespace delone {

struct CriterionVerdict {
  bool regular = false;
  double rho0 = 0.0;
  std::size_t N_at_rho0_plus_2R = 0;
  bool groups_equal = false;
  /// Which condition failed and where; empty when regular.
  std::string witness;
};

/// Local criterion on a patch: N(rho0 + 2R) == 1 and
/// S_x(rho0) == S_x(rho0 + 2R) at the lexicographically smallest usable
/// center.  The verdict is about the patch; it says the set is regular only
/// to the extent the patch represents it.
///
/// Throws MarginViolation when no center supports rho0 + 2R, and lets
/// LowerDimensionalCluster through.
CriterionVerdict local_criterion(const PointPatch& patch, double rho0, double R,
                                 const ToleranceContext& ctx = {});

/// 2 * (omega(order) + 2), in units of R.
int tower_bound_radius(int group_order);

/// Table row bound: a multiple of R, or nothing for "Impossible".
struct BoundTableRow {
  std::string label;
  int order = 0;
  std::optional<int> bound;
  std::string reference;

  std::string bound_str() const;
  bool impossible() const { return !bound.has_value(); }
};

/// Candidate 2R-cluster groups with their regularity-radius bounds, as
/// published, aliases and quirks included.
const std::vector<BoundTableRow>& bound_table();

/// Throws UnknownLabel.
const BoundTableRow& bound_lookup(const std::string& label);

/// Rows whose reference is the tower bound but whose printed bound differs
/// from tower_bound_radius(order).
std::vector<BoundTableRow> tower_formula_mismatches();

/// CSV with header "group,order,bound,reference".
void write_bound_table_csv(std::ostream& out, const std::vector<BoundTableRow>& rows);
/// Throws ParseError.
std::vector<BoundTableRow> parse_bound_table_csv(std::istream& in);

/// 2 sin(pi / n): side of the regular n-gon over its circumradius.
double shtogrin_step_bound(int n);

struct ScenarioReport {
  double rho = 0.0;
  double R = 0.0;
  std::size_t N = 0;  // N(rho)
  std::optional<SchoenfliesLabel> label;
  std::optional<std::size_t> group_order;
  std::optional<BoundTableRow> bound;
  /// Empty when the patch has no margin for rho + 2R clusters.
  std::optional<CriterionVerdict> verdict;
  std::string note;
};

/// N(rho), the rho-cluster group and its table bound when N(rho) == 1, and
/// the local criterion at rho0 = rho when the patch holds rho + 2R
/// clusters.
ScenarioReport analyze_radius(const PointPatch& patch, double rho, double R,
                              const ToleranceContext& ctx = {});

/// analyze_radius at rho = 2R.
ScenarioReport classify_scenario(const PointPatch& patch, double R,
                                 const ToleranceContext& ctx = {});

}  // namespace delone
