#include "delone/regularity.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "delone/errors.hpp"

namespace delone {

namespace {

const std::string kTower = "Tower bound";
const std::string kRotation = "Rotation bound";
const std::string kAntipodal = "Antipodal";
const std::string kAntiprism = "Antiprism exclusion";

std::vector<BoundTableRow> make_table() {
  auto r = [](const char* label, int order, std::optional<int> bound, std::string ref) {
    return BoundTableRow{label, order, bound, std::move(ref)};
  };
  const std::optional<int> no;
  return {
      r("C1", 1, 4, kTower),
      r("C2", 2, 6, kTower),
      r("C3", 3, 6, kTower),
      r("C4", 4, 8, kTower),
      r("C5", 5, 6, kTower),
      r("C6", 6, 2, kRotation),

      r("S1", 2, 6, kTower),
      r("S2", 2, 2, kAntipodal),
      r("S3", 6, 8, kTower),
      r("S4", 4, 8, kTower),
      r("S5", 10, 8, kTower),
      r("S6", 6, 2, kAntipodal),
      r("S8", 8, no, kAntiprism),
      r("S10", 10, 2, kTower),
      r("S12", 12, 2, kRotation),

      r("C1h", 2, 6, "This is the group S1."),
      r("C2h", 4, 2, kAntipodal),
      r("C3h", 6, 8, "This is the group S3."),
      r("C4h", 8, 2, kAntipodal),
      r("C5h", 10, 8, "This is the group S5."),
      r("C6h", 12, 2, kAntipodal),

      r("C1v", 2, 6, kTower),
      r("C2v", 4, 8, kTower),
      r("C3v", 6, 8, kTower),
      r("C4v", 8, 10, kTower),
      r("C5v", 10, 8, kTower),
      r("C6v", 12, 2, kRotation),

      r("D1", 2, 6, kTower),
      r("D2", 4, 8, kTower),
      r("D3", 6, 8, kTower),
      r("D4", 8, 10, kTower),
      r("D5", 10, 8, kTower),
      r("D6", 12, 2, kRotation),

      r("D1h", 4, 8, kTower),
      r("D2h", 8, 2, kAntipodal),
      r("D3h", 12, 10, kTower),
      r("D4h", 16, 2, kAntipodal),
      r("D5h", 20, 10, kTower),
      r("D6h", 24, 2, kAntipodal),

      r("D1d", 4, 2, kAntipodal),
      r("D2d", 8, 10, kTower),
      r("D3d", 12, 2, kAntipodal),
      r("D4d", 16, no, kAntiprism),
      r("D5d", 20, 2, kAntipodal),
      r("D6d", 24, 2, kRotation),

      r("T", 12, no, "Tetrahedral"),
      r("Td", 24, 2, "Tetrahedral"),
      r("Th", 48, 2, kAntipodal),
      r("O", 24, no, "Cubic"),
      r("Oh", 48, 2, kAntipodal),
      r("I", 60, no, "Icosahedral"),
      r("Ih", 120, no, "Icosahedral"),
  };
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv(const std::string& line, std::size_t lineno) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": unterminated quote");
  return fields;
}

}  // namespace

std::string BoundTableRow::bound_str() const {
  return bound ? std::to_string(*bound) + "R" : std::string("Impossible");
}

const std::vector<BoundTableRow>& bound_table() {
  static const std::vector<BoundTableRow> table = make_table();
  return table;
}

const BoundTableRow& bound_lookup(const std::string& label) {
  for (const auto& row : bound_table()) {
    if (row.label == label) return row;
  }
  throw Error(ErrorCode::UnknownLabel, "no table row for group '" + label + "'");
}

int tower_bound_radius(int group_order) {
  if (group_order < 1) throw Error(ErrorCode::InvalidArgument, "group order must be >= 1");
  return 2 * (omega(static_cast<std::uint64_t>(group_order)) + 2);
}

std::vector<BoundTableRow> tower_formula_mismatches() {
  std::vector<BoundTableRow> out;
  for (const auto& row : bound_table()) {
    if (row.reference == kTower && row.bound != tower_bound_radius(row.order)) out.push_back(row);
  }
  return out;
}

void write_bound_table_csv(std::ostream& out, const std::vector<BoundTableRow>& rows) {
  out << "group,order,bound,reference\n";
  for (const auto& row : rows) {
    out << csv_field(row.label) << ',' << row.order << ',' << row.bound_str() << ','
        << csv_field(row.reference) << '\n';
  }
}

std::vector<BoundTableRow> parse_bound_table_csv(std::istream& in) {
  std::vector<BoundTableRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1) {
      if (line != "group,order,bound,reference") {
        throw Error(ErrorCode::ParseError, "line 1: unexpected header '" + line + "'");
      }
      continue;
    }
    if (line.empty()) continue;
    const auto f = split_csv(line, lineno);
    auto fail = [&](const std::string& what) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + what);
    };
    if (f.size() != 4) fail("expected 4 fields");
    BoundTableRow row;
    row.label = f[0];
    try {
      std::size_t used = 0;
      row.order = std::stoi(f[1], &used);
      if (used != f[1].size()) fail("bad order '" + f[1] + "'");
      if (f[2] != "Impossible") {
        if (f[2].size() < 2 || f[2].back() != 'R') fail("bad bound '" + f[2] + "'");
        const std::string k = f[2].substr(0, f[2].size() - 1);
        row.bound = std::stoi(k, &used);
        if (used != k.size()) fail("bad bound '" + f[2] + "'");
      }
    } catch (const std::logic_error&) {
      fail("bad number");
    }
    row.reference = f[3];
    rows.push_back(std::move(row));
  }
  if (lineno == 0) throw Error(ErrorCode::ParseError, "empty table");
  return rows;
}

double shtogrin_step_bound(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be >= 2");
  return 2.0 * std::sin(std::numbers::pi / n);
}

CriterionVerdict local_criterion(const PointPatch& patch, double rho0, double R,
                                 const ToleranceContext& ctx) {
  const double rho = rho0 + 2.0 * R;
  const auto centers = patch.usable_centers(rho, ctx.geom_tol);
  if (centers.empty()) {
    std::ostringstream msg;
    msg.precision(10);
    msg << "no center supports radius " << rho << " (rho0 + 2R) inside the trusted box";
    throw Error(ErrorCode::MarginViolation, msg.str());
  }
  CriterionVerdict v;
  v.rho0 = rho0;
  const auto classes = cluster_classes(patch, rho, ctx);
  v.N_at_rho0_plus_2R = classes.N();

  const Point3& x0 = centers.front();
  const PointGroup small = stabilizer(cluster(patch, x0, rho0, ctx), ctx);
  const PointGroup large = stabilizer(cluster(patch, x0, rho, ctx), ctx);
  v.groups_equal = same_elements(small.elements, large.elements);
  v.regular = v.N_at_rho0_plus_2R == 1 && v.groups_equal;

  std::ostringstream w;
  w.precision(10);
  if (v.N_at_rho0_plus_2R != 1) {
    // First center not in the class of the first representative.
    for (const auto& [c, cls] : classes.assignment) {
      if (cls != 0) {
        w << "N(rho0+2R)=" << v.N_at_rho0_plus_2R << "; cluster at (" << c.x() << ", " << c.y()
          << ", " << c.z() << ") is not equivalent to the one at (" << x0.x() << ", " << x0.y()
          << ", " << x0.z() << ")";
        break;
      }
    }
  } else if (!v.groups_equal) {
    w << "cluster group at (" << x0.x() << ", " << x0.y() << ", " << x0.z() << ") shrinks from "
      << small.label.str() << " (order " << small.order() << ") at rho0 to " << large.label.str()
      << " (order " << large.order() << ") at rho0+2R";
  }
  v.witness = w.str();
  return v;
}

ScenarioReport analyze_radius(const PointPatch& patch, double rho, double R,
                              const ToleranceContext& ctx) {
  ScenarioReport rep;
  rep.rho = rho;
  rep.R = R;
  const auto classes = cluster_classes(patch, rho, ctx);
  rep.N = classes.N();
  if (rep.N != 1) {
    rep.note = "clusters are not mutually equivalent";
  } else {
    const PointGroup g = stabilizer(classes.representatives.front(), ctx);
    rep.label = g.label;
    rep.group_order = g.order();
    try {
      rep.bound = bound_lookup(g.label.str());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnknownLabel) throw;
      rep.note = "group " + g.label.str() + " is not in the table";
    }
  }
  if (patch.usable_centers(rho + 2.0 * R, ctx.geom_tol).empty()) {
    if (rep.note.empty()) rep.note = "patch too small for rho + 2R clusters; local criterion undetermined";
  } else {
    rep.verdict = local_criterion(patch, rho, R, ctx);
  }
  return rep;
}

ScenarioReport classify_scenario(const PointPatch& patch, double R, const ToleranceContext& ctx) {
  return analyze_radius(patch, 2.0 * R, R, ctx);
}

}  // namespace delone
