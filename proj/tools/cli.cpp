#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <regex>
#include <sstream>

#include "delone/antiprism_opt.hpp"
#include "delone/equivalence.hpp"
#include "delone/errors.hpp"
#include "delone/generators.hpp"
#include "delone/io.hpp"
#include "delone/point_group.hpp"
#include "delone/regularity.hpp"

namespace delone {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string point_str(const Point3& p) {
  return "(" + num(p.x()) + ", " + num(p.y()) + ", " + num(p.z()) + ")";
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A radius flag: a number, or a multiple of R such as "2R" or "R".
struct RadiusArg {
  std::string text;
  std::optional<double> multiple;
  double value = 0.0;

  static RadiusArg parse(const std::string& s) {
    static const std::regex symbolic(R"(^([0-9]*\.?[0-9]*)R$)");
    RadiusArg r;
    r.text = s;
    std::smatch m;
    if (std::regex_match(s, m, symbolic)) {
      const std::string k = m[1].str();
      if (k.empty()) {
        r.multiple = 1.0;
      } else {
        try {
          r.multiple = std::stod(k);
        } catch (const std::logic_error&) {
          throw UsageError("bad radius '" + s + "'");
        }
      }
      return r;
    }
    std::size_t used = 0;
    try {
      r.value = std::stod(s, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || !(r.value > 0.0)) throw UsageError("bad radius '" + s + "'");
    return r;
  }

  double resolve(double R) const { return multiple ? *multiple * R : value; }
};

struct LoadedPatch {
  PointPatch patch;
  std::optional<double> min_distance;
  double R;
  bool R_declared;
};

// Reads a point file, rejects packing violations, and fixes R (declared in
// the header, otherwise computed).
LoadedPatch load(const std::string& path, const ToleranceContext& ctx) {
  const PointFile file = read_point_file(path);
  if (file.points.empty()) throw Error(ErrorCode::TooFewPoints, "no points");
  if (file.points.size() >= 2) {
    Box pad{file.points.front(), file.points.front()};
    for (const auto& p : file.points) {
      pad.lo = pad.lo.cwiseMin(p);
      pad.hi = pad.hi.cwiseMax(p);
    }
    pad.lo.array() -= 1.0;
    pad.hi.array() += 1.0;
    const PackingReport rep = check_packing(PointPatch(file.points, pad), ctx.geom_tol);
    const double floor = file.min_distance.value_or(1.0);
    if (rep.min_distance < floor - ctx.geom_tol * std::max(1.0, floor)) {
      throw Error(ErrorCode::PackingViolation,
                  "packing violation: points " + std::to_string(rep.first + 1) + " and " +
                      std::to_string(rep.second + 1) + " are " + num(rep.min_distance) +
                      " apart (minimum " + num(floor) + ")");
    }
  }
  PointPatch patch = to_patch(file);
  if (patch.declared_R()) return {patch, file.min_distance, *patch.declared_R(), true};
  const double R = covering_radius(patch);
  return {patch, file.min_distance, R, false};
}

void print_verdict(std::ostream& out, const CriterionVerdict& v) {
  out << "N(rho0+2R): " << v.N_at_rho0_plus_2R << '\n';
  out << "groups_equal: " << (v.groups_equal ? "true" : "false") << '\n';
  out << "local_criterion: " << (v.regular ? "regular" : "not regular") << '\n';
  if (!v.witness.empty()) out << "witness: " << v.witness << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Delone set cluster analysis and regularity bounds", "delone"};
  app.require_subcommand(1);
  app.fallthrough();

  ToleranceContext ctx;
  app.add_option("--tol", ctx.geom_tol, "geometric tolerance");
  app.add_option("--angle-tol", ctx.angle_tol, "angular tolerance");
  app.add_option("--max-order", ctx.max_rotation_order, "largest rotation order recognized");

  // generate
  auto* gen = app.add_subcommand("generate", "write a generated point set");
  std::string config_path, out_path;
  GeneratorConfig gcfg;
  std::vector<double> box;
  bool rescale = false;
  auto* kind_opt = gen->add_option("--kind", gcfg.kind)
                       ->check(CLI::IsMember({"cubic", "hex", "hex_bilattice", "c4v", "antiprism"}));
  auto* lambda_opt = gen->add_option("--lambda", gcfg.lambda);
  auto* mu_opt = gen->add_option("--mu", gcfg.mu);
  auto* tz_opt = gen->add_option("--t-z", gcfg.t_z);
  auto* a_opt = gen->add_option("--a", gcfg.a);
  auto* b_opt = gen->add_option("--b", gcfg.b);
  auto* box_opt = gen->add_option("--box", box, "lo_x lo_y lo_z hi_x hi_y hi_z")->expected(6);
  auto* rescale_opt = gen->add_flag("--rescale", rescale, "scale to minimal distance 1");
  gen->add_option("--config", config_path, "key = value generator config")->check(CLI::ExistingFile);
  gen->add_option("-o,--output", out_path);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "cluster counting, group, bound and criterion");
  std::string path;
  std::string rho_text = "2R";
  analyze->add_option("path", path)->required();
  analyze->add_option("--rho", rho_text, "radius, e.g. 1.5 or 2R");

  auto* classes = app.add_subcommand("classes", "equivalence classes of rho-clusters");
  classes->add_option("path", path)->required();
  classes->add_option("--rho", rho_text);

  auto* group = app.add_subcommand("group", "cluster group at a center");
  std::vector<double> center;
  group->add_option("path", path)->required();
  group->add_option("--rho", rho_text);
  group->add_option("--center", center, "x y z (default: first usable center)")->expected(3);

  auto* check = app.add_subcommand("check-local", "local regularity criterion");
  std::string rho0_text;
  std::optional<double> R_flag;
  check->add_option("path", path)->required();
  check->add_option("--rho0", rho0_text)->required();
  check->add_option("--R", R_flag, "covering radius (default: declared or computed)");

  auto* table = app.add_subcommand("bounds-table", "per-group regularity radius bounds");
  std::string format = "text";
  table->add_option("--format", format)->check(CLI::IsMember({"text", "csv"}));

  auto* opt = app.add_subcommand("optimize", "antiprism lemma optimizations");
  std::string problem;
  OptBudget budget;
  std::vector<double> range;
  std::string starts_csv;
  opt->add_option("problem", problem)->required()->check(CLI::IsMember({"lemma1", "lemma2"}));
  opt->add_option("--grid", budget.grid);
  opt->add_option("--threads", budget.threads);
  opt->add_option("--max-iterations", budget.max_iterations);
  opt->add_option("--epsilon", budget.epsilon);
  opt->add_option("--filter", budget.filter);
  opt->add_option("--range", range, "lo hi (phi for lemma1, b for lemma2)")->expected(2);
  opt->add_option("--starts-csv", starts_csv, "write every start to this CSV file");

  auto* sht = app.add_subcommand("shtogrin-bound", "2 sin(pi/n)");
  int n = 0;
  sht->add_option("--n", n)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: usage: " << e.what() << '\n';
    return 2;
  }

  try {
    try {
      ctx.validate();
    } catch (const Error& e) {
      throw UsageError(e.what());
    }

    if (*gen) {
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        const GeneratorConfig file_cfg = parse_generator_config(in);
        const GeneratorConfig flags = gcfg;
        gcfg = file_cfg;
        if (kind_opt->count()) gcfg.kind = flags.kind;
        if (lambda_opt->count()) gcfg.lambda = flags.lambda;
        if (mu_opt->count()) gcfg.mu = flags.mu;
        if (tz_opt->count()) gcfg.t_z = flags.t_z;
        if (a_opt->count()) gcfg.a = flags.a;
        if (b_opt->count()) gcfg.b = flags.b;
      }
      if (box_opt->count()) {
        gcfg.box = Box{Point3(box[0], box[1], box[2]), Point3(box[3], box[4], box[5])};
      }
      if (rescale_opt->count()) gcfg.rescale = rescale;
      const GeneratedSet set = generate(gcfg);
      if (out_path.empty()) {
        write_patch(out, set.patch, set.min_distance);
      } else {
        write_patch(out_path, set.patch, set.min_distance);
      }
      return 0;
    }

    if (*analyze) {
      const RadiusArg rho_arg = RadiusArg::parse(rho_text);
      const LoadedPatch lp = load(path, ctx);
      const double rho = rho_arg.resolve(lp.R);
      const ScenarioReport rep = analyze_radius(lp.patch, rho, lp.R, ctx);
      out << "file: " << path << '\n';
      out << "points: " << lp.patch.size() << '\n';
      out << "R: " << num(lp.R) << '\n';
      out << "R_source: " << (lp.R_declared ? "declared" : "computed") << '\n';
      out << "rho: " << num(rho) << " (" << rho_arg.text << ")\n";
      out << "N(" << rho_arg.text << "): " << rep.N << '\n';
      std::string group_str = "none", bound_str = "none", crit = "undetermined";
      if (rep.label) {
        group_str = rep.label->str();
        out << "group: " << group_str << '\n';
        out << "group_order: " << *rep.group_order << '\n';
      }
      if (rep.bound) {
        bound_str = rep.bound->bound_str();
        out << "table_bound: " << bound_str << " (" << rep.bound->reference << ")\n";
      }
      if (rep.verdict) {
        print_verdict(out, *rep.verdict);
        crit = rep.verdict->regular ? "regular" : "not regular";
      } else {
        out << "local_criterion: undetermined\n";
      }
      if (!rep.note.empty()) out << "note: " << rep.note << '\n';
      out << "N(" << rho_arg.text << ")=" << rep.N << "; group=" << group_str
          << "; table_bound=" << bound_str << "; local_criterion=" << crit << '\n';
      return 0;
    }

    if (*classes) {
      const RadiusArg rho_arg = RadiusArg::parse(rho_text);
      const LoadedPatch lp = load(path, ctx);
      const double rho = rho_arg.resolve(lp.R);
      const auto dec = cluster_classes(lp.patch, rho, ctx);
      std::vector<std::size_t> counts(dec.N(), 0);
      for (const auto& [c, k] : dec.assignment) ++counts[k];
      out << "rho: " << num(rho) << " (" << rho_arg.text << ")\n";
      out << "centers: " << dec.assignment.size() << '\n';
      out << "N: " << dec.N() << '\n';
      for (std::size_t k = 0; k < dec.N(); ++k) {
        out << "class " << k << ": representative " << point_str(dec.representatives[k].center)
            << "; members " << dec.representatives[k].size() << "; centers " << counts[k] << '\n';
      }
      return 0;
    }

    if (*group) {
      const RadiusArg rho_arg = RadiusArg::parse(rho_text);
      const LoadedPatch lp = load(path, ctx);
      const double rho = rho_arg.resolve(lp.R);
      Point3 c;
      if (center.empty()) {
        const auto centers = lp.patch.usable_centers(rho, ctx.geom_tol);
        if (centers.empty()) {
          throw Error(ErrorCode::NoUsableCenters, "no center supports radius " + num(rho));
        }
        c = centers.front();
      } else {
        c = Point3(center[0], center[1], center[2]);
      }
      const PointGroup g = stabilizer(cluster(lp.patch, c, rho, ctx), ctx);
      out << "center: " << point_str(c) << '\n';
      out << "rho: " << num(rho) << " (" << rho_arg.text << ")\n";
      out << "group: " << g.label.str() << '\n';
      out << "order: " << g.order() << '\n';
      out << "tower_height: " << tower_height(g) << '\n';
      std::map<std::string, int> census;
      for (const auto& e : g.elements) {
        const ElementKind k = classify_element(e, ctx);
        std::string name = to_string(k.type);
        if (k.type == ElementType::Rotation || k.type == ElementType::Rotoreflection) {
          name += " " + std::to_string(k.n);
        }
        ++census[name];
      }
      for (const auto& [name, count] : census) out << "elements " << name << ": " << count << '\n';
      return 0;
    }

    if (*check) {
      const RadiusArg rho0_arg = RadiusArg::parse(rho0_text);
      const LoadedPatch lp = load(path, ctx);
      const double R = R_flag.value_or(lp.R);
      if (!(R > 0.0)) throw UsageError("--R must be positive");
      const double rho0 = rho0_arg.resolve(R);
      const CriterionVerdict v = local_criterion(lp.patch, rho0, R, ctx);
      out << "rho0: " << num(rho0) << " (" << rho0_arg.text << ")\n";
      out << "R: " << num(R) << '\n';
      print_verdict(out, v);
      return 0;
    }

    if (*table) {
      if (format == "csv") {
        write_bound_table_csv(out, bound_table());
      } else {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-6s %6s %-11s %s\n", "group", "order", "bound", "reference");
        out << buf;
        for (const auto& row : bound_table()) {
          std::snprintf(buf, sizeof buf, "%-6s %6d %-11s %s\n", row.label.c_str(), row.order,
                        row.bound_str().c_str(), row.reference.c_str());
          out << buf;
        }
      }
      return 0;
    }

    if (*opt) {
      if (!range.empty()) budget.range = std::pair{range[0], range[1]};
      const OptimizationReport rep =
          problem == "lemma1" ? optimize_lemma1(budget) : optimize_lemma2(budget);
      out << "problem = " << problem << '\n';
      out << "best_value = " << num(rep.best_value) << '\n';
      for (std::size_t i = 0; i < rep.names.size(); ++i) {
        out << "argmax." << rep.names[i] << " = " << num(rep.argmax[i]) << '\n';
      }
      out << "starts = " << rep.starts << '\n';
      out << "converged_starts = " << rep.converged_starts << '\n';
      out << "constraint_residual = " << num(rep.constraint_residual) << '\n';
      if (!starts_csv.empty()) {
        std::ofstream csv(starts_csv);
        if (!csv) throw Error(ErrorCode::InvalidArgument, "cannot write '" + starts_csv + "'");
        write_start_table_csv(csv, rep);
      }
      return 0;
    }

    if (*sht) {
      const double v = shtogrin_step_bound(n);
      out << "n = " << n << '\n';
      out << "bound = " << num(v) << '\n';
      out << "below_0.87 = " << (v < 0.87 ? "true" : "false") << '\n';
      return 0;
    }
  } catch (const UsageError& e) {
    err << "error: usage: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace delone
