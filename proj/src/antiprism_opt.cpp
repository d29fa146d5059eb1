#include "delone/antiprism_opt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <thread>

#include "delone/errors.hpp"
#include "delone/generators.hpp"

namespace delone {

namespace {

const double kSqrt2 = std::numbers::sqrt2;
constexpr double kPi = std::numbers::pi;

using Coords = std::vector<double>;

struct LocalResult {
  Coords x;
  double f = 0.0;
  bool converged = false;
  int evaluations = 0;
};

// Nelder-Mead maximization in unit-cube coordinates; `project` keeps every
// vertex inside the domain (clamping or wrapping).
LocalResult nelder_mead(const std::function<double(const Coords&)>& f, const Coords& x0,
                        double step, int max_iterations,
                        const std::function<void(Coords&)>& project) {
  const std::size_t n = x0.size();
  std::vector<Coords> simplex(n + 1, x0);
  std::vector<double> val(n + 1);
  int evals = 0;
  auto eval = [&](Coords& x) {
    project(x);
    ++evals;
    return f(x);
  };
  for (std::size_t i = 0; i < n; ++i) {
    simplex[i + 1][i] += (x0[i] + step <= 1.0) ? step : -step;
  }
  for (std::size_t i = 0; i <= n; ++i) val[i] = eval(simplex[i]);

  std::vector<std::size_t> idx(n + 1);
  bool converged = false;
  for (int it = 0; it < max_iterations; ++it) {
    for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t p, std::size_t q) {
      if (val[p] != val[q]) return val[p] > val[q];
      return p < q;
    });
    const std::size_t best = idx[0];
    const std::size_t worst = idx[n];
    const std::size_t second = idx[n - 1];

    double size = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k) size = std::max(size, std::abs(simplex[i][k] - simplex[best][k]));
    if (size < 1e-10 && val[best] - val[worst] <= 1e-13 * (1.0 + std::abs(val[best]))) {
      converged = true;
      break;
    }

    Coords centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / static_cast<double>(n);
    }
    auto along = [&](double t) {
      Coords x(n);
      for (std::size_t k = 0; k < n; ++k) x[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
      return x;
    };

    Coords xr = along(-1.0);
    const double fr = eval(xr);
    if (fr > val[best]) {
      Coords xe = along(-2.0);
      const double fe = eval(xe);
      if (fe > fr) {
        simplex[worst] = xe;
        val[worst] = fe;
      } else {
        simplex[worst] = xr;
        val[worst] = fr;
      }
      continue;
    }
    if (fr > val[second]) {
      simplex[worst] = xr;
      val[worst] = fr;
      continue;
    }
    Coords xc = fr > val[worst] ? along(-0.5) : along(0.5);
    const double fc = eval(xc);
    if (fc > std::max(fr, val[worst])) {
      simplex[worst] = xc;
      val[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k) simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
      val[i] = eval(simplex[i]);
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    if (val[i] > val[best]) best = i;
  }
  return {simplex[best], val[best], converged, evals};
}

// Runs `task(i)` for i in [0, count) on up to `threads` workers.  Results are
// written by index, so the outcome does not depend on scheduling.
void parallel_for(int count, int threads, const std::function<void(int)>& task) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) task(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += threads) task(i);
    });
  }
  for (auto& t : pool) t.join();
}

void clamp_unit(Coords& x) {
  for (double& v : x) v = std::clamp(v, 0.0, 1.0);
}

// Best start by value, ties broken by the lexicographically smaller params.
std::size_t pick_best(const std::vector<StartRecord>& table) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < table.size(); ++i) {
    const auto& a = table[i];
    const auto& b = table[best];
    if (a.value > b.value || (a.value == b.value && a.params < b.params)) best = i;
  }
  return best;
}

void check_budget(const OptBudget& b) {
  if (b.grid < 1 || b.max_iterations < 1 || b.threads < 1 || !(b.epsilon > 0.0) ||
      !(b.epsilon < 0.01) || !(b.filter >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "optimization budget must be positive");
  }
  if (b.range && !(b.range->first <= b.range->second)) {
    throw Error(ErrorCode::InvalidArgument, "range must satisfy lo <= hi");
  }
}

double lemma1_value(const Lemma1Params& p, double filter) {
  // (+-a, ...) is the same vertex set for either sign of a.
  const auto px = antiprism_points(std::abs(p.a), p.b);
  const auto py = p_y_vertices(p);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& u : px)
    for (const auto& v : py) {
      const double d = (u - v).norm();
      if (d >= filter) best = std::min(best, d);
    }
  return best;
}

// Feasible phi intervals of the first problem: |tan phi| in [t, 1].
std::vector<std::pair<double, double>> lemma1_arcs(const OptBudget& budget) {
  const double t = std::atan(std::sqrt((kSqrt2 - 1.0) / 3.0));
  std::vector<std::pair<double, double>> arcs = {
      {-kPi + t, -0.75 * kPi}, {-0.25 * kPi, -t}, {t, 0.25 * kPi}, {0.75 * kPi, kPi - t}};
  if (budget.range) {
    const auto [lo, hi] = *budget.range;
    std::vector<std::pair<double, double>> cut;
    for (const auto& [a0, a1] : arcs) {
      const double l = std::max(a0, lo);
      const double h = std::min(a1, hi);
      if (l <= h) cut.emplace_back(l, h);
    }
    arcs = cut;
  }
  return arcs;
}

double lemma2_b_min(double eps) {
  return std::sqrt((1.0 + eps) * (kSqrt2 - 1.0) / (2.0 + kSqrt2));
}

struct Lemma2Map {
  double b_lo;
  double b_hi;

  Lemma2Params operator()(const Coords& u, double eps) const {
    Lemma2Params p;
    p.b = b_lo + u[0] * (b_hi - b_lo);
    const double a_lo = std::sqrt(std::max(0.0, 1.0 + eps - p.b * p.b));
    const double a_hi = std::sqrt(3.0 * p.b * p.b / (kSqrt2 - 1.0));
    p.a = a_lo + u[1] * std::max(0.0, a_hi - a_lo);
    const double theta = u[2] * kPi / 2.0;
    p.x = p.a * std::cos(theta);
    p.y = p.a * std::sin(theta);
    return p;
  }
};

double lemma2_value(const Lemma2Params& p) {
  const Vec3 z(p.a, 0.0, p.b);
  const Vec3 u1(p.x, p.y, 1.0 - p.b);
  const Vec3 u2(p.y, -p.x, 1.0 - p.b);
  return (u1 - z).norm() + (u2 - z).norm() - 1.0 - std::sqrt(p.a * p.a + p.b * p.b);
}

void finish_report(OptimizationReport& rep) {
  rep.starts = static_cast<int>(rep.table.size());
  rep.converged_starts = static_cast<int>(
      std::count_if(rep.table.begin(), rep.table.end(), [](const StartRecord& s) { return s.converged; }));
  if (rep.converged_starts == 0) {
    throw Error(ErrorCode::BudgetExhausted, "no local search converged within the iteration budget");
  }
  const auto& best = rep.table[pick_best(rep.table)];
  rep.best_value = best.value;
  rep.argmax = best.params;
}

}  // namespace

double Lemma1Params::residual() const {
  const double a2 = a * a;
  const double b2 = b * b;
  return std::max({std::abs(a2 + b2 - 1.0), std::max(0.0, b2 - a2),
                   std::max(0.0, -(a2 * (1.0 - kSqrt2) + 3.0 * b2)),
                   std::abs(x * x + y * y + z * z - 1.0), std::abs(a * x + b * z - (a2 - b2))});
}

Lemma1Params Lemma1Params::from_angles(double phi, double psi) {
  Lemma1Params p;
  p.a = std::cos(phi);
  p.b = std::sin(phi);
  const double c = p.a * p.a - p.b * p.b;
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  p.x = c * p.a - s * std::cos(psi) * p.b;
  p.y = s * std::sin(psi);
  p.z = c * p.b + s * std::cos(psi) * p.a;
  return p;
}

double Lemma2Params::residual() const {
  const double a2 = a * a;
  const double b2 = b * b;
  return std::max({std::max(0.0, b2 - a2), std::max(0.0, -(a2 * (1.0 - kSqrt2) + 3.0 * b2)),
                   std::abs(x * x + y * y - a2), std::max(0.0, -a), std::max(0.0, -x),
                   std::max(0.0, -y)});
}

bool Lemma2Params::feasible(double tol) const {
  return residual() <= tol && a * a + b * b > 1.0 && b > 0.0 && b < 0.5;
}

std::array<Point3, 8> p_y_vertices(const Lemma1Params& p) {
  if (!p.feasible()) {
    throw Error(ErrorCode::InfeasibleParams, "parameters violate the antiprism constraints");
  }
  const double a = p.a, b = p.b, x = p.x, y = p.y, z = p.z;
  const Vec3 zz(a + x, y, b + z);
  const Vec3 t = zz / 2.0;
  const Vec3 w = Vec3(b * y, a * z - b * x, -a * y) / (2.0 * b);
  const Vec3 o((3.0 * a - x) / 2.0, -y / 2.0, (3.0 * b - z) / 2.0);
  const Vec3 q = zz / (2.0 * kSqrt2);
  const Vec3 r = w / kSqrt2;
  return {Point3::Zero(), zz, t + w, t - w, o + q + r, o + q - r, o - q + r, o - q - r};
}

double lemma1_objective(const Lemma1Params& p, double filter) {
  if (!p.feasible()) {
    throw Error(ErrorCode::InfeasibleParams, "parameters violate the antiprism constraints");
  }
  return lemma1_value(p, filter);
}

double lemma2_objective(const Lemma2Params& p) {
  if (!p.feasible()) {
    throw Error(ErrorCode::InfeasibleParams, "parameters violate the lemma constraints");
  }
  return lemma2_value(p);
}

OptimizationReport optimize_lemma1(const OptBudget& budget) {
  check_budget(budget);
  const auto arcs = lemma1_arcs(budget);
  if (arcs.empty()) throw Error(ErrorCode::InfeasibleParams, "no feasible seed in the phi range");
  double total = 0.0;
  for (const auto& [lo, hi] : arcs) total += hi - lo;

  struct Seed {
    std::size_t arc;
    Coords u;  // position inside the arc, psi / 2pi
  };
  std::vector<Seed> seeds;
  const int g = budget.grid;
  for (int i = 0; i < g; ++i) {
    // Uniform in total arc length.
    double s = (i + 0.5) / g * total;
    std::size_t k = 0;
    while (k + 1 < arcs.size() && s > arcs[k].second - arcs[k].first) {
      s -= arcs[k].second - arcs[k].first;
      ++k;
    }
    const double len = arcs[k].second - arcs[k].first;
    const double u = len > 0.0 ? std::clamp(s / len, 0.0, 1.0) : 0.0;
    for (int j = 0; j < g; ++j) seeds.push_back({k, {u, (j + 0.5) / g}});
  }

  auto angles = [&](std::size_t k, const Coords& u) {
    return std::pair<double, double>{arcs[k].first + u[0] * (arcs[k].second - arcs[k].first),
                                     2.0 * kPi * u[1]};
  };
  const double filter = budget.filter;
  const bool point_range = total == 0.0;

  OptimizationReport rep;
  rep.names = {"phi", "psi", "a", "b", "x", "y", "z"};
  rep.table.resize(seeds.size());
  parallel_for(static_cast<int>(seeds.size()), budget.threads, [&](int i) {
    const auto& seed = seeds[static_cast<std::size_t>(i)];
    auto f = [&](const Coords& u) {
      const auto [phi, psi] = angles(seed.arc, u);
      return lemma1_value(Lemma1Params::from_angles(phi, psi), filter);
    };
    auto project = [&](Coords& u) {
      u[0] = point_range ? 0.0 : std::clamp(u[0], 0.0, 1.0);
      u[1] -= std::floor(u[1]);
    };
    const LocalResult r = nelder_mead(f, seed.u, 0.5 / g, budget.max_iterations, project);
    const auto [phi, psi] = angles(seed.arc, r.x);
    const auto p = Lemma1Params::from_angles(phi, psi);
    rep.table[static_cast<std::size_t>(i)] = {seed.u, {phi, psi, p.a, p.b, p.x, p.y, p.z}, r.f, r.converged,
                                              r.evaluations};
  });
  finish_report(rep);
  const auto& v = rep.argmax;
  rep.lemma1 = Lemma1Params{v[2], v[3], v[4], v[5], v[6]};
  rep.constraint_residual = rep.lemma1->residual();
  return rep;
}

OptimizationReport optimize_lemma2(const OptBudget& budget) {
  check_budget(budget);
  const double eps = budget.epsilon;
  Lemma2Map map{lemma2_b_min(eps), 0.5 - eps};
  if (budget.range) {
    map.b_lo = std::max(map.b_lo, budget.range->first);
    map.b_hi = std::min(map.b_hi, budget.range->second);
  }
  if (!(map.b_lo <= map.b_hi)) throw Error(ErrorCode::InfeasibleParams, "no feasible seed in the b range");

  const int g = budget.grid;
  std::vector<Coords> seeds(static_cast<std::size_t>(g) * static_cast<std::size_t>(g));
  parallel_for(g * g, budget.threads, [&](int idx) {
    const int i = idx / g;
    const int j = idx % g;
    Coords u{(i + 0.5) / g, (j + 0.5) / g, 0.0};
    double best = -std::numeric_limits<double>::infinity();
    double best_theta = 0.0;
    for (int k = 0; k < 16; ++k) {
      u[2] = k / 15.0;
      const double v = lemma2_value(map(u, eps));
      if (v > best) {
        best = v;
        best_theta = u[2];
      }
    }
    u[2] = best_theta;
    seeds[static_cast<std::size_t>(idx)] = u;
  });

  OptimizationReport rep;
  rep.names = {"a", "b", "x", "y", "theta"};
  rep.table.resize(seeds.size());
  parallel_for(static_cast<int>(seeds.size()), budget.threads, [&](int i) {
    const Coords& seed = seeds[static_cast<std::size_t>(i)];
    auto f = [&](const Coords& u) { return lemma2_value(map(u, eps)); };
    const LocalResult r = nelder_mead(f, seed, 0.5 / g, budget.max_iterations, clamp_unit);
    const auto p = map(r.x, eps);
    rep.table[static_cast<std::size_t>(i)] = {seed, {p.a, p.b, p.x, p.y, r.x[2] * kPi / 2.0}, r.f,
                                              r.converged, r.evaluations};
  });
  finish_report(rep);
  const auto& v = rep.argmax;
  rep.lemma2 = Lemma2Params{v[0], v[1], v[2], v[3]};
  const double open = std::max({0.0, 1.0 - (v[0] * v[0] + v[1] * v[1]), -v[1], v[1] - 0.5});
  rep.constraint_residual = std::max(rep.lemma2->residual(), open);
  return rep;
}

void write_start_table_csv(std::ostream& out, const OptimizationReport& report) {
  out << "start";
  for (const auto& n : report.names) out << ',' << n;
  out << ",value,converged,evaluations\n";
  char buf[32];
  for (std::size_t i = 0; i < report.table.size(); ++i) {
    const auto& s = report.table[i];
    out << i;
    for (double v : s.params) {
      std::snprintf(buf, sizeof buf, "%.10g", v);
      out << ',' << buf;
    }
    std::snprintf(buf, sizeof buf, "%.10g", s.value);
    out << ',' << buf << ',' << (s.converged ? 1 : 0) << ',' << s.evaluations << '\n';
  }
}

}  // namespace delone
