#include "delone/generators.hpp"

#include <cmath>
#include <istream>
#include <sstream>

#include "delone/errors.hpp"

namespace delone {

namespace {

constexpr double kClipTol = 1e-12;

bool zyx_less(const Point3& p, const Point3& q) {
  if (p.z() != q.z()) return p.z() < q.z();
  if (p.y() != q.y()) return p.y() < q.y();
  return p.x() < q.x();
}

void require_box(const Box& box) {
  if (!box.valid()) throw Error(ErrorCode::BoxTooSmall, "box must satisfy lo < hi on every axis");
}

// All points sum_i n_i basis_i + offset (n integer) inside the closed box.
// Basis must be upper triangular (x from a1, y from a1/a2, z from a3 only).
std::vector<Point3> lattice_points(const Mat3& basis, const Vec3& offset, const Box& box) {
  std::vector<Point3> out;
  const double cz = basis(2, 2);
  const double cy = basis(1, 1);
  const double cx = basis(0, 0);
  const auto range = [](double lo, double hi, double step) {
    return std::pair<long, long>{static_cast<long>(std::floor(lo / step)) - 1,
                                 static_cast<long>(std::ceil(hi / step)) + 1};
  };
  const auto [k0, k1] = range(box.lo.z() - offset.z(), box.hi.z() - offset.z(), cz);
  const auto [j0, j1] = range(box.lo.y() - offset.y(), box.hi.y() - offset.y(), cy);
  for (long k = k0; k <= k1; ++k) {
    for (long j = j0; j <= j1; ++j) {
      const double shift = static_cast<double>(j) * basis(0, 1) + static_cast<double>(k) * basis(0, 2);
      const auto [i0, i1] = range(box.lo.x() - offset.x() - shift, box.hi.x() - offset.x() - shift, cx);
      for (long i = i0; i <= i1; ++i) {
        const Point3 p = basis.col(0) * static_cast<double>(i) +
                         basis.col(1) * static_cast<double>(j) +
                         basis.col(2) * static_cast<double>(k) + offset;
        if (box.contains(p, kClipTol)) out.push_back(p);
      }
    }
  }
  return out;
}

PointPatch finish(std::vector<Point3> points, const Box& box, double R) {
  std::sort(points.begin(), points.end(), zyx_less);
  return PointPatch(std::move(points), box, R);
}

double positive_mod(double x, double m) {
  const double r = std::fmod(x, m);
  return r < 0 ? r + m : r;
}

// Layer gaps of the bilattice in one period: |t| mod sqrt(mu) and the rest.
std::pair<double, double> gaps(const BiLatticeSpec& s) {
  const double c = std::sqrt(s.hex.mu);
  const double h = positive_mod(s.t.z(), c);
  return {h, c - h};
}

double parse_number(const std::string& text, std::size_t lineno) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(lineno) + ": bad number '" + text + "'");
  }
  return v;
}

}  // namespace

Mat3 HexLatticeSpec::basis() const {
  const double l = std::sqrt(lambda);
  Mat3 m;
  m << l, l / 2.0, 0.0,
       0.0, std::sqrt(3.0 * lambda) / 2.0, 0.0,
       0.0, 0.0, std::sqrt(mu);
  return m;
}

double HexLatticeSpec::min_distance() const { return std::sqrt(std::min(lambda, mu)); }

double HexLatticeSpec::covering_radius() const { return std::sqrt(lambda / 3.0 + mu / 4.0); }

void HexLatticeSpec::validate() const {
  if (!(lambda > 0.0) || !(mu > 0.0) || !std::isfinite(lambda) || !std::isfinite(mu)) {
    throw Error(ErrorCode::InvalidArgument, "lambda and mu must be positive");
  }
}

double BiLatticeSpec::min_distance() const {
  const auto [h1, h2] = gaps(*this);
  return std::min({std::sqrt(hex.lambda), h1, h2});
}

double BiLatticeSpec::covering_radius() const {
  const auto [h1, h2] = gaps(*this);
  const double h = std::max(h1, h2) / 2.0;
  return std::sqrt(hex.lambda / 3.0 + h * h);
}

void BiLatticeSpec::validate() const {
  hex.validate();
  if (std::abs(t.x()) > 1e-12 || std::abs(t.y()) > 1e-12) {
    throw Error(ErrorCode::InvalidShift, "shift must be perpendicular to the hexagonal layers");
  }
  const auto [h1, h2] = gaps(*this);
  if (std::min(h1, h2) < 1e-9) throw Error(ErrorCode::InvalidShift, "shift lies in the lattice");
}

PointPatch cubic_lattice(const Box& box) {
  require_box(box);
  return finish(lattice_points(Mat3::Identity(), Vec3::Zero(), box), box, std::sqrt(3.0) / 2.0);
}

PointPatch hex_lattice(const HexLatticeSpec& spec, const Box& box) {
  spec.validate();
  require_box(box);
  const double s = spec.rescale ? 1.0 / spec.min_distance() : 1.0;
  return finish(lattice_points(spec.basis() * s, Vec3::Zero(), box), box,
                spec.covering_radius() * s);
}

PointPatch hex_bilattice(const BiLatticeSpec& spec, const Box& box) {
  spec.validate();
  require_box(box);
  const double s = spec.hex.rescale ? 1.0 / spec.min_distance() : 1.0;
  const Mat3 basis = spec.hex.basis() * s;
  auto points = lattice_points(basis, Vec3::Zero(), box);
  const auto shifted = lattice_points(basis, spec.t * s, box);
  points.insert(points.end(), shifted.begin(), shifted.end());
  return finish(std::move(points), box, spec.covering_radius() * s);
}

PointPatch c4v_example(const Box& box) {
  require_box(box);
  auto points = lattice_points(Mat3::Identity(), Vec3::Zero(), box);
  std::erase_if(points, [](const Point3& p) {
    return positive_mod(std::round(p.z()), 3.0) == 0.0;
  });
  return finish(std::move(points), box, std::sqrt(1.5));
}

std::array<Point3, 8> antiprism_points(double a, double b) {
  if (!(a > 0.0)) throw Error(ErrorCode::InvalidArgument, "antiprism needs a > 0");
  if (b == 0.0) throw Error(ErrorCode::DegenerateAntiprism, "b = 0 flattens the antiprism");
  const double d = a / std::sqrt(2.0);
  return {Point3(a, 0, b),  Point3(-a, 0, b), Point3(0, a, b),   Point3(0, -a, b),
          Point3(d, d, -b), Point3(d, -d, -b), Point3(-d, d, -b), Point3(-d, -d, -b)};
}

double min_pairwise_distance(const std::vector<Point3>& points) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) best = std::min(best, (points[i] - points[j]).norm());
  return points.size() < 2 ? 0.0 : best;
}

GeneratorConfig parse_generator_config(std::istream& in) {
  GeneratorConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    std::istringstream whole(line);
    std::string probe;
    if (!(whole >> probe)) continue;
    auto fail = [&](const std::string& what) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + what);
    };
    if (eq == std::string::npos) fail("expected key = value");
    std::string key;
    std::istringstream(line.substr(0, eq)) >> key;
    std::vector<std::string> values;
    std::istringstream rest(line.substr(eq + 1));
    for (std::string v; rest >> v;) values.push_back(v);
    if (key.empty() || values.empty()) fail("expected key = value");

    auto scalar = [&]() {
      if (values.size() != 1) fail("'" + key + "' takes one value");
      return parse_number(values[0], lineno);
    };
    auto triple = [&]() {
      if (values.size() == 1) return Point3::Constant(parse_number(values[0], lineno)).eval();
      if (values.size() != 3) fail("'" + key + "' takes one or three values");
      return Point3(parse_number(values[0], lineno), parse_number(values[1], lineno),
                    parse_number(values[2], lineno));
    };
    if (key == "kind") {
      if (values.size() != 1) fail("'kind' takes one value");
      cfg.kind = values[0];
    } else if (key == "lambda") {
      cfg.lambda = scalar();
    } else if (key == "mu") {
      cfg.mu = scalar();
    } else if (key == "t_z") {
      cfg.t_z = scalar();
    } else if (key == "a") {
      cfg.a = scalar();
    } else if (key == "b") {
      cfg.b = scalar();
    } else if (key == "box_lo") {
      cfg.box.lo = triple();
    } else if (key == "box_hi") {
      cfg.box.hi = triple();
    } else if (key == "rescale") {
      if (values.size() != 1 || (values[0] != "true" && values[0] != "false")) {
        fail("'rescale' takes true or false");
      }
      cfg.rescale = values[0] == "true";
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  return cfg;
}

GeneratedSet generate(const GeneratorConfig& config) {
  if (config.kind == "cubic") return {cubic_lattice(config.box), 1.0};
  if (config.kind == "c4v") return {c4v_example(config.box), 1.0};
  if (config.kind == "hex") {
    const HexLatticeSpec spec{config.lambda, config.mu, config.rescale};
    return {hex_lattice(spec, config.box), spec.rescale ? 1.0 : spec.min_distance()};
  }
  if (config.kind == "hex_bilattice") {
    const BiLatticeSpec spec{{config.lambda, config.mu, config.rescale}, Vec3(0, 0, config.t_z)};
    return {hex_bilattice(spec, config.box), config.rescale ? 1.0 : spec.min_distance()};
  }
  if (config.kind == "antiprism") {
    const auto verts = antiprism_points(config.a, config.b);
    std::vector<Point3> points{Point3::Zero()};
    points.insert(points.end(), verts.begin(), verts.end());
    Box box{points[0], points[0]};
    for (const auto& p : points) {
      box.lo = box.lo.cwiseMin(p);
      box.hi = box.hi.cwiseMax(p);
    }
    const double d = min_pairwise_distance(points);
    std::sort(points.begin(), points.end(), zyx_less);
    return {PointPatch(std::move(points), box), d};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown generator kind '" + config.kind + "'");
}

}  // namespace delone
