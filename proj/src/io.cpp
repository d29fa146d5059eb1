#include "delone/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "delone/errors.hpp"

namespace delone {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<double> parse_numbers(std::istringstream& ss, std::size_t line) {
  std::vector<double> out;
  std::string token;
  while (ss >> token) {
    double v = 0.0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (ec != std::errc{} || ptr != end) parse_fail(line, "invalid number '" + token + "'");
    if (!std::isfinite(v)) parse_fail(line, "non-finite number '" + token + "'");
    out.push_back(v);
  }
  return out;
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

PointFile parse_point_file(std::istream& in) {
  PointFile file;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    const auto first = text.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (text[first] == '#') {
      std::istringstream ss(text.substr(first + 1));
      std::string tag;
      ss >> tag;
      if (tag == "box") {
        const auto v = parse_numbers(ss, line);
        if (v.size() != 6) parse_fail(line, "box header needs six numbers");
        Box box{Point3(v[0], v[1], v[2]), Point3(v[3], v[4], v[5])};
        if (!box.valid()) parse_fail(line, "box header must satisfy lo < hi");
        file.box = box;
      } else if (tag == "R") {
        const auto v = parse_numbers(ss, line);
        if (v.size() != 1 || !(v[0] > 0.0)) parse_fail(line, "R header needs one positive number");
        file.declared_R = v[0];
      } else if (tag == "min_distance") {
        const auto v = parse_numbers(ss, line);
        if (v.size() != 1) parse_fail(line, "min_distance header needs one number");
        file.min_distance = v[0];
      }
      continue;
    }
    std::istringstream ss(text);
    const auto v = parse_numbers(ss, line);
    if (v.size() != 3) parse_fail(line, "expected three coordinates, got " + std::to_string(v.size()));
    file.points.emplace_back(v[0], v[1], v[2]);
  }
  return file;
}

PointFile read_point_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  return parse_point_file(in);
}

PointPatch to_patch(const PointFile& file) {
  if (file.points.empty()) throw Error(ErrorCode::TooFewPoints, "no points");
  Box box;
  if (file.box) {
    box = *file.box;
  } else {
    box.lo = box.hi = file.points.front();
    for (const auto& p : file.points) {
      box.lo = box.lo.cwiseMin(p);
      box.hi = box.hi.cwiseMax(p);
    }
    if (!box.valid()) {
      throw Error(ErrorCode::BoxTooSmall, "bounding box of the points is degenerate; add a box header");
    }
  }
  return PointPatch(file.points, box, file.declared_R);
}

PointPatch read_patch(const std::string& path) { return to_patch(read_point_file(path)); }

void write_patch(std::ostream& out, const PointPatch& patch, std::optional<double> min_distance) {
  const Box& b = patch.box();
  out << "# box " << fmt17(b.lo.x()) << ' ' << fmt17(b.lo.y()) << ' ' << fmt17(b.lo.z()) << ' '
      << fmt17(b.hi.x()) << ' ' << fmt17(b.hi.y()) << ' ' << fmt17(b.hi.z()) << '\n';
  if (patch.declared_R()) out << "# R " << fmt17(*patch.declared_R()) << '\n';
  if (min_distance) out << "# min_distance " << fmt17(*min_distance) << '\n';
  for (const auto& p : patch.points()) {
    out << fmt17(p.x()) << ' ' << fmt17(p.y()) << ' ' << fmt17(p.z()) << '\n';
  }
}

void write_patch(const std::string& path, const PointPatch& patch,
                 std::optional<double> min_distance) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  write_patch(out, patch, min_distance);
}

}  // namespace delone
