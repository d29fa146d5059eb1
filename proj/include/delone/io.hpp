#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "delone/patch.hpp"

namespace delone {

/// Plain-text point sets: one "x y z" per line, '#' comments.  Recognized
/// header comments are "# box lo_x lo_y lo_z hi_x hi_y hi_z", "# R <value>"
/// and "# min_distance <value>".  Without a box header the trusted box is
/// the bounding box of the points.
struct PointFile {
  std::vector<Point3> points;
  std::optional<Box> box;
  std::optional<double> declared_R;
  std::optional<double> min_distance;
};

/// Throws ParseError with a 1-based line number.
PointFile parse_point_file(std::istream& in);
PointFile read_point_file(const std::string& path);

/// Throws TooFewPoints on an empty file.
PointPatch to_patch(const PointFile& file);
PointPatch read_patch(const std::string& path);

/// Coordinates are written with 17 significant digits so that a patch
/// survives a write/read cycle bit-exactly.
void write_patch(std::ostream& out, const PointPatch& patch,
                 std::optional<double> min_distance = {});
void write_patch(const std::string& path, const PointPatch& patch,
                 std::optional<double> min_distance = {});

}  // namespace delone
