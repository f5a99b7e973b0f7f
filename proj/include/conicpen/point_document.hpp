#pragma once

// Input documents for the command-line pipelines.
//
// Text form, one record per line, '#' starts a comment:
//
//   dimension 2
//   homogeneous false
//   A 2 3
//   B 3 5
//
// Header lines must precede the points. A record is an optional label
// followed by the coordinates (spaces or commas). Homogeneous records carry
// the weight first: "w x y" or "w x y z".
//
// JSON form: {"dimension": 3, "homogeneous": false,
//             "points": [{"label": "A", "coords": [4, 3, 0]}, [1.5, "2/3", 0]]}
// Numbers keep their exact decimal spelling.

#include <string>
#include <string_view>
#include <vector>

#include "conicpen/kinematics.hpp"
#include "conicpen/projective.hpp"

namespace conicpen {

struct PointRecord {
  std::string label;
  std::vector<Rational> coords;    // as written, weight first when homogeneous
  std::vector<std::string> text;   // original literals
};

struct PointDocument {
  int dimension = 0;
  bool homogeneous = false;
  std::vector<PointRecord> points;

  /// Arity and dimension are checked; InvalidArgument otherwise.
  std::vector<HPoint2> points2(std::size_t count) const;
  std::vector<HPoint3> points3(std::size_t count) const;
  /// Affine float coordinates; 2D documents are lifted to z = 0.
  std::vector<Point3> float_points(std::size_t min_count, std::size_t max_count) const;
  std::vector<std::string> labels() const;
};

/// Dispatches on the first non-blank character ('{' selects JSON). Throws
/// GeometryError with ParseError or InvalidArgument.
PointDocument parse_point_document(std::string_view text);

/// A, B, ..., Z, then P27, P28, ...
std::string default_label(std::size_t index);

}  // namespace conicpen
