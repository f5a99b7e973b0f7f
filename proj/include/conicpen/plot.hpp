#pragma once

// File emitters for the pipelines: SVG for plane conics, Wavefront OBJ for
// quadric surfaces and the cone-pair scene.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "conicpen/kinematics.hpp"

namespace conicpen {

struct Marker2 {
  std::string label;
  double x;
  double y;
};

struct Marker3 {
  std::string label;
  Point3 p;
};

struct Mesh {
  std::vector<Point3> vertices;
  std::vector<std::array<int, 3>> faces;  // zero-based
};

/// Zero set of m0 + m1 x + m2 y + m3 x^2 + m4 xy + m5 y^2 over a square
/// window around the markers, traced by marching squares on a
/// samples x samples grid.
std::string conic_svg(const std::array<double, 6>& monomial, const std::vector<Marker2>& markers,
                      int samples = 512);

/// Marching tetrahedra (six per cube) on a resolution^3 grid over [lo, hi].
/// Vertices on shared grid edges are shared.
Mesh marching_tetrahedra(const std::function<double(Point3)>& f, Point3 lo, Point3 hi, int resolution);

/// Implicit surface of the monomial quadric (x0 = 1 chart) over the padded
/// bounding box of the markers, plus a small octahedron per marker.
std::string quadric_obj(const std::array<double, 10>& monomial, const std::vector<Marker3>& markers,
                        int resolution = 64);

/// Origin cone, the cone with apex t, their difference plane and the points.
std::string cone_pair_obj(Point3 t, const std::vector<Marker3>& markers);

std::string mesh_to_obj(const std::vector<std::pair<std::string, Mesh>>& objects);

}  // namespace conicpen
