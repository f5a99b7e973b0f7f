#include "conicpen/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <unordered_map>

namespace conicpen {

namespace {

std::string fmt_num(double v, int digits = 4) {
  if (std::abs(v) < 0.5 * std::pow(10.0, -digits)) v = 0;  // no "-0.0000"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

template <std::size_t N>
std::array<double, N> unit_scaled(std::array<double, N> m) {
  double s = 0;
  for (double v : m) s = std::max(s, std::abs(v));
  if (s > 0)
    for (double& v : m) v /= s;
  return m;
}

Mesh octahedron(Point3 c, double r) {
  Mesh m;
  m.vertices = {c + Point3{r, 0, 0}, c + Point3{-r, 0, 0}, c + Point3{0, r, 0},
                c + Point3{0, -r, 0}, c + Point3{0, 0, r}, c + Point3{0, 0, -r}};
  m.faces = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4}, {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
  return m;
}

void append_markers(std::vector<std::pair<std::string, Mesh>>& objects, const std::vector<Marker3>& markers,
                    double r) {
  for (const auto& mk : markers) objects.emplace_back("point_" + mk.label, octahedron(mk.p, r));
}

struct Box {
  Point3 lo, hi;
  double diagonal() const { return distance(lo, hi); }
};

Box bounding_box(const std::vector<Marker3>& markers, double pad_fraction, double min_extent) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  Point3 lo{inf, inf, inf}, hi{-inf, -inf, -inf};
  for (const auto& m : markers) {
    lo = {std::min(lo.x, m.p.x), std::min(lo.y, m.p.y), std::min(lo.z, m.p.z)};
    hi = {std::max(hi.x, m.p.x), std::max(hi.y, m.p.y), std::max(hi.z, m.p.z)};
  }
  if (markers.empty()) lo = hi = {0, 0, 0};
  const double ext = std::max({hi.x - lo.x, hi.y - lo.y, hi.z - lo.z, min_extent});
  const double pad = pad_fraction * ext;
  auto widen = [&](double& a, double& b) {
    const double mid = 0.5 * (a + b), half = std::max(0.5 * (b - a), 0.5 * min_extent) + pad;
    a = mid - half;
    b = mid + half;
  };
  widen(lo.x, hi.x);
  widen(lo.y, hi.y);
  widen(lo.z, hi.z);
  return {lo, hi};
}

// Ring-by-ring mesh of x^2 + y^2 = (z - apex.z)^2 shifted to the apex.
Mesh cone_mesh(Point3 apex, double zlo, double zhi, int rings, int segments) {
  Mesh m;
  for (int k = 0; k <= rings; ++k) {
    const double z = zlo + (zhi - zlo) * k / rings;
    const double r = std::abs(z - apex.z);
    for (int s = 0; s < segments; ++s) {
      const double th = 2 * M_PI * s / segments;
      m.vertices.push_back({apex.x + r * std::cos(th), apex.y + r * std::sin(th), z});
    }
  }
  for (int k = 0; k < rings; ++k)
    for (int s = 0; s < segments; ++s) {
      const int a = k * segments + s, b = k * segments + (s + 1) % segments;
      const int c = a + segments, d = b + segments;
      m.faces.push_back({a, b, d});
      m.faces.push_back({a, d, c});
    }
  return m;
}

}  // namespace

std::string conic_svg(const std::array<double, 6>& monomial, const std::vector<Marker2>& markers, int samples) {
  const auto m = unit_scaled(monomial);
  auto f = [&](double x, double y) { return m[0] + m[1] * x + m[2] * y + m[3] * x * x + m[4] * x * y + m[5] * y * y; };

  double xlo = 0, xhi = 0, ylo = 0, yhi = 0;
  if (!markers.empty()) {
    xlo = xhi = markers[0].x;
    ylo = yhi = markers[0].y;
  }
  for (const auto& mk : markers) {
    xlo = std::min(xlo, mk.x);
    xhi = std::max(xhi, mk.x);
    ylo = std::min(ylo, mk.y);
    yhi = std::max(yhi, mk.y);
  }
  const double half = 0.8 * std::max({xhi - xlo, yhi - ylo, 1.0});
  const double cx = 0.5 * (xlo + xhi), cy = 0.5 * (ylo + yhi);
  const double wx0 = cx - half, wy0 = cy - half, side = 2 * half;

  constexpr double px = 640, margin = 20, inner = px - 2 * margin;
  auto sx = [&](double x) { return margin + (x - wx0) / side * inner; };
  auto sy = [&](double y) { return px - margin - (y - wy0) / side * inner; };

  const int n = std::max(samples, 2);
  std::vector<double> grid(static_cast<std::size_t>(n + 1) * (n + 1));
  auto at = [&](int i, int j) -> double& { return grid[static_cast<std::size_t>(j) * (n + 1) + i]; };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) at(i, j) = f(wx0 + side * i / n, wy0 + side * j / n);

  std::string path;
  auto emit = [&](double x1, double y1, double x2, double y2) {
    path += "M" + fmt_num(sx(x1), 2) + "," + fmt_num(sy(y1), 2) + "L" + fmt_num(sx(x2), 2) + "," +
            fmt_num(sy(y2), 2);
  };
  const double h = side / n;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double v[4] = {at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)};
      const double x0 = wx0 + h * i, y0 = wy0 + h * j;
      const double cxs[4] = {x0, x0 + h, x0 + h, x0}, cys[4] = {y0, y0, y0 + h, y0 + h};
      int mask = 0;
      for (int k = 0; k < 4; ++k) mask |= (v[k] >= 0 ? 1 : 0) << k;
      if (mask == 0 || mask == 15) continue;
      // Crossing point on edge k (corner k to corner k+1).
      auto cross_at = [&](int k, double& ex, double& ey) {
        const int a = k, b = (k + 1) % 4;
        const double t = v[a] / (v[a] - v[b]);
        ex = cxs[a] + t * (cxs[b] - cxs[a]);
        ey = cys[a] + t * (cys[b] - cys[a]);
      };
      std::vector<int> edges;
      for (int k = 0; k < 4; ++k)
        if (((mask >> k) & 1) != ((mask >> ((k + 1) % 4)) & 1)) edges.push_back(k);
      double ax, ay, bx, by;
      if (edges.size() == 2) {
        cross_at(edges[0], ax, ay);
        cross_at(edges[1], bx, by);
        emit(ax, ay, bx, by);
      } else {
        // Saddle: pair edges by the sign at the cell centre.
        const bool centre_pos = f(x0 + h / 2, y0 + h / 2) >= 0;
        const bool corner0_pos = (mask & 1) != 0;
        const int pairs[2][4] = {{0, 1, 2, 3}, {0, 3, 1, 2}};
        const int* pr = pairs[centre_pos == corner0_pos ? 0 : 1];
        cross_at(pr[0], ax, ay);
        cross_at(pr[1], bx, by);
        emit(ax, ay, bx, by);
        cross_at(pr[2], ax, ay);
        cross_at(pr[3], bx, by);
        emit(ax, ay, bx, by);
      }
    }

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"0 0 640 640\">\n";
  svg += "  <rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
  if (wx0 < 0 && wx0 + side > 0)
    svg += "  <line x1=\"" + fmt_num(sx(0), 2) + "\" y1=\"" + fmt_num(margin, 2) + "\" x2=\"" + fmt_num(sx(0), 2) +
           "\" y2=\"" + fmt_num(px - margin, 2) + "\" stroke=\"#bbb\"/>\n";
  if (wy0 < 0 && wy0 + side > 0)
    svg += "  <line x1=\"" + fmt_num(margin, 2) + "\" y1=\"" + fmt_num(sy(0), 2) + "\" x2=\"" + fmt_num(px - margin, 2) +
           "\" y2=\"" + fmt_num(sy(0), 2) + "\" stroke=\"#bbb\"/>\n";
  svg += "  <path fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" d=\"" + path + "\"/>\n";
  for (const auto& mk : markers) {
    svg += "  <circle cx=\"" + fmt_num(sx(mk.x), 2) + "\" cy=\"" + fmt_num(sy(mk.y), 2) +
           "\" r=\"4\" fill=\"#c0392b\"/>\n";
    svg += "  <text x=\"" + fmt_num(sx(mk.x) + 6, 2) + "\" y=\"" + fmt_num(sy(mk.y) - 6, 2) +
           "\" font-family=\"sans-serif\" font-size=\"14\">" + xml_escape(mk.label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

Mesh marching_tetrahedra(const std::function<double(Point3)>& f, Point3 lo, Point3 hi, int resolution) {
  const int n = std::max(resolution, 1);
  const std::size_t side = static_cast<std::size_t>(n) + 1;
  auto node = [&](int i, int j, int k) { return (static_cast<std::size_t>(k) * side + j) * side + i; };
  auto position = [&](std::size_t id) {
    const std::size_t i = id % side, j = (id / side) % side, k = id / (side * side);
    return Point3{lo.x + (hi.x - lo.x) * static_cast<double>(i) / n, lo.y + (hi.y - lo.y) * static_cast<double>(j) / n,
                  lo.z + (hi.z - lo.z) * static_cast<double>(k) / n};
  };
  std::vector<double> value(side * side * side);
  for (std::size_t id = 0; id < value.size(); ++id) value[id] = f(position(id));

  Mesh mesh;
  std::unordered_map<std::uint64_t, int> edge_vertex;
  auto vertex_on = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    const std::uint64_t key = static_cast<std::uint64_t>(a) * value.size() + b;
    if (auto it = edge_vertex.find(key); it != edge_vertex.end()) return it->second;
    const double t = value[a] / (value[a] - value[b]);
    const Point3 pa = position(a), pb = position(b);
    mesh.vertices.push_back(pa + t * (pb - pa));
    const int idx = static_cast<int>(mesh.vertices.size()) - 1;
    edge_vertex.emplace(key, idx);
    return idx;
  };
  // Orient each triangle so its normal points from the negative side to the positive side.
  auto add = [&](int a, int b, int c, std::size_t neg, std::size_t pos) {
    const Point3 nrm = cross(mesh.vertices[b] - mesh.vertices[a], mesh.vertices[c] - mesh.vertices[a]);
    if (dot(nrm, position(pos) - position(neg)) < 0) std::swap(b, c);
    mesh.faces.push_back({a, b, c});
  };

  static constexpr int corner[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                                       {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
  static constexpr int tets[6][4] = {{0, 5, 1, 6}, {0, 1, 2, 6}, {0, 2, 3, 6},
                                     {0, 3, 7, 6}, {0, 7, 4, 6}, {0, 4, 5, 6}};
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (const auto& tet : tets) {
          std::size_t id[4];
          std::vector<int> in, out;
          for (int v = 0; v < 4; ++v) {
            const int* c = corner[tet[v]];
            id[v] = node(i + c[0], j + c[1], k + c[2]);
            (value[id[v]] < 0 ? in : out).push_back(v);
          }
          if (in.empty() || out.empty()) continue;
          if (in.size() == 1 || out.size() == 1) {
            const bool lone_in = in.size() == 1;
            const int lone = lone_in ? in[0] : out[0];
            const std::vector<int>& rest = lone_in ? out : in;
            const int a = vertex_on(id[lone], id[rest[0]]);
            const int b = vertex_on(id[lone], id[rest[1]]);
            const int c = vertex_on(id[lone], id[rest[2]]);
            add(a, b, c, id[in[0]], id[out[0]]);
          } else {
            const int a = vertex_on(id[in[0]], id[out[0]]);
            const int b = vertex_on(id[in[0]], id[out[1]]);
            const int c = vertex_on(id[in[1]], id[out[1]]);
            const int d = vertex_on(id[in[1]], id[out[0]]);
            add(a, b, c, id[in[0]], id[out[0]]);
            add(a, c, d, id[in[0]], id[out[0]]);
          }
        }
  return mesh;
}

std::string mesh_to_obj(const std::vector<std::pair<std::string, Mesh>>& objects) {
  std::string out = "# conicpen scene\n";
  std::size_t base = 1;
  for (const auto& [name, mesh] : objects) {
    out += "o " + name + "\n";
    for (const Point3& v : mesh.vertices) out += "v " + fmt_num(v.x, 6) + " " + fmt_num(v.y, 6) + " " + fmt_num(v.z, 6) + "\n";
    for (const auto& f : mesh.faces)
      out += "f " + std::to_string(base + f[0]) + " " + std::to_string(base + f[1]) + " " + std::to_string(base + f[2]) + "\n";
    base += mesh.vertices.size();
  }
  return out;
}

std::string quadric_obj(const std::array<double, 10>& monomial, const std::vector<Marker3>& markers, int resolution) {
  const auto m = unit_scaled(monomial);
  auto f = [&](Point3 p) {
    return m[0] + m[1] * p.x + m[2] * p.y + m[3] * p.z + m[4] * p.x * p.x + m[5] * p.x * p.y + m[6] * p.x * p.z +
           m[7] * p.y * p.y + m[8] * p.y * p.z + m[9] * p.z * p.z;
  };
  const Box box = bounding_box(markers, 0.25, 1.0);
  std::vector<std::pair<std::string, Mesh>> objects;
  objects.emplace_back("quadric", marching_tetrahedra(f, box.lo, box.hi, resolution));
  append_markers(objects, markers, 0.01 * box.diagonal());
  return mesh_to_obj(objects);
}

std::string cone_pair_obj(Point3 t, const std::vector<Marker3>& markers) {
  std::vector<Marker3> all = markers;
  all.push_back({"", {0, 0, 0}});
  all.push_back({"", t});
  const Box box = bounding_box(all, 0.25, 1.0);
  std::vector<std::pair<std::string, Mesh>> objects;
  objects.emplace_back("origin_cone", cone_mesh({0, 0, 0}, box.lo.z, box.hi.z, 32, 64));
  objects.emplace_back("translated_cone", cone_mesh(t, box.lo.z, box.hi.z, 32, 64));

  // Difference plane c0 + c.x = 0 with c = (-2t1, -2t2, 2t3).
  const Point3 c{-2 * t.x, -2 * t.y, 2 * t.z};
  const double c0 = t.x * t.x + t.y * t.y - t.z * t.z;
  const double cn = norm(c);
  if (cn > 0) {
    const Point3 nrm = (1 / cn) * c;
    Point3 centre{0, 0, 0};
    for (const auto& mk : markers) centre = centre + mk.p;
    if (!markers.empty()) centre = (1.0 / static_cast<double>(markers.size())) * centre;
    centre = centre - ((dot(nrm, centre) + c0 / cn) * nrm);
    Point3 u = cross(nrm, std::abs(nrm.z) < 0.9 ? Point3{0, 0, 1} : Point3{1, 0, 0});
    u = (1 / norm(u)) * u;
    const Point3 v = cross(nrm, u);
    const double half = 0.5 * box.diagonal();
    Mesh plane;
    plane.vertices = {centre + half * (u + v), centre + half * (v - u), centre - half * (u + v), centre + half * (u - v)};
    plane.faces = {{0, 1, 2}, {0, 2, 3}};
    objects.emplace_back("intersection_plane", plane);
  }
  append_markers(objects, markers, 0.01 * box.diagonal());
  return mesh_to_obj(objects);
}

}  // namespace conicpen
