#include "conicpen/point_document.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

#include "conicpen/error.hpp"

namespace conicpen {

namespace {

using nlohmann::json;

// DOM builder that stores floating-point literals as their source text, so
// that "2.8265" stays exactly 28265/10000.
class ExactSax : public nlohmann::detail::json_sax_dom_parser<json> {
 public:
  using Base = nlohmann::detail::json_sax_dom_parser<json>;
  using Base::Base;

  bool number_float(double, const std::string& literal) {
    std::string copy = literal;
    return Base::string(copy);
  }
};

bool looks_numeric(const std::string& tok) {
  if (tok.empty()) return false;
  const char c = tok.front();
  return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
}

bool parse_bool(const std::string& v, int line) {
  std::string s = v;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": expected true/false, got '" + v + "'");
}

void finish(PointDocument& doc) {
  if (doc.points.empty()) fail(ErrorCode::ParseError, "document contains no points");
  const std::size_t width = doc.points.front().coords.size();
  if (doc.dimension == 0) {
    const std::size_t d = doc.homogeneous ? width - 1 : width;
    if (d != 2 && d != 3) fail(ErrorCode::InvalidArgument, "cannot infer dimension from " + std::to_string(width) + " coordinates");
    doc.dimension = static_cast<int>(d);
  }
  if (doc.dimension != 2 && doc.dimension != 3)
    fail(ErrorCode::InvalidArgument, "dimension must be 2 or 3, got " + std::to_string(doc.dimension));
  const std::size_t expected = static_cast<std::size_t>(doc.dimension) + (doc.homogeneous ? 1 : 0);
  for (std::size_t i = 0; i < doc.points.size(); ++i) {
    auto& p = doc.points[i];
    if (p.label.empty()) p.label = default_label(i);
    if (p.coords.size() != expected)
      fail(ErrorCode::InvalidArgument, "point " + p.label + " has " + std::to_string(p.coords.size()) +
                                           " coordinates, expected " + std::to_string(expected));
  }
}

PointDocument parse_text(std::string_view text) {
  PointDocument doc;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool in_points = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (!in_points && (tok[0] == "dimension" || tok[0] == "homogeneous")) {
      if (tok.size() != 2) fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected '" + tok[0] + " <value>'");
      if (tok[0] == "dimension") {
        if (tok[1] != "2" && tok[1] != "3")
          fail(ErrorCode::InvalidArgument, "line " + std::to_string(lineno) + ": dimension must be 2 or 3");
        doc.dimension = tok[1][0] - '0';
      } else {
        doc.homogeneous = parse_bool(tok[1], lineno);
      }
      continue;
    }
    in_points = true;
    PointRecord rec;
    std::size_t first = 0;
    if (!looks_numeric(tok[0])) {
      rec.label = tok[0];
      if (!rec.label.empty() && rec.label.back() == ':') rec.label.pop_back();
      first = 1;
    }
    if (first == tok.size()) fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": point without coordinates");
    for (std::size_t k = first; k < tok.size(); ++k) {
      try {
        rec.coords.push_back(Rational::parse(tok[k]));
      } catch (const GeometryError& e) {
        fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + e.what());
      }
      rec.text.push_back(tok[k]);
    }
    doc.points.push_back(std::move(rec));
  }
  finish(doc);
  return doc;
}

Rational json_scalar(const json& v, std::string& text) {
  if (v.is_string()) {
    text = v.get<std::string>();
  } else if (v.is_number_integer()) {
    text = v.dump();
  } else {
    fail(ErrorCode::ParseError, "coordinate must be a number or a string, got " + v.dump());
  }
  return Rational::parse(text);
}

PointDocument parse_json(std::string_view text) {
  json root;
  ExactSax sax(root, false);
  if (!json::sax_parse(text, &sax) || root.is_discarded() || !root.is_object())
    fail(ErrorCode::ParseError, "malformed JSON point document");

  PointDocument doc;
  if (root.contains("dimension")) {
    const json& d = root["dimension"];
    if (!d.is_number_integer()) fail(ErrorCode::ParseError, "\"dimension\" must be an integer");
    doc.dimension = d.get<int>();
  }
  if (root.contains("homogeneous")) {
    if (!root["homogeneous"].is_boolean()) fail(ErrorCode::ParseError, "\"homogeneous\" must be a boolean");
    doc.homogeneous = root["homogeneous"].get<bool>();
  }
  if (!root.contains("points") || !root["points"].is_array()) fail(ErrorCode::ParseError, "missing \"points\" array");
  for (const json& p : root["points"]) {
    PointRecord rec;
    const json* coords = &p;
    if (p.is_object()) {
      if (p.contains("label")) {
        if (!p["label"].is_string()) fail(ErrorCode::ParseError, "\"label\" must be a string");
        rec.label = p["label"].get<std::string>();
      }
      if (!p.contains("coords")) fail(ErrorCode::ParseError, "point object without \"coords\"");
      coords = &p["coords"];
    }
    if (!coords->is_array()) fail(ErrorCode::ParseError, "point coordinates must be an array");
    for (const json& c : *coords) {
      std::string t;
      rec.coords.push_back(json_scalar(c, t));
      rec.text.push_back(t);
    }
    doc.points.push_back(std::move(rec));
  }
  finish(doc);
  return doc;
}

void check_arity(const PointDocument& doc, std::size_t lo, std::size_t hi) {
  const std::size_t n = doc.points.size();
  if (n < lo || n > hi) {
    const std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi);
    fail(ErrorCode::InvalidArgument, "expected " + want + " points, got " + std::to_string(n));
  }
}

template <std::size_t N>
RatVec<N> homogeneous_coords(const PointRecord& r, bool homogeneous) {
  RatVec<N> v;
  if (homogeneous) {
    for (std::size_t i = 0; i < N; ++i) v[i] = r.coords[i];
  } else {
    v[0] = Rational(1);
    for (std::size_t i = 1; i < N; ++i) v[i] = r.coords[i - 1];
  }
  return v;
}

}  // namespace

std::string default_label(std::size_t index) {
  if (index < 26) return std::string(1, static_cast<char>('A' + index));
  return "P" + std::to_string(index + 1);
}

PointDocument parse_point_document(std::string_view text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  if (pos == std::string_view::npos) fail(ErrorCode::ParseError, "empty document");
  return text[pos] == '{' ? parse_json(text) : parse_text(text);
}

std::vector<HPoint2> PointDocument::points2(std::size_t count) const {
  if (dimension != 2) fail(ErrorCode::InvalidArgument, "expected a 2D document, got dimension " + std::to_string(dimension));
  check_arity(*this, count, count);
  std::vector<HPoint2> out;
  for (const auto& p : points) {
    try {
      out.emplace_back(homogeneous_coords<3>(p, homogeneous));
    } catch (const GeometryError&) {
      fail(ErrorCode::InvalidArgument, "point " + p.label + " has all-zero homogeneous coordinates");
    }
  }
  return out;
}

std::vector<HPoint3> PointDocument::points3(std::size_t count) const {
  if (dimension != 3) fail(ErrorCode::InvalidArgument, "expected a 3D document, got dimension " + std::to_string(dimension));
  check_arity(*this, count, count);
  std::vector<HPoint3> out;
  for (const auto& p : points) {
    try {
      out.emplace_back(homogeneous_coords<4>(p, homogeneous));
    } catch (const GeometryError&) {
      fail(ErrorCode::InvalidArgument, "point " + p.label + " has all-zero homogeneous coordinates");
    }
  }
  return out;
}

std::vector<Point3> PointDocument::float_points(std::size_t min_count, std::size_t max_count) const {
  check_arity(*this, min_count, max_count);
  std::vector<Point3> out;
  for (const auto& p : points) {
    std::vector<Rational> c = p.coords;
    if (homogeneous) {
      if (c.front().is_zero()) fail(ErrorCode::InvalidArgument, "point " + p.label + " is at infinity");
      for (std::size_t i = 1; i < c.size(); ++i) c[i] /= c.front();
      c.erase(c.begin());
    }
    out.push_back({c[0].to_double(), c[1].to_double(), dimension == 3 ? c[2].to_double() : 0.0});
  }
  return out;
}

std::vector<std::string> PointDocument::labels() const {
  std::vector<std::string> out;
  for (const auto& p : points) out.push_back(p.label);
  return out;
}

}  // namespace conicpen
