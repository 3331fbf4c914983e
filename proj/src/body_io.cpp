#include "hilbert/body_io.hpp"

#include "json.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace hilbert {

namespace {

using nlohmann::json;

Point point_of(const json& j) {
  require(j.is_array() && !j.empty() && j.size() <= static_cast<std::size_t>(kMaxDim), "body: bad point");
  Point p(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    require(j[i].is_number(), "body: point coordinates must be numbers");
    p(i) = j[i].get<double>();
  }
  return p;
}

std::vector<Point> points_of(const json& j) {
  require(j.is_array() && !j.empty(), "body: vertices must be a nonempty array");
  std::vector<Point> out;
  for (const auto& v : j) out.push_back(point_of(v));
  for (const auto& p : out) require(p.size() == out.front().size(), "body: vertices of mixed dimension");
  return out;
}

double number(const json& j, const char* key) {
  require(j.contains(key) && j[key].is_number(), std::string("body: missing number '") + key + "'");
  return j[key].get<double>();
}

int integer(const json& j, const char* key) {
  require(j.contains(key) && j[key].is_number_integer(), std::string("body: missing integer '") + key + "'");
  return j[key].get<int>();
}

void allow_keys(const json& j, std::set<std::string> keys) {
  keys.insert({"kind", "name", "projective"});
  for (const auto& [k, v] : j.items()) require(keys.count(k) == 1, "body: unknown key '" + k + "'");
}

ConvexBody build(const json& j) {
  require(j.is_object(), "body: specification must be a JSON object");
  require(j.contains("kind") && j["kind"].is_string(), "body: missing 'kind'");
  const std::string kind = j["kind"];
  std::string name = kind;
  if (j.contains("name")) {
    require(j["name"].is_string(), "body: 'name' must be a string");
    name = j["name"];
  }
  ConvexBody body = [&] {
    if (kind == "polygon") {
      allow_keys(j, {"vertices"});
      require(j.contains("vertices"), "body: polygon needs 'vertices'");
      return ConvexBody::polygon(points_of(j["vertices"]), name);
    }
    if (kind == "regular_polygon") {
      allow_keys(j, {"k", "circumradius"});
      return make_regular_polygon(integer(j, "k"), j.contains("circumradius") ? number(j, "circumradius") : 1.0);
    }
    if (kind == "ball") {
      allow_keys(j, {"n"});
      return make_ball(j.contains("n") ? integer(j, "n") : 2);
    }
    if (kind == "ellipsoid") {
      allow_keys(j, {"center", "shape"});
      require(j.contains("center") && j.contains("shape"), "body: ellipsoid needs 'center' and 'shape'");
      const Point c = point_of(j["center"]);
      const auto rows = points_of(j["shape"]);
      require(static_cast<Eigen::Index>(rows.size()) == c.size(), "body: shape must be n x n");
      Mat m(c.size(), c.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        require(rows[i].size() == c.size(), "body: shape must be n x n");
        m.row(i) = rows[i].transpose();
      }
      return ConvexBody::ellipsoid(c, m, name);
    }
    if (kind == "superellipse") {
      allow_keys(j, {"p", "q"});
      return make_superellipse(number(j, "p"), number(j, "q"));
    }
    if (kind == "simplex") {
      allow_keys(j, {"n", "vertices"});
      if (j.contains("vertices")) return ConvexBody::simplex(points_of(j["vertices"]), name);
      return make_simplex(integer(j, "n"));
    }
    throw ValidationError("body: unknown kind '" + kind + "'");
  }();
  if (j.contains("projective")) {
    const auto rows = points_of(j["projective"]);
    const int n = body.dim();
    require(static_cast<int>(rows.size()) == n + 1, "body: projective matrix must be (n+1)x(n+1)");
    ProjMatrix m(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) {
      require(rows[i].size() == n + 1, "body: projective matrix must be (n+1)x(n+1)");
      m.row(i) = rows[i].transpose();
    }
    body = body.projective_transform(m);
  }
  return body;
}

}  // namespace

ConvexBody body_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("body: invalid JSON: ") + e.what());
  }
  return build(j);
}

ConvexBody load_body(const std::string& spec) {
  if (spec == "triangle") return make_regular_polygon(3, 1.0);
  if (spec == "square") return make_regular_polygon(4, 1.0);
  if (spec == "hexagon") return make_regular_polygon(6, 1.0);
  if (spec == "disk") return make_ball(2);
  if (spec == "superellipse") return make_superellipse(4.0, 1.1);
  if (spec == "simplex3") return make_simplex(3);
  if (!spec.empty() && spec.front() == '{') return body_from_json(spec);
  std::ifstream in(spec);
  require(in.good(), "body: cannot open '" + spec + "' (not a file nor a known name)");
  std::stringstream ss;
  ss << in.rdbuf();
  return body_from_json(ss.str());
}

}  // namespace hilbert
