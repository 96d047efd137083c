#include "ghb/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace ghb::io {

namespace {

[[noreturn]] void bad_config(const std::string& what) { throw Error(ErrorCode::InvalidConfiguration, what); }
[[noreturn]] void bad_params(const std::string& what) { throw Error(ErrorCode::InvalidParams, what); }

double number(const json& doc, const char* key, const char* what) {
  if (!doc.contains(key)) bad_params(std::string(what) + " needs \"" + key + "\"");
  const json& v = doc.at(key);
  if (!v.is_number()) bad_params(std::string(what) + ": \"" + key + "\" must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad_params(std::string(what) + ": \"" + key + "\" must be finite");
  return x;
}

double number_or(const json& doc, const char* key, double fallback, const char* what) {
  return doc.contains(key) ? number(doc, key, what) : fallback;
}

}  // namespace

std::string fmt(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec_from_json(const json& value, const char* what) {
  if (!value.is_array() || value.size() != 3) bad_params(std::string(what) + " must be an array of 3 numbers");
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    const json& e = value[static_cast<std::size_t>(i)];
    if (!e.is_number()) bad_params(std::string(what) + " must be an array of 3 numbers");
    out[i] = e.get<double>();
    if (!std::isfinite(out[i])) bad_params(std::string(what) + " must be finite");
  }
  return out;
}

PointConfiguration config_from_json(const json& doc) {
  if (!doc.is_object()) bad_config("configuration must be a JSON object");
  double mass = 0.0;
  if (doc.contains("m")) {
    if (!doc["m"].is_number()) bad_config("\"m\" must be a number");
    mass = doc["m"].get<double>();
    if (!std::isfinite(mass) || mass < 0.0) bad_config("\"m\" must be finite and >= 0");
  }
  if (!doc.contains("points") || !doc["points"].is_array()) bad_config("configuration needs a \"points\" array");
  std::vector<Centre> centres;
  for (const json& item : doc["points"]) {
    if (!item.is_object() || !item.contains("p")) bad_config("each point needs \"p\"");
    Centre c;
    try {
      c.position = vec_from_json(item["p"], "\"p\"");
    } catch (const Error& e) {
      bad_config(e.what());
    }
    if (item.contains("c")) {
      const json& charge = item["c"];
      if (!charge.is_number_integer()) bad_config("\"c\" must be an integer");
      const auto value = charge.get<long long>();
      if (value < 1 || value > 1'000'000) bad_config("\"c\" must be a positive integer");
      c.multiplicity = static_cast<int>(value);
    }
    centres.push_back(c);
  }
  return PointConfiguration(mass, std::move(centres));
}

PointConfiguration load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad_config("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    bad_config(path + ": " + e.what());
  }
  return config_from_json(doc);
}

json to_json(const PointConfiguration& config) {
  json points = json::array();
  for (const auto& c : config.centres()) points.push_back({{"p", vec_json(c.position)}, {"c", c.multiplicity}});
  return {{"m", config.mass()}, {"points", points}};
}

BarrierSurface surface_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("family") || !doc["family"].is_string()) {
    bad_params("surface needs a string \"family\"");
  }
  const std::string family = doc["family"].get<std::string>();
  BarrierSurface out;
  if (family == "sphere") {
    Sphere s;
    if (doc.contains("centre")) s.centre = vec_from_json(doc["centre"], "sphere centre");
    s.radius = number(doc, "radius", "sphere");
    out = s;
  } else if (family == "cylinder") {
    Cylinder c;
    if (doc.contains("point")) c.point = vec_from_json(doc["point"], "cylinder point");
    if (doc.contains("direction")) c.direction = vec_from_json(doc["direction"], "cylinder direction");
    c.radius = number(doc, "radius", "cylinder");
    c.half_length = number_or(doc, "half_length", c.half_length, "cylinder");
    out = c;
  } else if (family == "plane") {
    Plane p;
    if (doc.contains("normal")) p.normal = vec_from_json(doc["normal"], "plane normal");
    p.offset = number(doc, "offset", "plane");
    p.extent = number_or(doc, "extent", p.extent, "plane");
    out = p;
  } else if (family == "ellipsoid2") {
    out = TwoFociEllipsoid{number(doc, "a", "ellipsoid2"), number(doc, "r", "ellipsoid2")};
  } else if (family == "ellipsoidN") {
    if (!doc.contains("foci") || !doc["foci"].is_array()) bad_params("ellipsoidN needs a \"foci\" array");
    std::vector<Vec3> foci;
    for (const json& f : doc["foci"]) foci.push_back(vec_from_json(f, "focus"));
    out = make_multi_foci_ellipsoid(std::move(foci), number(doc, "level", "ellipsoidN"));
  } else {
    bad_params("unknown surface family \"" + family + "\"");
  }
  validate(out);
  return out;
}

json to_json(const BarrierSurface& surface) {
  json doc = {{"family", std::string(family_name(surface))}};
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Sphere>) {
          doc["centre"] = vec_json(s.centre);
          doc["radius"] = s.radius;
        } else if constexpr (std::is_same_v<S, Cylinder>) {
          doc["point"] = vec_json(s.point);
          doc["direction"] = vec_json(s.direction);
          doc["radius"] = s.radius;
          doc["half_length"] = s.half_length;
        } else if constexpr (std::is_same_v<S, Plane>) {
          doc["normal"] = vec_json(s.normal);
          doc["offset"] = s.offset;
          doc["extent"] = s.extent;
        } else if constexpr (std::is_same_v<S, TwoFociEllipsoid>) {
          doc["a"] = s.a;
          doc["r"] = s.r;
        } else {
          json foci = json::array();
          for (const auto& f : s.foci) foci.push_back(vec_json(f));
          doc["foci"] = foci;
          doc["level"] = s.level;
        }
      },
      surface);
  return doc;
}

json to_json(const ConvexityReport& report) {
  return {{"k", report.k},
          {"min_eigensum", report.min_eigensum},
          {"min_relative", report.min_relative},
          {"argmin", {{"params", {report.argmin_params.x(), report.argmin_params.y()}}, {"x", vec_json(report.argmin_x)}}},
          {"samples", report.samples},
          {"skipped", report.skipped},
          {"verdict", std::string(to_string(report.verdict))}};
}

json to_json(const CriticalPoint& point) {
  return {{"x", vec_json(point.x)},
          {"residual", point.residual},
          {"length", point.length},
          {"in_hull", point.in_hull},
          {"hessian_signature", point.hessian_signature},
          {"isolated", point.isolated}};
}

json to_json(const CurvatureSample& s) {
  return {{"t", s.t}, {"K", s.K}, {"M", s.M}, {"N", s.N}, {"I", s.I}, {"II", s.II}, {"III", s.III}, {"IV", s.IV}};
}

}  // namespace ghb::io
