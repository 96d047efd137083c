#pragma once

#include <string>

#include <json.hpp>

#include "ghb/barriers.hpp"
#include "ghb/convexity.hpp"
#include "ghb/geodesics.hpp"
#include "ghb/stability.hpp"
#include "ghb/surfaces.hpp"

namespace ghb::io {

using nlohmann::json;

// Configuration documents look like
//   { "m": 0, "points": [ { "p": [0, 0, 1], "c": 1 }, ... ] }
// with "c" optional (default 1).
PointConfiguration config_from_json(const json& doc);
PointConfiguration load_config(const std::string& path);
json to_json(const PointConfiguration& config);

// Surfaces: { "family": "sphere", "centre": [..], "radius": r } and likewise
// cylinder {point, direction, radius, half_length}, plane {normal, offset,
// extent}, ellipsoid2 {a, r}, ellipsoidN {foci, level}.
BarrierSurface surface_from_json(const json& doc);
json to_json(const BarrierSurface& surface);

json to_json(const ConvexityReport& report);
json to_json(const CriticalPoint& point);
json to_json(const CurvatureSample& sample);

json vec_json(const Vec3& v);
Vec3 vec_from_json(const json& value, const char* what);

/// Shortest round-trip decimal form ("%.17g").
std::string fmt(double value);

}  // namespace ghb::io
