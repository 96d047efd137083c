#include "ghb/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "ghb/io.hpp"

namespace ghb::cli {

using nlohmann::json;
using io::fmt;

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Constants: return "constants";
    case Command::Scan: return "scan";
    case Command::Margins: return "margins";
    case Command::Curvature: return "curvature";
    case Command::Stability: return "stability";
    case Command::Geodesics: return "geodesics";
    case Command::Counterexample: return "counterexample";
  }
  return "constants";
}

json to_json(const RunSpec& spec) {
  json doc = {{"command", std::string(to_string(spec.command))},
              {"format", spec.format == Format::Csv ? "csv" : "json"},
              {"seed", spec.sampling.seed}};
  if (spec.expect) doc["expect"] = *spec.expect == Expectation::Positive ? "positive" : "negative";
  if (!spec.config_path.empty()) doc["config"] = spec.config_path;
  switch (spec.command) {
    case Command::Constants:
      break;
    case Command::Scan:
      doc["surface"] = spec.surface;
      doc["k"] = spec.k;
      doc["grid"] = {spec.sampling.grid_u, spec.sampling.grid_v};
      doc["random"] = spec.sampling.random;
      doc["trace"] = spec.trace;
      break;
    case Command::Margins:
      doc["kind"] = spec.margin_kind;
      if (spec.from) doc["from"] = *spec.from;
      if (spec.to) doc["to"] = *spec.to;
      doc["steps"] = spec.steps;
      doc["directions"] = spec.directions;
      break;
    case Command::Curvature:
    case Command::Stability:
      doc["i"] = spec.first;
      doc["j"] = spec.second;
      doc["samples"] = spec.samples;
      break;
    case Command::Geodesics:
      doc["random"] = spec.random_seeds;
      break;
    case Command::Counterexample:
      doc["a"] = spec.a;
      doc["eps"] = spec.eps;
      doc["m"] = spec.m;
      break;
  }
  return doc;
}

namespace {

struct SurfaceFlags {
  std::string surface;
  std::optional<double> radius;
  std::vector<double> centre;
  std::vector<double> point;
  std::vector<double> direction;
  std::vector<double> normal;
  std::optional<double> offset;
  std::optional<double> half_length;
  std::optional<double> extent;
  std::optional<double> level;
};

json vec3(const std::vector<double>& v) { return json::array({v[0], v[1], v[2]}); }

json resolve_surface(const SurfaceFlags& f, double a) {
  if (!f.surface.empty() && f.surface.front() == '{') {
    try {
      return json::parse(f.surface);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::InvalidParams, std::string("--surface: ") + e.what());
    }
  }
  json doc = {{"family", f.surface}};
  auto need = [&](const std::optional<double>& v, const char* flag) {
    if (!v) throw Error(ErrorCode::InvalidParams, "surface " + f.surface + " needs " + flag);
    return *v;
  };
  if (f.surface == "sphere") {
    doc["radius"] = need(f.radius, "--r");
    if (!f.centre.empty()) doc["centre"] = vec3(f.centre);
  } else if (f.surface == "cylinder") {
    doc["radius"] = need(f.radius, "--r");
    if (!f.point.empty()) doc["point"] = vec3(f.point);
    if (!f.direction.empty()) doc["direction"] = vec3(f.direction);
    if (f.half_length) doc["half_length"] = *f.half_length;
  } else if (f.surface == "plane") {
    doc["offset"] = need(f.offset, "--offset");
    if (!f.normal.empty()) doc["normal"] = vec3(f.normal);
    if (f.extent) doc["extent"] = *f.extent;
  } else if (f.surface == "ellipsoid2") {
    doc["a"] = a;
    doc["r"] = need(f.radius, "--r");
  } else if (f.surface == "ellipsoidN") {
    doc["level"] = need(f.level, "--level");
  } else {
    throw Error(ErrorCode::InvalidParams, "unknown surface family \"" + f.surface + "\"");
  }
  return doc;
}

void add_expect(CLI::App* app, std::optional<Expectation>& target) {
  static const std::map<std::string, Expectation> names{{"positive", Expectation::Positive},
                                                        {"negative", Expectation::Negative}};
  app->add_option("--expect", target, "Exit 1 unless the result has this sign")
      ->transform(CLI::CheckedTransformer(names, CLI::ignore_case));
}

void add_output(CLI::App* app, RunSpec& spec) {
  static const std::map<std::string, Format> names{{"csv", Format::Csv}, {"json", Format::Json}};
  app->add_option("--out", spec.out_path, "Output file (default stdout)");
  app->add_option("--format", spec.format, "csv or json")->transform(CLI::CheckedTransformer(names, CLI::ignore_case));
}

}  // namespace

RunSpec parse(int argc, const char* const* argv) {
  RunSpec spec;
  CLI::App app{"Barrier and stability numerics for Gibbons-Hawking metrics"};
  app.require_subcommand(1);

  auto* constants = app.add_subcommand("constants", "Print C and the R_k table");
  add_output(constants, spec);

  SurfaceFlags sf;
  int grid = 128;
  auto* scan = app.add_subcommand("scan", "k-convexity scan of a lifted barrier surface");
  scan->add_option("--config", spec.config_path, "Configuration JSON")->required();
  scan->add_option("--surface", sf.surface, "Surface JSON or family name")->required();
  scan->add_option("--k", spec.k, "Number of smallest eigenvalues summed")->check(CLI::Range(1, 3));
  scan->add_option("--grid", grid, "Grid points per chart direction")->check(CLI::NonNegativeNumber);
  scan->add_option("--random", spec.sampling.random, "Random samples");
  scan->add_option("--seed", spec.sampling.seed, "Random seed");
  scan->add_option("--threads", spec.sampling.threads, "Worker threads (0 = all cores)");
  scan->add_flag("--trace", spec.trace, "Emit every sample (csv)");
  scan->add_option("--r,--radius", sf.radius, "Radius (sphere, cylinder) or ellipsoid2 parameter r");
  scan->add_option("--centre", sf.centre, "Sphere centre")->expected(3)->delimiter(',');
  scan->add_option("--point", sf.point, "Point on the cylinder axis")->expected(3)->delimiter(',');
  scan->add_option("--direction", sf.direction, "Cylinder axis direction")->expected(3)->delimiter(',');
  scan->add_option("--normal", sf.normal, "Plane normal")->expected(3)->delimiter(',');
  scan->add_option("--offset", sf.offset, "Plane offset");
  scan->add_option("--half-length", sf.half_length, "Cylinder chart half length");
  scan->add_option("--extent", sf.extent, "Plane chart half width");
  scan->add_option("--a", spec.a, "ellipsoid2 focal half distance");
  scan->add_option("--level", sf.level, "ellipsoidN level (foci are the configuration centres)");
  add_output(scan, spec);
  add_expect(scan, spec.expect);

  auto* margins = app.add_subcommand("margins", "Barrier margin curves");
  margins->add_option("--config", spec.config_path, "Configuration JSON")->required();
  margins->add_option("--kind", spec.margin_kind, "sphere, cylinder, plane or codim2")
      ->check(CLI::IsMember({"sphere", "cylinder", "plane", "codim2"}));
  margins->add_option("--from", spec.from, "First radius or plane offset");
  margins->add_option("--to", spec.to, "Last radius or plane offset");
  margins->add_option("--steps", spec.steps, "Number of parameters")->check(CLI::PositiveNumber);
  margins->add_option("--directions", spec.directions, "Sample points per parameter")->check(CLI::PositiveNumber);
  add_output(margins, spec);
  add_expect(margins, spec.expect);

  auto* curvature = app.add_subcommand("curvature", "Curvature profile over a segment between two centres");
  auto* stability = app.add_subcommand("stability", "Strong stability test over a segment between two centres");
  for (auto* sub : {curvature, stability}) {
    sub->add_option("--config", spec.config_path, "Configuration JSON")->required();
    sub->add_option("--i", spec.first, "First endpoint index");
    sub->add_option("--j", spec.second, "Second endpoint index");
    sub->add_option("--samples", spec.samples, "Chebyshev samples (>= 100)");
    add_output(sub, spec);
    add_expect(sub, spec.expect);
  }

  auto* geodesics = app.add_subcommand("geodesics", "Critical points of the potential");
  geodesics->add_option("--config", spec.config_path, "Configuration JSON")->required();
  geodesics->add_option("--random", spec.random_seeds, "Random Newton seeds");
  geodesics->add_option("--seed", spec.sampling.seed, "Random seed");
  add_output(geodesics, spec);
  add_expect(geodesics, spec.expect);

  auto* counter = app.add_subcommand("counterexample", "(M + N) at the midpoint of the three-centre example");
  counter->add_option("--a", spec.a, "Half distance of the endpoints");
  counter->add_option("--eps", spec.eps, "Distance of the third centre");
  counter->add_option("--m", spec.m, "Mass");
  add_output(counter, spec);
  add_expect(counter, spec.expect);

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::Success& e) {
    std::ostringstream text, ignored;
    app.exit(e, text, ignored);
    throw HelpRequested{text.str()};
  }

  if (constants->parsed()) spec.command = Command::Constants;
  if (scan->parsed()) {
    spec.command = Command::Scan;
    spec.sampling.grid_u = spec.sampling.grid_v = grid;
    spec.surface = resolve_surface(sf, spec.a);
  }
  if (margins->parsed()) spec.command = Command::Margins;
  if (curvature->parsed()) spec.command = Command::Curvature;
  if (stability->parsed()) spec.command = Command::Stability;
  if (geodesics->parsed()) spec.command = Command::Geodesics;
  if (counter->parsed()) spec.command = Command::Counterexample;
  return spec;
}

namespace {

struct Outcome {
  std::string body;
  bool positive = true;
  bool negative = false;
};

std::string header(const RunSpec& spec) { return "# run_spec: " + to_json(spec).dump() + "\n"; }

Outcome do_constants(const RunSpec& spec) {
  Outcome o;
  if (spec.format == Format::Json) {
    json rk = json::object();
    for (int k = 2; k <= 10; ++k) rk[std::to_string(k)] = constant_Rk(k);
    o.body = json{{"run_spec", to_json(spec)}, {"C", constant_C()}, {"R_k", rk}}.dump(2) + "\n";
    return o;
  }
  std::ostringstream os;
  os << header(spec) << "name,k,value\n";
  os << "C,," << fmt(constant_C()) << "\n";
  for (int k = 2; k <= 10; ++k) os << "R_k," << k << "," << fmt(constant_Rk(k)) << "\n";
  o.body = os.str();
  return o;
}

Outcome do_scan(RunSpec spec) {
  const PointConfiguration config = io::load_config(spec.config_path);
  if (spec.surface.value("family", "") == "ellipsoidN" && !spec.surface.contains("foci")) {
    json foci = json::array();
    for (const auto& c : config.centres()) foci.push_back(io::vec_json(c.position));
    spec.surface["foci"] = foci;
  }
  const BarrierSurface surface = io::surface_from_json(spec.surface);
  std::vector<SampleMargin> trace;
  const ConvexityReport report = convexity_scan(config, surface, spec.k, spec.sampling, spec.trace ? &trace : nullptr);

  Outcome o;
  o.positive = report.verdict == Verdict::StrictlyConvex;
  o.negative = report.verdict == Verdict::Violated;
  if (spec.format == Format::Json) {
    json doc = io::to_json(report);
    doc["run_spec"] = to_json(spec);
    o.body = doc.dump(2) + "\n";
    return o;
  }
  std::ostringstream os;
  os << header(spec);
  if (spec.trace) {
    os << "index,u,v,x1,x2,x3,eigensum,scale,skipped\n";
    for (const auto& s : trace) {
      os << s.index << "," << fmt(s.params.x()) << "," << fmt(s.params.y()) << "," << fmt(s.x.x()) << ","
         << fmt(s.x.y()) << "," << fmt(s.x.z()) << "," << fmt(s.eigensum) << "," << fmt(s.scale) << ","
         << (s.skipped ? 1 : 0) << "\n";
    }
  } else {
    os << "k,min_eigensum,min_relative,argmin_u,argmin_v,argmin_x1,argmin_x2,argmin_x3,samples,skipped,verdict\n";
    os << report.k << "," << fmt(report.min_eigensum) << "," << fmt(report.min_relative) << ","
       << fmt(report.argmin_params.x()) << "," << fmt(report.argmin_params.y()) << "," << fmt(report.argmin_x.x())
       << "," << fmt(report.argmin_x.y()) << "," << fmt(report.argmin_x.z()) << "," << report.samples << ","
       << report.skipped << "," << to_string(report.verdict) << "\n";
  }
  o.body = os.str();
  return o;
}

MarginKind margin_kind(const std::string& name) {
  if (name == "cylinder") return MarginKind::CylinderHyp;
  if (name == "plane") return MarginKind::PlaneHyp;
  if (name == "codim2") return MarginKind::SphereCodim2;
  return MarginKind::SphereHyp;
}

Outcome do_margins(RunSpec spec) {
  const PointConfiguration config = io::load_config(spec.config_path);
  const MarginKind kind = margin_kind(spec.margin_kind);
  double threshold = 0.0;
  if (kind == MarginKind::PlaneHyp) {
    double top = -std::numeric_limits<double>::infinity();
    for (const auto& c : config.centres()) top = std::max(top, c.position.z());
    if (config.centres().empty()) top = 0.0;
    const double unit = 1.0 + config.diameter();
    if (!spec.from) spec.from = top + 0.05 * unit;
    if (!spec.to) spec.to = top + 5.0 * unit;
  } else {
    threshold = kind == MarginKind::SphereHyp     ? sphere_hyp_threshold(config)
                : kind == MarginKind::CylinderHyp ? cylinder_hyp_threshold(config)
                                                  : sphere_codim2_threshold(config);
    const double base = threshold > 0.0 ? threshold : 1.0;
    if (!spec.from) spec.from = 0.5 * base;
    if (!spec.to) spec.to = 2.0 * base;
  }
  std::vector<double> params;
  for (std::size_t i = 0; i < spec.steps; ++i) {
    const double f = spec.steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(spec.steps - 1);
    params.push_back(*spec.from + f * (*spec.to - *spec.from));
  }
  const auto rows = margin_curve(config, kind, params, spec.directions);

  Outcome o;
  o.positive = true;
  for (const auto& r : rows) {
    bool ok = r.min_margin > 0.0;
    if (kind == MarginKind::SphereCodim2) ok = ok && r.max_det_aux < 0.0;
    if (!ok) o.positive = false;
  }
  o.negative = !o.positive;
  const bool codim2 = kind == MarginKind::SphereCodim2;
  if (spec.format == Format::Json) {
    json list = json::array();
    for (const auto& r : rows) {
      json row = {{"parameter", r.parameter}, {"min_margin", r.min_margin}, {"argmin", io::vec_json(r.argmin)},
                  {"skipped", r.skipped}};
      if (codim2) {
        row["max_det_aux"] = r.max_det_aux;
        row["argmax_det_aux"] = io::vec_json(r.argmax_det_aux);
      }
      list.push_back(row);
    }
    o.body = json{{"run_spec", to_json(spec)}, {"threshold", threshold}, {"rows", list}}.dump(2) + "\n";
    return o;
  }
  std::ostringstream os;
  os << header(spec) << "# threshold: " << fmt(threshold) << "\n";
  os << "parameter,min_margin,argmin_x1,argmin_x2,argmin_x3";
  if (codim2) os << ",max_det_aux,argmax_x1,argmax_x2,argmax_x3";
  os << ",skipped\n";
  for (const auto& r : rows) {
    os << fmt(r.parameter) << "," << fmt(r.min_margin) << "," << fmt(r.argmin.x()) << "," << fmt(r.argmin.y()) << ","
       << fmt(r.argmin.z());
    if (codim2) {
      os << "," << fmt(r.max_det_aux) << "," << fmt(r.argmax_det_aux.x()) << "," << fmt(r.argmax_det_aux.y()) << ","
         << fmt(r.argmax_det_aux.z());
    }
    os << "," << r.skipped << "\n";
  }
  o.body = os.str();
  return o;
}

Outcome do_curvature(const RunSpec& spec) {
  const PointConfiguration config = io::load_config(spec.config_path);
  const SegmentSurface seg = SegmentSurface::make(config, spec.first, spec.second);
  const auto profile = curvature_profile(seg, spec.samples);
  Outcome o;
  double min_K = std::numeric_limits<double>::infinity();
  for (const auto& s : profile) min_K = std::min(min_K, s.K);
  o.positive = min_K > 0.0;
  o.negative = min_K < 0.0;
  if (spec.format == Format::Json) {
    json list = json::array();
    for (const auto& s : profile) list.push_back(io::to_json(s));
    o.body = json{{"run_spec", to_json(spec)}, {"half_length", seg.half_length()}, {"samples", list}}.dump(2) + "\n";
    return o;
  }
  std::ostringstream os;
  os << header(spec) << "t,K,M,N,I,II,III,IV\n";
  for (const auto& s : profile) {
    os << fmt(s.t) << "," << fmt(s.K) << "," << fmt(s.M) << "," << fmt(s.N) << "," << fmt(s.I) << "," << fmt(s.II)
       << "," << fmt(s.III) << "," << fmt(s.IV) << "\n";
  }
  o.body = os.str();
  return o;
}

Outcome do_stability(const RunSpec& spec) {
  const PointConfiguration config = io::load_config(spec.config_path);
  const SegmentSurface seg = SegmentSurface::make(config, spec.first, spec.second);
  const StabilityScan scan = strong_stability_scan(seg, spec.samples);
  const SufficientCondition cond = sufficient_condition(seg);
  Outcome o;
  o.positive = scan.min_K > 0.0;
  o.negative = scan.min_K < 0.0;
  if (spec.format == Format::Json) {
    o.body = json{{"run_spec", to_json(spec)},
                  {"half_length", seg.half_length()},
                  {"min_K", scan.min_K},
                  {"argmin_t", scan.argmin_t},
                  {"sufficient", {{"holds", cond.holds}, {"s", std::isfinite(cond.s) ? json(cond.s) : json("inf")},
                                  {"threshold", cond.threshold}}}}
                 .dump(2) +
             "\n";
    return o;
  }
  std::ostringstream os;
  os << header(spec) << "half_length,min_K,argmin_t,sufficient_holds,s,threshold\n";
  os << fmt(seg.half_length()) << "," << fmt(scan.min_K) << "," << fmt(scan.argmin_t) << ","
     << (cond.holds ? "true" : "false") << "," << fmt(cond.s) << "," << fmt(cond.threshold) << "\n";
  o.body = os.str();
  return o;
}

Outcome do_geodesics(const RunSpec& spec) {
  const PointConfiguration config = io::load_config(spec.config_path);
  CriticalPointOptions options;
  options.random_seeds = spec.random_seeds;
  options.seed = spec.sampling.seed;
  const CriticalPointSearch search = find_critical_points(config, options);
  Outcome o;
  const std::size_t needed = config.size() >= 2 ? config.size() - 1 : 0;
  const bool hull = std::all_of(search.points.begin(), search.points.end(), [](const auto& p) { return p.in_hull; });
  o.positive = hull && search.points.size() >= needed;
  o.negative = !o.positive;
  if (spec.format == Format::Json) {
    json list = json::array();
    for (const auto& p : search.points) list.push_back(io::to_json(p));
    o.body = json{{"run_spec", to_json(spec)},
                  {"seeds", search.seeds},
                  {"failed_seeds", search.failed_seeds},
                  {"critical_points", list}}
                 .dump(2) +
             "\n";
    return o;
  }
  std::ostringstream os;
  os << header(spec) << "# seeds: " << search.seeds << " failed: " << search.failed_seeds << "\n";
  os << "x1,x2,x3,residual,length,in_hull,positive,negative,zero,isolated\n";
  for (const auto& p : search.points) {
    os << fmt(p.x.x()) << "," << fmt(p.x.y()) << "," << fmt(p.x.z()) << "," << fmt(p.residual) << ","
       << fmt(p.length) << "," << (p.in_hull ? "true" : "false") << "," << p.hessian_signature[0] << ","
       << p.hessian_signature[1] << "," << p.hessian_signature[2] << "," << (p.isolated ? "true" : "false") << "\n";
  }
  o.body = os.str();
  return o;
}

Outcome do_counterexample(const RunSpec& spec) {
  const double value = counterexample_closed_form(spec.a, spec.eps, spec.m);
  Outcome o;
  o.positive = value > 0.0;
  o.negative = value < 0.0;
  if (spec.format == Format::Json) {
    o.body = json{{"run_spec", to_json(spec)}, {"M_plus_N", value}}.dump(2) + "\n";
    return o;
  }
  o.body = header(spec) + "a,eps,m,M_plus_N\n" + fmt(spec.a) + "," + fmt(spec.eps) + "," + fmt(spec.m) + "," +
           fmt(value) + "\n";
  return o;
}

}  // namespace

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  err << "seed: " << spec.sampling.seed << "\n";
  Outcome o;
  try {
    switch (spec.command) {
      case Command::Constants: o = do_constants(spec); break;
      case Command::Scan: o = do_scan(spec); break;
      case Command::Margins: o = do_margins(spec); break;
      case Command::Curvature: o = do_curvature(spec); break;
      case Command::Stability: o = do_stability(spec); break;
      case Command::Geodesics: o = do_geodesics(spec); break;
      case Command::Counterexample: o = do_counterexample(spec); break;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (spec.out_path.empty()) {
    out << o.body;
  } else {
    std::ofstream file(spec.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << spec.out_path << "\n";
      return 2;
    }
    file << o.body;
  }
  if (spec.expect) {
    const bool met = *spec.expect == Expectation::Positive ? o.positive : o.negative;
    if (!met) {
      err << "expectation " << (*spec.expect == Expectation::Positive ? "positive" : "negative") << " not met\n";
      return 1;
    }
  }
  return 0;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunSpec spec;
  try {
    spec = parse(argc, argv);
  } catch (const HelpRequested& h) {
    out << h.text;
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return run(spec, out, err);
}

}  // namespace ghb::cli
