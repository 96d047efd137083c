#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ghb/barriers.hpp"
#include "ghb/cli.hpp"
#include "ghb/convexity.hpp"
#include "ghb/error.hpp"
#include "ghb/geodesics.hpp"
#include "ghb/io.hpp"
#include "ghb/stability.hpp"
#include "ghb/surfaces.hpp"

namespace py = pybind11;
using namespace ghb;

namespace {

PointConfiguration make_config(double m, const std::vector<Vec3>& points, const std::vector<int>& charges) {
  if (!charges.empty() && charges.size() != points.size()) {
    throw Error(ErrorCode::InvalidConfiguration, "charges must match points");
  }
  std::vector<Centre> centres;
  for (std::size_t i = 0; i < points.size(); ++i) centres.push_back({points[i], charges.empty() ? 1 : charges[i]});
  return PointConfiguration(m, std::move(centres));
}

BarrierSurface parse_surface(const std::string& text) { return io::surface_from_json(nlohmann::json::parse(text)); }

}  // namespace

PYBIND11_MODULE(_core, mod) {
  py::register_exception<Error>(mod, "GhbError", PyExc_ValueError);

  py::class_<PointConfiguration>(mod, "PointConfiguration")
      .def(py::init(&make_config), py::arg("m"), py::arg("points"), py::arg("charges") = std::vector<int>{})
      .def_static("from_json", [](const std::string& text) { return io::config_from_json(nlohmann::json::parse(text)); })
      .def("to_json", [](const PointConfiguration& c) { return io::to_json(c).dump(); })
      .def_property_readonly("mass", &PointConfiguration::mass)
      .def_property_readonly("size", &PointConfiguration::size)
      .def_property_readonly("diameter", &PointConfiguration::diameter)
      .def_property_readonly("max_norm", &PointConfiguration::max_norm)
      .def("phi", [](const PointConfiguration& c, const Vec3& x) {
        const PotentialJet jet = phi_jet(c, x);
        return py::make_tuple(jet.value, jet.gradient, jet.hessian);
      });

  mod.def("constant_C", &constant_C);
  mod.def("constant_Rk", &constant_Rk, py::arg("k"));
  mod.def("k_smallest_eigensum", &k_smallest_eigensum, py::arg("matrix"), py::arg("k"));
  mod.def("symmetric_eigenvalues", &symmetric_eigenvalues, py::arg("matrix"));
  mod.def("sphere_hyp_margin", &sphere_hyp_margin, py::arg("config"), py::arg("x"));
  mod.def("sphere_codim2_margins", [](const PointConfiguration& c, const Vec3& x) {
    const Codim2Margins m = sphere_codim2_margins(c, x);
    return py::make_tuple(m.minor1, m.det_aux);
  });
  mod.def(
      "counterexample_closed_form", [](double a, double eps, double m) { return counterexample_closed_form(a, eps, m); },
      py::arg("a"), py::arg("eps"), py::arg("m"));

  mod.def(
      "lifted_sff",
      [](const PointConfiguration& c, const std::string& surface, const Vec2& params) {
        return lifted_sff(c, surface_point(parse_surface(surface), params)).matrix;
      },
      py::arg("config"), py::arg("surface"), py::arg("params"));

  mod.def(
      "convexity_scan",
      [](const PointConfiguration& c, const std::string& surface, int k, int grid, std::size_t random,
         std::uint64_t seed) {
        const Sampling sampling{.grid_u = grid, .grid_v = grid, .random = random, .seed = seed};
        return io::to_json(convexity_scan(c, parse_surface(surface), k, sampling)).dump();
      },
      py::arg("config"), py::arg("surface"), py::arg("k"), py::arg("grid") = 64, py::arg("random") = 1000,
      py::arg("seed") = 0);

  mod.def(
      "strong_stability_scan",
      [](const PointConfiguration& c, std::size_t i, std::size_t j, std::size_t samples) {
        const StabilityScan s = strong_stability_scan(SegmentSurface::make(c, i, j), samples);
        return py::make_tuple(s.min_K, s.argmin_t);
      },
      py::arg("config"), py::arg("i") = 0, py::arg("j") = 1, py::arg("samples") = 200);

  mod.def(
      "critical_points",
      [](const PointConfiguration& c, std::size_t random_seeds, std::uint64_t seed) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& cp : find_critical_points(c, {.random_seeds = random_seeds, .seed = seed}).points) {
          out.push_back(io::to_json(cp));
        }
        return out.dump();
      },
      py::arg("config"), py::arg("random_seeds") = 1000, py::arg("seed") = 0);

  mod.def("cli", [](const std::vector<std::string>& args) {
    std::vector<const char*> argv{"ghb"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
