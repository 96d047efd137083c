#include "ghb/stability.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <limits>

#include "ghb/barriers.hpp"

namespace ghb {

SegmentSurface SegmentSurface::make(const PointConfiguration& config, std::size_t first, std::size_t second) {
  const auto& centres = config.centres();
  if (first >= centres.size() || second >= centres.size() || first == second) {
    throw Error(ErrorCode::InvalidIndex, "segment needs two distinct centre indices");
  }
  if (centres[first].multiplicity != 1 || centres[second].multiplicity != 1) {
    throw Error(ErrorCode::InvalidConfiguration, "segment endpoints must have multiplicity 1");
  }
  const Vec3 top = centres[first].position;
  const Vec3 bottom = centres[second].position;
  const Vec3 mid = 0.5 * (top + bottom);
  const double a = 0.5 * (top - bottom).norm();
  const Mat3 rot = Eigen::Quaterniond::FromTwoVectors((top - bottom).normalized(), Vec3::UnitZ())
                       .toRotationMatrix();

  std::vector<Centre> moved;
  std::vector<Centre> satellites;
  moved.push_back({Vec3(0, 0, a), 1});
  moved.push_back({Vec3(0, 0, -a), 1});
  const double margin = 1e-6 * a;
  for (std::size_t i = 0; i < centres.size(); ++i) {
    if (i == first || i == second) continue;
    const Vec3 p = rot * (centres[i].position - mid);
    const double along = std::clamp(p.z(), -a, a);
    if ((p - Vec3(0, 0, along)).norm() <= margin) {
      throw Error(ErrorCode::SingularPoint, "another centre lies on the segment");
    }
    moved.push_back({p, centres[i].multiplicity});
    satellites.push_back({p, centres[i].multiplicity});
  }
  return SegmentSurface(PointConfiguration(config.mass(), std::move(moved)), std::move(satellites), a);
}

namespace {

void check_open_segment(const SegmentSurface& seg, double t) {
  if (!std::isfinite(t) || !(std::abs(t) < seg.half_length() - seg.endpoint_margin())) {
    throw Error(ErrorCode::SingularPoint, "axial coordinate is at or beyond an endpoint");
  }
}

}  // namespace

double gaussian_curvature_direct(const SegmentSurface& seg, double t) {
  check_open_segment(seg, t);
  const PotentialJet jet = phi_jet(seg.frame_config(), Vec3(0, 0, t));
  const double phi = jet.value;
  const double d1 = jet.gradient.z();
  const double d2 = jet.hessian(2, 2);
  // g = 1 / (2 phi), g'' = -phi'' / (2 phi^2) + phi'^2 / phi^3
  const double g2 = -d2 / (2.0 * phi * phi) + d1 * d1 / (phi * phi * phi);
  return -g2;
}

CurvatureSample mn_decomposition(const SegmentSurface& seg, double t) {
  check_open_segment(seg, t);
  const Vec3 x(0, 0, t);
  PotentialJet sat;
  sat.value = seg.mass();
  for (const auto& c : seg.satellites()) {
    if ((x - c.position).norm() <= seg.frame_config().exclusion_radius()) {
      throw Error(ErrorCode::SingularPoint, "sample coincides with a satellite");
    }
  }
  accumulate_jet(seg.satellites(), x, sat);
  const double a = seg.half_length();
  const double w = a * a - t * t;
  const double p = sat.value;
  const double p1 = sat.gradient.z();
  const double p2 = sat.hessian(2, 2);

  CurvatureSample s;
  s.t = t;
  s.I = 2.0 * p1 * p1 * w * w * w;
  s.II = 8.0 * a * t * p1 * w;
  s.III = -a * p2 * w * w;
  s.IV = -p * p2 * w * w * w;
  s.M = s.I + s.II + s.III + s.IV;
  s.N = -(2.0 * a * a + 2.0 * a * p * w + 8.0 * a * p * t * t);
  const double base = a + p * w;
  s.K = -(s.M + s.N) / (2.0 * base * base * base);
  return s;
}

std::vector<double> chebyshev_nodes(double c, std::size_t n) {
  std::vector<double> nodes(n);
  for (std::size_t k = 0; k < n; ++k) {
    nodes[k] = c * std::cos((2.0 * static_cast<double>(k) + 1.0) * kPi / (2.0 * static_cast<double>(n)));
  }
  return nodes;
}

namespace {

std::vector<double> scan_nodes(const SegmentSurface& seg, std::size_t n) {
  if (n < 100) throw Error(ErrorCode::InvalidParams, "curvature scans need at least 100 samples");
  return chebyshev_nodes(seg.half_length() - seg.endpoint_margin(), n);
}

}  // namespace

StabilityScan strong_stability_scan(const SegmentSurface& seg, std::size_t n) {
  StabilityScan out;
  out.min_K = std::numeric_limits<double>::infinity();
  for (const double t : scan_nodes(seg, n)) {
    const double K = gaussian_curvature_direct(seg, t);
    if (K < out.min_K) {
      out.min_K = K;
      out.argmin_t = t;
    }
  }
  return out;
}

std::vector<CurvatureSample> curvature_profile(const SegmentSurface& seg, std::size_t n) {
  std::vector<CurvatureSample> out;
  for (const double t : scan_nodes(seg, n)) out.push_back(mn_decomposition(seg, t));
  return out;
}

SufficientCondition sufficient_condition(const SegmentSurface& seg) {
  const std::size_t k = seg.satellites().size() + 2;
  SufficientCondition out;
  out.threshold = std::max(std::sqrt((static_cast<double>(k) - 2.0) / 2.0), constant_Rk(static_cast<int>(k)));
  if (seg.satellites().empty()) {
    out.s = std::numeric_limits<double>::infinity();
    out.holds = true;
    return out;
  }
  double nearest = std::numeric_limits<double>::infinity();
  for (const auto& c : seg.satellites()) nearest = std::min(nearest, c.position.norm());
  out.s = nearest / seg.half_length() - 1.0;
  out.holds = out.s > out.threshold;
  return out;
}

PointConfiguration counterexample_config(double a, double eps, double m) {
  if (!(a > 0.0) || !(eps > 0.0) || !(m >= 0.0)) {
    throw Error(ErrorCode::InvalidParams, "counterexample needs a > 0, eps > 0, m >= 0");
  }
  return PointConfiguration::unit_charges(m, {Vec3(0, 0, a), Vec3(0, 0, -a), Vec3(0, eps, 0)});
}

std::vector<double> counterexample_sign_changes(double a, double m, double eps_max, std::size_t samples) {
  if (!(eps_max > 0.0) || samples < 2) throw Error(ErrorCode::InvalidParams, "bad sign-change search range");
  const double lo = eps_max * 1e-6;
  auto f = [&](double eps) { return counterexample_closed_form(a, eps, m); };
  std::vector<double> roots;
  double prev_eps = lo;
  double prev = f(lo);
  for (std::size_t i = 1; i < samples; ++i) {
    const double eps = lo * std::pow(eps_max / lo, static_cast<double>(i) / static_cast<double>(samples - 1));
    const double value = f(eps);
    if ((value > 0.0) != (prev > 0.0)) roots.push_back(bisect_root(f, prev_eps, eps, 1e-14 * eps));
    prev_eps = eps;
    prev = value;
  }
  return roots;
}

}  // namespace ghb
