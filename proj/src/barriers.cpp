#include "ghb/barriers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ghb/error.hpp"
#include "ghb/surfaces.hpp"

namespace ghb {

double sphere_hyp_margin(const PointConfiguration& config, const Vec3& x) {
  if (!(x.norm() > 0.0)) throw Error(ErrorCode::InvalidParams, "sphere margin needs x != 0");
  const PotentialJet jet = phi_jet(config, x);
  return jet.gradient.dot(x) + 4.0 * jet.value;
}

double cylinder_hyp_margin(const PointConfiguration& config, const Vec3& x, const Line& axis) {
  if (!(axis.direction.norm() > 0.0)) throw Error(ErrorCode::InvalidParams, "axis direction is zero");
  const Vec3 d = axis.direction.normalized();
  const Vec3 w = x - axis.point;
  const Vec3 radial = w - w.dot(d) * d;
  const double r = radial.norm();
  if (r <= config.exclusion_radius()) throw Error(ErrorCode::OnAxis, "point lies on the cylinder axis");
  const PotentialJet jet = phi_jet(config, x);
  return jet.gradient.dot(radial / r) + 2.0 * jet.value / r;
}

double plane_hyp_margin(const PointConfiguration& config, const Vec3& x, const Vec3& direction) {
  if (!(direction.norm() > 0.0)) throw Error(ErrorCode::InvalidParams, "plane direction is zero");
  const Vec3 n = direction.normalized();
  for (const auto& c : config.centres()) {
    if (!((c.position - x).dot(n) < 0.0)) {
      throw Error(ErrorCode::InvalidParams,
                  "plane does not separate the query side from every centre");
    }
  }
  return -phi_jet(config, x).gradient.dot(n);
}

Codim2Margins sphere_codim2_margins(const PointConfiguration& config, const Vec3& x) {
  const double r2 = x.squaredNorm();
  if (!(r2 > 0.0)) throw Error(ErrorCode::InvalidParams, "codim-2 margins need x != 0");
  const PotentialJet jet = phi_jet(config, x);
  const double radial = jet.gradient.dot(x);
  Codim2Margins out;
  out.minor1 = radial + 2.0 * jet.value;
  out.det_aux = jet.gradient.squaredNorm() + 2.0 * jet.value * radial / r2;
  return out;
}

EllipsoidInequalities ellipsoid_inequalities(double a, double m, const std::vector<Vec3>& extra_centres,
                                             double r, double beta) {
  if (!(a > 0.0) || !(r > 0.0) || !(m >= 0.0) || !std::isfinite(a) || !std::isfinite(r) ||
      !std::isfinite(m) || !(beta >= 0.0 && beta <= kPi)) {
    throw Error(ErrorCode::InvalidParams, "ellipsoid inequalities need a > 0, r > 0, m >= 0, beta in [0, pi]");
  }
  if (!extra_centres.empty()) {
    throw Error(ErrorCode::InvalidParams, "ellipsoid inequalities hold for the two-centre case only");
  }
  const auto config = PointConfiguration::unit_charges(m, {Vec3(0, 0, a), Vec3(0, 0, -a)});
  const SurfacePointData data = surface_point(TwoFociEllipsoid{a, r}, Vec2(0.0, beta));
  const PotentialJet jet = phi_jet(config, data.x);
  const double slope = jet.gradient.dot(data.nu);
  const double along_v = jet.gradient.dot(data.v);
  EllipsoidInequalities out;
  out.e1 = 2.0 * jet.value * data.sff_r3(0, 0) - slope;
  out.e2 = 2.0 * jet.value * data.sff_r3(1, 1) - slope;
  out.e4 = out.e1 * slope - along_v * along_v;
  return out;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw Error(ErrorCode::SolverFailure, "root is not bracketed");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double newton_root(const std::function<double(double)>& f, const std::function<double(double)>& df,
                   double x0, double tol, int max_iterations) {
  double x = x0;
  for (int it = 0; it < max_iterations; ++it) {
    const double slope = df(x);
    if (slope == 0.0 || !std::isfinite(slope)) break;
    const double step = f(x) / slope;
    x -= step;
    if (std::abs(step) <= tol * std::max(1.0, std::abs(x))) return x;
  }
  throw Error(ErrorCode::NoConvergence, "Newton iteration did not converge");
}

namespace {

double polish_cubic_root(double c3, double c2, double c1, double c0, double lo, double hi) {
  auto f = [=](double x) { return ((c3 * x + c2) * x + c1) * x + c0; };
  auto df = [=](double x) { return (3.0 * c3 * x + 2.0 * c2) * x + c1; };
  const double rough = bisect_root(f, lo, hi, 1e-8);
  return newton_root(f, df, rough, 1e-14);
}

}  // namespace

double constant_C() {
  static const double value = polish_cubic_root(-1.0, 4.0, 5.0, 2.0, 5.0, 6.0);
  return value;
}

double constant_Rk(int k) {
  if (k < 2) throw Error(ErrorCode::InvalidK, "R_k is defined for k >= 2");
  const double kk = static_cast<double>(k);
  return polish_cubic_root(-4.0, 16.0, 2.0, kk - 2.0, 4.0, 4.0 + kk);
}

double sphere_hyp_threshold(const PointConfiguration& config) { return 4.0 / 3.0 * config.max_norm(); }

double cylinder_hyp_threshold(const PointConfiguration& config) {
  return 2.0 * config.max_axial_radius();
}

double sphere_codim2_threshold(const PointConfiguration& config) {
  return constant_C() * config.max_norm();
}

std::string_view to_string(MarginKind kind) {
  switch (kind) {
    case MarginKind::SphereHyp: return "sphere";
    case MarginKind::CylinderHyp: return "cylinder";
    case MarginKind::PlaneHyp: return "plane";
    case MarginKind::SphereCodim2: return "codim2";
  }
  return "sphere";
}

std::vector<Vec3> fibonacci_sphere(std::size_t n) {
  std::vector<Vec3> out;
  out.reserve(n);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double angle = golden * static_cast<double>(i);
    out.emplace_back(rho * std::cos(angle), rho * std::sin(angle), z);
  }
  return out;
}

std::vector<MarginRow> margin_curve(const PointConfiguration& config, MarginKind kind,
                                    const std::vector<double>& parameters, std::size_t directions) {
  if (directions == 0) throw Error(ErrorCode::InvalidParams, "margin curve needs sample points");
  const std::vector<Vec3> sphere_dirs =
      (kind == MarginKind::SphereHyp || kind == MarginKind::SphereCodim2) ? fibonacci_sphere(directions)
                                                                          : std::vector<Vec3>{};
  const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(directions))));
  const auto other = (directions + side - 1) / side;

  double zmin = 0.0, zmax = 0.0;
  if (!config.centres().empty()) {
    zmin = std::numeric_limits<double>::infinity();
    zmax = -zmin;
    for (const auto& c : config.centres()) {
      zmin = std::min(zmin, c.position.z());
      zmax = std::max(zmax, c.position.z());
    }
  }

  std::vector<MarginRow> rows;
  rows.reserve(parameters.size());
  for (const double param : parameters) {
    MarginRow row;
    row.parameter = param;
    row.min_margin = std::numeric_limits<double>::infinity();
    row.max_det_aux = -std::numeric_limits<double>::infinity();
    auto consider = [&](const Vec3& x, auto&& margin) {
      try {
        margin(x);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularPoint && e.code() != ErrorCode::OnAxis) throw;
        ++row.skipped;
      }
    };
    auto track_min = [&](const Vec3& x, double value) {
      if (value < row.min_margin) {
        row.min_margin = value;
        row.argmin = x;
      }
    };
    switch (kind) {
      case MarginKind::SphereHyp:
        for (const auto& d : sphere_dirs) {
          const Vec3 x = param * d;
          consider(x, [&](const Vec3& p) { track_min(p, sphere_hyp_margin(config, p)); });
        }
        break;
      case MarginKind::SphereCodim2:
        for (const auto& d : sphere_dirs) {
          const Vec3 x = param * d;
          consider(x, [&](const Vec3& p) {
            const Codim2Margins c = sphere_codim2_margins(config, p);
            track_min(p, c.minor1);
            if (c.det_aux > row.max_det_aux) {
              row.max_det_aux = c.det_aux;
              row.argmax_det_aux = p;
            }
          });
        }
        break;
      case MarginKind::CylinderHyp: {
        const double lo = zmin - 2.0 * (1.0 + param);
        const double hi = zmax + 2.0 * (1.0 + param);
        const Line axis{Vec3::Zero(), Vec3::UnitZ()};
        for (std::size_t i = 0; i < side; ++i) {
          const double angle = 2.0 * kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(side);
          for (std::size_t j = 0; j < other; ++j) {
            const double h = lo + (hi - lo) * (static_cast<double>(j) + 0.5) / static_cast<double>(other);
            const Vec3 x(param * std::cos(angle), param * std::sin(angle), h);
            consider(x, [&](const Vec3& p) { track_min(p, cylinder_hyp_margin(config, p, axis)); });
          }
        }
        break;
      }
      case MarginKind::PlaneHyp: {
        Vec3 dir = Vec3::UnitZ();
        if (param > zmax) {
          dir = Vec3::UnitZ();
        } else if (param < zmin) {
          dir = -Vec3::UnitZ();
        } else {
          throw Error(ErrorCode::InvalidParams, "plane offset does not separate the centres");
        }
        const double extent = 3.0 * (1.0 + config.max_norm());
        for (std::size_t i = 0; i < side; ++i) {
          for (std::size_t j = 0; j < other; ++j) {
            const double s = -extent + 2.0 * extent * (static_cast<double>(i) + 0.5) / static_cast<double>(side);
            const double t = -extent + 2.0 * extent * (static_cast<double>(j) + 0.5) / static_cast<double>(other);
            const Vec3 x(s, t, param);
            consider(x, [&](const Vec3& p) { track_min(p, plane_hyp_margin(config, p, dir)); });
          }
        }
        break;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ghb
