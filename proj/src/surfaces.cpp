#include "ghb/surfaces.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include "ghb/error.hpp"

namespace ghb {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

/// Orthonormal (e1, e2) with e1 x e2 = n for a unit vector n.
std::pair<Vec3, Vec3> complete_frame(const Vec3& n) {
  Eigen::Index axis = 0;
  n.cwiseAbs().minCoeff(&axis);
  Vec3 e = Vec3::Unit(axis);
  Vec3 e1 = (e - e.dot(n) * n).normalized();
  Vec3 e2 = n.cross(e1);
  return {e1, e2};
}

void check_in_box(const ChartBox& box, const Vec2& p) {
  constexpr double slack = 1e-12;
  for (int i = 0; i < 2; ++i) {
    const double width = box.hi[i] - box.lo[i];
    if (!std::isfinite(p[i]) || p[i] < box.lo[i] - slack * (1.0 + width) ||
        p[i] > box.hi[i] + slack * (1.0 + width)) {
      std::ostringstream os;
      os << "chart parameter " << i << " = " << p[i] << " outside [" << box.lo[i] << ", "
         << box.hi[i] << "]";
      throw Error(ErrorCode::ChartDomain, os.str());
    }
  }
}

double level_function(const std::vector<Vec3>& foci, const Vec3& x) {
  double f = 0.0;
  for (const auto& p : foci) f += (x - p).norm();
  return f;
}

Vec3 spherical_direction(const Vec2& p) {
  const double st = std::sin(p[0]);
  return {st * std::cos(p[1]), st * std::sin(p[1]), std::cos(p[0])};
}

/// Solves F(origin + t d) = level for t > 0 by bisection followed by a
/// bracketed Newton polish.
double shoot(const MultiFociEllipsoid& e, const Vec3& d) {
  double spread = 0.0;
  for (const auto& p : e.foci) spread += (p - e.origin).norm();
  double lo = 0.0;
  double hi = (e.level + spread) / static_cast<double>(e.foci.size());
  auto g = [&](double t) { return level_function(e.foci, e.origin + t * d) - e.level; };
  if (!(g(lo) < 0.0) || !(g(hi) >= 0.0)) {
    throw Error(ErrorCode::SolverFailure, "level set ray is not bracketed");
  }
  while (hi - lo > 1e-8 * hi) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 50; ++it) {
    const Vec3 x = e.origin + t * d;
    double f = -e.level;
    double df = 0.0;
    for (const auto& p : e.foci) {
      const Vec3 w = x - p;
      const double n = w.norm();
      f += n;
      if (n > 0.0) df += w.dot(d) / n;
    }
    if (std::abs(f) <= 1e-14 * e.level) break;
    if (!(df > 0.0)) break;
    double next = t - f / df;
    if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
    (f < 0.0 ? lo : hi) = t;
    if (next == t) break;
    t = next;
  }
  if (std::abs(g(t)) > 1e-10 * e.level) {
    throw Error(ErrorCode::SolverFailure, "level set ray solve did not converge");
  }
  return t;
}

SurfacePointData sphere_point(const Sphere& s, const Vec2& p) {
  const double st = std::sin(p[0]), ct = std::cos(p[0]);
  const double sp = std::sin(p[1]), cp = std::cos(p[1]);
  SurfacePointData out;
  const Vec3 radial(st * cp, st * sp, ct);
  out.x = s.centre + s.radius * radial;
  out.u = Vec3(-sp, cp, 0.0);
  out.v = Vec3(ct * cp, ct * sp, -st);
  out.nu = -radial;
  out.sff_r3 = Mat2::Identity() / s.radius;
  return out;
}

SurfacePointData cylinder_point(const Cylinder& c, const Vec2& p) {
  const Vec3 d = c.direction.normalized();
  const auto [e1, e2] = complete_frame(d);
  const Vec3 radial = std::cos(p[0]) * e1 + std::sin(p[0]) * e2;
  const Vec3 around = -std::sin(p[0]) * e1 + std::cos(p[0]) * e2;
  SurfacePointData out;
  out.x = c.point + p[1] * d + c.radius * radial;
  out.u = around;
  out.v = -d;
  out.nu = -radial;
  out.sff_r3 << 1.0 / c.radius, 0.0, 0.0, 0.0;
  return out;
}

SurfacePointData plane_point(const Plane& pl, const Vec2& p) {
  const Vec3 n = pl.normal.normalized();
  const auto [e1, e2] = complete_frame(n);
  SurfacePointData out;
  out.x = pl.offset * n + p[0] * e1 + p[1] * e2;
  out.u = e1;
  out.v = e2;
  out.nu = n;
  out.sff_r3.setZero();
  return out;
}

SurfacePointData ellipsoid2_point(const TwoFociEllipsoid& e, const Vec2& p) {
  const double alpha = p[0], beta = p[1];
  const double sh = std::sinh(e.r), ch = std::cosh(e.r);
  const double sb = std::sin(beta), cb = std::cos(beta);
  const double sa = std::sin(alpha), ca = std::cos(alpha);
  const double big_a = std::sqrt((ch - cb) * (ch + cb));
  SurfacePointData out;
  out.x = Vec3(e.a * sh * sb * ca, e.a * sh * sb * sa, e.a * ch * cb);
  out.u = Vec3(-sa, ca, 0.0);
  out.v = Vec3(sh * cb * ca, sh * cb * sa, -ch * sb) / big_a;
  out.nu = out.u.cross(out.v);
  out.sff_r3(0, 0) = ch / (e.a * big_a * sh);
  out.sff_r3(1, 1) = sh * ch / (e.a * big_a * big_a * big_a);
  out.sff_r3(0, 1) = out.sff_r3(1, 0) = 0.0;
  return out;
}

SurfacePointData multi_foci_point(const MultiFociEllipsoid& e, const Vec2& p) {
  const Vec3 d = spherical_direction(p);
  SurfacePointData out;
  out.x = e.origin + shoot(e, d) * d;

  double scale = 0.0;
  for (const auto& f : e.foci) scale = std::max(scale, (f - e.origin).norm());
  const double delta = 1e-9 * (1.0 + 2.0 * scale);
  Vec3 grad = Vec3::Zero();
  Mat3 hess = Mat3::Zero();
  for (const auto& f : e.foci) {
    const Vec3 w = out.x - f;
    const double n = w.norm();
    if (n <= delta) throw Error(ErrorCode::SingularPoint, "level set passes through a focus");
    const Vec3 unit = w / n;
    grad += unit;
    hess += (Mat3::Identity() - unit * unit.transpose()) / n;
  }
  const double gnorm = grad.norm();
  if (!(gnorm > 1e-12 * static_cast<double>(e.foci.size()))) {
    throw Error(ErrorCode::SolverFailure, "level function is critical on the level set");
  }
  out.nu = -grad / gnorm;
  std::tie(out.u, out.v) = complete_frame(out.nu);
  // Level-set formula: SFF = Hess F / |grad F| restricted to the tangent plane.
  out.sff_r3(0, 0) = out.u.dot(hess * out.u) / gnorm;
  out.sff_r3(1, 1) = out.v.dot(hess * out.v) / gnorm;
  out.sff_r3(0, 1) = out.sff_r3(1, 0) = out.u.dot(hess * out.v) / gnorm;
  return out;
}

}  // namespace

std::pair<Vec3, double> geometric_median(const std::vector<Vec3>& points) {
  if (points.empty()) throw Error(ErrorCode::InvalidParams, "geometric median of no points");
  const auto n = points.size();
  // A point p_j is the minimiser iff the unit pulls of the others sum to <= 1.
  for (std::size_t j = 0; j < n; ++j) {
    Vec3 pull = Vec3::Zero();
    bool duplicate = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j) continue;
      const Vec3 w = points[j] - points[i];
      const double len = w.norm();
      if (len == 0.0) {
        duplicate = true;
        continue;
      }
      pull += w / len;
    }
    if (duplicate || pull.norm() <= 1.0) return {points[j], level_function(points, points[j])};
  }
  Vec3 x = Vec3::Zero();
  double scale = 0.0;
  for (const auto& p : points) x += p;
  x /= static_cast<double>(n);
  for (const auto& p : points) scale = std::max(scale, (p - x).norm());
  for (int it = 0; it < 100000; ++it) {
    Vec3 num = Vec3::Zero();
    double den = 0.0;
    for (const auto& p : points) {
      const double len = std::max((x - p).norm(), 1e-300);
      num += p / len;
      den += 1.0 / len;
    }
    const Vec3 next = num / den;
    const double step = (next - x).norm();
    x = next;
    if (step <= 1e-15 * (1.0 + scale)) break;
  }
  return {x, level_function(points, x)};
}

MultiFociEllipsoid make_multi_foci_ellipsoid(std::vector<Vec3> foci, double level) {
  if (foci.empty()) throw Error(ErrorCode::InvalidParams, "multi-foci ellipsoid needs foci");
  for (const auto& f : foci) {
    if (!f.allFinite()) throw Error(ErrorCode::InvalidParams, "focus is not finite");
  }
  MultiFociEllipsoid e;
  e.foci = std::move(foci);
  e.level = level;
  std::tie(e.origin, e.min_level) = geometric_median(e.foci);
  validate(e);
  return e;
}

void validate(const BarrierSurface& surface) {
  auto fail = [](const char* msg) { throw Error(ErrorCode::InvalidParams, msg); };
  std::visit(
      overloaded{
          [&](const Sphere& s) {
            if (!s.centre.allFinite() || !(s.radius > 0.0) || !std::isfinite(s.radius))
              fail("sphere needs a finite centre and radius > 0");
          },
          [&](const Cylinder& c) {
            if (!c.point.allFinite() || !c.direction.allFinite() || !(c.direction.norm() > 0.0))
              fail("cylinder needs a finite axis point and non-zero direction");
            if (!(c.radius > 0.0) || !std::isfinite(c.radius)) fail("cylinder radius must be > 0");
            if (!(c.half_length > 0.0) || !std::isfinite(c.half_length))
              fail("cylinder half_length must be > 0");
          },
          [&](const Plane& p) {
            if (!p.normal.allFinite() || !(p.normal.norm() > 0.0) || !std::isfinite(p.offset))
              fail("plane needs a finite non-zero normal and finite offset");
            if (!(p.extent > 0.0) || !std::isfinite(p.extent)) fail("plane extent must be > 0");
          },
          [&](const TwoFociEllipsoid& e) {
            if (!(e.a > 0.0) || !(e.r > 0.0) || !std::isfinite(e.a) || !std::isfinite(e.r))
              fail("two-foci ellipsoid needs a > 0 and r > 0");
          },
          [&](const MultiFociEllipsoid& e) {
            if (e.foci.empty()) fail("multi-foci ellipsoid needs foci");
            if (!std::isfinite(e.level)) fail("multi-foci level must be finite");
            if (!(e.level > e.min_level * (1.0 + 1e-12) + 1e-300))
              fail("multi-foci level must exceed the minimum of the distance sum");
            if (!(level_function(e.foci, e.origin) < e.level))
              fail("multi-foci shooting origin is not inside the level set");
          },
      },
      surface);
}

std::string_view family_name(const BarrierSurface& surface) {
  return std::visit(overloaded{
                        [](const Sphere&) { return std::string_view("sphere"); },
                        [](const Cylinder&) { return std::string_view("cylinder"); },
                        [](const Plane&) { return std::string_view("plane"); },
                        [](const TwoFociEllipsoid&) { return std::string_view("ellipsoid2"); },
                        [](const MultiFociEllipsoid&) { return std::string_view("ellipsoidN"); },
                    },
                    surface);
}

ChartBox chart_box(const BarrierSurface& surface) {
  return std::visit(
      overloaded{
          [](const Sphere&) { return ChartBox{{0.0, 0.0}, {kPi, 2.0 * kPi}}; },
          [](const Cylinder& c) {
            return ChartBox{{0.0, -c.half_length}, {2.0 * kPi, c.half_length}};
          },
          [](const Plane& p) { return ChartBox{{-p.extent, -p.extent}, {p.extent, p.extent}}; },
          [](const TwoFociEllipsoid&) { return ChartBox{{0.0, 0.0}, {2.0 * kPi, kPi}}; },
          [](const MultiFociEllipsoid&) { return ChartBox{{0.0, 0.0}, {kPi, 2.0 * kPi}}; },
      },
      surface);
}

SurfacePointData surface_point(const BarrierSurface& surface, const Vec2& params) {
  check_in_box(chart_box(surface), params);
  SurfacePointData out = std::visit(
      overloaded{
          [&](const Sphere& s) { return sphere_point(s, params); },
          [&](const Cylinder& c) { return cylinder_point(c, params); },
          [&](const Plane& p) { return plane_point(p, params); },
          [&](const TwoFociEllipsoid& e) { return ellipsoid2_point(e, params); },
          [&](const MultiFociEllipsoid& e) { return multi_foci_point(e, params); },
      },
      surface);
  out.mean_r3 = out.sff_r3.trace();
  return out;
}

Vec3 chart_position(const BarrierSurface& surface, const Vec2& params) {
  return std::visit(
      overloaded{
          [&](const Sphere& s) { return sphere_point(s, params).x; },
          [&](const Cylinder& c) { return cylinder_point(c, params).x; },
          [&](const Plane& p) { return plane_point(p, params).x; },
          [&](const TwoFociEllipsoid& e) { return ellipsoid2_point(e, params).x; },
          [&](const MultiFociEllipsoid& e) {
            const Vec3 d = spherical_direction(params);
            return Vec3(e.origin + shoot(e, d) * d);
          },
      },
      surface);
}

AdaptedSFF lifted_sff(const PotentialJet& jet, const SurfacePointData& data) noexcept {
  const double phi = jet.value;
  const double inv_sqrt_phi = 1.0 / std::sqrt(phi);
  const double half_inv_phi = 0.5 / phi;
  AdaptedSFF out;
  out.nu_tilde = inv_sqrt_phi * data.nu;
  const double normal_slope = jet.gradient.dot(out.nu_tilde);

  Mat3& m = out.matrix;
  m(0, 0) = inv_sqrt_phi * data.sff_r3(0, 0) - half_inv_phi * normal_slope;
  m(1, 1) = inv_sqrt_phi * data.sff_r3(1, 1) - half_inv_phi * normal_slope;
  m(0, 1) = m(1, 0) = inv_sqrt_phi * data.sff_r3(0, 1);
  m(2, 2) = half_inv_phi * normal_slope;
  m(0, 2) = m(2, 0) = -half_inv_phi * data.u.cross(jet.gradient).dot(out.nu_tilde);
  m(1, 2) = m(2, 1) = -half_inv_phi * data.v.cross(jet.gradient).dot(out.nu_tilde);
  return out;
}

AdaptedSFF lifted_sff(const PointConfiguration& config, const SurfacePointData& data) {
  return lifted_sff(phi_jet(config, data.x), data);
}

double lifted_mean_curvature(const PotentialJet& jet, const SurfacePointData& data) noexcept {
  const double phi = jet.value;
  // H^X = -(1/2 phi^2) grad_perp phi + (1/phi) H^R3 as a Euclidean vector.
  const Vec3 grad_perp = jet.gradient.dot(data.nu) * data.nu;
  const Vec3 mean_vec = data.mean_r3 * data.nu;
  const Vec3 h_vec = -grad_perp / (2.0 * phi * phi) + mean_vec / phi;
  // nu_tilde = phi^{-1/2} nu, so the coefficient is phi^{1/2} <H, nu>.
  return std::sqrt(phi) * h_vec.dot(data.nu);
}

double lifted_mean_curvature(const PointConfiguration& config, const SurfacePointData& data) {
  return lifted_mean_curvature(phi_jet(config, data.x), data);
}

}  // namespace ghb
