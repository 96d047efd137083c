#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include "ghb/potential.hpp"

namespace ghb {

// Barrier surface families in U. Every family carries the normal convention
// used for its second fundamental form: the normal points into the bounded
// component (sphere, cylinder, ellipsoids) or, for planes, along `normal`,
// which callers orient away from the centres.

struct Sphere {
  Vec3 centre = Vec3::Zero();
  double radius = 1.0;
};

/// Round cylinder around an arbitrary axis. The chart covers the window
/// |s| <= half_length along the axis measured from `point`.
struct Cylinder {
  Vec3 point = Vec3::Zero();
  Vec3 direction = Vec3::UnitZ();
  double radius = 1.0;
  double half_length = 10.0;
};

/// The plane <x, normal> = offset, charted over the square [-extent, extent]^2
/// around the foot point offset * normal.
struct Plane {
  Vec3 normal = Vec3::UnitZ();
  double offset = 0.0;
  double extent = 10.0;
};

/// |x - p+| + |x - p-| = 2 a cosh r with foci p+- = (0, 0, +-a).
struct TwoFociEllipsoid {
  double a = 1.0;
  double r = 1.0;
};

/// Level set sum_i |x - p_i| = level. Build with make_multi_foci_ellipsoid so
/// that `origin` (the shooting point of the chart) is populated.
struct MultiFociEllipsoid {
  std::vector<Vec3> foci;
  double level = 0.0;
  Vec3 origin = Vec3::Zero();
  double min_level = 0.0;
};

using BarrierSurface = std::variant<Sphere, Cylinder, Plane, TwoFociEllipsoid, MultiFociEllipsoid>;

MultiFociEllipsoid make_multi_foci_ellipsoid(std::vector<Vec3> foci, double level);

/// Minimiser of sum_i |x - p_i| (geometric median) and the minimum value.
std::pair<Vec3, double> geometric_median(const std::vector<Vec3>& points);

/// Throws InvalidParams if the family parameters violate their invariants.
void validate(const BarrierSurface& surface);

std::string_view family_name(const BarrierSurface& surface);

/// Rectangle of chart parameters [lo, hi] for a family.
struct ChartBox {
  Vec2 lo;
  Vec2 hi;
};

ChartBox chart_box(const BarrierSurface& surface);

struct SurfacePointData {
  Vec3 x = Vec3::Zero();
  Vec3 u = Vec3::UnitX();
  Vec3 v = Vec3::UnitY();
  Vec3 nu = Vec3::UnitZ();
  Mat2 sff_r3 = Mat2::Zero();  ///< Euclidean SFF w.r.t. nu in the basis (u, v)
  double mean_r3 = 0.0;        ///< trace of sff_r3
};

/// Chart point and Euclidean differential data. (u, v, nu) is a right-handed
/// orthonormal frame with nu = u x v.
SurfacePointData surface_point(const BarrierSurface& surface, const Vec2& params);

/// Position of the chart only; used by finite-difference checks.
Vec3 chart_position(const BarrierSurface& surface, const Vec2& params);

/// Lifted second fundamental form of the circle-invariant hypersurface over a
/// surface in U, in the ordered g-orthonormal basis
/// (phi^{-1/2} u, phi^{-1/2} v, phi^{1/2} xi) with respect to
/// nu_tilde = phi^{-1/2} nu.
struct AdaptedSFF {
  Mat3 matrix = Mat3::Zero();
  Vec3 nu_tilde = Vec3::Zero();  ///< phi^{-1/2} nu as a Euclidean vector
};

AdaptedSFF lifted_sff(const PointConfiguration& config, const SurfacePointData& data);
AdaptedSFF lifted_sff(const PotentialJet& jet, const SurfacePointData& data) noexcept;

/// Coefficient h with H^X = h * nu_tilde, i.e.
/// h = phi^{-1/2} (mean_r3 - <grad phi, nu> / (2 phi)).
double lifted_mean_curvature(const PointConfiguration& config, const SurfacePointData& data);
double lifted_mean_curvature(const PotentialJet& jet, const SurfacePointData& data) noexcept;

}  // namespace ghb
