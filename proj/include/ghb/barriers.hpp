#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "ghb/potential.hpp"

namespace ghb {

// Scalar margins to which the barrier convexity statements reduce. Margins are
// returned raw; the critical radii are provided separately so that callers can
// study margins on both sides of a threshold.

/// <grad phi, x> + 4 phi. Positive iff the circle-invariant hypersurface over
/// the origin-centred sphere through x has inward mean curvature at x.
double sphere_hyp_margin(const PointConfiguration& config, const Vec3& x);

struct Line {
  Vec3 point = Vec3::Zero();
  Vec3 direction = Vec3::UnitZ();
};

/// <grad phi, nu> + 2 phi / r, nu the outward radial unit vector from the
/// axis and r the distance of x from it. Throws OnAxis on the axis.
double cylinder_hyp_margin(const PointConfiguration& config, const Vec3& x, const Line& axis);

/// -<grad phi, direction> for the plane through x with normal `direction`,
/// which must point away from every centre (otherwise InvalidParams).
double plane_hyp_margin(const PointConfiguration& config, const Vec3& x, const Vec3& direction);

struct Codim2Margins {
  double minor1 = 0.0;   ///< <grad phi, x> + 2 phi
  double det_aux = 0.0;  ///< |grad phi|^2 + 2 phi <grad phi, x> / |x|^2
  bool convex() const noexcept { return minor1 > 0.0 && det_aux < 0.0; }
};

/// Sign pattern deciding full (1-)convexity of the lifted origin-centred sphere at x.
Codim2Margins sphere_codim2_margins(const PointConfiguration& config, const Vec3& x);

struct EllipsoidInequalities {
  double e1 = 0.0;
  double e2 = 0.0;
  double e4 = 0.0;
  bool positive() const noexcept { return e1 > 0.0 && e2 > 0.0 && e4 > 0.0; }
};

/// Positivity conditions for the lifted two-foci ellipsoid at chart point
/// (alpha = 0, beta) of the level 2 a cosh r, foci (0, 0, +-a) with unit
/// charges and mass m. `extra_centres` must be empty.
EllipsoidInequalities ellipsoid_inequalities(double a, double m, const std::vector<Vec3>& extra_centres,
                                             double r, double beta);

/// Real root of -x^3 + 4x^2 + 5x + 2 (approximately 5.07).
double constant_C();

/// Positive real root of -4x^3 + 16x^2 + 2x + (k - 2), k >= 2.
double constant_Rk(int k);

/// Sign-change bisection of f on [lo, hi] until the bracket is below `tol`.
double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol);

/// Newton iteration from x0 until |step| <= tol * max(1, |x|).
double newton_root(const std::function<double(double)>& f, const std::function<double(double)>& df,
                   double x0, double tol, int max_iterations = 100);

// Critical radii of the barrier statements.
double sphere_hyp_threshold(const PointConfiguration& config);    ///< 4/3 max |p_i|
double cylinder_hyp_threshold(const PointConfiguration& config);  ///< 2 max r_i (axis e3 through 0)
double sphere_codim2_threshold(const PointConfiguration& config); ///< C max |p_i|

/// One row of a margin curve: the worst margin over the sampled points of the
/// barrier at `parameter`.
struct MarginRow {
  double parameter = 0.0;
  double min_margin = 0.0;
  Vec3 argmin = Vec3::Zero();
  double max_det_aux = 0.0;  ///< codim2 only
  Vec3 argmax_det_aux = Vec3::Zero();
  std::size_t skipped = 0;
};

enum class MarginKind { SphereHyp, CylinderHyp, PlaneHyp, SphereCodim2 };

std::string_view to_string(MarginKind kind);

/// Margin curve over `parameters` (radius for spheres/cylinders, offset along
/// e3 for planes), each row minimised over `directions` deterministic sample
/// points (a Fibonacci sphere for spheres, angle x height lattice for
/// cylinders with axis e3 through the origin, square lattice for planes).
std::vector<MarginRow> margin_curve(const PointConfiguration& config, MarginKind kind,
                                    const std::vector<double>& parameters, std::size_t directions);

/// Points of a Fibonacci lattice on the unit sphere.
std::vector<Vec3> fibonacci_sphere(std::size_t n);

}  // namespace ghb
