#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ghb/potential.hpp"

namespace ghb {

/// A zero of grad phi, i.e. the base point of a circle-invariant closed geodesic.
struct CriticalPoint {
  Vec3 x = Vec3::Zero();
  double residual = 0.0;  ///< |grad phi(x)|
  double scale = 0.0;     ///< sum_i c_i / (2 |x - p_i|^2), the residual yardstick
  double length = 0.0;    ///< 2 pi / sqrt(phi(x))
  bool in_hull = false;
  /// Counts of positive, negative and (numerically) zero Hessian eigenvalues.
  std::array<int, 3> hessian_signature{0, 0, 0};
  /// False when the Hessian is numerically singular (a critical curve may pass here).
  bool isolated = true;
};

struct CriticalPointOptions {
  std::size_t random_seeds = 1000;
  std::uint64_t seed = 0;
  int max_iterations = 100;
  double residual_tol = 1e-10;  ///< relative to CriticalPoint::scale
  unsigned threads = 0;
};

struct CriticalPointSearch {
  std::vector<CriticalPoint> points;  ///< lexicographically sorted
  std::size_t seeds = 0;
  std::size_t failed_seeds = 0;  ///< seeds whose Newton run did not converge
};

/// Damped Newton on grad phi from pairwise midpoints, triple centroids and
/// random convex combinations of the centres; duplicates within
/// 1e-6 (1 + diameter) are merged. Fewer than two centres give no points.
CriticalPointSearch find_critical_points(const PointConfiguration& config,
                                         const CriticalPointOptions& options = {});

/// Closed convex hull membership with tolerance `tol` (relative to 1 + diameter).
bool in_convex_hull(const std::vector<Vec3>& points, const Vec3& x, double tol = 1e-8);

/// Area of the circle-invariant surface over the segment p_i p_j: 2 pi |p_i - p_j|.
double invariant_surface_area(const PointConfiguration& config, std::size_t i, std::size_t j);

/// 2 pi / sqrt(phi(x)).
double geodesic_length(const PointConfiguration& config, const Vec3& x);

}  // namespace ghb
