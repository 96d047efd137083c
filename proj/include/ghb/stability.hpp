#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "ghb/error.hpp"
#include "ghb/potential.hpp"

namespace ghb {

/// The circle-invariant surface over the straight segment joining two unit
/// centres, expressed in the frame where the endpoints sit at (0, 0, +-a).
class SegmentSurface {
 public:
  /// Centre `first` goes to (0, 0, a), `second` to (0, 0, -a). Throws
  /// InvalidIndex for bad or equal indices, InvalidConfiguration when an
  /// endpoint has multiplicity != 1 and SingularPoint when another centre lies
  /// within the endpoint exclusion distance of the segment.
  static SegmentSurface make(const PointConfiguration& config, std::size_t first, std::size_t second);

  double half_length() const noexcept { return a_; }
  /// Exclusion distance from the endpoints, 1e-6 a.
  double endpoint_margin() const noexcept { return 1e-6 * a_; }
  double mass() const noexcept { return frame_.mass(); }
  /// The configuration after the rigid motion.
  const PointConfiguration& frame_config() const noexcept { return frame_; }
  /// Remaining centres in the segment frame.
  const std::vector<Centre>& satellites() const noexcept { return satellites_; }

 private:
  SegmentSurface(PointConfiguration frame, std::vector<Centre> satellites, double a)
      : frame_(std::move(frame)), satellites_(std::move(satellites)), a_(a) {}

  PointConfiguration frame_;
  std::vector<Centre> satellites_;
  double a_;
};

/// -d^2/dt^2 (1 / (2 phi)) along the axis, at axial coordinate t.
double gaussian_curvature_direct(const SegmentSurface& seg, double t);

struct CurvatureSample {
  double t = 0.0;
  double K = 0.0;
  double M = 0.0;
  double N = 0.0;
  double I = 0.0;
  double II = 0.0;
  double III = 0.0;
  double IV = 0.0;
};

/// Curvature through the satellite potential split K = -(M + N) / (2 (a + phi~ w)^3),
/// w = a^2 - t^2.
CurvatureSample mn_decomposition(const SegmentSurface& seg, double t);

/// n Chebyshev nodes of (-c, c), descending.
std::vector<double> chebyshev_nodes(double c, std::size_t n);

struct StabilityScan {
  double min_K = 0.0;
  double argmin_t = 0.0;
};

/// Minimum of the direct curvature over n >= 100 Chebyshev nodes of the open
/// segment shrunk by the endpoint margin.
StabilityScan strong_stability_scan(const SegmentSurface& seg, std::size_t n);

/// mn_decomposition at the same nodes as strong_stability_scan.
std::vector<CurvatureSample> curvature_profile(const SegmentSurface& seg, std::size_t n);

struct SufficientCondition {
  bool holds = false;
  double s = 0.0;
  double threshold = 0.0;
};

/// Satellite-distance test: s = min_i |q - p_i| / a - 1 over satellites, q the
/// midpoint, against max(sqrt((k - 2) / 2), R_k).
SufficientCondition sufficient_condition(const SegmentSurface& seg);

/// (M + N) at the midpoint for centres (0, 0, +-a), (0, eps, 0) and mass m.
/// Positive values mean negative curvature there.
template <typename T>
T counterexample_closed_form(const T& a, const T& eps, const T& m) {
  if (!(a > T(0)) || !(eps > T(0)) || !(m >= T(0))) {
    throw Error(ErrorCode::InvalidParams, "counterexample needs a > 0, eps > 0, m >= 0");
  }
  const T a2 = a * a;
  const T a3 = a2 * a;
  const T a5 = a3 * a2;
  const T a6 = a5 * a;
  const T e3 = eps * eps * eps;
  const T e4 = e3 * eps;
  return -T(2) * a2 - T(2) * a3 * m - a3 / eps + a5 / (T(2) * e3) + m * a6 / (T(2) * e3) +
         a6 / (T(4) * e4);
}

inline double counterexample_closed_form(double a, double eps, double m) {
  if (!std::isfinite(a) || !std::isfinite(eps) || !std::isfinite(m)) {
    throw Error(ErrorCode::InvalidParams, "counterexample parameters must be finite");
  }
  return counterexample_closed_form<double>(a, eps, m);
}

/// The three-centre configuration of the counterexample (endpoints first).
PointConfiguration counterexample_config(double a, double eps, double m);

/// Sign changes of the closed form over eps in (0, eps_max], located on a
/// geometric grid of `samples` points and refined by bisection.
std::vector<double> counterexample_sign_changes(double a, double m, double eps_max, std::size_t samples = 4096);

}  // namespace ghb
