#pragma once

#include <span>
#include <vector>

#include "ghb/types.hpp"

namespace ghb {

/// A singular point p_i of the potential together with its integer charge c_i.
struct Centre {
  Vec3 position = Vec3::Zero();
  int multiplicity = 1;
};

/// Harmonic-potential data phi = m + sum_i c_i / (2 |x - p_i|).
///
/// m = 0 with unit charges is multi-Eguchi-Hanson, m > 0 is multi-Taub-NUT,
/// other charges give the multi-centred Gibbons-Hawking spaces. An empty
/// centre list is accepted only for m > 0 (flat product).
class PointConfiguration {
 public:
  PointConfiguration(double mass, std::vector<Centre> centres);

  static PointConfiguration unit_charges(double mass, const std::vector<Vec3>& points);

  double mass() const noexcept { return mass_; }
  const std::vector<Centre>& centres() const noexcept { return centres_; }
  std::size_t size() const noexcept { return centres_.size(); }

  /// Largest pairwise distance between centres (0 for fewer than two).
  double diameter() const noexcept { return diameter_; }
  /// Queries closer than this to a centre raise SingularPoint.
  double exclusion_radius() const noexcept { return 1e-9 * (1.0 + diameter_); }
  /// max_i |p_i|, the radius entering the spherical barrier thresholds.
  double max_norm() const noexcept;
  /// max_i sqrt((p_i)_1^2 + (p_i)_2^2), the cylinder threshold radius.
  double max_axial_radius() const noexcept;

  /// Index of the nearest centre closer than the exclusion radius, or -1.
  int singular_index(const Vec3& x) const noexcept;

 private:
  double mass_;
  std::vector<Centre> centres_;
  double diameter_ = 0.0;
};

struct PotentialJet {
  double value = 0.0;
  Vec3 gradient = Vec3::Zero();
  Mat3 hessian = Mat3::Zero();
};

/// Adds sum_i c_i/(2|x - p_i|) and its derivatives to `jet` without any
/// validation. Building block for phi_jet and for partial potentials such as
/// the satellite potential of a segment surface.
void accumulate_jet(std::span<const Centre> centres, const Vec3& x, PotentialJet& jet) noexcept;

/// Value, gradient and Hessian of phi at x. Throws SingularPoint inside the
/// exclusion radius of any centre.
PotentialJet phi_jet(const PointConfiguration& config, const Vec3& x);

/// Trace of the Hessian of phi at x; zero up to round-off since phi is harmonic.
double check_harmonic(const PointConfiguration& config, const Vec3& x);

}  // namespace ghb
