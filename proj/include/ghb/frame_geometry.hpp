#pragma once

#include <array>

#include "ghb/potential.hpp"

namespace ghb {

/// Levi-Civita symbol on spatial indices {0,1,2}; 0 on any repeated index.
int levi_civita(int i, int j, int k) noexcept;

/// Connection coefficients of the Gibbons-Hawking metric in the orthonormal
/// frame e_0 = phi^{1/2} xi, e_i = phi^{-1/2} d/dx_i (i = 1..3).
///
/// Layout: gamma(a, b, c) = < nabla_{e_a} e_b, e_c >, i.e. (direction,
/// differentiated vector, component). Frame index 0 is the fibre direction
/// and frame index i in 1..3 corresponds to coordinate x_i.
struct ConnectionCoefficients {
  std::array<double, 64> values{};

  double operator()(int a, int b, int c) const noexcept { return values[16 * a + 4 * b + c]; }
  double& operator()(int a, int b, int c) noexcept { return values[16 * a + 4 * b + c]; }
};

ConnectionCoefficients connection_coefficients(const PointConfiguration& config, const Vec3& x);

/// Same as above from an already evaluated jet (only value and gradient are used).
ConnectionCoefficients connection_coefficients(const PotentialJet& jet) noexcept;

}  // namespace ghb
