#include "ghb/frame_geometry.hpp"

#include <cmath>

namespace ghb {

int levi_civita(int i, int j, int k) noexcept {
  if (i < 0 || i > 2 || j < 0 || j > 2 || k < 0 || k > 2) return 0;
  if (i == j || j == k || i == k) return 0;
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

ConnectionCoefficients connection_coefficients(const PotentialJet& jet) noexcept {
  ConnectionCoefficients g;
  const double s = 1.0 / (2.0 * std::pow(jet.value, 1.5));
  const Vec3& d = jet.gradient;

  // nabla_{e0} e0 = s * sum_i d_i phi e_i
  for (int i = 0; i < 3; ++i) g(0, 0, i + 1) = s * d[i];

  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      double eps_grad = 0.0;
      for (int j = 0; j < 3; ++j) eps_grad += levi_civita(i, j, k) * d[j];
      // nabla_{e_i} e0 = -s * eps_ijk d_j phi e_k
      g(i + 1, 0, k + 1) = -s * eps_grad;
      // nabla_{e0} e_i = -s (d_i phi e0 + eps_ijk d_j phi e_k)
      g(0, i + 1, k + 1) = -s * eps_grad;
    }
    g(0, i + 1, 0) = -s * d[i];
  }

  // nabla_{e_i} e_j = s (d_j phi e_i - eps_ijk d_k phi e0 - delta_ij d_k phi e_k)
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double eps_grad = 0.0;
      for (int k = 0; k < 3; ++k) eps_grad += levi_civita(i, j, k) * d[k];
      g(i + 1, j + 1, 0) = -s * eps_grad;
      for (int l = 0; l < 3; ++l) {
        const double term = (i == l ? d[j] : 0.0) - (i == j ? d[l] : 0.0);
        g(i + 1, j + 1, l + 1) = s * term;
      }
    }
  }
  return g;
}

ConnectionCoefficients connection_coefficients(const PointConfiguration& config, const Vec3& x) {
  return connection_coefficients(phi_jet(config, x));
}

}  // namespace ghb
