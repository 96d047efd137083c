#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "ghb/frame_geometry.hpp"
#include "ghb/potential.hpp"
#include "ghb/surfaces.hpp"

namespace ghb::testing {

inline double uniform(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vec3 random_vec(std::mt19937& rng, double half_width) {
  return {uniform(rng, -half_width, half_width), uniform(rng, -half_width, half_width),
          uniform(rng, -half_width, half_width)};
}

inline Vec3 random_unit(std::mt19937& rng) {
  std::normal_distribution<double> g;
  Vec3 v(g(rng), g(rng), g(rng));
  return v.normalized();
}

inline Mat3 random_symmetric(std::mt19937& rng, double scale = 1.0) {
  Mat3 a;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) a(i, j) = uniform(rng, -scale, scale);
  }
  return 0.5 * (a + a.transpose());
}

inline Mat3 random_rotation(std::mt19937& rng) {
  Eigen::Quaterniond q(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1));
  q.normalize();
  return q.toRotationMatrix();
}

/// k centres in [-w, w]^3 with pairwise distance at least `separation`.
inline std::vector<Vec3> random_points(std::mt19937& rng, int k, double w = 1.0, double separation = 0.25) {
  std::vector<Vec3> pts;
  while (static_cast<int>(pts.size()) < k) {
    const Vec3 p = random_vec(rng, w);
    bool ok = true;
    for (const auto& q : pts) ok = ok && (p - q).norm() >= separation;
    if (ok) pts.push_back(p);
  }
  return pts;
}

struct RandomConfigOptions {
  int min_k = 2;
  int max_k = 6;
  double width = 1.0;
  bool charges = false;  ///< draw multiplicities in 1..3
  double max_mass = 2.0;
};

inline PointConfiguration random_config(std::mt19937& rng, const RandomConfigOptions& opt = {}) {
  const int k = std::uniform_int_distribution<int>(opt.min_k, opt.max_k)(rng);
  const auto pts = random_points(rng, k, opt.width);
  std::vector<Centre> centres;
  for (const auto& p : pts) {
    centres.push_back({p, opt.charges ? std::uniform_int_distribution<int>(1, 3)(rng) : 1});
  }
  return PointConfiguration(uniform(rng, 0.0, opt.max_mass), std::move(centres));
}

/// A point at distance >= min_dist from every centre.
inline Vec3 random_regular_point(std::mt19937& rng, const PointConfiguration& config, double w, double min_dist) {
  for (;;) {
    const Vec3 x = random_vec(rng, w);
    bool ok = true;
    for (const auto& c : config.centres()) ok = ok && (x - c.position).norm() >= min_dist;
    if (ok) return x;
  }
}

/// phi written out directly, independent of the library jet.
inline double phi_value(const PointConfiguration& config, const Vec3& x) {
  double v = config.mass();
  for (const auto& c : config.centres()) v += c.multiplicity / (2.0 * (x - c.position).norm());
  return v;
}

inline Vec3 fd_gradient(const PointConfiguration& config, const Vec3& x, double h) {
  Vec3 g;
  for (int i = 0; i < 3; ++i) {
    Vec3 e = Vec3::Zero();
    e[i] = h;
    g[i] = (phi_value(config, x + e) - phi_value(config, x - e)) / (2.0 * h);
  }
  return g;
}

/// Central differences of the library gradient.
inline Mat3 fd_hessian(const PointConfiguration& config, const Vec3& x, double h) {
  Mat3 hess;
  for (int j = 0; j < 3; ++j) {
    Vec3 e = Vec3::Zero();
    e[j] = h;
    hess.col(j) = (phi_jet(config, x + e).gradient - phi_jet(config, x - e).gradient) / (2.0 * h);
  }
  return hess;
}

/// Connection of the orthonormal frame through the Koszul formula from the
/// frame brackets
///   [e0, ei] = -s phi_i e0,
///   [ei, ej] = s (phi_j ei - phi_i ej) - 2 s eps_ijk phi_k e0,
/// with s = 1 / (2 phi^{3/2}).
inline ConnectionCoefficients koszul_connection(const PotentialJet& jet) {
  const double s = 0.5 / std::pow(jet.value, 1.5);
  const Vec3& g = jet.gradient;
  // bracket[a][b][c] = < [e_a, e_b], e_c >
  double bracket[4][4][4] = {};
  for (int i = 1; i < 4; ++i) {
    bracket[0][i][0] = -s * g[i - 1];
    bracket[i][0][0] = s * g[i - 1];
    for (int j = 1; j < 4; ++j) {
      if (i == j) continue;
      bracket[i][j][i] += s * g[j - 1];
      bracket[i][j][j] -= s * g[i - 1];
      for (int k = 1; k < 4; ++k) bracket[i][j][0] -= 2.0 * s * levi_civita(i - 1, j - 1, k - 1) * g[k - 1];
    }
  }
  ConnectionCoefficients out;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        out(a, b, c) = 0.5 * (bracket[a][b][c] - bracket[b][c][a] + bracket[c][a][b]);
      }
    }
  }
  return out;
}

/// Lifted SFF assembled from the Euclidean SFF and the connection:
///   S(A, B) = phi^{-1/2} II(A, B) [horizontal part] + sum A_p B_q nu_k gamma(p, q, k).
inline Mat3 sff_from_connection(const PotentialJet& jet, const SurfacePointData& d) {
  const ConnectionCoefficients gamma = koszul_connection(jet);
  std::array<std::array<double, 4>, 3> basis{};
  basis[0] = {0.0, d.u.x(), d.u.y(), d.u.z()};
  basis[1] = {0.0, d.v.x(), d.v.y(), d.v.z()};
  basis[2] = {1.0, 0.0, 0.0, 0.0};
  const std::array<double, 4> normal{0.0, d.nu.x(), d.nu.y(), d.nu.z()};
  Mat3 s = Mat3::Zero();
  s.topLeftCorner<2, 2>() = d.sff_r3 / std::sqrt(jet.value);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      double sum = 0.0;
      for (int p = 0; p < 4; ++p) {
        for (int q = 0; q < 4; ++q) {
          for (int k = 0; k < 4; ++k) sum += basis[a][p] * basis[b][q] * normal[k] * gamma(p, q, k);
        }
      }
      s(a, b) += sum;
    }
  }
  return s;
}

/// Euclidean SFF in the (u, v) basis from second differences of the chart.
inline Mat2 fd_chart_sff(const BarrierSurface& surface, const Vec2& p, const SurfacePointData& d, double h) {
  auto x = [&](double ds, double dt) { return chart_position(surface, p + Vec2(ds, dt)); };
  const Vec3 xs = (x(h, 0) - x(-h, 0)) / (2 * h);
  const Vec3 xt = (x(0, h) - x(0, -h)) / (2 * h);
  const Vec3 xss = (x(h, 0) - 2 * x(0, 0) + x(-h, 0)) / (h * h);
  const Vec3 xtt = (x(0, h) - 2 * x(0, 0) + x(0, -h)) / (h * h);
  const Vec3 xst = (x(h, h) - x(h, -h) - x(-h, h) + x(-h, -h)) / (4 * h * h);
  Eigen::Matrix<double, 3, 2> jac;
  jac << xs, xt;
  Eigen::Matrix<double, 3, 2> target;
  target << d.u, d.v;
  const Mat2 coeff = jac.colPivHouseholderQr().solve(target);
  Mat2 chart;
  chart << xss.dot(d.nu), xst.dot(d.nu), xst.dot(d.nu), xtt.dot(d.nu);
  return coeff.transpose() * chart * coeff;
}

inline double rel_err(double got, double want, double floor = 1.0) {
  return std::abs(got - want) / std::max(floor, std::abs(want));
}

}  // namespace ghb::testing
