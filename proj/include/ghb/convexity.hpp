#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "ghb/surfaces.hpp"

namespace ghb {

/// Ascending eigenvalues of a symmetric 3x3 matrix. Trigonometric closed form,
/// with a cyclic Jacobi sweep when the eigenvalues are (nearly) clustered.
std::array<double, 3> symmetric_eigenvalues(const Mat3& s);

/// Cyclic Jacobi eigenvalues, ascending. Exposed for cross-checks.
std::array<double, 3> jacobi_eigenvalues(const Mat3& s);

/// lambda_1 + ... + lambda_k for the ascending eigenvalues of s, k in 1..3.
/// Throws NotSymmetric if |s - s^T| exceeds 1e-12 (relative to |s|).
double k_smallest_eigensum(const Mat3& s, int k);

/// Monte Carlo upper bound for inf over k-planes W of Tr_W s, using n planes
/// drawn uniformly from G(k, R^3). The first n draws for a given seed do not
/// depend on n, so the result is non-increasing in n.
double brute_force_grassmannian_min(const Mat3& s, int k, std::size_t n, std::uint64_t seed = 0);

/// All leading principal minors strictly positive.
bool sylvester_positive(const Mat3& s);

enum class Verdict { StrictlyConvex, Violated, Inconclusive };

std::string_view to_string(Verdict v);

/// Relative margin below which a sign is not claimed.
inline constexpr double kMarginTolerance = 1e-9;

struct Sampling {
  int grid_u = 128;
  int grid_v = 128;
  std::size_t random = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 0;  ///< 0 = hardware concurrency
};

struct SampleMargin {
  std::size_t index = 0;
  Vec2 params = Vec2::Zero();
  Vec3 x = Vec3::Zero();
  double eigensum = 0.0;
  double scale = 0.0;  ///< spectral norm of the lifted SFF at the sample
  bool skipped = false;
};

struct ConvexityReport {
  int k = 1;
  double min_eigensum = 0.0;
  double min_relative = 0.0;  ///< min over samples of eigensum / scale
  Vec2 argmin_params = Vec2::Zero();
  Vec3 argmin_x = Vec3::Zero();
  std::size_t samples = 0;  ///< samples evaluated (excluding skipped)
  std::size_t skipped = 0;
  Verdict verdict = Verdict::Inconclusive;
};

/// Chart parameters visited by a scan: the grid (cell-centred in both
/// directions) followed by `random` uniform draws from the chart box.
std::vector<Vec2> scan_parameters(const BarrierSurface& surface, const Sampling& sampling);

/// Evaluates the k-smallest-eigenvalue sum of the lifted SFF at every sample.
/// Samples that hit a singular point or fail to solve are skipped; if more
/// than half are skipped TooFewSamples is raised. `trace`, when given,
/// receives every sample in index order.
ConvexityReport convexity_scan(const PointConfiguration& config, const BarrierSurface& surface,
                               int k, const Sampling& sampling,
                               std::vector<SampleMargin>* trace = nullptr);

}  // namespace ghb
