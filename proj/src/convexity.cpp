#include "ghb/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "ghb/error.hpp"

namespace ghb {

namespace {

Mat3 checked_symmetric(const Mat3& s) {
  const double size = s.cwiseAbs().maxCoeff();
  if (!s.allFinite()) throw Error(ErrorCode::NotSymmetric, "matrix has non-finite entries");
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, size)) {
    throw Error(ErrorCode::NotSymmetric, "matrix is not symmetric");
  }
  return 0.5 * (s + s.transpose());
}

double spectral_norm(const std::array<double, 3>& ev) {
  return std::max(std::abs(ev[0]), std::abs(ev[2]));
}

}  // namespace

std::array<double, 3> jacobi_eigenvalues(const Mat3& input) {
  Mat3 a = input;
  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    if (off <= 1e-34 * a.squaredNorm() || off == 0.0) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        Mat3 rot = Mat3::Identity();
        rot(p, p) = c;
        rot(q, q) = c;
        rot(p, q) = sn;
        rot(q, p) = -sn;
        a = rot.transpose() * a * rot;
        a(p, q) = a(q, p) = 0.0;
      }
    }
  }
  std::array<double, 3> ev{a(0, 0), a(1, 1), a(2, 2)};
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::array<double, 3> symmetric_eigenvalues(const Mat3& a) {
  const double q = a.trace() / 3.0;
  const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
  const double d0 = a(0, 0) - q, d1 = a(1, 1) - q, d2 = a(2, 2) - q;
  const double p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  if (p == 0.0) return {q, q, q};
  const Mat3 b = (a - q * Mat3::Identity()) / p;
  const double r = 0.5 * b.determinant();
  // acos loses accuracy as |r| -> 1 (a double eigenvalue).
  if (!(std::abs(r) < 1.0 - 1e-6)) return jacobi_eigenvalues(a);
  const double angle = std::acos(r) / 3.0;
  const double hi = q + 2.0 * p * std::cos(angle);
  const double lo = q + 2.0 * p * std::cos(angle + 2.0 * kPi / 3.0);
  const double mid = 3.0 * q - hi - lo;
  std::array<double, 3> ev{lo, mid, hi};
  std::sort(ev.begin(), ev.end());
  return ev;
}

double k_smallest_eigensum(const Mat3& s, int k) {
  if (k < 1 || k > 3) throw Error(ErrorCode::InvalidK, "k must be in 1..3");
  const auto ev = symmetric_eigenvalues(checked_symmetric(s));
  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += ev[static_cast<std::size_t>(i)];
  return sum;
}

double brute_force_grassmannian_min(const Mat3& s, int k, std::size_t n, std::uint64_t seed) {
  if (k < 1 || k > 3) throw Error(ErrorCode::InvalidK, "k must be in 1..3");
  const Mat3 sym = 0.5 * (s + s.transpose());
  const double trace = sym.trace();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    // A uniform k-plane in R^3: a uniform line for k = 1, and for k = 2 the
    // orthogonal complement of a uniform line (Tr_W S = tr S - n^T S n).
    const double z = 2.0 * unit(rng) - 1.0;
    const double az = 2.0 * kPi * unit(rng);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const Vec3 w(rho * std::cos(az), rho * std::sin(az), z);
    const double quad = w.dot(sym * w);
    double value = trace;
    if (k == 1) value = quad;
    if (k == 2) value = trace - quad;
    best = std::min(best, value);
  }
  return best;
}

bool sylvester_positive(const Mat3& s) {
  const Mat3 a = checked_symmetric(s);
  if (!(a(0, 0) > 0.0)) return false;
  if (!(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) > 0.0)) return false;
  return a.determinant() > 0.0;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::StrictlyConvex: return "StrictlyConvex";
    case Verdict::Violated: return "Violated";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::vector<Vec2> scan_parameters(const BarrierSurface& surface, const Sampling& sampling) {
  if (sampling.grid_u < 0 || sampling.grid_v < 0) {
    throw Error(ErrorCode::InvalidParams, "grid dimensions must be non-negative");
  }
  const ChartBox box = chart_box(surface);
  const Vec2 span = box.hi - box.lo;
  std::vector<Vec2> params;
  params.reserve(static_cast<std::size_t>(sampling.grid_u) * static_cast<std::size_t>(sampling.grid_v) +
                 sampling.random);
  for (int i = 0; i < sampling.grid_u; ++i) {
    for (int j = 0; j < sampling.grid_v; ++j) {
      params.emplace_back(box.lo[0] + (i + 0.5) / sampling.grid_u * span[0],
                          box.lo[1] + (j + 0.5) / sampling.grid_v * span[1]);
    }
  }
  std::mt19937_64 rng(sampling.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < sampling.random; ++i) {
    const double a = unit(rng);
    const double b = unit(rng);
    params.emplace_back(box.lo[0] + a * span[0], box.lo[1] + b * span[1]);
  }
  return params;
}

ConvexityReport convexity_scan(const PointConfiguration& config, const BarrierSurface& surface,
                               int k, const Sampling& sampling, std::vector<SampleMargin>* trace) {
  if (k < 1 || k > 3) throw Error(ErrorCode::InvalidK, "k must be in 1..3");
  validate(surface);
  const std::vector<Vec2> params = scan_parameters(surface, sampling);
  if (params.empty()) throw Error(ErrorCode::TooFewSamples, "no samples requested");

  std::vector<SampleMargin> margins(params.size());
  auto evaluate = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      SampleMargin& out = margins[i];
      out.index = i;
      out.params = params[i];
      try {
        const SurfacePointData data = surface_point(surface, params[i]);
        out.x = data.x;
        const AdaptedSFF sff = lifted_sff(config, data);
        const auto ev = symmetric_eigenvalues(sff.matrix);
        double sum = 0.0;
        for (int j = 0; j < k; ++j) sum += ev[static_cast<std::size_t>(j)];
        out.eigensum = sum;
        out.scale = spectral_norm(ev);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularPoint && e.code() != ErrorCode::SolverFailure) throw;
        out.skipped = true;
      }
    }
  };

  unsigned threads = sampling.threads ? sampling.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(params.size() / 256 + 1)));
  if (threads == 1) {
    evaluate(0, params.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (params.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(params.size(), t * chunk);
      const std::size_t end = std::min(params.size(), begin + chunk);
      pool.emplace_back(evaluate, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  // Sequential reduction in index order keeps ties (lowest index wins) and
  // therefore the report independent of the thread count.
  ConvexityReport report;
  report.k = k;
  report.min_eigensum = std::numeric_limits<double>::infinity();
  report.min_relative = std::numeric_limits<double>::infinity();
  bool all_positive = true;
  bool any_negative = false;
  for (const auto& m : margins) {
    if (m.skipped) {
      ++report.skipped;
      continue;
    }
    ++report.samples;
    const double tol = kMarginTolerance * m.scale;
    if (!(m.eigensum > tol)) all_positive = false;
    if (m.eigensum < -tol) any_negative = true;
    const double rel = m.scale > 0.0 ? m.eigensum / m.scale : 0.0;
    report.min_relative = std::min(report.min_relative, rel);
    if (m.eigensum < report.min_eigensum) {
      report.min_eigensum = m.eigensum;
      report.argmin_params = m.params;
      report.argmin_x = m.x;
    }
  }
  if (2 * report.skipped > params.size()) {
    throw Error(ErrorCode::TooFewSamples, "more than half of the samples were skipped");
  }
  report.verdict = any_negative   ? Verdict::Violated
                   : all_positive ? Verdict::StrictlyConvex
                                  : Verdict::Inconclusive;
  if (trace) *trace = std::move(margins);
  return report;
}

}  // namespace ghb
