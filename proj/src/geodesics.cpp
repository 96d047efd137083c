#include "ghb/geodesics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <thread>

#include "ghb/convexity.hpp"
#include "ghb/error.hpp"

namespace ghb {

namespace {

double residual_scale(const PointConfiguration& config, const Vec3& x) {
  double s = 0.0;
  for (const auto& c : config.centres()) s += c.multiplicity / (2.0 * (x - c.position).squaredNorm());
  return s;
}

struct NewtonResult {
  Vec3 x;
  double residual;
  double scale;
};

std::optional<NewtonResult> newton(const PointConfiguration& config, Vec3 x, const CriticalPointOptions& opt,
                                   const Vec3& centroid, double reach) {
  auto merit = [&](const Vec3& y) -> std::optional<std::pair<PotentialJet, double>> {
    if (config.singular_index(y) >= 0 || (y - centroid).norm() > reach) return std::nullopt;
    PotentialJet jet = phi_jet(config, y);
    return std::make_pair(jet, jet.gradient.norm() / residual_scale(config, y));
  };
  auto current = merit(x);
  if (!current) return std::nullopt;
  for (int it = 0; it <= opt.max_iterations; ++it) {
    if (current->second <= opt.residual_tol) {
      return NewtonResult{x, current->first.gradient.norm(), residual_scale(config, x)};
    }
    const auto lu = current->first.hessian.fullPivLu();
    if (!lu.isInvertible()) return std::nullopt;
    const Vec3 step = lu.solve(-current->first.gradient);
    double lambda = 1.0;
    bool moved = false;
    for (int k = 0; k < 40; ++k, lambda *= 0.5) {
      const Vec3 trial = x + lambda * step;
      auto next = merit(trial);
      if (next && next->second < current->second) {
        x = trial;
        current = std::move(next);
        moved = true;
        break;
      }
    }
    if (!moved) return std::nullopt;
  }
  return std::nullopt;
}

std::vector<Vec3> seeds_for(const PointConfiguration& config, const CriticalPointOptions& opt) {
  const auto& c = config.centres();
  const std::size_t k = c.size();
  std::vector<Vec3> seeds;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      seeds.push_back(0.5 * (c[i].position + c[j].position));
      for (std::size_t l = j + 1; l < k; ++l) {
        seeds.push_back((c[i].position + c[j].position + c[l].position) / 3.0);
      }
    }
  }
  std::mt19937_64 rng(opt.seed);
  std::exponential_distribution<double> weight(1.0);
  for (std::size_t s = 0; s < opt.random_seeds; ++s) {
    Vec3 x = Vec3::Zero();
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double w = weight(rng);
      x += w * c[i].position;
      total += w;
    }
    seeds.push_back(x / total);
  }
  return seeds;
}

bool lex_less(const Vec3& a, const Vec3& b) {
  return std::lexicographical_compare(a.data(), a.data() + 3, b.data(), b.data() + 3);
}

}  // namespace

bool in_convex_hull(const std::vector<Vec3>& points, const Vec3& x, double tol) {
  if (points.empty()) return false;
  double diameter = 0.0;
  for (const auto& p : points) {
    for (const auto& q : points) diameter = std::max(diameter, (p - q).norm());
  }
  const double dist_tol = tol * (1.0 + diameter);
  const std::size_t n = points.size();
  // Caratheodory: x lies in the hull iff it lies in the hull of at most 4 of the points.
  std::vector<std::size_t> idx;
  auto test = [&](const std::vector<std::size_t>& subset) {
    const Vec3& base = points[subset[0]];
    const auto m = static_cast<Eigen::Index>(subset.size() - 1);
    if (m == 0) return (x - base).norm() <= dist_tol;
    Eigen::MatrixXd edges(3, m);
    for (Eigen::Index j = 0; j < m; ++j) edges.col(j) = points[subset[static_cast<std::size_t>(j + 1)]] - base;
    const Eigen::VectorXd lambda = edges.colPivHouseholderQr().solve(x - base);
    if ((edges * lambda - (x - base)).norm() > dist_tol) return false;
    if ((lambda.array() < -tol).any()) return false;
    return 1.0 - lambda.sum() >= -tol;
  };
  bool found = false;
  auto recurse = [&](auto&& self, std::size_t start) -> void {
    if (found) return;
    if (!idx.empty() && test(idx)) {
      found = true;
      return;
    }
    if (idx.size() == 4) return;
    for (std::size_t i = start; i < n && !found; ++i) {
      idx.push_back(i);
      self(self, i + 1);
      idx.pop_back();
    }
  };
  recurse(recurse, 0);
  return found;
}

CriticalPointSearch find_critical_points(const PointConfiguration& config, const CriticalPointOptions& opt) {
  CriticalPointSearch out;
  if (config.size() < 2) return out;
  const std::vector<Vec3> seeds = seeds_for(config, opt);
  out.seeds = seeds.size();

  Vec3 centroid = Vec3::Zero();
  std::vector<Vec3> positions;
  for (const auto& c : config.centres()) {
    centroid += c.position;
    positions.push_back(c.position);
  }
  centroid /= static_cast<double>(config.size());
  const double reach = 4.0 * (1.0 + config.diameter());

  std::vector<std::optional<NewtonResult>> results(seeds.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) results[i] = newton(config, seeds[i], opt, centroid, reach);
  };
  unsigned threads = opt.threads ? opt.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(seeds.size() / 64 + 1)));
  if (threads == 1) {
    work(0, seeds.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (seeds.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(seeds.size(), t * chunk);
      pool.emplace_back(work, begin, std::min(seeds.size(), begin + chunk));
    }
    for (auto& th : pool) th.join();
  }

  std::vector<NewtonResult> converged;
  for (const auto& r : results) {
    if (r) {
      converged.push_back(*r);
    } else {
      ++out.failed_seeds;
    }
  }
  std::sort(converged.begin(), converged.end(),
            [](const NewtonResult& a, const NewtonResult& b) { return lex_less(a.x, b.x); });

  const double merge = 1e-6 * (1.0 + config.diameter());
  std::vector<NewtonResult> unique;
  for (const auto& r : converged) {
    auto same = std::find_if(unique.begin(), unique.end(),
                             [&](const NewtonResult& u) { return (u.x - r.x).norm() <= merge; });
    if (same == unique.end()) {
      unique.push_back(r);
    } else if (r.residual / r.scale < same->residual / same->scale) {
      *same = r;
    }
  }

  for (const auto& r : unique) {
    CriticalPoint cp;
    cp.x = r.x;
    cp.residual = r.residual;
    cp.scale = r.scale;
    const PotentialJet jet = phi_jet(config, r.x);
    cp.length = 2.0 * kPi / std::sqrt(jet.value);
    cp.in_hull = in_convex_hull(positions, r.x);
    const auto ev = symmetric_eigenvalues(0.5 * (jet.hessian + jet.hessian.transpose()));
    const double norm = std::max(std::abs(ev[0]), std::abs(ev[2]));
    for (const double e : ev) {
      if (std::abs(e) <= 1e-6 * norm) {
        ++cp.hessian_signature[2];
      } else if (e > 0) {
        ++cp.hessian_signature[0];
      } else {
        ++cp.hessian_signature[1];
      }
    }
    cp.isolated = cp.hessian_signature[2] == 0;
    out.points.push_back(cp);
  }
  return out;
}

double invariant_surface_area(const PointConfiguration& config, std::size_t i, std::size_t j) {
  if (i >= config.size() || j >= config.size() || i == j) {
    throw Error(ErrorCode::InvalidIndex, "surface area needs two distinct centre indices");
  }
  return 2.0 * kPi * (config.centres()[i].position - config.centres()[j].position).norm();
}

double geodesic_length(const PointConfiguration& config, const Vec3& x) {
  return 2.0 * kPi / std::sqrt(phi_jet(config, x).value);
}

}  // namespace ghb
