#include "ghb/potential.hpp"

#include <cmath>
#include <sstream>

#include "ghb/error.hpp"

namespace ghb {

namespace {

bool finite(const Vec3& v) { return v.allFinite(); }

}  // namespace

PointConfiguration::PointConfiguration(double mass, std::vector<Centre> centres)
    : mass_(mass), centres_(std::move(centres)) {
  if (!std::isfinite(mass_) || mass_ < 0.0) {
    throw Error(ErrorCode::InvalidConfiguration, "mass must be finite and >= 0");
  }
  if (centres_.empty() && mass_ == 0.0) {
    throw Error(ErrorCode::EmptyConfiguration, "no centres and zero mass");
  }
  for (const auto& c : centres_) {
    if (!finite(c.position)) {
      throw Error(ErrorCode::InvalidConfiguration, "centre position is not finite");
    }
    if (c.multiplicity < 1) {
      throw Error(ErrorCode::InvalidConfiguration, "multiplicity must be >= 1");
    }
  }
  for (std::size_t i = 0; i < centres_.size(); ++i) {
    for (std::size_t j = i + 1; j < centres_.size(); ++j) {
      diameter_ = std::max(diameter_, (centres_[i].position - centres_[j].position).norm());
    }
  }
  for (std::size_t i = 0; i < centres_.size(); ++i) {
    for (std::size_t j = i + 1; j < centres_.size(); ++j) {
      if ((centres_[i].position - centres_[j].position).norm() <= exclusion_radius()) {
        std::ostringstream os;
        os << "centres " << i << " and " << j << " coincide";
        throw Error(ErrorCode::InvalidConfiguration, os.str());
      }
    }
  }
}

PointConfiguration PointConfiguration::unit_charges(double mass, const std::vector<Vec3>& points) {
  std::vector<Centre> centres;
  centres.reserve(points.size());
  for (const auto& p : points) centres.push_back({p, 1});
  return PointConfiguration(mass, std::move(centres));
}

double PointConfiguration::max_norm() const noexcept {
  double r = 0.0;
  for (const auto& c : centres_) r = std::max(r, c.position.norm());
  return r;
}

double PointConfiguration::max_axial_radius() const noexcept {
  double r = 0.0;
  for (const auto& c : centres_) r = std::max(r, c.position.head<2>().norm());
  return r;
}

int PointConfiguration::singular_index(const Vec3& x) const noexcept {
  const double delta = exclusion_radius();
  int best = -1;
  double best_d = delta;
  for (std::size_t i = 0; i < centres_.size(); ++i) {
    const double d = (x - centres_[i].position).norm();
    if (d <= best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

void accumulate_jet(std::span<const Centre> centres, const Vec3& x, PotentialJet& jet) noexcept {
  for (const auto& c : centres) {
    const Vec3 d = x - c.position;
    const double r2 = d.squaredNorm();
    const double r = std::sqrt(r2);
    const double inv_r = 1.0 / r;
    const double inv_r3 = inv_r * inv_r * inv_r;
    const double half_c = 0.5 * c.multiplicity;
    jet.value += half_c * inv_r;
    jet.gradient.noalias() -= (half_c * inv_r3) * d;
    // c/2 * (3 d d^T / r^5 - I / r^3)
    jet.hessian.noalias() += (3.0 * half_c * inv_r3 / r2) * (d * d.transpose());
    jet.hessian.diagonal().array() -= half_c * inv_r3;
  }
}

PotentialJet phi_jet(const PointConfiguration& config, const Vec3& x) {
  if (!x.allFinite()) throw Error(ErrorCode::InvalidParams, "query point is not finite");
  if (const int i = config.singular_index(x); i >= 0) {
    std::ostringstream os;
    os << "query point within exclusion radius of centre " << i;
    throw Error(ErrorCode::SingularPoint, os.str());
  }
  PotentialJet jet;
  jet.value = config.mass();
  accumulate_jet(config.centres(), x, jet);
  return jet;
}

double check_harmonic(const PointConfiguration& config, const Vec3& x) {
  return phi_jet(config, x).hessian.trace();
}

}  // namespace ghb
