#include <doctest.h>

#include "ghb/error.hpp"
#include "ghb/potential.hpp"
#include "support.hpp"

using namespace ghb;
using namespace ghb::testing;

TEST_CASE("single centre jet matches the closed form") {
  const auto config = PointConfiguration::unit_charges(0.0, {Vec3::Zero()});
  const Vec3 x(0.3, -0.4, 1.2);
  const double r = x.norm();
  const PotentialJet jet = phi_jet(config, x);
  CHECK(jet.value == doctest::Approx(1.0 / (2.0 * r)).epsilon(1e-15));
  const Vec3 grad = -x / (2.0 * r * r * r);
  CHECK((jet.gradient - grad).norm() <= 1e-15 * grad.norm());
  const Mat3 hess = (3.0 * x * x.transpose() / std::pow(r, 5) - Mat3::Identity() / std::pow(r, 3)) / 2.0;
  CHECK((jet.hessian - hess).norm() <= 1e-14 * hess.norm());
}

TEST_CASE("multiplicities and mass enter linearly") {
  const PointConfiguration config(2.5, {{Vec3(0, 0, 1), 3}, {Vec3(1, 0, 0), 1}});
  const Vec3 x(0.2, 0.7, -0.5);
  const double want = 2.5 + 3.0 / (2.0 * (x - Vec3(0, 0, 1)).norm()) + 1.0 / (2.0 * (x - Vec3(1, 0, 0)).norm());
  CHECK(phi_jet(config, x).value == doctest::Approx(want).epsilon(1e-15));
}

TEST_CASE("jet agrees with central differences") {
  std::mt19937 rng(11);
  for (int c = 0; c < 10; ++c) {
    const auto config = random_config(rng, {.charges = true});
    for (int s = 0; s < 100; ++s) {
      const Vec3 x = random_regular_point(rng, config, 1.5, 0.3);
      const PotentialJet jet = phi_jet(config, x);
      const Vec3 g = fd_gradient(config, x, 1e-5);
      CHECK((jet.gradient - g).norm() <= 1e-6 * jet.gradient.norm());
      const Mat3 h = fd_hessian(config, x, 1e-5);
      CHECK((jet.hessian - h).norm() <= 1e-6 * jet.hessian.norm());
      CHECK(jet.value == doctest::Approx(phi_value(config, x)).epsilon(1e-14));
    }
  }
}

TEST_CASE("potential is harmonic") {
  std::mt19937 rng(12);
  for (int c = 0; c < 10; ++c) {
    const auto config = random_config(rng, {.charges = true});
    for (int s = 0; s < 100; ++s) {
      const Vec3 x = random_regular_point(rng, config, 2.0, 0.05);
      const PotentialJet jet = phi_jet(config, x);
      CHECK(std::abs(check_harmonic(config, x)) <= 1e-10 * jet.hessian.norm());
    }
  }
}

TEST_CASE("jet is additive over disjoint configurations") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pts = random_points(rng, 5);
    const std::vector<Vec3> left(pts.begin(), pts.begin() + 2);
    const std::vector<Vec3> right(pts.begin() + 2, pts.end());
    const auto a = PointConfiguration::unit_charges(0.5, left);
    const auto b = PointConfiguration::unit_charges(0.25, right);
    const auto both = PointConfiguration::unit_charges(0.75, pts);
    const Vec3 x = random_regular_point(rng, both, 1.5, 0.1);
    const PotentialJet ja = phi_jet(a, x), jb = phi_jet(b, x), jab = phi_jet(both, x);
    CHECK(jab.value == doctest::Approx(ja.value + jb.value).epsilon(1e-14));
    CHECK((jab.gradient - ja.gradient - jb.gradient).norm() <= 1e-13 * jab.gradient.norm());
    CHECK((jab.hessian - ja.hessian - jb.hessian).norm() <= 1e-13 * jab.hessian.norm());
  }
}

TEST_CASE("flat product has constant potential") {
  const PointConfiguration config(1.0, {});
  const PotentialJet jet = phi_jet(config, Vec3(4, 5, 6));
  CHECK(jet.value == 1.0);
  CHECK(jet.gradient.norm() == 0.0);
  CHECK(jet.hessian.norm() == 0.0);
}

TEST_CASE("configuration validation") {
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::InvalidParams;
  };
  CHECK(code_of([] { PointConfiguration(0.0, {}); }) == ErrorCode::EmptyConfiguration);
  CHECK(code_of([] { PointConfiguration(-1.0, {{Vec3::Zero(), 1}}); }) == ErrorCode::InvalidConfiguration);
  CHECK(code_of([] { PointConfiguration(std::nan(""), {{Vec3::Zero(), 1}}); }) == ErrorCode::InvalidConfiguration);
  CHECK(code_of([] { PointConfiguration(0.0, {{Vec3::Zero(), 0}}); }) == ErrorCode::InvalidConfiguration);
  CHECK(code_of([] { PointConfiguration(0.0, {{Vec3::Zero(), 1}, {Vec3::Zero(), 1}}); }) ==
        ErrorCode::InvalidConfiguration);
  CHECK(code_of([] { PointConfiguration(0.0, {{Vec3(INFINITY, 0, 0), 1}}); }) == ErrorCode::InvalidConfiguration);

  const auto config = PointConfiguration::unit_charges(0.0, {Vec3(0, 0, 1), Vec3(0, 0, -1)});
  CHECK(code_of([&] { phi_jet(config, Vec3(0, 0, 1)); }) == ErrorCode::SingularPoint);
  CHECK(code_of([&] { phi_jet(config, Vec3(0, 0, 1 + 1e-12)); }) == ErrorCode::SingularPoint);
  CHECK(config.singular_index(Vec3(0, 0, -1)) == 1);
  CHECK(config.singular_index(Vec3(0, 0, 0)) == -1);
  CHECK(config.diameter() == doctest::Approx(2.0));
  CHECK(config.max_norm() == doctest::Approx(1.0));
  CHECK(config.max_axial_radius() == doctest::Approx(0.0));
}
