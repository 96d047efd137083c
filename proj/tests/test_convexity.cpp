#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "ghb/convexity.hpp"
#include "ghb/error.hpp"
#include "support.hpp"

using namespace ghb;
using namespace ghb::testing;

namespace {

std::array<double, 3> eigen_reference(const Mat3& s) {
  const Vec3 ev = Eigen::SelfAdjointEigenSolver<Mat3>(s, Eigen::EigenvaluesOnly).eigenvalues();
  return {ev[0], ev[1], ev[2]};
}

void check_close(const std::array<double, 3>& got, const std::array<double, 3>& want, double tol) {
  for (int i = 0; i < 3; ++i) CHECK(std::abs(got[i] - want[i]) <= tol);
}

}  // namespace

TEST_CASE("closed-form, Jacobi and reference eigenvalues agree") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 2000; ++trial) {
    const Mat3 s = random_symmetric(rng, uniform(rng, 1e-3, 1e3));
    const auto want = eigen_reference(s);
    const double scale = std::max(std::abs(want[0]), std::abs(want[2]));
    check_close(symmetric_eigenvalues(s), want, 1e-12 * scale);
    check_close(jacobi_eigenvalues(s), want, 1e-12 * scale);
  }
}

TEST_CASE("clustered spectra") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    const Mat3 q = random_rotation(rng);
    const double a = uniform(rng, -2, 2);
    const double gap = std::pow(10.0, uniform(rng, -12, 0));
    for (const Vec3& d : {Vec3(a, a, a + 1), Vec3(a, a + gap, a + 1), Vec3(a - 1, a, a), Vec3(a, a, a)}) {
      const Mat3 s = q * d.asDiagonal() * q.transpose();
      const Mat3 sym = 0.5 * (s + s.transpose());
      std::array<double, 3> want{d[0], d[1], d[2]};
      std::sort(want.begin(), want.end());
      check_close(symmetric_eigenvalues(sym), want, 1e-12 * (1.0 + std::abs(a)));
    }
  }
  const auto zero = symmetric_eigenvalues(Mat3::Zero());
  CHECK(zero[0] == 0.0);
  CHECK(zero[2] == 0.0);
}

TEST_CASE("k smallest eigenvalue sums") {
  Mat3 s = Vec3(3.0, -1.0, 2.0).asDiagonal();
  CHECK(k_smallest_eigensum(s, 1) == doctest::Approx(-1.0));
  CHECK(k_smallest_eigensum(s, 2) == doctest::Approx(1.0));
  CHECK(k_smallest_eigensum(s, 3) == doctest::Approx(4.0));
  CHECK_THROWS_AS(k_smallest_eigensum(s, 0), Error);
  CHECK_THROWS_AS(k_smallest_eigensum(s, 4), Error);
  s(0, 1) = 1e-6;
  try {
    k_smallest_eigensum(s, 1);
    FAIL("asymmetric input accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSymmetric);
  }
}

TEST_CASE("sampled Grassmannian minimum bounds the eigenvalue sum from above") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat3 s = random_symmetric(rng);
    const auto ev = symmetric_eigenvalues(s);
    const double norm = std::max(std::abs(ev[0]), std::abs(ev[2]));
    for (int k = 1; k <= 3; ++k) {
      const double exact = k_smallest_eigensum(s, k);
      double previous = std::numeric_limits<double>::infinity();
      for (std::size_t n : {10, 100, 1000, 10000}) {
        const double sampled = brute_force_grassmannian_min(s, k, n, trial);
        CHECK(sampled >= exact - 1e-12 * norm);
        CHECK(sampled <= previous);
        previous = sampled;
      }
      CHECK(previous - exact <= 2e-2 * norm);
    }
  }
}

TEST_CASE("Sylvester criterion matches the smallest eigenvalue") {
  std::mt19937 rng(44);
  int positive = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    Mat3 s = random_symmetric(rng);
    s += uniform(rng, -1.0, 2.0) * Mat3::Identity();
    const auto ev = symmetric_eigenvalues(s);
    if (std::abs(ev[0]) < 1e-9) continue;
    CHECK(sylvester_positive(s) == (ev[0] > 0.0));
    positive += ev[0] > 0.0;
  }
  CHECK(positive > 100);
}

TEST_CASE("scan of the flat single-centre sphere") {
  const auto config = PointConfiguration::unit_charges(0.0, {Vec3::Zero()});
  const Sampling sampling{.grid_u = 16, .grid_v = 16, .random = 100};
  for (int k = 1; k <= 3; ++k) {
    const ConvexityReport report = convexity_scan(config, Sphere{Vec3::Zero(), 2.0}, k, sampling);
    CHECK(report.verdict == Verdict::StrictlyConvex);
    CHECK(report.min_eigensum == doctest::Approx(k / 2.0).epsilon(1e-12));
    CHECK(report.samples == 356);
    CHECK(report.skipped == 0);
  }
}

TEST_CASE("flat product plane is not strictly convex") {
  const PointConfiguration config(1.0, {});
  const ConvexityReport report =
      convexity_scan(config, Plane{Vec3::UnitZ(), 1.0}, 3, Sampling{.grid_u = 8, .grid_v = 8, .random = 0});
  CHECK(report.verdict == Verdict::Inconclusive);
}

TEST_CASE("scan verdict is stable across seeds and thread counts") {
  std::mt19937 rng(45);
  const auto config = random_config(rng);
  const std::vector<Vec3> tri{Vec3(1, 0, 0), Vec3(-0.5, std::sqrt(3.0) / 2, 0), Vec3(-0.5, -std::sqrt(3.0) / 2, 0)};
  const auto tri_config = PointConfiguration::unit_charges(0.0, tri);
  struct Case {
    const PointConfiguration& config;
    BarrierSurface surface;
    int k;
    Verdict verdict;
  };
  const std::vector<Case> cases{
      {config, Sphere{Vec3::Zero(), 6.0 * config.max_norm()}, 1, Verdict::StrictlyConvex},
      {tri_config, make_multi_foci_ellipsoid(tri, 3.8), 1, Verdict::Violated},
  };
  for (const auto& c : cases) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Sampling sampling{.grid_u = 32, .grid_v = 32, .random = 1000, .seed = seed};
      CHECK(convexity_scan(c.config, c.surface, c.k, sampling).verdict == c.verdict);
    }
    Sampling one{.grid_u = 40, .grid_v = 40, .random = 3000, .seed = 7, .threads = 1};
    Sampling many = one;
    many.threads = 3;
    std::vector<SampleMargin> trace_one, trace_many;
    const ConvexityReport a = convexity_scan(c.config, c.surface, c.k, one, &trace_one);
    const ConvexityReport b = convexity_scan(c.config, c.surface, c.k, many, &trace_many);
    CHECK(a.min_eigensum == b.min_eigensum);
    CHECK(a.argmin_params == b.argmin_params);
    CHECK(a.samples == b.samples);
    REQUIRE(trace_one.size() == trace_many.size());
    for (std::size_t i = 0; i < trace_one.size(); ++i) CHECK(trace_one[i].eigensum == trace_many[i].eigensum);
  }
}

TEST_CASE("scan parameters are cell centred and seeded") {
  const Sphere sphere{Vec3::Zero(), 1.0};
  const auto params = scan_parameters(sphere, Sampling{.grid_u = 2, .grid_v = 4, .random = 3, .seed = 1});
  REQUIRE(params.size() == 11);
  CHECK(params[0].x() == doctest::Approx(kPi / 4));
  CHECK(params[0].y() == doctest::Approx(2 * kPi / 8));
  const auto again = scan_parameters(sphere, Sampling{.grid_u = 2, .grid_v = 4, .random = 3, .seed = 1});
  CHECK(params == again);
}

TEST_CASE("scan errors") {
  const auto config = PointConfiguration::unit_charges(0.0, {Vec3::Zero()});
  try {
    convexity_scan(config, Sphere{Vec3::Zero(), 1.0}, 1, Sampling{.grid_u = 0, .grid_v = 0, .random = 0});
    FAIL("empty scan accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooFewSamples);
  }
  CHECK_THROWS_AS(convexity_scan(config, Sphere{Vec3::Zero(), 1.0}, 4, Sampling{}), Error);
  CHECK_THROWS_AS(convexity_scan(config, Sphere{Vec3::Zero(), -1.0}, 1, Sampling{}), Error);
}
