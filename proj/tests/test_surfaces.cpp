#include <doctest.h>

#include "ghb/error.hpp"
#include "ghb/surfaces.hpp"
#include "support.hpp"

using namespace ghb;
using namespace ghb::testing;

namespace {

std::vector<BarrierSurface> sample_surfaces() {
  return {Sphere{Vec3(0.2, -0.1, 0.3), 2.5},
          Cylinder{Vec3(0.1, 0.2, 0.0), Vec3(1, 1, 2), 1.7, 3.0},
          Plane{Vec3(0.3, -0.2, 1.0).normalized(), 2.0, 3.0},
          TwoFociEllipsoid{0.8, 0.7},
          make_multi_foci_ellipsoid({Vec3(1, 0, 0), Vec3(-0.5, 0.8, 0.1), Vec3(-0.4, -0.9, -0.2), Vec3(0, 0, 0.7)},
                                    7.0)};
}

Vec2 random_interior(std::mt19937& rng, const ChartBox& box, double inset) {
  return {uniform(rng, box.lo.x() + inset, box.hi.x() - inset), uniform(rng, box.lo.y() + inset, box.hi.y() - inset)};
}

}  // namespace

TEST_CASE("frames are orthonormal and right-handed") {
  std::mt19937 rng(31);
  for (const auto& surface : sample_surfaces()) {
    const ChartBox box = chart_box(surface);
    for (int s = 0; s < 200; ++s) {
      const SurfacePointData d = surface_point(surface, random_interior(rng, box, 0.0));
      CHECK(std::abs(d.u.norm() - 1.0) <= 1e-12);
      CHECK(std::abs(d.v.norm() - 1.0) <= 1e-12);
      CHECK(std::abs(d.u.dot(d.v)) <= 1e-12);
      CHECK((d.u.cross(d.v) - d.nu).norm() <= 1e-12);
      CHECK(std::abs(d.mean_r3 - d.sff_r3.trace()) <= 1e-12 * (1.0 + std::abs(d.mean_r3)));
      CHECK(std::abs(d.sff_r3(0, 1) - d.sff_r3(1, 0)) <= 1e-10 * (1.0 + d.sff_r3.norm()));
    }
  }
}

TEST_CASE("Euclidean second fundamental form agrees with chart second differences") {
  std::mt19937 rng(32);
  for (const auto& surface : sample_surfaces()) {
    CAPTURE(family_name(surface));
    const ChartBox box = chart_box(surface);
    for (int s = 0; s < 100; ++s) {
      const Vec2 p = random_interior(rng, box, 0.15);
      const SurfacePointData d = surface_point(surface, p);
      const Mat2 fd = fd_chart_sff(surface, p, d, 1e-4);
      CHECK((fd - d.sff_r3).norm() <= 1e-5 * (1.0 + d.sff_r3.norm()));
    }
  }
}

TEST_CASE("inward normals have positive curvature on closed families") {
  std::mt19937 rng(33);
  for (const auto& surface : sample_surfaces()) {
    if (std::holds_alternative<Plane>(surface)) continue;
    const ChartBox box = chart_box(surface);
    for (int s = 0; s < 100; ++s) {
      const SurfacePointData d = surface_point(surface, random_interior(rng, box, 0.0));
      CHECK(d.mean_r3 > 0.0);
    }
  }
}

TEST_CASE("two-foci ellipsoid lies on its focal level") {
  std::mt19937 rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    const TwoFociEllipsoid e{uniform(rng, 0.2, 3.0), uniform(rng, 0.05, 3.0)};
    const ChartBox box = chart_box(e);
    for (int s = 0; s < 50; ++s) {
      const Vec2 p = random_interior(rng, box, 0.0);
      const Vec3 x = chart_position(e, p);
      const double sum = (x - Vec3(0, 0, e.a)).norm() + (x - Vec3(0, 0, -e.a)).norm();
      CHECK(rel_err(sum, 2.0 * e.a * std::cosh(e.r)) <= 1e-12);
      const SurfacePointData d = surface_point(e, p);
      const double ch = std::cosh(e.r), sh = std::sinh(e.r), cb = std::cos(p.y());
      const double A = std::sqrt(ch * ch - cb * cb);
      CHECK(rel_err(d.sff_r3(0, 0), ch / (e.a * A * sh)) <= 1e-10);
      CHECK(rel_err(d.sff_r3(1, 1), sh * ch / (e.a * A * A * A)) <= 1e-10);
      CHECK(std::abs(d.sff_r3(0, 1)) <= 1e-10 * d.sff_r3.norm());
    }
  }
}

TEST_CASE("multi-foci chart hits the requested level") {
  std::mt19937 rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    const auto foci = random_points(rng, std::uniform_int_distribution<int>(3, 6)(rng));
    const auto [median, min_level] = geometric_median(foci);
    const auto e = make_multi_foci_ellipsoid(foci, min_level + uniform(rng, 0.5, 4.0));
    CHECK((e.origin - median).norm() == 0.0);
    const ChartBox box = chart_box(e);
    for (int s = 0; s < 50; ++s) {
      const Vec3 x = chart_position(e, random_interior(rng, box, 0.0));
      double sum = 0.0;
      for (const auto& f : foci) sum += (x - f).norm();
      CHECK(std::abs(sum - e.level) <= 1e-10 * e.level);
    }
  }
}

TEST_CASE("geometric median minimises the focal sum") {
  std::mt19937 rng(36);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pts = random_points(rng, 5);
    const auto [median, value] = geometric_median(pts);
    for (int s = 0; s < 50; ++s) {
      const Vec3 y = median + 0.05 * random_unit(rng);
      double sum = 0.0;
      for (const auto& p : pts) sum += (y - p).norm();
      CHECK(sum >= value - 1e-9);
    }
  }
  const std::vector<Vec3> tri{Vec3(1, 0, 0), Vec3(-0.5, std::sqrt(3.0) / 2, 0), Vec3(-0.5, -std::sqrt(3.0) / 2, 0)};
  const auto [centre, value] = geometric_median(tri);
  CHECK(centre.norm() <= 1e-9);
  CHECK(value == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("lifted SFF equals the connection contraction") {
  std::mt19937 rng(37);
  for (int c = 0; c < 10; ++c) {
    const auto config = random_config(rng, {.charges = true});
    for (const auto& surface : sample_surfaces()) {
      const ChartBox box = chart_box(surface);
      for (int s = 0; s < 20; ++s) {
        const SurfacePointData d = surface_point(surface, random_interior(rng, box, 0.0));
        if (config.singular_index(d.x) >= 0) continue;
        const PotentialJet jet = phi_jet(config, d.x);
        const AdaptedSFF got = lifted_sff(jet, d);
        const Mat3 want = sff_from_connection(jet, d);
        CHECK((got.matrix - want).norm() <= 1e-11 * (1.0 + want.norm()));
        CHECK((got.matrix - got.matrix.transpose()).norm() <= 1e-12 * (1.0 + want.norm()));
        CHECK((got.nu_tilde - d.nu / std::sqrt(jet.value)).norm() <= 1e-14 * got.nu_tilde.norm());
      }
    }
  }
}

TEST_CASE("lifted mean curvature is the trace of the lifted SFF") {
  std::mt19937 rng(38);
  for (int c = 0; c < 10; ++c) {
    const auto config = random_config(rng);
    for (const auto& surface : sample_surfaces()) {
      const ChartBox box = chart_box(surface);
      for (int s = 0; s < 20; ++s) {
        const SurfacePointData d = surface_point(surface, random_interior(rng, box, 0.0));
        if (config.singular_index(d.x) >= 0) continue;
        const double h = lifted_mean_curvature(config, d);
        const double tr = lifted_sff(config, d).matrix.trace();
        CHECK(std::abs(h - tr) <= 1e-10 * (1.0 + std::abs(tr)));
      }
    }
  }
}

TEST_CASE("flat single-centre sphere is a round three-sphere") {
  const auto config = PointConfiguration::unit_charges(0.0, {Vec3::Zero()});
  for (double r : {0.5, 1.0, 2.0}) {
    const Sphere sphere{Vec3::Zero(), r};
    const SurfacePointData d = surface_point(sphere, Vec2(1.1, 2.3));
    const Mat3 s = lifted_sff(config, d).matrix;
    CHECK((s - Mat3::Identity() / std::sqrt(2.0 * r)).norm() <= 1e-14);
    CHECK(std::abs(lifted_mean_curvature(config, d)) == doctest::Approx(3.0 / std::sqrt(2.0 * r)).epsilon(1e-14));
  }
}

TEST_CASE("flat product sees the Euclidean geometry") {
  const PointConfiguration config(1.0, {});
  const Sphere sphere{Vec3::Zero(), 2.0};
  const SurfacePointData d = surface_point(sphere, Vec2(0.7, 0.4));
  const Mat3 s = lifted_sff(config, d).matrix;
  CHECK(s(0, 0) == doctest::Approx(0.5));
  CHECK(s(1, 1) == doctest::Approx(0.5));
  CHECK(s(2, 2) == doctest::Approx(0.0));
}

TEST_CASE("surface validation and chart domain") {
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::SingularPoint;
  };
  CHECK(code_of([] { validate(Sphere{Vec3::Zero(), 0.0}); }) == ErrorCode::InvalidParams);
  CHECK(code_of([] { validate(Cylinder{Vec3::Zero(), Vec3::Zero(), 1.0}); }) == ErrorCode::InvalidParams);
  CHECK(code_of([] { validate(Plane{Vec3::Zero(), 1.0}); }) == ErrorCode::InvalidParams);
  CHECK(code_of([] { validate(TwoFociEllipsoid{1.0, -1.0}); }) == ErrorCode::InvalidParams);
  CHECK(code_of([] {
          make_multi_foci_ellipsoid({Vec3(1, 0, 0), Vec3(-1, 0, 0), Vec3(0, 1, 0)}, 1.0);
        }) == ErrorCode::InvalidParams);
  CHECK(code_of([] { surface_point(Sphere{Vec3::Zero(), 1.0}, Vec2(4.0, 0.0)); }) == ErrorCode::ChartDomain);
  CHECK(code_of([] { surface_point(TwoFociEllipsoid{1.0, 1.0}, Vec2(0.0, -0.1)); }) == ErrorCode::ChartDomain);
  CHECK(family_name(Sphere{}) == "sphere");
  CHECK(family_name(TwoFociEllipsoid{}) == "ellipsoid2");
}
