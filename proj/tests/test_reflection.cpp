// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <functional>

#include "ecflow/errors.hpp"
#include "ecflow/families.hpp"
#include "ecflow/reflection.hpp"
#include "ecflow/shapes.hpp"

using namespace ecf;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an ecf::Error");
  return ErrorCode::InvalidArgument;
}

families::Sampling unit_span() {
  families::Sampling s;
  s.t0 = -3.0;
  s.t1 = 0.0;
  s.frame_dt = 0.05;
  return s;
}

}  // namespace

TEST_CASE("Hyperplane") {
  const Hyperplane p(Point(1, 0, 0), 0.5);
  CHECK(p.reflect(Point(1, 2, 0)).isApprox(Point(0, 2, 0)));
  CHECK(p.offset(Point(0.5, 7, 0)) == 0.0);
  const Hyperplane q = Hyperplane::from_direction(Point(3, 4, 0), 1.0);
  CHECK(q.V().isApprox(Point(0.6, 0.8, 0)));
  CHECK(code_of([] { Hyperplane(Point(1, 1, 0), 0.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { Hyperplane::from_direction(Point::Zero(), 0.0); }) == ErrorCode::InvalidArgument);

  const auto m = shapes::ellipse(2.0, 1.0, 64);
  const auto once = reflect_points(m, q);
  const auto twice = reflect_points(once, q);
  for (std::size_t i = 0; i < m.size(); ++i) CHECK((twice[i] - m.vertex(i)).norm() < 1e-12);
}

TEST_CASE("strict_reflection_check on a circle") {
  const auto m = shapes::circle(1.0, 256);
  const Point V(1, 0, 0);
  const ReflectionVerdict strict = strict_reflection_check(m, Hyperplane(V, 0.5));
  CHECK(strict.status == ReflectionStatus::Strict);
  CHECK(strict.tested_points > 0);
  CHECK(strict.inclusion_margin > 0.0);
  CHECK(strict.witnesses.empty());

  const ReflectionVerdict through = strict_reflection_check(m, Hyperplane(V, 0.0));
  CHECK(through.status == ReflectionStatus::NonStrict);
  CHECK(std::abs(through.inclusion_margin) < 1e-9);
  REQUIRE_FALSE(through.witnesses.empty());
  CHECK(through.witnesses.front().kind == "boundary");

  CHECK(strict_reflection_check(m, Hyperplane(V, 1.5)).status == ReflectionStatus::Vacuous);
}

TEST_CASE("strict_reflection_check fails off center") {
  const auto m = shapes::circle(1.0, 256, Point(0.5, 0, 0));
  const ReflectionVerdict v = strict_reflection_check(m, Hyperplane(Point(1, 0, 0), 0.0));
  CHECK(v.status == ReflectionStatus::Fails);
  REQUIRE_FALSE(v.witnesses.empty());
  for (const ReflectionWitness& w : v.witnesses) {
    CHECK(w.kind == "outside");
    CHECK(w.margin < 0.0);
  }
  CHECK(v.inclusion_margin == doctest::Approx(-1.0).epsilon(1e-3));
}

TEST_CASE("a mirror-symmetric mesh is NonStrict on its mirror") {
  const auto m = shapes::ellipse(2.0, 1.0, 200);
  const ReflectionVerdict v = strict_reflection_check(m, Hyperplane(Point(0, 1, 0), 0.0));
  CHECK(v.status == ReflectionStatus::NonStrict);
  CHECK(std::abs(v.inclusion_margin) < 1e-9);
}

TEST_CASE("first_touch_time") {
  const auto traj = families::sphere_family(1, [](double t) { return std::exp(t); }, unit_span());
  CHECK(first_touch_time(traj, Hyperplane(Point(1, 0, 0), 0.5)) == doctest::Approx(std::log(0.5)).epsilon(1e-5));
  CHECK(first_touch_time(traj, Hyperplane(Point(1, 0, 0), 0.9)) == doctest::Approx(std::log(0.9)).epsilon(1e-5));
  CHECK(first_touch_time(traj, Hyperplane(Point(1, 0, 0), 0.01)) == traj.t0());
  CHECK(code_of([&] { first_touch_time(traj, Hyperplane(Point(1, 0, 0), 2.0)); }) == ErrorCode::NeverTouches);
  CHECK(code_of([] { first_touch_time(Trajectory{}, Hyperplane(Point(1, 0, 0), 2.0)); }) == ErrorCode::EmptyTrajectory);
}

TEST_CASE("monitor_reflection") {
  SUBCASE("dilated ellipse stays strict") {
    const auto traj = families::scaled_ellipse(2.0, 1.0, unit_span());
    const Hyperplane plane(Point(1, 0, 0), 0.5);
    const double touch = first_touch_time(traj, plane);
    const MonitorResult r = monitor_reflection(traj, plane, touch + 0.1);
    CHECK(r.verdicts.size() > 10);
    CHECK_FALSE(r.first_non_strict.has_value());
  }
  SUBCASE("start through the center of a circle") {
    const auto traj = families::sphere_family(1, [](double t) { return std::exp(t); }, unit_span());
    CHECK(code_of([&] { monitor_reflection(traj, Hyperplane(Point(1, 0, 0), 0.0), -1.0); }) ==
          ErrorCode::StartNotStrict);
    CHECK(code_of([&] { monitor_reflection(traj, Hyperplane(Point(1, 0, 0), 0.5), 3.0); }) ==
          ErrorCode::StartNotStrict);
  }
  SUBCASE("drifting circle") {
    Trajectory t;
    t.add_frame(0.0, shapes::circle(1.0, 128));
    t.add_frame(1.0, shapes::circle(1.0, 128, Point(0.5, 0, 0)));
    t.add_frame(2.0, shapes::circle(1.0, 128, Point(1.0, 0, 0)));
    const MonitorResult r = monitor_reflection(t, Hyperplane(Point(1, 0, 0), 0.5), 0.0);
    REQUIRE(r.verdicts.size() == 3);
    REQUIRE(r.first_non_strict.has_value());
    CHECK(*r.first_non_strict == 1);
    CHECK(r.verdicts[1].verdict.status == ReflectionStatus::NonStrict);
    CHECK(r.verdicts[2].verdict.status == ReflectionStatus::Fails);
  }
}

TEST_CASE("symmetry_certificate") {
  SUBCASE("icosphere") {
    const SymmetryCertificate c =
        symmetry_certificate(shapes::icosphere(1.0, 2), Point::Zero(), sample_directions(2, 64), 1e-3);
    CHECK(c.spherical);
    CHECK(c.deviation < 1e-6);
    CHECK(c.mean_radius == doctest::Approx(1.0));
    CHECK(c.asymmetry.size() == 64);
  }
  SUBCASE("ellipse") {
    const SymmetryCertificate c =
        symmetry_certificate(shapes::ellipse(2.0, 1.0, 256), Point::Zero(), sample_directions(1, 16), 1e-3);
    CHECK_FALSE(c.spherical);
    CHECK(std::abs(c.witness_direction.x()) == doctest::Approx(1.0));
    // mirror planes along the axes are exact symmetries, diagonal ones are not
    CHECK(c.asymmetry[0] < 1e-9);
    CHECK(c.asymmetry[4] < 1e-9);
    CHECK(c.asymmetry[2] > 0.1);
  }
  SUBCASE("noisy sphere") {
    const SymmetryCertificate c =
        symmetry_certificate(shapes::noisy_sphere(1.0, 3, 0.01, 3), Point::Zero(), sample_directions(2, 16), 0.01);
    CHECK_FALSE(c.spherical);
    CHECK(c.deviation == doctest::Approx(0.02).epsilon(0.01));
  }
  CHECK(code_of([] { symmetry_certificate(shapes::circle(1.0, 32), Point(2, 0, 0), sample_directions(1), 0.1); }) ==
        ErrorCode::CenterOutside);
}

TEST_CASE("sample_directions") {
  for (int dim : {1, 2}) {
    const auto d = sample_directions(dim, 50);
    CHECK(d.size() == 50);
    for (const Point& x : d) CHECK(x.norm() == doctest::Approx(1.0));
  }
  CHECK(code_of([] { sample_directions(3); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { sample_directions(1, 0); }) == ErrorCode::InvalidArgument);
}
