// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <functional>

#include "ecflow/errors.hpp"
#include "ecflow/families.hpp"
#include "ecflow/flow_engine.hpp"
#include "ecflow/rigidity.hpp"
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

families::Sampling coarse() {
  families::Sampling s;
  s.frame_dt = 0.05;
  s.resolution = 128;
  return s;
}

Trajectory exp_circles() {
  return families::sphere_family(1, [](double t) { return std::exp(t); }, coarse());
}

const std::vector<double> kSchedule{0.4, 0.2, 0.1, 0.05};

}  // namespace

TEST_CASE("comes_out_of_point") {
  const Trajectory traj = exp_circles();
  const PointOriginReport r = comes_out_of_point(traj, Point::Zero(), {0.5, 0.1, 0.01});
  CHECK(r.pass);
  REQUIRE(r.containment_times.size() == 3);
  CHECK(*r.containment_times[0] == doctest::Approx(std::log(0.5)).epsilon(1e-5));
  CHECK(*r.containment_times[2] == doctest::Approx(std::log(0.01)).epsilon(1e-5));
  CHECK(*comes_out_of_point(traj, Point::Zero(), {5.0}).containment_times[0] == traj.t1());

  const PointOriginReport off = comes_out_of_point(traj, Point(0.5, 0, 0), {0.1});
  CHECK_FALSE(off.pass);
  CHECK_FALSE(off.containment_times[0].has_value());
  CHECK_FALSE(comes_out_of_point(traj, Point::Zero(), {0.001}).pass);

  CHECK(code_of([&] { comes_out_of_point(traj, Point::Zero(), {0.1, 0.2}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { comes_out_of_point(traj, Point::Zero(), {}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { comes_out_of_point(Trajectory{}, Point::Zero(), {0.1}); }) == ErrorCode::EmptyTrajectory);
}

TEST_CASE("rigidity_audit") {
  const auto directions = sample_directions(1, 4);
  SUBCASE("round circles pass") {
    const RigidityAuditReport r = rigidity_audit(exp_circles(), speeds::mean(1), Point::Zero(), directions, kSchedule);
    CHECK(r.pass);
    CHECK(r.reflection_ok);
    CHECK(r.symmetry_ok);
    CHECK(r.R_star == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(r.tau_table.size() == 16);
    for (const TauEntry& e : r.tau_table) CHECK(*e.tau == doctest::Approx(std::log(e.c)).epsilon(1e-4));
    REQUIRE(r.max_flow_residual.has_value());
    CHECK(*r.max_flow_residual < 1e-2);
    CHECK(r.narrative.find("frames round") != std::string::npos);
  }
  SUBCASE("evolved from a small circle") {
    FlowConfig cfg;
    cfg.dt = 2e-3;
    cfg.t_end = 4.7;
    const Trajectory traj = evolve(shapes::circle(0.01, 64), speeds::mean(1), 0.0, cfg);
    const RigidityAuditReport r = rigidity_audit(traj, speeds::mean(1), Point::Zero(), directions, kSchedule);
    CHECK(r.pass);
    CHECK(r.skipped_offsets.empty());
    for (const PostTouchEntry& e : r.post_touch_verdicts) CHECK(e.worst != ReflectionStatus::Fails);
  }
  SUBCASE("exponential ellipse fails") {
    const RigidityAuditReport r =
        rigidity_audit(families::exponential_ellipse(coarse()), speeds::mean(1), Point::Zero(), directions, kSchedule);
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.symmetry_ok);
    REQUIRE(r.max_flow_residual.has_value());
    CHECK(*r.max_flow_residual > 0.1);
    CHECK(r.narrative.find("not round") != std::string::npos);
  }
  SUBCASE("preconditions") {
    CHECK(code_of([&] {
            rigidity_audit(exp_circles(), speeds::mean(1), Point(0.5, 0, 0), directions, kSchedule);
          }) == ErrorCode::PreconditionFailed);
    families::Sampling s = coarse();
    s.t1 = std::log(0.5);
    s.time_resolution = 0.05;
    const auto late = families::sphere_family(1, [](double t) { return std::exp(t); }, s);
    CHECK(code_of([&] { rigidity_audit(late, speeds::mean(1), Point::Zero(), directions, {0.45, 0.2}); }) ==
          ErrorCode::NoFramesPastTouch);
  }
}

TEST_CASE("tau_limit_check") {
  const TauLimitReport r = tau_limit_check(exp_circles(), Point(0, 2, 0), {0.4, 0.2, 0.1});
  CHECK(r.pass);
  CHECK(r.V.isApprox(Point(0, 1, 0)));
  for (std::size_t i = 0; i < 3; ++i) CHECK(*r.tau[i] == doctest::Approx(std::log(r.c_schedule[i])).epsilon(1e-5));
  const TauLimitReport far = tau_limit_check(exp_circles(), Point(1, 0, 0), {3.0, 0.1});
  CHECK_FALSE(far.pass);
  CHECK_FALSE(far.tau[0].has_value());
}

TEST_CASE("ancient_nonexistence_check") {
  const SpeedFunction root = speeds::by_name("k^alpha", 1, 0.5);
  SUBCASE("fake ancient circles") {
    const AncientCheckReport r = ancient_nonexistence_check(root, families::fake_ancient_circles(coarse()));
    CHECK(r.status == AncientCheckStatus::Contradiction);
    CHECK(r.rho_minus_T == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(r.T_S == doctest::Approx(-2.0).epsilon(1e-2));
    CHECK(r.comparison_radius_at_T == doctest::Approx(1.427).epsilon(1e-2));
    CHECK(r.escape_time.has_value());
  }
  SUBCASE("an honest solution born at -2") {
    families::Sampling s = coarse();
    s.t0 = -1.99;
    const auto traj = families::sphere_family(1, [](double t) { return 0.25 * (t + 2.0) * (t + 2.0); }, s);
    const AncientCheckReport r = ancient_nonexistence_check(root, traj);
    CHECK(r.status == AncientCheckStatus::Consistent);
  }
  CHECK(code_of([] { ancient_nonexistence_check(speeds::mean(1), exp_circles()); }) == ErrorCode::NotApplicable);
}

TEST_CASE("pinching_diagnostics") {
  SUBCASE("dilated ellipse") {
    const PinchingReport r = pinching_diagnostics(families::scaled_ellipse(2.0, 1.0, coarse()), Point::Zero());
    CHECK(r.inf_radius_ratio == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(r.inf_curvature_ratio == doctest::Approx(0.125).epsilon(0.05));
    CHECK(r.inf_starshapedness == doctest::Approx(0.8).epsilon(1e-2));
    CHECK(r.uniform_radius);
    CHECK(r.uniform_curvature);
    CHECK(r.uniform_starshaped);
    REQUIRE(r.origin_confirmed.has_value());
    CHECK(*r.origin_confirmed);
  }
  SUBCASE("exponential ellipse degenerates") {
    const PinchingReport r = pinching_diagnostics(families::exponential_ellipse(coarse()), Point::Zero());
    CHECK_FALSE(r.uniform_radius);
    CHECK_FALSE(r.uniform_curvature);
    CHECK(r.inf_radius_ratio < 0.01);
  }
}
