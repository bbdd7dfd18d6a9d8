// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "ecflow/errors.hpp"
#include "ecflow/sphere_ode.hpp"

using namespace ecf;

TEST_CASE("psi") {
  CHECK(psi(speeds::mean(2), 2.0) == doctest::Approx(1.0));
  CHECK(psi(speeds::gauss(2), 2.0) == doctest::Approx(0.25));
  CHECK(psi(speeds::mean_power(1, 2.0), 0.5) == doctest::Approx(4.0));
}

TEST_CASE("integrate_radius against closed forms") {
  CHECK(integrate_radius(speeds::mean(1), 1.0, 0.0, 1.0, 1e-3).final_radius() == doctest::Approx(std::exp(1.0)).epsilon(1e-10));
  CHECK(integrate_radius(speeds::mean(2), 1.0, 0.0, 1.0, 1e-3).final_radius() == doctest::Approx(std::exp(0.5)).epsilon(1e-10));
  CHECK(integrate_radius(speeds::mean_power(1, 0.5), 1.0, 0.0, 1.0, 1e-3).final_radius() == doctest::Approx(2.25).epsilon(1e-10));
}

TEST_CASE("integrate_radius samples") {
  const SphereFlow flow = integrate_radius(speeds::mean(1), 0.5, -1.0, 0.3, 0.07);
  CHECK(flow.samples.front().t == -1.0);
  CHECK(flow.final_time() == 0.3);
  for (std::size_t i = 1; i < flow.samples.size(); ++i) CHECK(flow.samples[i].r > flow.samples[i - 1].r);
  CHECK_THROWS_AS(integrate_radius(speeds::mean(1), 1.0, 1.0, 0.0, 0.1), Error);
  CHECK_THROWS_AS(integrate_radius(speeds::mean(1), 1.0, 0.0, 1.0, 0.0), Error);
}

TEST_CASE("integrate_radius leaves a bounded custom cone") {
  const Cone small = Cone::custom([](const Curvatures& k) { return k[0] > 0.5; }, "k > 0.5");
  const SpeedFunction f("k on k > 0.5", 1, small, [](const Curvatures& k) { return k[0]; });
  try {
    integrate_radius(f, 1.0, 0.0, 2.0, 1e-3);
    FAIL("expected ConeExit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConeExit);
  }
}

TEST_CASE("is_ancient on H^alpha") {
  CHECK(is_ancient(speeds::mean_power(2, 0.5)).verdict == Ancientness::NonAncient);
  CHECK(is_ancient(speeds::mean(2)).verdict == Ancientness::Ancient);
  CHECK(is_ancient(speeds::mean_power(2, 2.0)).verdict == Ancientness::Ancient);
  const AncientnessVerdict v = is_ancient(speeds::mean_power(1, 0.5));
  CHECK(std::isfinite(v.T0_estimate));
  CHECK(v.T0_estimate == doctest::Approx(-2.0));
  CHECK(std::isinf(is_ancient(speeds::mean(1)).T0_estimate));
}

TEST_CASE("is_ancient numeric probe without known homogeneity") {
  const SpeedFunction sqrt_k("sqrt k", 1, Cone::positive(), [](const Curvatures& k) { return std::sqrt(k[0]); });
  const SpeedFunction k("k", 1, Cone::positive(), [](const Curvatures& c) { return c[0]; });
  const SpeedFunction k2("k^2", 1, Cone::positive(), [](const Curvatures& c) { return c[0] * c[0]; });
  const AncientnessVerdict a = is_ancient(sqrt_k);
  CHECK(a.verdict == Ancientness::NonAncient);
  CHECK(a.T0_estimate == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK_FALSE(a.evidence.empty());
  CHECK(is_ancient(k).verdict == Ancientness::Ancient);
  CHECK(is_ancient(k2).verdict == Ancientness::Ancient);
}

TEST_CASE("is_ancient reports indeterminate evidence") {
  // shell increments alternate, so neither divergence rule can fire
  const SpeedFunction slow("wavy", 1, Cone::positive(), [](const Curvatures& c) {
    const double r = 1.0 / c[0];
    return (1.0 + 0.5 * std::sin(M_PI * std::log2(r))) / r;
  });
  try {
    is_ancient(slow);
    FAIL("expected IndeterminateDivergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IndeterminateDivergence);
  }
}

TEST_CASE("initial_time_estimate") {
  CHECK(initial_time_estimate(speeds::mean_power(1, 0.5), 1.0, 0.0) == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(std::isinf(initial_time_estimate(speeds::mean(1), 1.0, 0.0)));
  CHECK(std::isinf(initial_time_estimate(speeds::mean_power(1, 2.0), 1.0, 0.0)));
  // t0 - 2 sqrt(r0)
  CHECK(initial_time_estimate(speeds::mean_power(1, 0.5), 4.0, 3.0) == doctest::Approx(-1.0).epsilon(1e-9));
}
