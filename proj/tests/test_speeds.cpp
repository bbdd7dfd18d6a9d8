// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "ecflow/errors.hpp"
#include "ecflow/speeds.hpp"

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

}  // namespace

TEST_CASE("eval_speed on the catalog") {
  CHECK(eval_speed(speeds::mean(2), {1.0, 1.0}) == doctest::Approx(2.0));
  CHECK(eval_speed(speeds::gauss(2), {2.0, 3.0}) == doctest::Approx(6.0));
  CHECK(eval_speed(speeds::mean_power(2, 2.0), {0.5, 0.5}) == doctest::Approx(1.0));
  CHECK(eval_speed(speeds::elementary_root(2, 2), {4.0, 1.0}) == doctest::Approx(2.0));
}

TEST_CASE("eval_speed errors") {
  CHECK(code_of([] { eval_speed(speeds::mean(2), {-1.0, 1.0}); }) == ErrorCode::CurvatureOutsideCone);
  const SpeedFunction neg("-H", 2, Cone::positive(), [](const Curvatures& k) { return -(k[0] + k[1]); });
  CHECK(code_of([&] { eval_speed(neg, {1.0, 1.0}); }) == ErrorCode::NonPositiveSpeed);
}

TEST_CASE("permutation symmetry is exact for built-ins") {
  for (const SpeedFunction& f : {speeds::mean(2), speeds::gauss(2), speeds::mean_power(2, 0.5), speeds::elementary_root(2, 2)}) {
    const Curvatures k{0.3, 7.0};
    CHECK(f(k) == f(k.swapped()));
  }
}

TEST_CASE("check_admissibility") {
  SUBCASE("catalog passes") {
    for (const SpeedFunction& f : {speeds::mean(2), speeds::mean_power(2, 0.5), speeds::mean_power(2, 3.0), speeds::gauss(2),
                                   speeds::elementary_root(2, 2), speeds::mean(1)}) {
      const AdmissibilityReport r = check_admissibility(f);
      CHECK_MESSAGE(r.passed, f.name());
      CHECK(r.verdict() == "sampled pass");
      CHECK(r.max_gradient_mismatch <= 1e-6);
    }
  }
  SUBCASE("-H fails positivity everywhere") {
    const SpeedFunction neg("-H", 2, Cone::positive(), [](const Curvatures& k) { return -(k[0] + k[1]); });
    const AdmissibilityReport r = check_admissibility(neg);
    CHECK_FALSE(r.passed);
    CHECK(r.positivity_failures == r.samples.size());
    CHECK(r.verdict() == "sampled fail");
  }
  SUBCASE("H - K fails monotonicity at (1, 2)") {
    const SpeedFunction f("H-K", 2, Cone::positive(), [](const Curvatures& k) { return k[0] + k[1] - k[0] * k[1]; });
    SamplingPlan plan;
    plan.diagonal_magnitudes = {0.1};
    plan.off_diagonal_per_magnitude = 0;
    plan.extra_points = {Curvatures{1.0, 2.0}};
    const AdmissibilityReport r = check_admissibility(f, plan);
    CHECK_FALSE(r.passed);
    bool found = false;
    for (const SamplePointResult& s : r.samples) {
      if (s.point[0] == 1.0 && s.point[1] == 2.0) {
        found = true;
        CHECK_FALSE(s.monotone);
        CHECK(s.gradient[0] == doctest::Approx(-1.0).epsilon(1e-6));
      }
    }
    CHECK(found);
  }
  SUBCASE("empty sample") {
    SamplingPlan plan;
    plan.diagonal_magnitudes.clear();
    plan.off_diagonal_per_magnitude = 0;
    CHECK(code_of([&] { check_admissibility(speeds::mean(2), plan); }) == ErrorCode::EmptySample);
  }
}

TEST_CASE("gradients agree with finite differences") {
  for (const SpeedFunction& f : {speeds::mean(2), speeds::gauss(2), speeds::mean_power(2, 0.5), speeds::elementary_root(2, 2)}) {
    for (const Curvatures& k : {Curvatures{0.5, 2.0}, Curvatures{3.0, 3.0}, Curvatures{10.0, 0.1}}) {
      const Gradient g = f.gradient(k);
      const Gradient fd = f.finite_difference_gradient(k);
      for (int i = 0; i < 2; ++i) CHECK(fd[i] == doctest::Approx(g[i]).epsilon(1e-6));
    }
  }
}

TEST_CASE("homogeneity_degree") {
  const double scales[] = {2.0, 4.0};
  CHECK(*homogeneity_degree(speeds::mean(2), {1.0, 1.0}, scales) == doctest::Approx(1.0));
  CHECK(*homogeneity_degree(speeds::gauss(2), {1.0, 1.0}, scales) == doctest::Approx(2.0));
  const SpeedFunction hk("H+K", 2, Cone::positive(), [](const Curvatures& k) { return k[0] + k[1] + k[0] * k[1]; });
  CHECK_FALSE(homogeneity_degree(hk, {1.0, 1.0}, scales).has_value());
  CHECK(code_of([&] { homogeneity_degree(speeds::mean(2), {-1.0, 1.0}, scales); }) == ErrorCode::CurvatureOutsideCone);
}

TEST_CASE("by_name") {
  CHECK(speeds::by_name("k", 1).name() == "k");
  CHECK(speeds::by_name("H^alpha", 2, 0.5).homogeneity() == doctest::Approx(0.5));
  CHECK(code_of([] { speeds::by_name("H^alpha", 2, -1.0); }) == ErrorCode::ValidationError);
  CHECK(code_of([] { speeds::by_name("nope", 2); }) == ErrorCode::ValidationError);
  CHECK_FALSE(speeds::catalog_names().empty());
}
