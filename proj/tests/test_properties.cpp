// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "ecflow/curvature.hpp"
#include "ecflow/errors.hpp"
#include "ecflow/families.hpp"
#include "ecflow/flow_engine.hpp"
#include "ecflow/queries.hpp"
#include "ecflow/reflection.hpp"
#include "ecflow/shapes.hpp"
#include "ecflow/sphere_ode.hpp"

using namespace ecf;

TEST_CASE("reflection is an involution") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 200; ++trial) {
    const Hyperplane p = Hyperplane::from_direction(Point(g(rng), g(rng), g(rng)), g(rng));
    const Point x(10 * g(rng), 10 * g(rng), 10 * g(rng));
    CHECK((p.reflect(p.reflect(x)) - x).norm() < 1e-12);
    CHECK(std::abs(p.offset(p.reflect(x)) + p.offset(x)) < 1e-12);
  }
}

TEST_CASE("touch time is monotone in the offset") {
  families::Sampling s;
  s.frame_dt = 0.05;
  s.resolution = 96;
  const auto traj = families::scaled_ellipse(2.0, 1.0, s);
  for (const Point& V : sample_directions(1, 8)) {
    double prev = -std::numeric_limits<double>::infinity();
    for (double c : {0.02, 0.05, 0.1, 0.3, 0.6, 0.9}) {
      const double tau = first_touch_time(traj, Hyperplane(V, c));
      CHECK(tau > prev);
      prev = tau;
    }
  }
}

TEST_CASE("evolution is expansive and increases volume") {
  FlowConfig cfg;
  cfg.dt = 2e-3;
  cfg.t_end = 0.2;
  for (const auto& m0 : {shapes::ellipse(2.0, 1.0, 96), shapes::ellipse(1.0, 3.0, 96), shapes::circle(0.5, 64)}) {
    const Trajectory traj = evolve(m0, speeds::mean(1), 0.0, cfg);
    CHECK(check_expansiveness(traj).holds());
    for (std::size_t k = 1; k < traj.size(); ++k) {
      CHECK(traj.frame(k).surface.enclosed_volume() > traj.frame(k - 1).surface.enclosed_volume());
    }
  }
  cfg.t_end = 0.05;
  const Trajectory sphere = evolve(shapes::ellipsoid(1.5, 1.0, 1.0, 2), speeds::mean(2), 0.0, cfg);
  CHECK(check_expansiveness(sphere).holds());
}

TEST_CASE("curvature estimates converge") {
  // Menger curvature is exact on circles
  for (int n : {32, 128, 512}) {
    for (const Curvatures& k : compute_curvatures(shapes::circle(1.0, n)).principal) {
      CHECK(std::abs(k[0] - 1.0) < 1e-10);
    }
  }
  auto ellipse_error = [](int n) {
    const auto m = shapes::ellipse(2.0, 1.0, n);
    const CurvatureData d = compute_curvatures(m);
    double worst = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      const Point& x = m.vertex(i);
      // ab / (b^2 x^2 / a^2 + a^2 y^2 / b^2)^(3/2) with a = 2, b = 1
      const double q = x.x() * x.x() / 4.0 + 4.0 * x.y() * x.y();
      worst = std::max(worst, std::abs(d.principal[i][0] - 2.0 / std::pow(q, 1.5)));
    }
    return worst;
  };
  CHECK(ellipse_error(64) / ellipse_error(128) >= 3.0);
  CHECK(ellipse_error(128) / ellipse_error(256) >= 3.0);
}

TEST_CASE("contains_point agrees with analytic membership") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  const auto ellipse = shapes::ellipse(2.0, 1.0, 512);
  const auto sphere = shapes::icosphere(1.0, 4);
  int mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    const Point p2(u(rng), u(rng), 0.0);
    const double e = p2.x() * p2.x() / 4.0 + p2.y() * p2.y();
    if (std::abs(e - 1.0) > 1e-3) {
      const bool inside = contains_point(ellipse, p2) == Containment::Inside;
      if (inside != (e < 1.0)) ++mismatches;
    }
    const Point p3(u(rng) / 2, u(rng) / 2, u(rng) / 2);
    if (std::abs(p3.norm() - 1.0) > 1e-2) {
      const bool inside = contains_point(sphere, p3) == Containment::Inside;
      if (inside != (p3.norm() < 1.0)) ++mismatches;
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("ancientness agrees with the initial time estimate") {
  for (const SpeedFunction& f : {speeds::mean(1), speeds::mean(2), speeds::gauss(2), speeds::mean_power(1, 0.5),
                                 speeds::mean_power(2, 0.7), speeds::mean_power(2, 2.0)}) {
    const bool ancient = is_ancient(f).verdict == Ancientness::Ancient;
    for (double r0 : {0.1, 1.0, 10.0}) {
      const double T0 = initial_time_estimate(f, r0, 0.0);
      CHECK(std::isinf(T0) == ancient);
      if (!ancient) {
        // the sphere born at T0 passes r0 / 2 at T0 + int_0^{r0/2} psi and r0 at 0
        CHECK(T0 < 0.0);
        const double s = T0 - initial_time_estimate(f, 0.5 * r0, 0.0);
        CHECK(sphere_radius_at(f, 0.5 * r0, s, 0.0, -s / 1000.0) == doctest::Approx(r0).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("gradients and symmetry of the catalog speeds") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (const std::string& name : speeds::catalog_names()) {
    for (int n : {1, 2}) {
      SpeedFunction f = speeds::mean(n);
      try {
        f = speeds::by_name(name, n, 0.5);
      } catch (const Error&) {
        continue;
      }
      for (int i = 0; i < 20; ++i) {
        const Curvatures k = n == 1 ? Curvatures{u(rng)} : Curvatures{u(rng), u(rng)};
        const Gradient a = f.gradient(k);
        const Gradient b = f.finite_difference_gradient(k);
        for (int j = 0; j < n; ++j) CHECK(a[j] == doctest::Approx(b[j]).epsilon(1e-5));
        if (n == 2) CHECK(f(k) == doctest::Approx(f(k.swapped())).epsilon(1e-14));
      }
    }
  }
}
