// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "ecflow/speeds.hpp"

namespace ecf {

/// psi(r) = F(1/r, ..., 1/r), the speed of the round sphere of radius r.
double psi(const SpeedFunction& speed, double r);

struct RadiusSample {
  double t;
  double r;
};

/// Expanding round sphere: dr/dt = 1 / psi(r).
struct SphereFlow {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double r0 = 1.0;
  double t0 = 0.0;
  SpeedFunction speed;
  std::vector<RadiusSample> samples;

  double final_radius() const { return samples.back().r; }
  double final_time() const { return samples.back().t; }
};

/// Classical fourth-order Runge-Kutta with fixed step; the last step is
/// shortened so that the final sample lands exactly on t1.
SphereFlow integrate_radius(const SpeedFunction& speed, double r0, double t0, double t1, double dt,
                            const Eigen::Vector3d& center = Eigen::Vector3d::Zero());

/// Single-value convenience wrapper around integrate_radius.
double sphere_radius_at(const SpeedFunction& speed, double r0, double t0, double t, double dt);

enum class Ancientness { Ancient, NonAncient };

struct ShellIntegral {
  double eps;         // lower end of the shell [eps, 2 eps]
  double shell;       // integral of psi over the shell
  double cumulative;  // integral of psi over [eps, 1]
};

struct AncientnessVerdict {
  Ancientness verdict = Ancientness::NonAncient;
  /// Birth time of the unit sphere anchored at t0 = 0, i.e. -int_0^1 psi.
  /// Equals -infinity exactly when verdict == Ancient.
  double T0_estimate = 0.0;
  std::vector<ShellIntegral> evidence;
  std::string method;
};

/// Decides whether int_0^1 psi diverges. A known homogeneity degree alpha
/// settles the question in closed form (alpha >= 1); otherwise a dyadic shell
/// probe is used and an inconclusive probe raises IndeterminateDivergence.
AncientnessVerdict is_ancient(const SpeedFunction& speed);

/// T0 = t0 - int_0^{r0} psi(r) dr, or -infinity when the integral diverges.
double initial_time_estimate(const SpeedFunction& speed, double r0, double t0);

std::string to_string(Ancientness a);

}  // namespace ecf
