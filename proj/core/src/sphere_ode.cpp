// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "ecflow/sphere_ode.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "ecflow/errors.hpp"

namespace ecf {

namespace {

// psi is never evaluated below this radius.
constexpr double kRadiusFloor = 1e-15;
constexpr int kProbeShells = 40;
constexpr int kTailShells = 20;
constexpr double kDivergenceTotal = 1e6;
constexpr double kConvergentRatio = 0.99;

double shell_integral(const SpeedFunction& speed, double lo, double hi) {
  auto f = [&](double r) { return psi(speed, std::max(r, kRadiusFloor)); };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, 1e-12);
}

double ode_rhs(const SpeedFunction& speed, double r) {
  try {
    return 1.0 / psi(speed, r);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CurvatureOutsideCone || e.code() == ErrorCode::NonPositiveSpeed) {
      fail(ErrorCode::ConeExit, "sphere radius " + std::to_string(r) + " left the admissible cone");
    }
    throw;
  }
}

}  // namespace

double psi(const SpeedFunction& speed, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) fail(ErrorCode::InvalidArgument, "psi needs a positive radius");
  std::array<double, Curvatures::kMaxDim> k{};
  k.fill(1.0 / r);
  return speed(Curvatures(std::span<const double>(k.data(), static_cast<std::size_t>(speed.arity()))));
}

SphereFlow integrate_radius(const SpeedFunction& speed, double r0, double t0, double t1, double dt,
                            const Eigen::Vector3d& center) {
  if (!(t1 > t0)) fail(ErrorCode::InvalidArgument, "integrate_radius needs t1 > t0");
  if (!(dt > 0.0)) fail(ErrorCode::InvalidArgument, "integrate_radius needs dt > 0");
  if (!(r0 > 0.0)) fail(ErrorCode::InvalidArgument, "integrate_radius needs r0 > 0");

  SphereFlow flow{center, r0, t0, speed, {}};
  flow.samples.push_back({t0, r0});
  double t = t0;
  double r = r0;
  const auto steps = static_cast<long long>(std::ceil((t1 - t0) / dt - 1e-9));
  for (long long i = 0; i < steps; ++i) {
    const double h = (i + 1 == steps) ? t1 - t : dt;
    const double k1 = ode_rhs(speed, r);
    const double k2 = ode_rhs(speed, r + 0.5 * h * k1);
    const double k3 = ode_rhs(speed, r + 0.5 * h * k2);
    const double k4 = ode_rhs(speed, r + h * k3);
    const double next = r + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
    if (!std::isfinite(next)) fail(ErrorCode::NonFiniteState, "sphere radius became non-finite");
    if (!(next > r)) fail(ErrorCode::NonFiniteState, "sphere radius failed to increase");
    r = next;
    t = (i + 1 == steps) ? t1 : t0 + static_cast<double>(i + 1) * dt;
    flow.samples.push_back({t, r});
  }
  return flow;
}

double sphere_radius_at(const SpeedFunction& speed, double r0, double t0, double t, double dt) {
  if (t == t0) return r0;
  return integrate_radius(speed, r0, t0, t, dt).final_radius();
}

std::string to_string(Ancientness a) { return a == Ancientness::Ancient ? "Ancient" : "NonAncient"; }

AncientnessVerdict is_ancient(const SpeedFunction& speed) {
  AncientnessVerdict v;
  double cumulative = 0.0;
  for (int k = 1; k <= kProbeShells; ++k) {
    const double lo = std::ldexp(1.0, -k);
    const double shell = shell_integral(speed, lo, 2.0 * lo);
    cumulative += shell;
    v.evidence.push_back({lo, shell, cumulative});
  }

  if (const auto alpha = speed.homogeneity()) {
    v.method = "closed form: homogeneity degree " + std::to_string(*alpha);
    if (*alpha >= 1.0) {
      v.verdict = Ancientness::Ancient;
      v.T0_estimate = -std::numeric_limits<double>::infinity();
    } else {
      v.verdict = Ancientness::NonAncient;
      v.T0_estimate = -psi(speed, 1.0) / (1.0 - *alpha);
    }
    return v;
  }

  v.method = "numeric dyadic shell probe";
  bool non_decreasing = true;
  double worst_ratio = 0.0;
  for (int k = kProbeShells - kTailShells; k < kProbeShells; ++k) {
    const double prev = v.evidence[static_cast<std::size_t>(k - 1)].shell;
    const double next = v.evidence[static_cast<std::size_t>(k)].shell;
    non_decreasing = non_decreasing && next >= prev * (1.0 - 1e-9);
    worst_ratio = std::max(worst_ratio, next / prev);
  }
  if (cumulative > kDivergenceTotal || non_decreasing) {
    v.verdict = Ancientness::Ancient;
    v.T0_estimate = -std::numeric_limits<double>::infinity();
    return v;
  }
  if (worst_ratio <= kConvergentRatio) {
    v.verdict = Ancientness::NonAncient;
    v.T0_estimate = initial_time_estimate(speed, 1.0, 0.0);
    return v;
  }
  fail(ErrorCode::IndeterminateDivergence,
       "shell increments for '" + speed.name() + "' neither stabilise nor decay geometrically (worst tail ratio " +
           std::to_string(worst_ratio) + ")");
}

double initial_time_estimate(const SpeedFunction& speed, double r0, double t0) {
  if (!(r0 > 0.0)) fail(ErrorCode::InvalidArgument, "initial_time_estimate needs r0 > 0");
  if (const auto alpha = speed.homogeneity()) {
    if (*alpha >= 1.0) return -std::numeric_limits<double>::infinity();
    return t0 - psi(speed, r0) * r0 / (1.0 - *alpha);
  }

  // Dyadic shells below r0; the tail beyond the floor is summed as a
  // geometric series using the last observed ratio.
  double total = 0.0;
  double prev = 0.0;
  double ratio = 1.0;
  double hi = r0;
  while (hi * 0.5 >= kRadiusFloor) {
    const double lo = 0.5 * hi;
    const double shell = shell_integral(speed, lo, hi);
    if (prev > 0.0) ratio = shell / prev;
    total += shell;
    prev = shell;
    hi = lo;
    if (ratio < 1.0 && shell <= 1e-16 * total) break;
  }
  if (!(ratio < kConvergentRatio)) {
    // Shells are not decaying; defer to the divergence classification.
    if (is_ancient(speed).verdict == Ancientness::Ancient) return -std::numeric_limits<double>::infinity();
    fail(ErrorCode::IndeterminateDivergence, "integral of psi near 0 does not settle for '" + speed.name() + "'");
  }
  total += prev * ratio / (1.0 - ratio);
  return t0 - total;
}

}  // namespace ecf
