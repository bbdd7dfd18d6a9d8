// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "ecflow/families.hpp"

#include <cmath>

#include "ecflow/errors.hpp"
#include "ecflow/shapes.hpp"

namespace ecf::families {

Trajectory sphere_family(int dim, RadiusFn radius, const Sampling& sampling, const Point& center) {
  if (dim != 1 && dim != 2) fail(ErrorCode::InvalidArgument, "dimension must be 1 or 2");
  const int res = sampling.resolution;
  Trajectory::Generator gen = [dim, radius, res, center](double t) {
    return dim == 1 ? shapes::circle(radius(t), res, center) : shapes::icosphere(radius(t), res, center);
  };
  return Trajectory::analytic(dim == 1 ? "circles" : "spheres", std::move(gen), sampling.t0, sampling.t1,
                              sampling.frame_dt, sampling.time_resolution);
}

Trajectory ellipse_family(RadiusFn a, RadiusFn b, const Sampling& sampling) {
  const int res = sampling.resolution;
  Trajectory::Generator gen = [a, b, res](double t) { return shapes::ellipse(a(t), b(t), res); };
  return Trajectory::analytic("ellipses", std::move(gen), sampling.t0, sampling.t1, sampling.frame_dt,
                              sampling.time_resolution);
}

Trajectory exponential_ellipse(const Sampling& sampling) {
  return ellipse_family([](double t) { return std::exp(t); }, [](double t) { return std::exp(2.0 * t); }, sampling);
}

Trajectory scaled_ellipse(double a, double b, const Sampling& sampling) {
  return ellipse_family([a](double t) { return a * std::exp(t); }, [b](double t) { return b * std::exp(t); }, sampling);
}

Trajectory fake_ancient_circles(const Sampling& sampling) {
  return sphere_family(
      1,
      [](double t) {
        if (t >= -1.5) return (1.0 + 0.5 * t) * (1.0 + 0.5 * t);
        return 0.0625 * std::exp(t + 1.5);
      },
      sampling);
}

}  // namespace ecf::families
