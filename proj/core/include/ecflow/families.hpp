// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

#include "ecflow/hypersurface.hpp"
#include "ecflow/trajectory.hpp"

/// Analytic trajectories: exact round solutions and synthetic non-solutions
/// used as positive and negative controls by the audits.
namespace ecf::families {

using RadiusFn = std::function<double(double t)>;

struct Sampling {
  double t0 = -6.0;
  double t1 = 0.0;
  double frame_dt = 0.02;
  int resolution = 256;  // vertices of a curve, or icosphere level for surfaces
  double time_resolution = 1e-6;
};

/// Round circles (dim 1) or icospheres (dim 2) of radius radius(t).
Trajectory sphere_family(int dim, RadiusFn radius, const Sampling& sampling, const Point& center = Point::Zero());

/// Ellipses with semi-axes (a(t), b(t)) centered at the origin.
Trajectory ellipse_family(RadiusFn a, RadiusFn b, const Sampling& sampling);

/// Semi-axes (e^t, e^{2t}): comes out of the origin but does not move by
/// any curvature flow.
Trajectory exponential_ellipse(const Sampling& sampling);

/// The fixed ellipse (a, b) dilated by e^t.
Trajectory scaled_ellipse(double a, double b, const Sampling& sampling);

/// Circles r(t) = (1 + t/2)^2 for t >= -3/2, continued as 0.0625 e^{t + 3/2}
/// below, which exist before the circle solution of k^{1/2} is born.
Trajectory fake_ancient_circles(const Sampling& sampling);

}  // namespace ecf::families
