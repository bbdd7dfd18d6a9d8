// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "ecflow/hypersurface.hpp"

namespace ecf::shapes {

/// Regular polygon inscribed in the circle of radius r; vertex 0 sits at
/// angle `phase`.
DiscreteHypersurface circle(double r, int vertices, const Point& center = Point::Zero(), double phase = 0.0);

/// Ellipse x = a cos t, y = b sin t sampled uniformly in t, vertex 0 at (a, 0).
DiscreteHypersurface ellipse(double a, double b, int vertices, const Point& center = Point::Zero());

/// Axis-aligned square of the given side, `per_side` vertices on each side.
DiscreteHypersurface square(double side, int per_side = 1, const Point& center = Point::Zero());

/// Subdivided icosahedron projected to the sphere of radius r
/// (10 * 4^level + 2 vertices; level 4 gives 2562).
DiscreteHypersurface icosphere(double r, int level, const Point& center = Point::Zero());

/// Icosphere stretched to the ellipsoid with semi-axes (a, b, c).
DiscreteHypersurface ellipsoid(double a, double b, double c, int level);

/// Icosphere whose vertex radii are r (1 + amplitude s_i) with s_i in [-1, 1]
/// drawn from `seed`; one vertex is pinned at +1 and one at -1 so the radial
/// spread is exactly 2 amplitude r.
DiscreteHypersurface noisy_sphere(double r, int level, double amplitude, std::uint64_t seed);

}  // namespace ecf::shapes
