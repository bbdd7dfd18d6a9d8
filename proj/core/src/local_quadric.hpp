// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

// Height-function quadric fitted over a vertex neighbourhood. Internal header
// shared by the curvature estimator and the remesher.

#pragma once

#include <utility>
#include <vector>

#include "ecflow/hypersurface.hpp"

namespace ecf::detail {

struct LocalQuadric {
  Point origin;
  Point t1, t2, normal;  // orthonormal frame, normal outward
  // h(u, v) = a u^2 + b u v + c v^2 + d u + e v in world units
  double a = 0, b = 0, c = 0, d = 0, e = 0;

  double height(double u, double v) const { return a * u * u + b * u * v + c * v * v + d * u + e * v; }

  /// Moves q along the frame normal onto the fitted surface.
  Point project(const Point& q) const {
    const Point rel = q - origin;
    const double u = rel.dot(t1);
    const double v = rel.dot(t2);
    return origin + u * t1 + v * t2 + height(u, v) * normal;
  }

  Point normal_at_origin() const { return (normal - d * t1 - e * t2).normalized(); }

  /// Principal curvatures with respect to the outward normal (positive on
  /// convex surfaces), smaller first.
  std::pair<double, double> principal_curvatures() const;
};

/// Least-squares fit over `ring`, re-fitted once in the frame of the
/// corrected normal. Throws DegenerateElement on rank deficiency.
LocalQuadric fit_local_quadric(const Point& p, const Point& initial_normal, const std::vector<Point>& ring,
                               std::size_t vertex);

/// One fit per vertex of a surface mesh over its two-ring, seeded with
/// area-weighted face normals.
std::vector<LocalQuadric> fit_vertex_quadrics(const DiscreteHypersurface& m);

}  // namespace ecf::detail
