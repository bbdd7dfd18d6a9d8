// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "ecflow/hypersurface.hpp"

namespace ecf {

enum class Containment { Inside, Outside, OnBoundary };

const char* to_string(Containment c);

/// Winding number (curves) or generalized winding number from signed solid
/// angles (surfaces). Close to 1 inside and 0 outside.
double winding_number(const DiscreteHypersurface& m, const Point& p);

double distance_to_surface(const DiscreteHypersurface& m, const Point& p);

/// Distance to the surface, positive inside and negative outside.
double signed_distance(const DiscreteHypersurface& m, const Point& p);

/// OnBoundary when the distance to the mesh is below `tol`
/// (default 1e-9 times the bounding-box diagonal).
Containment contains_point(const DiscreteHypersurface& m, const Point& p, std::optional<double> tol = std::nullopt);

struct RadiiReport {
  Point center = Point::Zero();
  double rho_minus = 0.0;  // inradius about center
  double rho_plus = 0.0;   // farthest vertex from center
};

/// Inner/outer radius about `center`, or about an approximate Chebyshev
/// center when none is given. Throws CenterOutside for a center that is not
/// Inside.
RadiiReport inner_outer_radii(const DiscreteHypersurface& m, std::optional<Point> center = std::nullopt);

/// Interior point maximizing the distance to the surface: grid search over
/// the bounding box (129^2 for curves, 33^3 for surfaces) refined once
/// around the best cell.
Point chebyshev_center(const DiscreteHypersurface& m);

/// min over vertices of <x - origin, nu(x)> / |x - origin|.
double starshapedness_ratio(const DiscreteHypersurface& m, const Point& origin);

/// min lambda / max lambda over all vertices and directions. Throws
/// NonConvexInput when some principal curvature is not positive.
double curvature_pinching_ratio(const DiscreteHypersurface& m);

/// max over vertices of <x, V>.
double support_max(const DiscreteHypersurface& m, const Point& direction);

/// max over vertices of |x - center|.
double max_distance_from(const DiscreteHypersurface& m, const Point& center);

}  // namespace ecf
