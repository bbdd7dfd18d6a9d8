// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "ecflow/hypersurface.hpp"
#include "ecflow/speeds.hpp"

namespace ecf {

struct CurvatureData {
  std::vector<Point> normals;           // outward, unit length
  std::vector<Curvatures> principal;    // positive on convex pieces
};

/// Per-vertex outward normals and principal curvatures.
///
/// Curves use the circle through each vertex and its two neighbours (signed
/// Menger curvature, normal along the circumradius). Surfaces fit a quadric
/// height function over the two-ring in a local frame and read the principal
/// curvatures off the fitted shape operator; the frame is re-fitted once
/// around the corrected normal.
///
/// Throws DegenerateElement on zero-length edges, zero-area faces or a
/// rank-deficient fit.
CurvatureData compute_curvatures(const DiscreteHypersurface& m);

}  // namespace ecf
