// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "ecflow/curvature.hpp"

#include <cmath>

#include "ecflow/errors.hpp"
#include "geometry_kernels.hpp"
#include "local_quadric.hpp"

namespace ecf {

namespace {

CurvatureData curve_curvatures(const DiscreteHypersurface& m) {
  const auto& v = m.vertices();
  const std::size_t count = v.size();
  CurvatureData out;
  out.normals.resize(count);
  out.principal.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Point& a = v[(i + count - 1) % count];
    const Point& p = v[i];
    const Point& b = v[(i + 1) % count];
    const double la = (p - a).norm();
    const double lb = (b - p).norm();
    const double lc = (b - a).norm();
    if (la == 0.0 || lb == 0.0 || lc == 0.0) {
      fail(ErrorCode::DegenerateElement, "zero-length edge at curve vertex " + std::to_string(i));
    }
    const double turn = detail::cross2(p - a, b - p);
    const double k = 2.0 * turn / (la * lb * lc);
    // chord normal: tangent (b - a) rotated clockwise, outward for CCW curves
    Point normal(b.y() - a.y(), a.x() - b.x(), 0.0);
    normal /= lc;
    if (std::abs(k) * lc > 1e-12) {
      // circumcenter sits at p - normal_exact / k; recover the exact radial direction
      const Point ab = b - a;
      const Point ap = p - a;
      const double d = 2.0 * detail::cross2(ap, ab);
      const double ap2 = ap.squaredNorm();
      const double ab2 = ab.squaredNorm();
      const Point center = a + Point((ab.y() * ap2 - ap.y() * ab2) / d, (ap.x() * ab2 - ab.x() * ap2) / d, 0.0);
      Point radial = p - center;
      radial /= radial.norm();
      normal = k > 0.0 ? radial : Point(-radial);
    }
    out.normals[i] = normal;
    out.principal[i] = Curvatures{k};
  }
  return out;
}

CurvatureData surface_curvatures(const DiscreteHypersurface& m) {
  const std::vector<detail::LocalQuadric> fits = detail::fit_vertex_quadrics(m);
  CurvatureData out;
  out.normals.resize(fits.size());
  out.principal.resize(fits.size());
  for (std::size_t i = 0; i < fits.size(); ++i) {
    const auto [k1, k2] = fits[i].principal_curvatures();
    out.normals[i] = fits[i].normal_at_origin();
    out.principal[i] = Curvatures{k1, k2};
  }
  return out;
}

}  // namespace

CurvatureData compute_curvatures(const DiscreteHypersurface& m) {
  return m.dim() == 1 ? curve_curvatures(m) : surface_curvatures(m);
}

}  // namespace ecf
