// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "ecflow/queries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "ecflow/curvature.hpp"
#include "ecflow/errors.hpp"
#include "geometry_kernels.hpp"

namespace ecf {

const char* to_string(Containment c) {
  switch (c) {
    case Containment::Inside: return "Inside";
    case Containment::Outside: return "Outside";
    case Containment::OnBoundary: return "OnBoundary";
  }
  return "?";
}

double winding_number(const DiscreteHypersurface& m, const Point& p) {
  const auto& v = m.vertices();
  double total = 0.0;
  if (m.dim() == 1) {
    for (const Edge& e : m.edges()) {
      const Point a = v[static_cast<std::size_t>(e[0])] - p;
      const Point b = v[static_cast<std::size_t>(e[1])] - p;
      total += std::atan2(detail::cross2(a, b), a.x() * b.x() + a.y() * b.y());
    }
    return total / (2.0 * std::numbers::pi);
  }
  for (const Face& f : m.faces()) {
    total += detail::solid_angle(p, v[static_cast<std::size_t>(f[0])], v[static_cast<std::size_t>(f[1])],
                                 v[static_cast<std::size_t>(f[2])]);
  }
  return total / (4.0 * std::numbers::pi);
}

double distance_to_surface(const DiscreteHypersurface& m, const Point& p) {
  const auto& v = m.vertices();
  double best = std::numeric_limits<double>::infinity();
  if (m.dim() == 1) {
    for (const Edge& e : m.edges()) {
      best = std::min(best, detail::point_segment_distance(p, v[static_cast<std::size_t>(e[0])], v[static_cast<std::size_t>(e[1])]));
    }
    return best;
  }
  for (const Face& f : m.faces()) {
    best = std::min(best, detail::point_triangle_distance(p, v[static_cast<std::size_t>(f[0])], v[static_cast<std::size_t>(f[1])],
                                                          v[static_cast<std::size_t>(f[2])]));
  }
  return best;
}

double signed_distance(const DiscreteHypersurface& m, const Point& p) {
  const double d = distance_to_surface(m, p);
  return winding_number(m, p) > 0.5 ? d : -d;
}

Containment contains_point(const DiscreteHypersurface& m, const Point& p, std::optional<double> tol) {
  const double band = tol.value_or(1e-9 * m.bbox_diagonal());
  if (distance_to_surface(m, p) < band) return Containment::OnBoundary;
  return winding_number(m, p) > 0.5 ? Containment::Inside : Containment::Outside;
}

double max_distance_from(const DiscreteHypersurface& m, const Point& center) {
  double best = 0.0;
  for (const Point& x : m.vertices()) best = std::max(best, (x - center).norm());
  return best;
}

namespace {

// Best interior point on a regular grid; candidates are visited in order of
// decreasing nearest-vertex distance, which bounds the surface distance from
// above, so the scan stops as soon as no candidate can win.
std::pair<Point, double> grid_search(const DiscreteHypersurface& m, const Point& lo, const Point& hi, int res,
                                     std::optional<std::pair<Point, double>> incumbent) {
  const int dims = m.dim() + 1;
  std::vector<Point> pts;
  const int nz = dims == 3 ? res : 1;
  pts.reserve(static_cast<std::size_t>(res) * static_cast<std::size_t>(res) * static_cast<std::size_t>(nz));
  for (int i = 0; i < res; ++i) {
    for (int j = 0; j < res; ++j) {
      for (int k = 0; k < nz; ++k) {
        Point p;
        p.x() = lo.x() + (hi.x() - lo.x()) * i / (res - 1);
        p.y() = lo.y() + (hi.y() - lo.y()) * j / (res - 1);
        p.z() = dims == 3 ? lo.z() + (hi.z() - lo.z()) * k / (res - 1) : 0.0;
        pts.push_back(p);
      }
    }
  }
  std::vector<double> bound(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double b = std::numeric_limits<double>::infinity();
    for (const Point& x : m.vertices()) b = std::min(b, (x - pts[i]).squaredNorm());
    bound[i] = std::sqrt(b);
  }
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return bound[a] > bound[b]; });

  Point best_p = incumbent ? incumbent->first : Point::Zero();
  double best_d = incumbent ? incumbent->second : -1.0;
  for (std::size_t idx : order) {
    if (bound[idx] <= best_d) break;
    const double d = distance_to_surface(m, pts[idx]);
    if (d <= best_d) continue;
    if (winding_number(m, pts[idx]) <= 0.5) continue;
    best_d = d;
    best_p = pts[idx];
  }
  return {best_p, best_d};
}

}  // namespace

Point chebyshev_center(const DiscreteHypersurface& m) {
  const int res = m.dim() == 1 ? 129 : 33;
  Point lo = m.bbox_min();
  Point hi = m.bbox_max();
  auto coarse = grid_search(m, lo, hi, res, std::nullopt);
  if (coarse.second < 0.0) {
    // no grid point landed inside (extremely thin shape); fall back to the centroid
    return m.vertex_centroid();
  }
  const Point cell = (hi - lo) / static_cast<double>(res - 1);
  auto fine = grid_search(m, coarse.first - cell, coarse.first + cell, res, coarse);
  return fine.first;
}

RadiiReport inner_outer_radii(const DiscreteHypersurface& m, std::optional<Point> center) {
  RadiiReport r;
  if (center) {
    if (contains_point(m, *center) != Containment::Inside) fail(ErrorCode::CenterOutside, "reference center is not inside the surface");
    r.center = *center;
  } else {
    r.center = chebyshev_center(m);
  }
  r.rho_minus = distance_to_surface(m, r.center);
  r.rho_plus = max_distance_from(m, r.center);
  return r;
}

double starshapedness_ratio(const DiscreteHypersurface& m, const Point& origin) {
  if (contains_point(m, origin) != Containment::Inside) fail(ErrorCode::CenterOutside, "starshapedness origin is not inside the surface");
  const CurvatureData data = compute_curvatures(m);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Point rel = m.vertex(i) - origin;
    best = std::min(best, rel.dot(data.normals[i]) / rel.norm());
  }
  return best;
}

double curvature_pinching_ratio(const DiscreteHypersurface& m) {
  const CurvatureData data = compute_curvatures(m);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t i = 0; i < data.principal.size(); ++i) {
    const Curvatures& k = data.principal[i];
    if (!(k.min() > 0.0)) {
      fail(ErrorCode::NonConvexInput, "principal curvature " + std::to_string(k.min()) + " at vertex " + std::to_string(i));
    }
    lo = std::min(lo, k.min());
    hi = std::max(hi, k.max());
  }
  return lo / hi;
}

double support_max(const DiscreteHypersurface& m, const Point& direction) {
  double best = -std::numeric_limits<double>::infinity();
  for (const Point& x : m.vertices()) best = std::max(best, x.dot(direction));
  return best;
}

}  // namespace ecf
