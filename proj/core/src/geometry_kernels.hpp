// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

// Small geometric predicates shared by the mesh validation, containment and
// distance code. Internal header.

#pragma once

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>

#include "ecflow/hypersurface.hpp"

namespace ecf::detail {

inline double cross2(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

inline double orient2(const Point& a, const Point& b, const Point& c) { return cross2(b - a, c - a); }

inline bool on_segment2(const Point& a, const Point& b, const Point& p) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) && std::min(a.y(), b.y()) <= p.y() &&
         p.y() <= std::max(a.y(), b.y());
}

/// Closed segments [a,b] and [c,d] in the plane intersect.
inline bool segments_intersect2(const Point& a, const Point& b, const Point& c, const Point& d) {
  const double o1 = orient2(a, b, c);
  const double o2 = orient2(a, b, d);
  const double o3 = orient2(c, d, a);
  const double o4 = orient2(c, d, b);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) return true;
  if (o1 == 0 && on_segment2(a, b, c)) return true;
  if (o2 == 0 && on_segment2(a, b, d)) return true;
  if (o3 == 0 && on_segment2(c, d, a)) return true;
  if (o4 == 0 && on_segment2(c, d, b)) return true;
  return false;
}

/// Segment [p,q] crosses triangle (a,b,c) (Moller-Trumbore, both ends inclusive).
inline bool segment_hits_triangle(const Point& p, const Point& q, const Point& a, const Point& b, const Point& c) {
  const Point dir = q - p;
  const Point e1 = b - a;
  const Point e2 = c - a;
  const Point h = dir.cross(e2);
  const double det = e1.dot(h);
  const double scale = e1.norm() * e2.norm() * dir.norm();
  if (std::abs(det) <= 1e-14 * scale) return false;  // parallel or coplanar
  const double inv = 1.0 / det;
  const Point s = p - a;
  const double u = inv * s.dot(h);
  if (u < 0.0 || u > 1.0) return false;
  const Point qv = s.cross(e1);
  const double v = inv * dir.dot(qv);
  if (v < 0.0 || u + v > 1.0) return false;
  const double t = inv * e2.dot(qv);
  return t >= 0.0 && t <= 1.0;
}

inline double point_segment_distance(const Point& p, const Point& a, const Point& b) {
  const Point ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

/// Closest point on triangle (a,b,c) to p (Ericson, Real-Time Collision Detection 5.1.5).
inline Point closest_point_on_triangle(const Point& p, const Point& a, const Point& b, const Point& c) {
  const Point ab = b - a;
  const Point ac = c - a;
  const Point ap = p - a;
  const double d1 = ab.dot(ap);
  const double d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;
  const Point bp = p - b;
  const double d3 = ab.dot(bp);
  const double d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return b;
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return a + (d1 / (d1 - d3)) * ab;
  const Point cp = p - c;
  const double d5 = ab.dot(cp);
  const double d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return c;
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return a + (d2 / (d2 - d6)) * ac;
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);
  const double denom = 1.0 / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

inline double point_triangle_distance(const Point& p, const Point& a, const Point& b, const Point& c) {
  return (p - closest_point_on_triangle(p, a, b, c)).norm();
}

/// Signed solid angle of triangle (a,b,c) seen from p (Van Oosterom-Strackee).
inline double solid_angle(const Point& p, const Point& a, const Point& b, const Point& c) {
  const Point x = a - p;
  const Point y = b - p;
  const Point z = c - p;
  const double lx = x.norm();
  const double ly = y.norm();
  const double lz = z.norm();
  const double numer = x.dot(y.cross(z));
  const double denom = lx * ly * lz + x.dot(y) * lz + x.dot(z) * ly + y.dot(z) * lx;
  return 2.0 * std::atan2(numer, denom);
}

}  // namespace ecf::detail
