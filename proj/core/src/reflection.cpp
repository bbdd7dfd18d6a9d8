// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "ecflow/reflection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ecflow/curvature.hpp"
#include "ecflow/errors.hpp"
#include "ecflow/queries.hpp"

namespace ecf {

Hyperplane::Hyperplane(Point V, double c) : V_(std::move(V)), c_(c) {
  if (!V_.allFinite() || std::abs(V_.norm() - 1.0) > 1e-12) {
    fail(ErrorCode::InvalidArgument, "hyperplane normal must be a unit vector");
  }
  if (!std::isfinite(c_)) fail(ErrorCode::InvalidArgument, "hyperplane offset must be finite");
}

Hyperplane Hyperplane::from_direction(const Point& direction, double c) {
  const double norm = direction.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) fail(ErrorCode::InvalidArgument, "direction must be nonzero");
  return Hyperplane(direction / norm, c);
}

std::vector<Point> reflect_points(const std::vector<Point>& points, const Hyperplane& plane) {
  std::vector<Point> out;
  out.reserve(points.size());
  for (const Point& p : points) out.push_back(plane.reflect(p));
  return out;
}

std::vector<Point> reflect_points(const DiscreteHypersurface& m, const Hyperplane& plane) {
  return reflect_points(m.vertices(), plane);
}

const char* to_string(ReflectionStatus s) {
  switch (s) {
    case ReflectionStatus::Strict: return "Strict";
    case ReflectionStatus::NonStrict: return "NonStrict";
    case ReflectionStatus::Fails: return "Fails";
    case ReflectionStatus::Vacuous: return "Vacuous";
  }
  return "?";
}

ReflectionVerdict strict_reflection_check(const DiscreteHypersurface& m, const Hyperplane& plane,
                                          const ReflectionTolerances& tol) {
  ReflectionVerdict verdict;
  if (support_max(m, plane.V()) < plane.c()) return verdict;  // Vacuous

  const double plane_band = tol.plane_band.value_or(m.max_edge_length());
  const double inclusion_band = tol.inclusion_band.value_or(1e-6 * m.bbox_diagonal());
  const auto& v = m.vertices();
  bool outside = false;
  bool inconclusive = false;
  auto witness = [&](ReflectionWitness w) {
    if (verdict.witnesses.size() < tol.max_witnesses) verdict.witnesses.push_back(std::move(w));
  };

  for (std::size_t i = 0; i < v.size(); ++i) {
    if (plane.offset(v[i]) <= plane_band) continue;
    const Point r = plane.reflect(v[i]);
    const double sd = signed_distance(m, r);
    ++verdict.tested_points;
    verdict.inclusion_margin = std::min(verdict.inclusion_margin, sd);
    if (sd < -inclusion_band) {
      outside = true;
      witness({i, r, sd, "outside"});
    } else if (sd <= inclusion_band) {
      inconclusive = true;
      if (!outside) witness({i, r, sd, "boundary"});
    }
  }

  const CurvatureData data = compute_curvatures(m);
  for (const Edge& e : m.edges()) {
    const auto a = static_cast<std::size_t>(e[0]);
    const auto b = static_cast<std::size_t>(e[1]);
    const double oa = plane.offset(v[a]);
    const double ob = plane.offset(v[b]);
    if ((oa > 0.0) == (ob > 0.0) && oa != 0.0 && ob != 0.0) continue;
    const double s = oa == ob ? 0.5 : oa / (oa - ob);
    const Point normal = ((1.0 - s) * data.normals[a] + s * data.normals[b]).normalized();
    const double angle = std::asin(std::min(1.0, std::abs(normal.dot(plane.V()))));
    verdict.tangency_margin = std::min(verdict.tangency_margin, angle);
    if (angle <= tol.tangency_angle) {
      inconclusive = true;
      if (!outside) witness({std::abs(oa) <= std::abs(ob) ? a : b, (1.0 - s) * v[a] + s * v[b], angle, "tangent"});
    }
  }

  if (outside) {
    verdict.status = ReflectionStatus::Fails;
    // only outside witnesses matter for a failure
    std::erase_if(verdict.witnesses, [](const ReflectionWitness& w) { return w.kind != "outside"; });
  } else {
    verdict.status = inconclusive ? ReflectionStatus::NonStrict : ReflectionStatus::Strict;
  }
  return verdict;
}

double first_touch_time(const Trajectory& traj, const Hyperplane& plane) {
  if (traj.empty()) fail(ErrorCode::EmptyTrajectory, "trajectory has no frames");
  auto touches = [&](const DiscreteHypersurface& m) { return support_max(m, plane.V()) >= plane.c(); };
  std::size_t k = 0;
  while (k < traj.size() && !touches(traj.frame(k).surface)) ++k;
  if (k == traj.size()) {
    fail(ErrorCode::NeverTouches, "no frame reaches the plane with offset " + std::to_string(plane.c()));
  }
  if (k == 0) return traj.t0();
  double lo = traj.frame(k - 1).t;
  double hi = traj.frame(k).t;
  if (!traj.continuous()) return hi;
  const double resolution = traj.time_resolution();
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    if (touches(traj.at(mid))) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

MonitorResult monitor_reflection(const Trajectory& traj, const Hyperplane& plane, double t_start,
                                 const ReflectionTolerances& tol) {
  if (traj.empty() || t_start > traj.t1() || t_start < traj.t0()) {
    fail(ErrorCode::StartNotStrict, "start time " + std::to_string(t_start) + " is outside the trajectory");
  }
  MonitorResult result;
  const ReflectionVerdict start = strict_reflection_check(traj.at(t_start), plane, tol);
  if (start.status != ReflectionStatus::Strict) {
    fail(ErrorCode::StartNotStrict, std::string("verdict at start is ") + to_string(start.status));
  }
  result.verdicts.push_back({t_start, start});
  for (const Frame& f : traj.frames()) {
    if (f.t <= t_start) continue;
    result.verdicts.push_back({f.t, strict_reflection_check(f.surface, plane, tol)});
    if (!result.first_non_strict && result.verdicts.back().verdict.status != ReflectionStatus::Strict) {
      result.first_non_strict = result.verdicts.size() - 1;
    }
  }
  return result;
}

SymmetryCertificate symmetry_certificate(const DiscreteHypersurface& m, const Point& center,
                                         const std::vector<Point>& directions, double tol) {
  if (contains_point(m, center) != Containment::Inside) fail(ErrorCode::CenterOutside, "center is not inside the surface");
  SymmetryCertificate cert;
  double rmin = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  for (const Point& x : m.vertices()) {
    const double r = (x - center).norm();
    cert.mean_radius += r;
    if (r < rmin) rmin = r;
    if (r > rmax) {
      rmax = r;
      cert.witness_direction = (x - center) / r;
    }
  }
  cert.mean_radius /= static_cast<double>(m.size());
  cert.deviation = (rmax - rmin) / cert.mean_radius;

  // dist(x^pi, M) over the vertices covers both inclusions, since the
  // distance from x to the mirrored mesh equals dist(x^pi, M).
  for (const Point& dir : directions) {
    const Hyperplane plane = Hyperplane::from_direction(dir, dir.normalized().dot(center));
    double worst = 0.0;
    for (const Point& x : m.vertices()) worst = std::max(worst, distance_to_surface(m, plane.reflect(x)));
    worst /= cert.mean_radius;
    cert.asymmetry.push_back(worst);
    if (worst >= cert.max_asymmetry) {
      cert.max_asymmetry = worst;
      cert.worst_plane = plane.V();
    }
  }
  cert.spherical = cert.deviation < tol;
  return cert;
}

std::vector<Point> sample_directions(int dim, std::size_t count) {
  if (count == 0) fail(ErrorCode::InvalidArgument, "direction count must be positive");
  std::vector<Point> out;
  out.reserve(count);
  if (dim == 1) {
    for (std::size_t k = 0; k < count; ++k) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
      out.emplace_back(std::cos(a), std::sin(a), 0.0);
    }
    return out;
  }
  if (dim != 2) fail(ErrorCode::InvalidArgument, "dimension must be 1 or 2");
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t k = 0; k < count; ++k) {
    const double z = 1.0 - 2.0 * (static_cast<double>(k) + 0.5) / static_cast<double>(count);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = golden * static_cast<double>(k);
    out.emplace_back(r * std::cos(a), r * std::sin(a), z);
  }
  return out;
}

}  // namespace ecf
