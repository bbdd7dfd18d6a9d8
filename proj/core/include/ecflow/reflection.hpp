// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ecflow/hypersurface.hpp"
#include "ecflow/trajectory.hpp"

namespace ecf {

/// The plane {x : <x, V> = c}. H+ is the side <x, V> > c, H- the other.
class Hyperplane {
 public:
  /// Throws InvalidArgument unless |V| = 1 within 1e-12.
  Hyperplane(Point V, double c);
  static Hyperplane from_direction(const Point& direction, double c);

  const Point& V() const noexcept { return V_; }
  double c() const noexcept { return c_; }
  double offset(const Point& x) const { return x.dot(V_) - c_; }
  Point reflect(const Point& x) const { return x - 2.0 * offset(x) * V_; }

 private:
  Point V_;
  double c_;
};

std::vector<Point> reflect_points(const std::vector<Point>& points, const Hyperplane& plane);
std::vector<Point> reflect_points(const DiscreteHypersurface& m, const Hyperplane& plane);

enum class ReflectionStatus { Strict, NonStrict, Fails, Vacuous };
const char* to_string(ReflectionStatus s);

struct ReflectionWitness {
  std::size_t vertex;
  Point reflected;
  double margin;     // signed distance of the reflected point (negative: outside)
  std::string kind;  // "outside", "boundary" or "tangent"
};

struct ReflectionVerdict {
  ReflectionStatus status = ReflectionStatus::Vacuous;
  double inclusion_margin = std::numeric_limits<double>::infinity();
  double tangency_margin = std::numeric_limits<double>::infinity();  // radians
  std::size_t tested_points = 0;
  std::vector<ReflectionWitness> witnesses;
};

struct ReflectionTolerances {
  /// Vertices closer than this to the plane are not reflected; default: the
  /// longest edge of the mesh.
  std::optional<double> plane_band;
  /// Reflected points closer than this to the mesh are inconclusive; default:
  /// 1e-6 times the bounding-box diagonal.
  std::optional<double> inclusion_band;
  double tangency_angle = 1e-3;
  std::size_t max_witnesses = 8;
};

/// Reflects every vertex of the cap beyond the plane and classifies it
/// against the mesh; tangency is measured where edges cross the plane with
/// normals interpolated along the edge.
ReflectionVerdict strict_reflection_check(const DiscreteHypersurface& m, const Hyperplane& plane,
                                          const ReflectionTolerances& tol = {});

/// First time the trajectory reaches the plane, bisected between frames down
/// to the trajectory's time resolution. Returns t0 when the first frame
/// already touches. Throws NeverTouches.
double first_touch_time(const Trajectory& traj, const Hyperplane& plane);

struct TimedVerdict {
  double t;
  ReflectionVerdict verdict;
};

struct MonitorResult {
  std::vector<TimedVerdict> verdicts;        // t_start, then every later frame
  std::optional<std::size_t> first_non_strict;
};

/// Throws StartNotStrict when t_start lies past the trajectory or the
/// verdict there is not Strict.
MonitorResult monitor_reflection(const Trajectory& traj, const Hyperplane& plane, double t_start,
                                 const ReflectionTolerances& tol = {});

struct SymmetryCertificate {
  bool spherical = false;
  double deviation = 0.0;      // (max - min) / mean of |x - center|
  double mean_radius = 0.0;
  Point witness_direction = Point::Zero();  // towards the farthest vertex
  double max_asymmetry = 0.0;  // worst max_x dist(x^pi, M) / mean radius over the planes
  Point worst_plane = Point::Zero();
  std::vector<double> asymmetry;  // per sampled direction
};

/// Mirror symmetry about the planes through `center` with the given normals,
/// plus the radius deviation that decides the verdict. Throws CenterOutside.
SymmetryCertificate symmetry_certificate(const DiscreteHypersurface& m, const Point& center,
                                         const std::vector<Point>& directions, double tol);

/// Uniform angles on the unit circle (dim 1) or a Fibonacci lattice on S^2
/// (dim 2).
std::vector<Point> sample_directions(int dim, std::size_t count = 64);

}  // namespace ecf
