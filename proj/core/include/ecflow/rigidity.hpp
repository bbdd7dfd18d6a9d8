// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ecflow/reflection.hpp"
#include "ecflow/speeds.hpp"
#include "ecflow/trajectory.hpp"

namespace ecf {

struct PointOriginReport {
  Point y_infinity = Point::Zero();
  std::vector<double> radii_checked;
  /// Per radius, the time at which the surface leaves B_r(y) for the first
  /// time (the end of the span if it never does), or nullopt when the first
  /// frame is not inside the ball.
  std::vector<std::optional<double>> containment_times;
  double span_t0 = 0.0;
  double span_t1 = 0.0;
  bool pass = false;
};

/// Radii must be positive and strictly decreasing.
PointOriginReport comes_out_of_point(const Trajectory& traj, const Point& y_inf, const std::vector<double>& radii);

struct TauEntry {
  Point V;
  double c;
  std::optional<double> tau;
};

struct PostTouchEntry {
  Point V;
  double c;
  double tau;
  std::vector<TimedVerdict> just_after;  // tau + {1, 2, 4} dt
  std::size_t frames_monitored = 0;
  std::optional<double> first_non_strict_t;
  ReflectionStatus worst = ReflectionStatus::Strict;
  double min_inclusion_margin = std::numeric_limits<double>::infinity();
  double min_tangency_margin = std::numeric_limits<double>::infinity();
  std::string note;
  bool ok = true;
};

struct FrameSymmetry {
  double t;
  bool spherical;
  double deviation;
  Point witness_direction;
  double max_asymmetry;
};

struct RigidityOptions {
  /// Radius deviation allowed in every frame; default 5 * min(c_schedule).
  std::optional<double> symmetry_threshold;
  ReflectionTolerances reflection;
  std::vector<double> touch_offsets = {1.0, 2.0, 4.0};  // multiples of the time resolution
};

struct RigidityAuditReport {
  PointOriginReport origin;
  double R_star = 0.0;
  double symmetry_threshold = 0.0;
  std::vector<TauEntry> tau_table;
  std::vector<double> skipped_offsets;  // c >= R_star
  std::vector<PostTouchEntry> post_touch_verdicts;
  std::vector<FrameSymmetry> limit_symmetry;
  double final_chebyshev_deviation = 0.0;
  std::optional<double> max_flow_residual;
  bool reflection_ok = false;
  bool symmetry_ok = false;
  bool pass = false;
  std::string narrative;
};

/// Planes are V-offsets measured from y_inf. Throws PreconditionFailed when
/// the trajectory does not come out of y_inf at the scheduled radii, and
/// NoFramesPastTouch when a touch happens too close to the end of the span.
RigidityAuditReport rigidity_audit(const Trajectory& traj, const SpeedFunction& speed, const Point& y_inf,
                                   const std::vector<Point>& directions, const std::vector<double>& c_schedule,
                                   const RigidityOptions& options = {});

struct TauLimitReport {
  Point V;
  std::vector<double> c_schedule;
  std::vector<std::optional<double>> tau;
  bool strictly_decreasing = false;
  double span_t0 = 0.0;
  bool pass = false;
};

TauLimitReport tau_limit_check(const Trajectory& traj, const Point& V, const std::vector<double>& c_schedule,
                               const Point& y_inf = Point::Zero());

enum class AncientCheckStatus { Consistent, Contradiction };
const char* to_string(AncientCheckStatus s);

struct AncientCheckReport {
  AncientCheckStatus status = AncientCheckStatus::Consistent;
  double T = 0.0;
  double rho_minus_T = 0.0;
  double T_S = 0.0;          // birth time of the round solution with radius rho_minus_T at T
  double rho_at_T_S = 0.0;   // inradius of the trajectory at T_S
  double comparison_radius_at_T = 0.0;
  std::optional<double> escape_time;  // first frame the comparison sphere is not enclosed
  std::string note;
};

/// Throws NotApplicable when round solutions of F are ancient.
AncientCheckReport ancient_nonexistence_check(const SpeedFunction& speed, const Trajectory& traj);

struct PinchingRow {
  double t;
  double radius_ratio;                    // rho_- / rho_+ about y_inf
  std::optional<double> curvature_ratio;  // nullopt on non-convex frames
  double starshapedness;
};

struct PinchingReport {
  std::vector<PinchingRow> rows;
  double inf_radius_ratio = 1.0;
  double inf_curvature_ratio = 1.0;
  double inf_starshapedness = 1.0;
  double threshold = 0.05;
  bool uniform_radius = false;
  bool uniform_curvature = false;
  bool uniform_starshaped = false;
  /// comes_out_of_point on dyadic radii, run when some condition holds
  /// uniformly and the surfaces shrink backward in time.
  std::optional<bool> origin_confirmed;
};

PinchingReport pinching_diagnostics(const Trajectory& traj, const Point& y_inf, double threshold = 0.05);

}  // namespace ecf
