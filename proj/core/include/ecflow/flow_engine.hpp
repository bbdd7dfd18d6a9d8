// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <limits>
#include <vector>

#include "ecflow/curvature.hpp"
#include "ecflow/hypersurface.hpp"
#include "ecflow/speeds.hpp"
#include "ecflow/trajectory.hpp"

namespace ecf {

struct EdgeBand {
  double min_length = 0.0;
  double max_length = std::numeric_limits<double>::infinity();
};

enum class DtPolicy { Fixed, Cfl };

struct FlowConfig {
  DtPolicy dt_policy = DtPolicy::Fixed;
  double dt = 1e-3;            // step for DtPolicy::Fixed, upper cap for DtPolicy::Cfl
  double c_cfl = 0.2;          // dt <= c_cfl * h_min * F_min
  double t_end = 1.0;          // absolute end time
  bool remesh = false;
  EdgeBand band;
  bool stop_on_cone_exit = true;
  int frame_every = 0;         // 0: every max(1, floor(0.01 / dt)) steps
  bool tangential_redistribution = false;
  double cone_margin = 1e-6;   // relative interior margin required of every curvature tuple
  double warn_margin = 1e-3;   // relative margin below which a warning event is logged
  double quality_floor = 1e-3;
  /// Safety factor of the diffusive stability bound, see stable_time_step.
  double stability_factor = 0.3;

  /// Throws ValidationError naming the offending field.
  void validate() const;
};

struct StepOptions {
  double cone_margin = 1e-6;
  double quality_floor = 1e-3;
  Validation validation = Validation::Full;
};

/// Outward normal velocity nu / F(lambda) at every vertex. Throws ConeExit
/// when a curvature tuple is outside the cone or closer to its boundary than
/// `cone_margin`.
struct VelocityField {
  CurvatureData curvature;
  std::vector<double> speed;
  std::vector<Point> velocity;
  double min_cone_margin = 1.0;
};
VelocityField normal_velocity(const DiscreteHypersurface& m, const SpeedFunction& speed, double cone_margin = 1e-6);

/// One classical Runge-Kutta step of x' = nu / F(lambda) (method of lines,
/// curvature re-estimated at every stage).
DiscreteHypersurface step(const DiscreteHypersurface& m, const SpeedFunction& speed, double dt,
                          const StepOptions& options = {});

/// c_cfl * h_min * F_min.
double cfl_time_step(const DiscreteHypersurface& m, const SpeedFunction& speed, double c_cfl);

/// Largest step for which the explicit scheme damps the highest mesh mode:
/// factor * h_min^2 / max_i (max_j dF/dlambda_j / F^2) at the vertices.
double stable_time_step(const DiscreteHypersurface& m, const SpeedFunction& speed, double factor);

/// Integrates from t0 to config.t_end, recording frames at the configured
/// cadence. Each time step is split into equal substeps when it exceeds the
/// stability bound (logged once as an event).
Trajectory evolve(const DiscreteHypersurface& m0, const SpeedFunction& speed, double t0, const FlowConfig& config);

struct ResidualRow {
  double t;
  double max;
  double mean;
};

/// |<dx/dt, nu> - 1/F(lambda)| at the interior frames, with dx/dt from
/// central differences. Frames with matching vertex counts are compared
/// vertex by vertex, others through signed distances to the neighbouring
/// frames. Throws InsufficientFrames for fewer than 3 frames.
std::vector<ResidualRow> flow_residual(const Trajectory& traj, const SpeedFunction& speed);

struct ExpansivenessReport {
  std::size_t pairs_checked = 0;
  std::size_t violations = 0;
  bool holds() const { return violations == 0; }
};

/// Every vertex of frame a must lie Inside frame b for the sampled pairs
/// (a, a + stride) plus (first, last).
ExpansivenessReport check_expansiveness(const Trajectory& traj, std::size_t stride = 1);

/// Splits edges longer than band.max_length (new vertices projected onto a
/// local fit of the input) and collapses edges shorter than
/// band.min_length. Requires 2 min_length <= max_length. Returns the input
/// unchanged when every edge is already inside the band.
DiscreteHypersurface remesh(const DiscreteHypersurface& m, const EdgeBand& band);

bool edges_within(const DiscreteHypersurface& m, const EdgeBand& band);

/// Tangential smoothing step that leaves the surface (to first order) in
/// place and evens out vertex spacing.
DiscreteHypersurface redistribute_tangentially(const DiscreteHypersurface& m, double weight = 0.5);

}  // namespace ecf
