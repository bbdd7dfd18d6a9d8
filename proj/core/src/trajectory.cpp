// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "ecflow/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "ecflow/errors.hpp"

namespace ecf {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Remesh: return "remesh";
    case EventKind::NearConeBoundary: return "near-cone-boundary";
    case EventKind::ConeExit: return "cone-exit";
    case EventKind::Substepping: return "substepping";
    case EventKind::Redistribution: return "tangential-redistribution";
    case EventKind::Note: return "note";
  }
  return "?";
}

Trajectory Trajectory::analytic(std::string label, Generator generator, double t0, double t1, double frame_dt,
                                double resolution) {
  if (!(t1 > t0) || !(frame_dt > 0.0)) fail(ErrorCode::InvalidArgument, "analytic trajectory needs t1 > t0 and frame_dt > 0");
  Trajectory traj(std::move(label));
  const auto count = static_cast<long long>(std::llround((t1 - t0) / frame_dt));
  for (long long i = 0; i <= count; ++i) {
    const double t = i == count ? t1 : t0 + static_cast<double>(i) * frame_dt;
    if (t > t1) break;
    traj.add_frame(t, generator(t));
  }
  if (traj.t1() < t1) traj.add_frame(t1, generator(t1));
  traj.generator_ = std::move(generator);
  traj.resolution_ = resolution;
  return traj;
}

void Trajectory::add_frame(double t, DiscreteHypersurface surface) {
  if (!frames_.empty() && !(t > frames_.back().t)) {
    fail(ErrorCode::InvalidArgument, "frame times must increase strictly");
  }
  frames_.push_back({t, std::move(surface)});
}

void Trajectory::add_event(double t, EventKind kind, std::string message) {
  events_.push_back({t, kind, std::move(message)});
}

double Trajectory::t0() const {
  if (frames_.empty()) fail(ErrorCode::EmptyTrajectory, "trajectory has no frames");
  return frames_.front().t;
}

double Trajectory::t1() const {
  if (frames_.empty()) fail(ErrorCode::EmptyTrajectory, "trajectory has no frames");
  return frames_.back().t;
}

std::optional<std::size_t> Trajectory::frame_at_or_before(double t) const {
  auto it = std::upper_bound(frames_.begin(), frames_.end(), t, [](double value, const Frame& f) { return value < f.t; });
  if (it == frames_.begin()) return std::nullopt;
  return static_cast<std::size_t>(std::distance(frames_.begin(), it) - 1);
}

DiscreteHypersurface Trajectory::at(double t) const {
  if (frames_.empty()) fail(ErrorCode::EmptyTrajectory, "trajectory has no frames");
  if (t < t0() || t > t1()) {
    fail(ErrorCode::InvalidArgument, "time " + std::to_string(t) + " is outside the trajectory span");
  }
  const auto idx = frame_at_or_before(t);
  const Frame& base = frames_[*idx];
  if (base.t == t) return base.surface;
  if (generator_) return generator_(t);
  if (restepper_) return restepper_(base.surface, base.t, t);
  fail(ErrorCode::PreconditionFailed, "trajectory '" + label_ + "' cannot be evaluated between frames");
}

}  // namespace ecf
