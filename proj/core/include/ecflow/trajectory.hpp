// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ecflow/hypersurface.hpp"
#include "ecflow/speeds.hpp"

namespace ecf {

struct Frame {
  double t;
  DiscreteHypersurface surface;
};

enum class EventKind { Remesh, NearConeBoundary, ConeExit, Substepping, Redistribution, Note };

const char* to_string(EventKind kind);

struct FlowEvent {
  double t;
  EventKind kind;
  std::string message;
};

/// Time-ordered frames of an evolving hypersurface.
///
/// A trajectory may also know how to produce the surface at times between
/// frames, either from an analytic family (synthetic and exact solutions) or
/// by re-stepping the flow from the preceding frame (trajectories produced by
/// `evolve`). Audits that refine event times use `at()`; everything else
/// works on the stored frames only.
class Trajectory {
 public:
  using Generator = std::function<DiscreteHypersurface(double t)>;
  using Restepper = std::function<DiscreteHypersurface(const DiscreteHypersurface& from, double t_from, double t_to)>;

  Trajectory() = default;
  explicit Trajectory(std::string label) : label_(std::move(label)) {}

  /// Frames sampled from `generator` every `frame_dt` on [t0, t1]; `at()`
  /// evaluates the generator directly, with bisection searches stopping at
  /// `resolution`.
  static Trajectory analytic(std::string label, Generator generator, double t0, double t1, double frame_dt,
                             double resolution = 1e-6);

  /// Appends a frame; times must increase strictly.
  void add_frame(double t, DiscreteHypersurface surface);
  void add_event(double t, EventKind kind, std::string message);

  const std::vector<Frame>& frames() const noexcept { return frames_; }
  const Frame& frame(std::size_t i) const { return frames_.at(i); }
  std::size_t size() const noexcept { return frames_.size(); }
  bool empty() const noexcept { return frames_.empty(); }
  double t0() const;
  double t1() const;
  const std::vector<FlowEvent>& events() const noexcept { return events_; }
  const std::string& label() const noexcept { return label_; }

  const std::optional<SpeedFunction>& speed() const noexcept { return speed_; }
  void set_speed(SpeedFunction speed) { speed_ = std::move(speed); }

  /// Time step of the producing integrator, or the bisection resolution of an
  /// analytic family.
  double time_resolution() const noexcept { return resolution_; }
  void set_time_resolution(double dt) { resolution_ = dt; }

  void set_restepper(Restepper restepper) { restepper_ = std::move(restepper); }
  bool continuous() const noexcept { return static_cast<bool>(generator_) || static_cast<bool>(restepper_); }

  /// Index of the last frame with time <= t, or nullopt if t precedes the span.
  std::optional<std::size_t> frame_at_or_before(double t) const;

  /// Surface at time t in [t0, t1]. Exact frame times return the stored frame;
  /// other times need a generator or restepper (PreconditionFailed otherwise).
  DiscreteHypersurface at(double t) const;

 private:
  std::string label_;
  std::vector<Frame> frames_;
  std::vector<FlowEvent> events_;
  std::optional<SpeedFunction> speed_;
  double resolution_ = 1e-3;
  Generator generator_;
  Restepper restepper_;
};

}  // namespace ecf
