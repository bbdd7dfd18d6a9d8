// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "ecflow/flow_engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ecflow/errors.hpp"
#include "ecflow/queries.hpp"

namespace ecf {

namespace {

void require(bool ok, const std::string& field, const std::string& rule) {
  if (!ok) fail(ErrorCode::ValidationError, "flow config field '" + field + "': " + rule);
}

DiscreteHypersurface displaced(const DiscreteHypersurface& m, const std::vector<Point>& base,
                               const std::vector<Point>& velocity, double h, Validation level) {
  std::vector<Point> pts(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) pts[i] = base[i] + h * velocity[i];
  return m.with_vertices(std::move(pts), level);
}

struct StepOutcome {
  DiscreteHypersurface surface;
  double min_cone_margin;
};

StepOutcome rk4_step(const DiscreteHypersurface& m, const SpeedFunction& speed, double dt, const StepOptions& options) {
  if (!(dt > 0.0) || !std::isfinite(dt)) fail(ErrorCode::InvalidArgument, "time step must be positive");
  const std::vector<Point>& x0 = m.vertices();
  const VelocityField k1 = normal_velocity(m, speed, options.cone_margin);
  const VelocityField k2 = normal_velocity(displaced(m, x0, k1.velocity, 0.5 * dt, Validation::None), speed, options.cone_margin);
  const VelocityField k3 = normal_velocity(displaced(m, x0, k2.velocity, 0.5 * dt, Validation::None), speed, options.cone_margin);
  const VelocityField k4 = normal_velocity(displaced(m, x0, k3.velocity, dt, Validation::None), speed, options.cone_margin);

  std::vector<Point> next(x0.size());
  for (std::size_t i = 0; i < x0.size(); ++i) {
    next[i] = x0[i] + (dt / 6.0) * (k1.velocity[i] + 2.0 * k2.velocity[i] + 2.0 * k3.velocity[i] + k4.velocity[i]);
    if (!next[i].allFinite()) fail(ErrorCode::NonFiniteState, "vertex " + std::to_string(i) + " became non-finite");
  }
  try {
    DiscreteHypersurface out = m.with_vertices(std::move(next), options.validation);
    if (options.validation != Validation::None) {
      const double quality = min_element_quality(out);
      if (quality < options.quality_floor) {
        fail(ErrorCode::MeshDegeneracy, "element quality " + std::to_string(quality) + " below floor");
      }
    }
    return {std::move(out), std::min({k1.min_cone_margin, k2.min_cone_margin, k3.min_cone_margin, k4.min_cone_margin})};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidMesh) fail(ErrorCode::MeshDegeneracy, e.what());
    throw;
  }
}

}  // namespace

void FlowConfig::validate() const {
  require(std::isfinite(dt) && dt > 0.0, "dt", "must be positive");
  require(c_cfl > 0.0 && c_cfl <= 1.0, "c_cfl", "must lie in (0, 1]");
  require(std::isfinite(t_end), "t_end", "must be finite");
  require(frame_every >= 0, "frame_every", "must be >= 0");
  require(cone_margin >= 0.0 && cone_margin < 1.0, "cone_margin", "must lie in [0, 1)");
  require(warn_margin >= 0.0 && warn_margin < 1.0, "warn_margin", "must lie in [0, 1)");
  require(quality_floor > 0.0 && quality_floor < 1.0, "quality_floor", "must lie in (0, 1)");
  require(stability_factor > 0.0 && stability_factor <= 1.0, "stability_factor", "must lie in (0, 1]");
  if (remesh) {
    require(band.min_length >= 0.0 && std::isfinite(band.max_length) && band.max_length > band.min_length, "band",
            "needs 0 <= min < max < inf");
    require(2.0 * band.min_length <= band.max_length, "band", "needs 2 min <= max so that splits stay in band");
  }
}

VelocityField normal_velocity(const DiscreteHypersurface& m, const SpeedFunction& speed, double cone_margin) {
  if (speed.arity() != m.dim()) {
    fail(ErrorCode::InvalidArgument, "speed arity " + std::to_string(speed.arity()) + " does not match surface dimension " +
                                         std::to_string(m.dim()));
  }
  VelocityField out;
  out.curvature = compute_curvatures(m);
  out.speed.resize(m.size());
  out.velocity.resize(m.size());
  const Cone& cone = speed.cone();
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Curvatures& k = out.curvature.principal[i];
    const double margin = cone.contains(k) ? cone.margin(k) : 0.0;
    if (!cone.contains(k) || margin < cone_margin) {
      std::ostringstream os;
      os << "vertex " << i << " curvature (";
      for (int d = 0; d < k.dim(); ++d) os << (d ? ", " : "") << k[d];
      os << ") left " << cone.description() << " (relative margin " << margin << ")";
      fail(ErrorCode::ConeExit, os.str());
    }
    out.min_cone_margin = std::min(out.min_cone_margin, margin);
    const double f = speed.raw(k);
    if (!(f > 0.0) || !std::isfinite(f)) fail(ErrorCode::ConeExit, "speed is not positive at vertex " + std::to_string(i));
    out.speed[i] = f;
    out.velocity[i] = out.curvature.normals[i] / f;
  }
  return out;
}

DiscreteHypersurface step(const DiscreteHypersurface& m, const SpeedFunction& speed, double dt, const StepOptions& options) {
  return rk4_step(m, speed, dt, options).surface;
}

double cfl_time_step(const DiscreteHypersurface& m, const SpeedFunction& speed, double c_cfl) {
  const VelocityField v = normal_velocity(m, speed, 0.0);
  return c_cfl * m.min_edge_length() * *std::min_element(v.speed.begin(), v.speed.end());
}

double stable_time_step(const DiscreteHypersurface& m, const SpeedFunction& speed, double factor) {
  const CurvatureData data = compute_curvatures(m);
  double diffusivity = 0.0;
  for (const Curvatures& k : data.principal) {
    if (!speed.cone().contains(k)) continue;
    const double f = speed.raw(k);
    const Gradient g = speed.gradient(k);
    double gmax = 0.0;
    for (int i = 0; i < k.dim(); ++i) gmax = std::max(gmax, g[static_cast<std::size_t>(i)]);
    diffusivity = std::max(diffusivity, gmax / (f * f));
  }
  if (!(diffusivity > 0.0)) return std::numeric_limits<double>::infinity();
  const double h = m.min_edge_length();
  return factor * h * h / diffusivity;
}

namespace {

// Integrates from t_from to t_to without recording frames; used to evaluate
// an evolved trajectory between its stored frames.
DiscreteHypersurface advance(DiscreteHypersurface m, const SpeedFunction& speed, double t_from, double t_to,
                             const FlowConfig& config) {
  StepOptions opts{config.cone_margin, config.quality_floor, Validation::Basic};
  double t = t_from;
  while (t_to - t > 1e-14 * std::max(1.0, std::abs(t_to))) {
    double h = std::min(config.dt, t_to - t);
    const double stable = stable_time_step(m, speed, config.stability_factor);
    const int sub = std::max(1, static_cast<int>(std::ceil(h / stable)));
    for (int s = 0; s < sub; ++s) m = rk4_step(m, speed, h / sub, opts).surface;
    t += h;
  }
  return m;
}

}  // namespace

Trajectory evolve(const DiscreteHypersurface& m0, const SpeedFunction& speed, double t0, const FlowConfig& config) {
  config.validate();
  if (!(config.t_end > t0)) fail(ErrorCode::ValidationError, "flow config field 't_end': must exceed the start time");
  (void)normal_velocity(m0, speed, config.cone_margin);  // admissibility of the initial surface

  Trajectory traj("evolve[" + speed.name() + "]");
  traj.set_speed(speed);
  traj.set_time_resolution(config.dt);
  traj.add_frame(t0, m0);
  traj.set_restepper([speed, config](const DiscreteHypersurface& from, double ta, double tb) {
    return advance(from, speed, ta, tb, config);
  });

  const long long cadence =
      config.frame_every > 0 ? config.frame_every
                             : std::max(1LL, static_cast<long long>(std::floor(0.01 / config.dt + 1e-9)));
  const double frame_spacing = 0.01;
  const StepOptions opts{config.cone_margin, config.quality_floor, Validation::Basic};

  DiscreteHypersurface m = m0;
  double t = t0;
  long long steps = 0;
  bool substep_logged = false;
  bool redistribution_logged = false;
  double last_warning_frame = -std::numeric_limits<double>::infinity();
  double last_frame_t = t0;

  try {
    while (config.t_end - t > 1e-12 * std::max(1.0, std::abs(config.t_end))) {
      double h = config.dt;
      if (config.dt_policy == DtPolicy::Cfl) h = std::min(h, cfl_time_step(m, speed, config.c_cfl));
      const bool last = config.t_end - t <= h * (1.0 + 1e-9);
      if (last) h = config.t_end - t;

      const double stable = stable_time_step(m, speed, config.stability_factor);
      const int sub = std::max(1, static_cast<int>(std::ceil(h / stable)));
      if (sub > 1 && !substep_logged) {
        traj.add_event(t, EventKind::Substepping,
                       "step " + std::to_string(h) + " exceeds the diffusive bound " + std::to_string(stable) + "; using " +
                           std::to_string(sub) + " substeps");
        substep_logged = true;
      }
      double margin = 1.0;
      for (int s = 0; s < sub; ++s) {
        StepOutcome out = rk4_step(m, speed, h / sub, opts);
        m = std::move(out.surface);
        margin = std::min(margin, out.min_cone_margin);
      }
      ++steps;
      if (last) {
        t = config.t_end;
      } else if (config.dt_policy == DtPolicy::Fixed) {
        t = t0 + static_cast<double>(steps) * config.dt;
      } else {
        t += h;
      }

      if (margin < config.warn_margin && last_warning_frame != last_frame_t) {
        traj.add_event(t, EventKind::NearConeBoundary, "relative cone margin " + std::to_string(margin));
        last_warning_frame = last_frame_t;
      }
      if (config.tangential_redistribution) {
        m = redistribute_tangentially(m);
        if (!redistribution_logged) {
          traj.add_event(t, EventKind::Redistribution, "tangential redistribution active");
          redistribution_logged = true;
        }
      }
      if (config.remesh && !edges_within(m, config.band)) {
        const std::size_t before = m.size();
        m = remesh(m, config.band);
        traj.add_event(t, EventKind::Remesh,
                       "remeshed " + std::to_string(before) + " -> " + std::to_string(m.size()) + " vertices");
      }

      const bool due = config.dt_policy == DtPolicy::Fixed ? steps % cadence == 0
                                                           : t - last_frame_t >= frame_spacing * (1.0 - 1e-9);
      if (due || t == config.t_end) {
        try {
          m.validate(Validation::Full);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::InvalidMesh) fail(ErrorCode::MeshDegeneracy, e.what());
          throw;
        }
        traj.add_frame(t, m);
        last_frame_t = t;
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ConeExit || config.stop_on_cone_exit) throw;
    traj.add_event(t, EventKind::ConeExit, e.what());
  }
  return traj;
}

std::vector<ResidualRow> flow_residual(const Trajectory& traj, const SpeedFunction& speed) {
  if (traj.size() < 3) fail(ErrorCode::InsufficientFrames, "flow residual needs at least 3 frames");
  std::vector<ResidualRow> rows;
  for (std::size_t k = 1; k + 1 < traj.size(); ++k) {
    const Frame& prev = traj.frame(k - 1);
    const Frame& cur = traj.frame(k);
    const Frame& next = traj.frame(k + 1);
    const double span = next.t - prev.t;
    const CurvatureData data = compute_curvatures(cur.surface);
    const bool registered = prev.surface.size() == cur.surface.size() && next.surface.size() == cur.surface.size();

    ResidualRow row{cur.t, 0.0, 0.0};
    for (std::size_t i = 0; i < cur.surface.size(); ++i) {
      const Point& x = cur.surface.vertex(i);
      double normal_speed = 0.0;
      if (registered) {
        normal_speed = ((next.surface.vertex(i) - prev.surface.vertex(i)) / span).dot(data.normals[i]);
      } else {
        normal_speed = (signed_distance(next.surface, x) - signed_distance(prev.surface, x)) / span;
      }
      const Curvatures& k = data.principal[i];
      double residual = std::numeric_limits<double>::infinity();
      if (speed.cone().contains(k)) {
        const double f = speed.raw(k);
        if (f > 0.0) residual = std::abs(normal_speed - 1.0 / f);
      }
      row.max = std::max(row.max, residual);
      row.mean += residual;
    }
    row.mean /= static_cast<double>(cur.surface.size());
    rows.push_back(row);
  }
  return rows;
}

ExpansivenessReport check_expansiveness(const Trajectory& traj, std::size_t stride) {
  if (stride == 0) fail(ErrorCode::InvalidArgument, "stride must be positive");
  ExpansivenessReport report;
  auto check_pair = [&](std::size_t a, std::size_t b) {
    ++report.pairs_checked;
    const DiscreteHypersurface& later = traj.frame(b).surface;
    for (const Point& x : traj.frame(a).surface.vertices()) {
      if (contains_point(later, x) != Containment::Inside) ++report.violations;
    }
  };
  for (std::size_t a = 0; a + stride < traj.size(); a += stride) check_pair(a, a + stride);
  if (traj.size() > 1 + stride) check_pair(0, traj.size() - 1);
  return report;
}

bool edges_within(const DiscreteHypersurface& m, const EdgeBand& band) {
  return m.min_edge_length() >= band.min_length && m.max_edge_length() <= band.max_length;
}

DiscreteHypersurface redistribute_tangentially(const DiscreteHypersurface& m, double weight) {
  const auto& v = m.vertices();
  const Topology& topo = m.topology();
  const CurvatureData data = compute_curvatures(m);
  std::vector<Point> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Point avg = Point::Zero();
    for (int j : topo.neighbors[i]) avg += v[static_cast<std::size_t>(j)];
    avg /= static_cast<double>(topo.neighbors[i].size());
    const Point& n = data.normals[i];
    const Point shift = avg - v[i];
    out[i] = v[i] + weight * (shift - shift.dot(n) * n);
  }
  return m.with_vertices(std::move(out), Validation::Basic);
}

}  // namespace ecf
