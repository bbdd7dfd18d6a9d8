// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "ecflow/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ecflow/errors.hpp"
#include "ecflow/flow_engine.hpp"
#include "ecflow/queries.hpp"
#include "ecflow/sphere_ode.hpp"

namespace ecf {

namespace {

void require_decreasing(const std::vector<double>& values, const std::string& what) {
  if (values.empty()) fail(ErrorCode::InvalidArgument, what + " must not be empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) fail(ErrorCode::InvalidArgument, what + " must be positive");
    if (i > 0 && !(values[i] < values[i - 1])) fail(ErrorCode::InvalidArgument, what + " must be strictly decreasing");
  }
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

PointOriginReport comes_out_of_point(const Trajectory& traj, const Point& y_inf, const std::vector<double>& radii) {
  if (traj.empty()) fail(ErrorCode::EmptyTrajectory, "trajectory has no frames");
  require_decreasing(radii, "radii");
  PointOriginReport report;
  report.y_infinity = y_inf;
  report.radii_checked = radii;
  report.span_t0 = traj.t0();
  report.span_t1 = traj.t1();

  std::vector<double> extent(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) extent[k] = max_distance_from(traj.frame(k).surface, y_inf);

  report.pass = true;
  for (double r : radii) {
    if (!(extent[0] < r)) {
      report.containment_times.push_back(std::nullopt);
      report.pass = false;
      continue;
    }
    std::size_t k = 1;
    while (k < traj.size() && extent[k] < r) ++k;
    if (k == traj.size()) {
      report.containment_times.push_back(traj.t1());
      continue;
    }
    double lo = traj.frame(k - 1).t;
    double hi = traj.frame(k).t;
    if (traj.continuous()) {
      while (hi - lo > traj.time_resolution()) {
        const double mid = 0.5 * (lo + hi);
        if (max_distance_from(traj.at(mid), y_inf) < r) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
    }
    report.containment_times.push_back(hi);
  }
  return report;
}

RigidityAuditReport rigidity_audit(const Trajectory& traj, const SpeedFunction& speed, const Point& y_inf,
                                   const std::vector<Point>& directions, const std::vector<double>& c_schedule,
                                   const RigidityOptions& options) {
  require_decreasing(c_schedule, "c schedule");
  if (directions.empty()) fail(ErrorCode::InvalidArgument, "direction sample must not be empty");

  RigidityAuditReport report;
  report.origin = comes_out_of_point(traj, y_inf, c_schedule);
  if (!report.origin.pass) {
    fail(ErrorCode::PreconditionFailed, "trajectory does not come out of the candidate point at the scheduled radii");
  }
  const DiscreteHypersurface& last = traj.frame(traj.size() - 1).surface;
  try {
    report.R_star = inner_outer_radii(last, y_inf).rho_minus;
  } catch (const Error& e) {
    fail(ErrorCode::PreconditionFailed, std::string("candidate point is not enclosed at the last frame: ") + e.what());
  }
  report.symmetry_threshold = options.symmetry_threshold.value_or(5.0 * c_schedule.back());
  const double dt = traj.time_resolution();

  report.reflection_ok = true;
  for (const Point& dir : directions) {
    const Point V = dir.normalized();
    for (double c : c_schedule) {
      if (c >= report.R_star) {
        if (std::find(report.skipped_offsets.begin(), report.skipped_offsets.end(), c) == report.skipped_offsets.end()) {
          report.skipped_offsets.push_back(c);
        }
        continue;
      }
      const Hyperplane plane(V, V.dot(y_inf) + c);
      TauEntry tau_entry{V, c, std::nullopt};
      try {
        tau_entry.tau = first_touch_time(traj, plane);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NeverTouches) throw;
      }
      report.tau_table.push_back(tau_entry);

      PostTouchEntry entry;
      entry.V = V;
      entry.c = c;
      if (!tau_entry.tau) {
        entry.ok = false;
        entry.note = "plane never touched";
        entry.tau = std::numeric_limits<double>::quiet_NaN();
        report.post_touch_verdicts.push_back(std::move(entry));
        report.reflection_ok = false;
        continue;
      }
      entry.tau = *tau_entry.tau;
      const double last_offset = *std::max_element(options.touch_offsets.begin(), options.touch_offsets.end());
      if (entry.tau + last_offset * dt > traj.t1()) {
        fail(ErrorCode::NoFramesPastTouch, "plane (c = " + fmt(c) + ") is first touched at " + fmt(entry.tau) +
                                               ", too close to the end of the trajectory");
      }
      auto record = [&entry](const ReflectionVerdict& v) {
        entry.min_inclusion_margin = std::min(entry.min_inclusion_margin, v.inclusion_margin);
        entry.min_tangency_margin = std::min(entry.min_tangency_margin, v.tangency_margin);
        if (static_cast<int>(v.status) > static_cast<int>(entry.worst) && v.status != ReflectionStatus::Vacuous) {
          entry.worst = v.status;
        }
      };
      for (double k : options.touch_offsets) {
        const double t = entry.tau + k * dt;
        const ReflectionVerdict v = strict_reflection_check(traj.at(t), plane, options.reflection);
        record(v);
        entry.just_after.push_back({t, v});
      }
      try {
        const MonitorResult monitor = monitor_reflection(traj, plane, entry.tau + last_offset * dt, options.reflection);
        entry.frames_monitored = monitor.verdicts.size();
        for (const TimedVerdict& tv : monitor.verdicts) record(tv.verdict);
        if (monitor.first_non_strict) entry.first_non_strict_t = monitor.verdicts[*monitor.first_non_strict].t;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::StartNotStrict) throw;
        entry.note = e.what();
      }
      entry.ok = entry.worst != ReflectionStatus::Fails;
      report.reflection_ok = report.reflection_ok && entry.ok;
      report.post_touch_verdicts.push_back(std::move(entry));
    }
  }

  report.symmetry_ok = true;
  for (const Frame& f : traj.frames()) {
    FrameSymmetry row{f.t, false, std::numeric_limits<double>::infinity(), Point::Zero(), 0.0};
    try {
      const SymmetryCertificate cert = symmetry_certificate(f.surface, y_inf, directions, report.symmetry_threshold);
      row = {f.t, cert.spherical, cert.deviation, cert.witness_direction, cert.max_asymmetry};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CenterOutside) throw;
    }
    report.symmetry_ok = report.symmetry_ok && row.spherical;
    report.limit_symmetry.push_back(row);
  }

  const Point cheb = chebyshev_center(last);
  {
    double rmin = std::numeric_limits<double>::infinity();
    double rmax = 0.0;
    double mean = 0.0;
    for (const Point& x : last.vertices()) {
      const double r = (x - cheb).norm();
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
      mean += r;
    }
    mean /= static_cast<double>(last.size());
    report.final_chebyshev_deviation = (rmax - rmin) / mean;
  }
  const bool sound = report.final_chebyshev_deviation <= report.symmetry_threshold;

  if (speed.arity() == last.dim() && traj.size() >= 3) {
    try {
      double worst = 0.0;
      for (const ResidualRow& row : flow_residual(traj, speed)) worst = std::max(worst, row.max);
      report.max_flow_residual = worst;
    } catch (const Error&) {
      report.max_flow_residual = std::nullopt;
    }
  }

  report.pass = report.reflection_ok && report.symmetry_ok && sound;

  std::ostringstream os;
  os << "R_star = " << fmt(report.R_star) << "; " << report.tau_table.size() << " planes audited";
  if (!report.skipped_offsets.empty()) os << " (" << report.skipped_offsets.size() << " offsets >= R_star skipped)";
  os << ". Reflection after touch: " << (report.reflection_ok ? "no failures" : "failures found") << ". ";
  std::size_t asym = 0;
  const FrameSymmetry* witness = nullptr;
  for (const FrameSymmetry& row : report.limit_symmetry) {
    if (!row.spherical) {
      ++asym;
      if (!witness || row.deviation > witness->deviation) witness = &row;
    }
  }
  if (asym == 0) {
    os << "All " << report.limit_symmetry.size() << " frames round within " << fmt(report.symmetry_threshold) << ".";
  } else {
    os << asym << " of " << report.limit_symmetry.size() << " frames not round; worst deviation " << fmt(witness->deviation)
       << " at t = " << fmt(witness->t) << " towards (" << fmt(witness->witness_direction.x()) << ", "
       << fmt(witness->witness_direction.y()) << ", " << fmt(witness->witness_direction.z()) << ").";
  }
  if (!sound) os << " Final frame deviates " << fmt(report.final_chebyshev_deviation) << " about its Chebyshev center.";
  if (report.max_flow_residual) {
    os << " Max flow residual " << fmt(*report.max_flow_residual);
    if (!report.pass && *report.max_flow_residual > 0.1) os << ": the family does not move by " << speed.name();
    os << ".";
  }
  report.narrative = os.str();
  return report;
}

TauLimitReport tau_limit_check(const Trajectory& traj, const Point& V, const std::vector<double>& c_schedule,
                               const Point& y_inf) {
  require_decreasing(c_schedule, "c schedule");
  TauLimitReport report;
  report.V = V.normalized();
  report.c_schedule = c_schedule;
  report.span_t0 = traj.t0();
  bool all_found = true;
  for (double c : c_schedule) {
    try {
      report.tau.push_back(first_touch_time(traj, Hyperplane(report.V, report.V.dot(y_inf) + c)));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NeverTouches) throw;
      report.tau.push_back(std::nullopt);
      all_found = false;
    }
  }
  report.strictly_decreasing = all_found;
  for (std::size_t i = 1; all_found && i < report.tau.size(); ++i) {
    if (!(*report.tau[i] < *report.tau[i - 1])) report.strictly_decreasing = false;
  }
  report.pass = report.strictly_decreasing;
  return report;
}

const char* to_string(AncientCheckStatus s) {
  return s == AncientCheckStatus::Consistent ? "Consistent" : "Contradiction";
}

AncientCheckReport ancient_nonexistence_check(const SpeedFunction& speed, const Trajectory& traj) {
  if (is_ancient(speed).verdict == Ancientness::Ancient) {
    fail(ErrorCode::NotApplicable, "round solutions of " + speed.name() + " are ancient");
  }
  if (traj.empty()) fail(ErrorCode::EmptyTrajectory, "trajectory has no frames");
  AncientCheckReport report;
  report.T = traj.t1();
  const DiscreteHypersurface& last = traj.frame(traj.size() - 1).surface;
  report.rho_minus_T = inner_outer_radii(last, chebyshev_center(last)).rho_minus;
  report.T_S = initial_time_estimate(speed, report.rho_minus_T, report.T);

  if (traj.t0() > report.T_S) {
    report.note = "no frames at or before the birth time of the comparison sphere";
    return report;
  }
  const DiscreteHypersurface at_birth = traj.continuous() ? traj.at(report.T_S)
                                                          : traj.frame(*traj.frame_at_or_before(report.T_S)).surface;
  const Point center = chebyshev_center(at_birth);
  report.rho_at_T_S = inner_outer_radii(at_birth, center).rho_minus;
  constexpr double kDt = 1e-3;
  report.comparison_radius_at_T = sphere_radius_at(speed, report.rho_at_T_S, report.T_S, report.T, kDt);

  for (const Frame& f : traj.frames()) {
    if (f.t <= report.T_S) continue;
    const double r = sphere_radius_at(speed, report.rho_at_T_S, report.T_S, f.t, kDt);
    if (contains_point(f.surface, center) != Containment::Inside || distance_to_surface(f.surface, center) < r) {
      report.escape_time = f.t;
      break;
    }
  }
  if (report.comparison_radius_at_T > report.rho_minus_T * (1.0 + 1e-9)) {
    report.status = AncientCheckStatus::Contradiction;
    report.note = "a ball of radius " + fmt(report.rho_at_T_S) + " is enclosed at T_S = " + fmt(report.T_S) +
                  "; its round evolution reaches " + fmt(report.comparison_radius_at_T) + " > rho_-(T) = " +
                  fmt(report.rho_minus_T) + " at T = " + fmt(report.T);
  } else {
    report.note = "the comparison sphere stays within rho_-(T)";
  }
  return report;
}

PinchingReport pinching_diagnostics(const Trajectory& traj, const Point& y_inf, double threshold) {
  if (traj.empty()) fail(ErrorCode::EmptyTrajectory, "trajectory has no frames");
  PinchingReport report;
  report.threshold = threshold;
  bool convex_everywhere = true;
  for (const Frame& f : traj.frames()) {
    const RadiiReport radii = inner_outer_radii(f.surface, y_inf);
    PinchingRow row{f.t, radii.rho_minus / radii.rho_plus, std::nullopt, starshapedness_ratio(f.surface, y_inf)};
    try {
      row.curvature_ratio = curvature_pinching_ratio(f.surface);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonConvexInput) throw;
      convex_everywhere = false;
    }
    report.inf_radius_ratio = std::min(report.inf_radius_ratio, row.radius_ratio);
    if (row.curvature_ratio) report.inf_curvature_ratio = std::min(report.inf_curvature_ratio, *row.curvature_ratio);
    report.inf_starshapedness = std::min(report.inf_starshapedness, row.starshapedness);
    report.rows.push_back(row);
  }
  report.uniform_radius = report.inf_radius_ratio > threshold;
  report.uniform_curvature = convex_everywhere && report.inf_curvature_ratio > threshold;
  report.uniform_starshaped = report.inf_starshapedness > threshold;

  const double first_extent = max_distance_from(traj.frame(0).surface, y_inf);
  const double last_extent = max_distance_from(traj.frame(traj.size() - 1).surface, y_inf);
  if ((report.uniform_radius || report.uniform_curvature || report.uniform_starshaped) && first_extent < last_extent) {
    std::vector<double> radii;
    for (double r = 0.5 * last_extent; r > first_extent; r *= 0.5) radii.push_back(r);
    if (!radii.empty()) report.origin_confirmed = comes_out_of_point(traj, y_inf, radii).pass;
  }
  return report;
}

}  // namespace ecf
