// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "report_json.hpp"

#include <cmath>

namespace ecf::cli {

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json point_json(const Point& p) { return json::array({number(p.x()), number(p.y()), number(p.z())}); }

namespace {

json optional_number(const std::optional<double>& x) { return x ? number(*x) : json(nullptr); }

}  // namespace

json to_json(const ReflectionVerdict& v) {
  json witnesses = json::array();
  for (const ReflectionWitness& w : v.witnesses) {
    witnesses.push_back({{"vertex", w.vertex}, {"reflected", point_json(w.reflected)}, {"margin", number(w.margin)}, {"kind", w.kind}});
  }
  return {{"status", to_string(v.status)},
          {"inclusion_margin", number(v.inclusion_margin)},
          {"tangency_margin", number(v.tangency_margin)},
          {"tested_points", v.tested_points},
          {"witnesses", witnesses}};
}

json to_json(const SymmetryCertificate& c) {
  json per_direction = json::array();
  for (double a : c.asymmetry) per_direction.push_back(number(a));
  return {{"verdict", c.spherical ? "Spherical" : "NotSpherical"},
          {"deviation", number(c.deviation)},
          {"mean_radius", number(c.mean_radius)},
          {"witness_direction", point_json(c.witness_direction)},
          {"max_asymmetry", number(c.max_asymmetry)},
          {"worst_plane", point_json(c.worst_plane)},
          {"asymmetry", per_direction}};
}

json to_json(const PointOriginReport& r) {
  json times = json::array();
  for (const auto& t : r.containment_times) times.push_back(optional_number(t));
  return {{"y_infinity", point_json(r.y_infinity)},
          {"radii_checked", r.radii_checked},
          {"containment_times", times},
          {"audited_span", json::array({number(r.span_t0), number(r.span_t1)})},
          {"verdict", r.pass ? "pass" : "fail"}};
}

json to_json(const RigidityAuditReport& r) {
  json tau = json::array();
  for (const TauEntry& e : r.tau_table) tau.push_back({{"V", point_json(e.V)}, {"c", e.c}, {"tau", optional_number(e.tau)}});
  json post = json::array();
  for (const PostTouchEntry& e : r.post_touch_verdicts) {
    json after = json::array();
    for (const TimedVerdict& tv : e.just_after) after.push_back({{"t", number(tv.t)}, {"verdict", to_json(tv.verdict)}});
    post.push_back({{"V", point_json(e.V)},
                    {"c", e.c},
                    {"tau", number(e.tau)},
                    {"just_after", after},
                    {"frames_monitored", e.frames_monitored},
                    {"first_non_strict_t", optional_number(e.first_non_strict_t)},
                    {"worst", to_string(e.worst)},
                    {"min_inclusion_margin", number(e.min_inclusion_margin)},
                    {"min_tangency_margin", number(e.min_tangency_margin)},
                    {"note", e.note},
                    {"ok", e.ok}});
  }
  json symmetry = json::array();
  for (const FrameSymmetry& f : r.limit_symmetry) {
    symmetry.push_back({{"t", number(f.t)},
                        {"verdict", f.spherical ? "Spherical" : "NotSpherical"},
                        {"deviation", number(f.deviation)},
                        {"witness_direction", point_json(f.witness_direction)},
                        {"max_asymmetry", number(f.max_asymmetry)}});
  }
  return {{"origin", to_json(r.origin)},
          {"R_star", number(r.R_star)},
          {"symmetry_threshold", number(r.symmetry_threshold)},
          {"tau_table", tau},
          {"skipped_offsets", r.skipped_offsets},
          {"post_touch_verdicts", post},
          {"limit_symmetry", symmetry},
          {"final_chebyshev_deviation", number(r.final_chebyshev_deviation)},
          {"max_flow_residual", optional_number(r.max_flow_residual)},
          {"reflection_ok", r.reflection_ok},
          {"symmetry_ok", r.symmetry_ok},
          {"overall", r.pass ? "pass" : "fail"},
          {"narrative", r.narrative}};
}

json to_json(const TauLimitReport& r) {
  json tau = json::array();
  for (const auto& t : r.tau) tau.push_back(optional_number(t));
  return {{"V", point_json(r.V)}, {"c_schedule", r.c_schedule}, {"tau", tau}, {"strictly_decreasing", r.strictly_decreasing},
          {"span_t0", number(r.span_t0)}, {"verdict", r.pass ? "pass" : "fail"}};
}

json to_json(const AncientCheckReport& r) {
  return {{"status", to_string(r.status)},
          {"T", number(r.T)},
          {"rho_minus_T", number(r.rho_minus_T)},
          {"T_S", number(r.T_S)},
          {"rho_at_T_S", number(r.rho_at_T_S)},
          {"comparison_radius_at_T", number(r.comparison_radius_at_T)},
          {"escape_time", optional_number(r.escape_time)},
          {"note", r.note}};
}

json to_json(const PinchingReport& r) {
  json rows = json::array();
  for (const PinchingRow& row : r.rows) {
    rows.push_back({{"t", number(row.t)},
                    {"radius_ratio", number(row.radius_ratio)},
                    {"curvature_ratio", optional_number(row.curvature_ratio)},
                    {"starshapedness", number(row.starshapedness)}});
  }
  return {{"rows", rows},
          {"inf_radius_ratio", number(r.inf_radius_ratio)},
          {"inf_curvature_ratio", number(r.inf_curvature_ratio)},
          {"inf_starshapedness", number(r.inf_starshapedness)},
          {"threshold", r.threshold},
          {"uniform_radius", r.uniform_radius},
          {"uniform_curvature", r.uniform_curvature},
          {"uniform_starshaped", r.uniform_starshaped},
          {"origin_confirmed", r.origin_confirmed ? json(*r.origin_confirmed) : json(nullptr)}};
}

json to_json(const AncientnessVerdict& v) {
  json evidence = json::array();
  for (const ShellIntegral& s : v.evidence) {
    evidence.push_back({{"eps", number(s.eps)}, {"shell", number(s.shell)}, {"cumulative", number(s.cumulative)}});
  }
  return {{"verdict", to_string(v.verdict)}, {"T0_estimate", number(v.T0_estimate)}, {"method", v.method}, {"evidence", evidence}};
}

json to_json(const AdmissibilityReport& r) {
  return {{"verdict", r.verdict()},
          {"samples", r.samples.size()},
          {"cone_contains_diagonal", r.cone_contains_diagonal},
          {"cone_symmetric", r.cone_symmetric},
          {"cone_convex", r.cone_convex},
          {"max_gradient_mismatch", number(r.max_gradient_mismatch)},
          {"positivity_failures", r.positivity_failures},
          {"monotonicity_failures", r.monotonicity_failures},
          {"symmetry_failures", r.symmetry_failures}};
}

json events_json(const Trajectory& traj) {
  json events = json::array();
  for (const FlowEvent& e : traj.events()) events.push_back({{"t", number(e.t)}, {"kind", to_string(e.kind)}, {"message", e.message}});
  return events;
}

json envelope(const std::string& command, std::uint64_t seed, json payload) {
  payload["schema_version"] = kSchemaVersion;
  payload["command"] = command;
  payload["seed"] = seed;
  return payload;
}

}  // namespace ecf::cli
