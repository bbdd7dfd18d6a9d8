// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

// JSON views of the library's reports. Non-finite numbers become null.

#pragma once

#include <json.hpp>

#include "ecflow/reflection.hpp"
#include "ecflow/rigidity.hpp"
#include "ecflow/speeds.hpp"
#include "ecflow/sphere_ode.hpp"
#include "ecflow/trajectory.hpp"

namespace ecf::cli {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json number(double x);
json point_json(const Point& p);
json to_json(const ReflectionVerdict& v);
json to_json(const SymmetryCertificate& c);
json to_json(const PointOriginReport& r);
json to_json(const RigidityAuditReport& r);
json to_json(const TauLimitReport& r);
json to_json(const AncientCheckReport& r);
json to_json(const PinchingReport& r);
json to_json(const AncientnessVerdict& v);
json to_json(const AdmissibilityReport& r);
json events_json(const Trajectory& traj);

/// Wraps a payload with the schema version and command name.
json envelope(const std::string& command, std::uint64_t seed, json payload);

}  // namespace ecf::cli
