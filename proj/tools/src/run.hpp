// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>

#include "config.hpp"
#include "ecflow/errors.hpp"
#include "ecflow/trajectory.hpp"

namespace ecf::cli {

enum ExitCode : int { kPass = 0, kUsage = 1, kAuditFail = 2, kNumerical = 3 };

int exit_code_for(ErrorCode code);

DiscreteHypersurface build_shape(const RunConfig& config);

/// The trajectory audited by reflect-audit and rigidity-audit: an evolved
/// shape, or an analytic family.
Trajectory build_trajectory(const RunConfig& config);

/// Validates, locks the output directory, writes the resolved config and
/// the command's artifacts. Errors are reported on `err` and mapped to exit
/// codes; nothing is thrown.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace ecf::cli
