// Copyright 2026 The ecflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "ecflow/errors.hpp"

namespace ecf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::CurvatureOutsideCone: return "CurvatureOutsideCone";
    case ErrorCode::NonPositiveSpeed: return "NonPositiveSpeed";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::ConeExit: return "ConeExit";
    case ErrorCode::IndeterminateDivergence: return "IndeterminateDivergence";
    case ErrorCode::InvalidMesh: return "InvalidMesh";
    case ErrorCode::DegenerateElement: return "DegenerateElement";
    case ErrorCode::CenterOutside: return "CenterOutside";
    case ErrorCode::NonConvexInput: return "NonConvexInput";
    case ErrorCode::MeshDegeneracy: return "MeshDegeneracy";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::InsufficientFrames: return "InsufficientFrames";
    case ErrorCode::NeverTouches: return "NeverTouches";
    case ErrorCode::StartNotStrict: return "StartNotStrict";
    case ErrorCode::EmptyTrajectory: return "EmptyTrajectory";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::NoFramesPastTouch: return "NoFramesPastTouch";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace ecf
