// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

#include "exthodge/error.hpp"

namespace exthodge {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::PoleProximity: return "PoleProximity";
    case ErrorCode::OriginSingular: return "OriginSingular";
    case ErrorCode::OriginProximity: return "OriginProximity";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::InvalidWeight: return "InvalidWeight";
    case ErrorCode::PositiveSignUnsupported: return "PositiveSignUnsupported";
    case ErrorCode::NonIntegralResult: return "NonIntegralResult";
    case ErrorCode::SolverDiverged: return "SolverDiverged";
    case ErrorCode::InadmissibleMedium: return "InadmissibleMedium";
    case ErrorCode::EmptyBasis: return "EmptyBasis";
    case ErrorCode::SingularGram: return "SingularGram";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace exthodge
