// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace exthodge {

enum class ErrorCode {
  InvalidArgument,
  PoleProximity,
  OriginSingular,
  OriginProximity,
  KindMismatch,
  InvalidWeight,
  PositiveSignUnsupported,
  NonIntegralResult,
  SolverDiverged,
  InadmissibleMedium,
  EmptyBasis,
  SingularGram,
  Parse,
  Io,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace exthodge
