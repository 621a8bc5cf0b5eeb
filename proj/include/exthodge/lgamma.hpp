// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace exthodge {

// log|Gamma(x)| and the sign of Gamma(x) for real, non-pole x.
// Stirling series above x = 15 with upward shifting below, reflection for x < 0.5.
struct SignedLogGamma {
  double log_abs;
  int sign;
};

SignedLogGamma log_gamma(double x);

}  // namespace exthodge
