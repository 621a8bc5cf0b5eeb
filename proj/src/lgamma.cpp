// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

#include "exthodge/lgamma.hpp"

#include <cmath>
#include <numbers>

#include "exthodge/error.hpp"

namespace exthodge {

namespace {

// Stirling series for x >= 15; the truncation error is below 1e-19.
double stirling(double x) {
  constexpr double kHalfLog2Pi = 0.91893853320467274178;
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double series =
      inv * (1.0 / 12.0 +
             inv2 * (-1.0 / 360.0 +
                     inv2 * (1.0 / 1260.0 +
                             inv2 * (-1.0 / 1680.0 + inv2 * (1.0 / 1188.0 + inv2 * (-691.0 / 360360.0))))));
  return (x - 0.5) * std::log(x) - x + kHalfLog2Pi + series;
}

}  // namespace

SignedLogGamma log_gamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) {
    throw Error(ErrorCode::InvalidArgument, "log_gamma evaluated at a pole");
  }
  if (x < 0.5) {
    // Gamma(x) Gamma(1 - x) = pi / sin(pi x)
    const double s = std::sin(std::numbers::pi * x);
    const SignedLogGamma g = log_gamma(1.0 - x);
    return {std::log(std::numbers::pi) - std::log(std::abs(s)) - g.log_abs, (s < 0.0 ? -1 : 1) * g.sign};
  }
  double shift = 0.0;
  double z = x;
  // Accumulate the product in pieces to keep it in range.
  double prod = 1.0;
  while (z < 15.0) {
    prod *= z;
    if (prod > 1e250) {
      shift += std::log(prod);
      prod = 1.0;
    }
    z += 1.0;
  }
  shift += std::log(prod);
  return {stirling(z) - shift, 1};
}

}  // namespace exthodge
