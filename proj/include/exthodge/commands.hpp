// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

// The verification commands behind the CLI. Each takes a JSON config, fills in
// defaults, and returns a report whose config echo is the resolved config.
//
// Random points come from std::mt19937_64 seeded with `seed`; a draw x maps to
// the unit interval as (x >> 11) * 2^-53.

#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "exthodge/report.hpp"
#include "exthodge/vec.hpp"

namespace exthodge {

class PointSampler {
 public:
  explicit PointSampler(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
  // Uniform direction, radius uniform in [r_min, r_max].
  Vec3 shell_point(double r_min, double r_max);

 private:
  std::mt19937_64 engine_;
};

// Throws InvalidArgument on unknown commands or malformed configs; other
// library errors propagate unchanged.
Report run_command(const std::string& command, const Json& config);

Report cmd_verify_towers(const Json& config);
Report cmd_dims(const Json& config);
Report cmd_integrability(const Json& config);
Report cmd_decompose(const Json& config);
Report cmd_report_all(const Json& config);

}  // namespace exthodge
