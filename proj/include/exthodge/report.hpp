// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

// Machine-readable verification reports.

#pragma once

#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

namespace exthodge {

inline constexpr const char* kArtifact = "exthodge";
inline constexpr const char* kVersion = "1.0.0";

using Json = nlohmann::ordered_json;

// Every check belongs to a group; each group maps to a fixed anchor string.
enum class CheckGroup {
  SphereHarmonics,
  TowerEquations,
  Homogeneity,
  Harmonicity,
  GroundIdentity,
  LaplaceTower,
  Mu,
  DirichletDim,
  Integrability,
  Decomposition,
  DirichletField,
  FluxPairing,
  Correction,
  GrowingDirichlet,
};

const char* anchor(CheckGroup group);

struct CheckRecord {
  std::string name;
  std::string anchor;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
};

class Report {
 public:
  explicit Report(Json config) : config_(std::move(config)) {}

  // pass = measured <= tolerance (a NaN measurement fails).
  void check_le(CheckGroup group, std::string name, double measured, double tolerance);
  // pass = ok; measured and tolerance are recorded as given.
  void check(CheckGroup group, std::string name, bool ok, double measured, double tolerance);
  // Free-form tables and values attached under "data".
  Json& data() { return data_; }

  void merge(const Report& other, const std::string& prefix);

  const std::vector<CheckRecord>& checks() const { return checks_; }
  const Json& config() const { return config_; }
  bool passed() const;
  Json to_json() const;
  // Two-space indented JSON with a trailing newline.
  std::string dump() const;

 private:
  Json config_;
  Json data_ = Json::object();
  std::vector<CheckRecord> checks_;
};

}  // namespace exthodge
