// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

#include "exthodge/report.hpp"

#include <cmath>

namespace exthodge {

const char* anchor(CheckGroup group) {
  switch (group) {
    case CheckGroup::SphereHarmonics: return "Appendix A.2.1";
    case CheckGroup::TowerEquations: return "Appendix A.2.2, Figure 1";
    case CheckGroup::Homogeneity: return "Appendix A.2.2, homogeneity of z^k";
    case CheckGroup::Harmonicity: return "Appendix A.2.2, potential fields U^l, V^l (l = -1, 0) and P";
    case CheckGroup::GroundIdentity: return "Eq. (2.3)";
    case CheckGroup::LaplaceTower: return "Appendix A.2.2, Delta z^k = z^(k-1)";
    case CheckGroup::Mu: return "Appendix A.1, mu_sigma^q";
    case CheckGroup::DirichletDim: return "Corollary A.2";
    case CheckGroup::Integrability: return "Section 2, s < N/2 + sigma - l";
    case CheckGroup::Decomposition: return "Lemma 4.1";
    case CheckGroup::DirichletField: return "Lemma 3.1, Lemma A.3";
    case CheckGroup::FluxPairing: return "Theorem 3.8, proof";
    case CheckGroup::Correction: return "Theorem A.4 (iv)";
    case CheckGroup::GrowingDirichlet: return "Lemma A.1";
  }
  return "";
}

void Report::check_le(CheckGroup group, std::string name, double measured, double tolerance) {
  check(group, std::move(name), measured <= tolerance, measured, tolerance);
}

void Report::check(CheckGroup group, std::string name, bool ok, double measured, double tolerance) {
  checks_.push_back({std::move(name), anchor(group), ok, measured, tolerance});
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (CheckRecord c : other.checks_) {
    c.name = prefix + "/" + c.name;
    checks_.push_back(std::move(c));
  }
  if (!other.data_.empty()) data_[prefix] = other.data_;
}

bool Report::passed() const {
  for (const CheckRecord& c : checks_) {
    if (!c.pass) return false;
  }
  return true;
}

namespace {

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json Report::to_json() const {
  Json out;
  out["artifact"] = kArtifact;
  out["version"] = kVersion;
  out["config"] = config_;
  Json checks = Json::array();
  for (const CheckRecord& c : checks_) {
    checks.push_back({{"name", c.name},
                      {"anchor", c.anchor},
                      {"status", c.pass ? "pass" : "fail"},
                      {"measured", number(c.measured)},
                      {"tolerance", number(c.tolerance)}});
  }
  out["checks"] = std::move(checks);
  if (!data_.empty()) out["data"] = data_;
  out["status"] = passed() ? "pass" : "fail";
  return out;
}

std::string Report::dump() const { return to_json().dump(2) + "\n"; }

}  // namespace exthodge
