// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

// Weights rho^s = (1 + r^2)^(s/2), weighted norms on shells, integrability of
// decaying towers, and the dimension counts of the finite-dimensional spaces.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "exthodge/sphere.hpp"
#include "exthodge/towers.hpp"

namespace exthodge {

inline constexpr double kWeightGuard = 1e-9;

// Distance from s to the excluded set {n + 1/2} u {-n - 3/2}, n >= 0 (N = 3).
double distance_to_excluded(double s, int N = 3);

struct WeightContext {
  double s = 0.0;
  int N = 3;

  bool valid() const { return distance_to_excluded(s, N) > kWeightGuard; }
  // Throws InvalidWeight.
  void require_valid() const;
};

double weight_value(const Vec3& point, double s);
inline double weight_value_r(double r, double s) { return std::pow(1.0 + r * r, 0.5 * s); }

enum class RadialRule {
  GaussLegendre,     // one Gauss-Legendre panel in r
  LogGaussLegendre,  // Gauss-Legendre panels of equal width in log r, one per factor 2
};

struct ShellSpec {
  double r_in = 1.0;
  double r_out = 2.0;
  int radial_nodes = 16;  // per panel
  RadialRule rule = RadialRule::LogGaussLegendre;
};

// Nodes and weights for integrals in dr over [r_in, r_out] (no r^2 factor).
struct RadialQuadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

RadialQuadrature build_radial_quadrature(const ShellSpec& shell);

// (int_shell rho^(2s) |F|^2 dx)^(1/2), summed radius-major, direction-minor.
double weighted_shell_norm(const PointField& field, double s, const ShellSpec& shell,
                           const SphereQuadrature& quad);

// True iff the decaying tower lies in L^2_s(|x| > 1).
// Throws InvalidWeight, PositiveSignUnsupported.
bool is_integrable(const TowerIndex& idx, double s);

// Growth-ratio oracle: ||F||_{s,[1,2R]} / ||F||_{s,[1,R]} for each R; the tower
// is classified integrable iff every ratio is below the band.
struct GrowthVerdict {
  double s = 0.0;
  std::vector<double> ratios;
  bool integrable = false;
  bool consistent = true;  // all ratios on the same side of the band
};

inline constexpr double kGrowthBand = 1.05;

std::vector<GrowthVerdict> growth_oracle(const TowerIndex& idx, std::span<const double> s_values,
                                         std::span<const double> R_values);

// mu_sigma^q = C(N,q) C(N-1+sigma, sigma) q q' (N + 2 sigma) / (N (q + sigma)(q' + sigma)),
// q' = N - q. Throws NonIntegralResult if the division is inexact.
std::int64_t mu(int sigma, int q, int N = 3);

// d_s^q = d_q + sum_{sigma >= 0, sigma < -s - N/2} mu_sigma^q, for valid s < 1/2.
std::int64_t dirichlet_dim(double s, int q, std::int64_t d_q, int N = 3);

enum class BasisFamily { VBar, UBar, PBar, UCheck };
const char* basis_family_name(BasisFamily f);

struct SpaceBasisSpec {
  BasisFamily family = BasisFamily::VBar;
  double s = 0.0;
  int floor = 0;  // ignored for PBar
};

// Decaying towers of the family that are not in L^2_s(|x| > 1).
std::vector<TowerIndex> enumerate_basis(const SpaceBasisSpec& spec);

enum class AdmissibilityRole { Epsilon, MuNu };

bool check_admissibility(double tau, double s, AdmissibilityRole role, int N = 3);

}  // namespace exthodge
