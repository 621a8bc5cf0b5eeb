// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

#include "exthodge/weighted.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "exthodge/error.hpp"

namespace exthodge {

namespace {

double distance_to_ladder(double a) {
  const double n = std::max(0.0, std::round(a));
  return std::abs(a - n);
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t c = 1;
  for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;  // exact at every step
  return c;
}

}  // namespace

double distance_to_excluded(double s, int N) {
  const double half = 0.5 * N;
  return std::min(distance_to_ladder(s - (half - 1.0)), distance_to_ladder(-s - half));
}

void WeightContext::require_valid() const {
  if (!std::isfinite(s) || !valid()) {
    throw Error(ErrorCode::InvalidWeight, "weight s = " + std::to_string(s) + " lies in the excluded set");
  }
}

double weight_value(const Vec3& point, double s) { return weight_value_r(point.norm(), s); }

RadialQuadrature build_radial_quadrature(const ShellSpec& shell) {
  if (!(shell.r_in > 0.0) || !(shell.r_out > shell.r_in)) {
    throw Error(ErrorCode::InvalidArgument, "shell radii must satisfy 0 < r_in < r_out");
  }
  if (shell.radial_nodes < 1) throw Error(ErrorCode::InvalidArgument, "radial_nodes must be positive");
  std::vector<double> t, w;
  gauss_legendre(shell.radial_nodes, t, w);
  RadialQuadrature q;
  if (shell.rule == RadialRule::GaussLegendre) {
    const double mid = 0.5 * (shell.r_in + shell.r_out), half = 0.5 * (shell.r_out - shell.r_in);
    for (std::size_t i = 0; i < t.size(); ++i) {
      q.nodes.push_back(mid + half * t[i]);
      q.weights.push_back(half * w[i]);
    }
    return q;
  }
  const double span = std::log(shell.r_out / shell.r_in);
  const int panels = std::max(1, static_cast<int>(std::ceil(span / std::log(2.0) - 1e-12)));
  const double width = span / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = std::log(shell.r_in) + (p + 0.5) * width;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double r = std::exp(mid + 0.5 * width * t[i]);
      q.nodes.push_back(r);
      q.weights.push_back(0.5 * width * w[i] * r);
    }
  }
  return q;
}

double weighted_shell_norm(const PointField& field, double s, const ShellSpec& shell,
                           const SphereQuadrature& quad) {
  const RadialQuadrature rq = build_radial_quadrature(shell);
  double sum = 0.0;
  for (std::size_t i = 0; i < rq.nodes.size(); ++i) {
    const double r = rq.nodes[i];
    double ang = 0.0;
    for (std::size_t j = 0; j < quad.nodes.size(); ++j) {
      const double a = magnitude(field(r * quad.nodes[j].cartesian()));
      ang += quad.weights[j] * a * a;
    }
    sum += rq.weights[i] * r * r * std::pow(1.0 + r * r, s) * ang;
  }
  return std::sqrt(sum);
}

bool is_integrable(const TowerIndex& idx, double s) {
  WeightContext{s, 3}.require_valid();
  idx.validate();
  if (idx.sign == Sign::Plus) {
    throw Error(ErrorCode::PositiveSignUnsupported,
                "growing towers are not classified; " + idx.label() + " has the + sign");
  }
  // |F|^2 ~ r^(2d) and rho^(2s) r^2 ~ r^(2s+2): integrable iff 2s + 2d + 3 < 0.
  return s < -homogeneity_degree(idx) - 1.5;
}

std::vector<GrowthVerdict> growth_oracle(const TowerIndex& idx, std::span<const double> s_values,
                                         std::span<const double> R_values) {
  idx.validate();
  const SphereQuadrature quad = build_quadrature(idx.n + 2);
  const PointField field = [&idx](const Vec3& x) { return eval_tower(idx, x); };

  // Angular integral of |F|^2 at each radial node; the weights rho^(2s) are applied afterwards.
  struct Profile {
    RadialQuadrature rq;
    std::vector<double> angular;
  };
  auto profile = [&](double r_out) {
    Profile p{build_radial_quadrature({1.0, r_out, 8, RadialRule::LogGaussLegendre}), {}};
    for (double r : p.rq.nodes) {
      double ang = 0.0;
      for (std::size_t j = 0; j < quad.nodes.size(); ++j) {
        const double a = magnitude(field(r * quad.nodes[j].cartesian()));
        ang += quad.weights[j] * a * a;
      }
      p.angular.push_back(ang);
    }
    return p;
  };
  auto norm = [](const Profile& p, double s) {
    double sum = 0.0;
    for (std::size_t i = 0; i < p.rq.nodes.size(); ++i) {
      const double r = p.rq.nodes[i];
      sum += p.rq.weights[i] * r * r * std::pow(1.0 + r * r, s) * p.angular[i];
    }
    return std::sqrt(sum);
  };

  std::vector<std::pair<Profile, Profile>> profiles;
  for (double R : R_values) profiles.emplace_back(profile(R), profile(2.0 * R));

  std::vector<GrowthVerdict> out;
  for (double s : s_values) {
    GrowthVerdict v;
    v.s = s;
    for (const auto& [inner, outer] : profiles) v.ratios.push_back(norm(outer, s) / norm(inner, s));
    const auto below = std::count_if(v.ratios.begin(), v.ratios.end(), [](double q) { return q < kGrowthBand; });
    v.integrable = below == static_cast<long>(v.ratios.size());
    v.consistent = below == 0 || v.integrable;
    out.push_back(v);
  }
  return out;
}

std::int64_t mu(int sigma, int q, int N) {
  if (N < 1 || q < 0 || q > N || sigma < 0) {
    throw Error(ErrorCode::InvalidArgument, "mu needs N >= 1, 0 <= q <= N and sigma >= 0");
  }
  const int qd = N - q;
  if (sigma == 0 && (q == 0 || qd == 0)) return binomial(N, q);
  const std::int64_t num = binomial(N, q) * binomial(N - 1 + sigma, sigma) * q * qd * (N + 2 * sigma);
  const std::int64_t den = static_cast<std::int64_t>(N) * (q + sigma) * (qd + sigma);
  if (num % den != 0) {
    throw Error(ErrorCode::NonIntegralResult, "mu(" + std::to_string(sigma) + ", " + std::to_string(q) +
                                                  ", " + std::to_string(N) + ") is not an integer");
  }
  return num / den;
}

std::int64_t dirichlet_dim(double s, int q, std::int64_t d_q, int N) {
  WeightContext{s, N}.require_valid();
  if (s >= 0.5 * N - 1.0) {
    throw Error(ErrorCode::InvalidArgument, "the dimension count holds for s < N/2 - 1");
  }
  if (d_q < 0) throw Error(ErrorCode::InvalidArgument, "Betti input must be non-negative");
  std::int64_t d = d_q;
  for (int sigma = 0; sigma < -s - 0.5 * N; ++sigma) d += mu(sigma, q, N);
  return d;
}

const char* basis_family_name(BasisFamily f) {
  switch (f) {
    case BasisFamily::VBar: return "Vbar";
    case BasisFamily::UBar: return "Ubar";
    case BasisFamily::PBar: return "Pbar";
    case BasisFamily::UCheck: return "Ucheck";
  }
  return "?";
}

std::vector<TowerIndex> enumerate_basis(const SpaceBasisSpec& spec) {
  WeightContext{spec.s, 3}.require_valid();
  if (spec.family != BasisFamily::PBar && spec.floor < -1) {
    throw Error(ErrorCode::InvalidArgument, "floor must be >= -1");
  }
  std::vector<TowerIndex> out;
  switch (spec.family) {
    case BasisFamily::UCheck:
      if (0.0 <= spec.floor + spec.s + 0.5) out.push_back(TowerIndex::exceptional(Sign::Minus, spec.floor));
      return out;
    case BasisFamily::PBar:
      for (int n = 1; n <= spec.s + 1.5; ++n) {
        for (int m = 1; m <= 2 * n + 1; ++m) out.push_back(TowerIndex::p(Sign::Minus, n, m));
      }
      return out;
    case BasisFamily::VBar:
    case BasisFamily::UBar:
      for (int n = 1; n <= spec.floor + spec.s + 0.5; ++n) {
        for (int m = 1; m <= 2 * n + 1; ++m) {
          out.push_back(spec.family == BasisFamily::VBar ? TowerIndex::v(Sign::Minus, spec.floor, n, m)
                                                         : TowerIndex::u(Sign::Minus, spec.floor, n, m));
        }
      }
      return out;
  }
  return out;
}

bool check_admissibility(double tau, double s, AdmissibilityRole role, int N) {
  const double half = 0.5 * N;
  if (role == AdmissibilityRole::Epsilon) return tau > std::max(0.0, s + 1.0 - half) && tau >= -s - 1.0;
  return tau > std::max(0.0, s - half) && tau >= -s;
}

}  // namespace exthodge
