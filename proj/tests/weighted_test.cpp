// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <optional>

#include "exthodge/error.hpp"
#include "exthodge/weighted.hpp"

namespace exthodge {
namespace {

constexpr double kPi = std::numbers::pi;

std::optional<ErrorCode> code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

TEST(Weight, Values) {
  EXPECT_DOUBLE_EQ(weight_value(Vec3(0, 0, 0), 5.0), 1.0);
  EXPECT_NEAR(weight_value(Vec3(1, 0, 0), 2.0), 2.0, 1e-15);
  EXPECT_NEAR(weight_value(Vec3(0, 3, 0), -1.0), 1.0 / std::sqrt(10.0), 1e-15);
}

TEST(Weight, ExcludedSet) {
  EXPECT_TRUE(WeightContext{0.0}.valid());
  EXPECT_FALSE(WeightContext{0.5}.valid());
  EXPECT_FALSE(WeightContext{-1.5}.valid());
  EXPECT_FALSE(WeightContext{-2.5}.valid());
  EXPECT_TRUE(WeightContext{-0.5}.valid());
  EXPECT_EQ(code_of([] { WeightContext{1.5}.require_valid(); }), ErrorCode::InvalidWeight);
}

TEST(ShellNorm, InverseSquareRadial) {
  const SphereQuadrature q = build_quadrature(4);
  const PointField f = [](const Vec3& x) { return FieldValue(x / std::pow(x.norm(), 3)); };
  const double R = 1e3;
  const double norm = weighted_shell_norm(f, 0.0, {1.0, R, 16}, q);
  EXPECT_NEAR(norm, std::sqrt(4.0 * kPi * (1.0 - 1.0 / R)), 1e-10);
  const PointField zero = [](const Vec3&) { return FieldValue(Vec3::Zero()); };
  EXPECT_EQ(weighted_shell_norm(zero, 1.0, {1.0, 10.0, 8}, q), 0.0);
}

TEST(Integrability, Examples) {
  EXPECT_TRUE(is_integrable(TowerIndex::v(Sign::Minus, -1, 1, 1), 1.0));
  EXPECT_FALSE(is_integrable(TowerIndex::v(Sign::Minus, 0, 1, 1), 1.0));
  // r^{-1} squared against r^2 dr diverges, so the exceptional scalar needs s < -1/2
  EXPECT_FALSE(is_integrable(TowerIndex::exceptional(Sign::Minus, 0), 0.0));
  EXPECT_TRUE(is_integrable(TowerIndex::exceptional(Sign::Minus, 0), -1.0));
  EXPECT_EQ(code_of([] { is_integrable(TowerIndex::u(Sign::Plus, 0, 1, 1), 0.0); }),
            ErrorCode::PositiveSignUnsupported);
  EXPECT_EQ(code_of([] { is_integrable(TowerIndex::u(Sign::Minus, 0, 1, 1), 0.5); }), ErrorCode::InvalidWeight);
}

TEST(Integrability, AgreesWithGrowthOracle) {
  const double s_values[] = {-3, -2, -1, 0, 1, 2, 3};
  const double R_values[] = {1e2, 1e3, 1e4};
  for (int floor = -1; floor <= 1; ++floor) {
    for (int n = 1; n <= 3; ++n) {
      for (const TowerIndex& idx : {TowerIndex::v(Sign::Minus, floor, n, 1), TowerIndex::u(Sign::Minus, floor, n, 1)}) {
        const auto verdicts = growth_oracle(idx, s_values, R_values);
        for (const GrowthVerdict& v : verdicts) {
          EXPECT_TRUE(v.consistent) << idx.label() << " s=" << v.s;
          EXPECT_EQ(v.integrable, is_integrable(idx, v.s)) << idx.label() << " s=" << v.s;
        }
      }
    }
    const TowerIndex ex = TowerIndex::exceptional(Sign::Minus, floor);
    for (const GrowthVerdict& v : growth_oracle(ex, s_values, R_values)) {
      EXPECT_EQ(v.integrable, is_integrable(ex, v.s)) << ex.label() << " s=" << v.s;
    }
  }
}

TEST(Mu, Examples) {
  EXPECT_EQ(mu(0, 1), 3);
  EXPECT_EQ(mu(2, 1), 7);
  EXPECT_EQ(mu(0, 0), 1);
  for (int sigma = 0; sigma <= 10; ++sigma) {
    EXPECT_EQ(mu(sigma, 1), 2 * sigma + 3);
    EXPECT_EQ(mu(sigma, 2), 2 * sigma + 3);
  }
}

TEST(Mu, IntegralOverRange) {
  for (int N = 1; N <= 6; ++N) {
    for (int q = 0; q <= N; ++q) {
      for (int sigma = 0; sigma <= 12; ++sigma) {
        EXPECT_GE(mu(sigma, q, N), 0) << N << " " << q << " " << sigma;
      }
    }
  }
}

TEST(DirichletDim, Examples) {
  EXPECT_EQ(dirichlet_dim(-2.0, 1, 1), 4);
  EXPECT_EQ(dirichlet_dim(-3.0, 1, 1), 9);
  EXPECT_EQ(dirichlet_dim(-1.6, 2, 0), 3);
  EXPECT_EQ(code_of([] { dirichlet_dim(-2.5, 1, 1); }), ErrorCode::InvalidWeight);
}

TEST(DirichletDim, StepsOnlyAtExcludedPoints) {
  std::int64_t prev = dirichlet_dim(-0.4, 1, 1);
  for (int i = 1; i <= 600; ++i) {
    const double s = -0.4 - 0.01 * i;
    if (!WeightContext{s}.valid()) continue;
    const std::int64_t d = dirichlet_dim(s, 1, 1);
    EXPECT_GE(d, prev);
    if (d != prev) {
      const double k = std::floor(-1.5 - s);
      EXPECT_LT(std::abs(s - (-1.5 - k)), 0.0101) << s;
    }
    prev = d;
  }
}

TEST(Basis, Examples) {
  EXPECT_TRUE(enumerate_basis({BasisFamily::PBar, -0.6, 0}).empty());
  EXPECT_EQ(enumerate_basis({BasisFamily::PBar, 0.0, 0}).size(), 3u);
  const auto vbar = enumerate_basis({BasisFamily::VBar, 2.0, -1});
  ASSERT_EQ(vbar.size(), 3u);
  for (const TowerIndex& t : vbar) EXPECT_EQ(t.n, 1);
  EXPECT_EQ(enumerate_basis({BasisFamily::UCheck, 2.0, -1}).size(), 1u);
}

TEST(Basis, SizesMatchMu) {
  for (double s : {1.6, 2.0, 3.2, 4.0, 5.7}) {
    std::int64_t total = 0;
    for (int sigma = 0; sigma < s - 1.5; ++sigma) total += mu(sigma, 1);
    EXPECT_EQ(static_cast<std::int64_t>(enumerate_basis({BasisFamily::PBar, s - 2.0, 0}).size()), total) << s;
  }
}

TEST(Admissibility, Examples) {
  EXPECT_TRUE(check_admissibility(1.0, 0.0, AdmissibilityRole::Epsilon));
  EXPECT_FALSE(check_admissibility(0.4, 1.0, AdmissibilityRole::Epsilon));
  EXPECT_TRUE(check_admissibility(2.0, 3.0, AdmissibilityRole::MuNu));
}

}  // namespace
}  // namespace exthodge
