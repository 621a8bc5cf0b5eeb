// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "exthodge/error.hpp"
#include "exthodge/sphere.hpp"

namespace exthodge {
namespace {

constexpr double kPi = std::numbers::pi;

// Brute-force midpoint rule in (phi, theta) with the cos(theta) area element.
double midpoint_inner(const SphHarmIndex& a, const SphHarmIndex& b, int n = 400) {
  double sum = 0.0;
  const double dphi = 2.0 * kPi / (2 * n), dth = kPi / n;
  for (int j = 0; j < n; ++j) {
    const double th = -0.5 * kPi + (j + 0.5) * dth;
    for (int k = 0; k < 2 * n; ++k) {
      const Direction d{(k + 0.5) * dphi, th};
      sum += eval_sph_harm(a, d) * eval_sph_harm(b, d) * std::cos(th) * dphi * dth;
    }
  }
  return sum;
}

TEST(SphereHarmonics, ConstantHarmonic) {
  for (double phi : {0.0, 1.0, 4.0}) {
    for (double th : {-1.2, 0.0, 0.7}) {
      EXPECT_NEAR(eval_sph_harm({0, 1}, {phi, th}), 1.0 / std::sqrt(4.0 * kPi), 1e-15);
    }
  }
}

TEST(SphereHarmonics, ZonalOrderOne) {
  const double th = kPi / 4;
  EXPECT_NEAR(eval_sph_harm({1, 1}, {0.3, th}), std::sqrt(3.0 / (4.0 * kPi)) * std::sin(th), 1e-15);
}

TEST(SphereHarmonics, OrthonormalAgainstMidpointRule) {
  const SphHarmIndex pairs[][2] = {{{2, 1}, {1, 1}}, {{2, 3}, {2, 3}}, {{3, 4}, {3, 5}}, {{4, 2}, {4, 2}},
                                   {{1, 2}, {3, 2}}};
  for (const auto& p : pairs) {
    const double expect = (p[0].n == p[1].n && p[0].m == p[1].m) ? 1.0 : 0.0;
    EXPECT_NEAR(midpoint_inner(p[0], p[1]), expect, 1e-4) << p[0].n << "," << p[0].m;
  }
}

TEST(SphereHarmonics, QuadratureOrthonormalUpToEight) {
  const SphereQuadrature q = build_quadrature(16);
  double worst = 0.0;
  for (int n = 0; n <= 8; ++n) {
    for (int m = 1; m <= 2 * n + 1; ++m) {
      for (int n2 = 0; n2 <= 8; ++n2) {
        for (int m2 = 1; m2 <= 2 * n2 + 1; ++m2) {
          const SphHarmIndex a(n, m), b(n2, m2);
          const double ip = surface_inner_product([&](const Direction& d) { return eval_sph_harm(a, d); },
                                                  [&](const Direction& d) { return eval_sph_harm(b, d); }, q);
          worst = std::max(worst, std::abs(ip - ((n == n2 && m == m2) ? 1.0 : 0.0)));
        }
      }
    }
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(SphereHarmonics, InvalidIndexThrows) {
  EXPECT_THROW(SphHarmIndex(1, 4), Error);
  EXPECT_THROW(SphHarmIndex(2, 0), Error);
  EXPECT_THROW(SphHarmIndex(-1, 1), Error);
}

TEST(SurfaceGradient, MatchesAngularDifferences) {
  const double h = 1e-5;
  for (int n = 1; n <= 5; ++n) {
    for (int m = 1; m <= 2 * n + 1; ++m) {
      const SphHarmIndex idx(n, m);
      const Direction d{1.1, -0.4};
      const Frame f = frame(d);
      const double dphi = (eval_sph_harm(idx, {d.phi + h, d.theta}) - eval_sph_harm(idx, {d.phi - h, d.theta})) / (2 * h);
      const double dth = (eval_sph_harm(idx, {d.phi, d.theta + h}) - eval_sph_harm(idx, {d.phi, d.theta - h})) / (2 * h);
      const Vec3 expect = dphi / std::cos(d.theta) * f.e_phi + dth * f.e_theta;
      const Vec3 Y = eval_sph_harm_surface_grad(idx, d);
      EXPECT_LT((Y - expect).norm(), 1e-8) << n << "," << m;
      EXPECT_NEAR(Y.dot(f.e_r), 0.0, 1e-14);
    }
  }
}

TEST(SurfaceGradient, ConstantHasZeroGradient) {
  EXPECT_LT(eval_sph_harm_surface_grad({0, 1}, {0.5, 0.5}).norm(), 1e-15);
}

TEST(SurfaceGradient, NormIsEigenvalue) {
  const SphereQuadrature q = build_quadrature(14);
  for (int n = 0; n <= 6; ++n) {
    for (int m = 1; m <= 2 * n + 1; ++m) {
      const SphHarmIndex idx(n, m);
      const SurfaceFunction Y = [&](const Direction& d) { return eval_sph_harm_surface_grad(idx, d); };
      EXPECT_NEAR(surface_inner_product(Y, Y, q), n * (n + 1.0), 1e-8);
    }
  }
}

TEST(SurfaceGradient, ZonalOrderOneVanishesAtEquatorOnlyInPhi) {
  const Vec3 Y = eval_sph_harm_surface_grad({1, 1}, {0.0, 0.0});
  const Frame f = frame({0.0, 0.0});
  EXPECT_NEAR(Y.dot(f.e_theta), std::sqrt(3.0 / (4.0 * kPi)), 1e-14);
  EXPECT_NEAR(Y.dot(f.e_phi), 0.0, 1e-15);
}

TEST(Frame, RightHandedOrthonormal) {
  for (double phi : {0.0, 0.9, 3.0, 5.5}) {
    for (double th : {-1.4, -0.2, 0.0, 1.3}) {
      const Frame f = frame({phi, th});
      EXPECT_NEAR(f.e_r.norm(), 1.0, 1e-15);
      EXPECT_NEAR(f.e_phi.norm(), 1.0, 1e-15);
      EXPECT_NEAR(f.e_theta.norm(), 1.0, 1e-15);
      EXPECT_NEAR(f.e_r.dot(f.e_phi), 0.0, 1e-15);
      EXPECT_NEAR(f.e_r.dot(f.e_theta), 0.0, 1e-15);
      EXPECT_LT((f.e_r.cross(f.e_phi) - f.e_theta).norm(), 1e-15);
    }
  }
}

TEST(Frame, EqualsCartesianImage) {
  const Direction d{0.7, 0.3};
  const Vec3 x = d.cartesian();
  EXPECT_NEAR(x.norm(), 1.0, 1e-15);
  EXPECT_LT((frame(d).e_r - x).norm(), 1e-15);
  const Direction back = Direction::from_cartesian(2.5 * x);
  EXPECT_NEAR(back.phi, d.phi, 1e-14);
  EXPECT_NEAR(back.theta, d.theta, 1e-14);
}

TEST(LaplaceBeltrami, ResidualConvergesAtOrderTwo) {
  const Direction d{0.4, 0.2};
  for (int n = 1; n <= 6; ++n) {
    const SphHarmIndex idx(n, std::min(3, 2 * n + 1));
    const double e1 = std::abs(laplace_beltrami_residual(idx, d, 1e-2));
    const double e2 = std::abs(laplace_beltrami_residual(idx, d, 5e-3));
    EXPECT_NEAR(std::log2(e1 / e2), 2.0, 0.1) << n;
  }
}

TEST(LaplaceBeltrami, RejectsDirectionsNearPole) {
  EXPECT_THROW(laplace_beltrami_residual({2, 1}, {0.0, 0.5 * kPi - 1e-3}, 1e-2), Error);
  try {
    laplace_beltrami_residual({2, 1}, {0.0, 0.5 * kPi - 1e-3}, 1e-2);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PoleProximity);
  }
}

TEST(Quadrature, ThreePointGaussLegendre) {
  std::vector<double> t, w;
  gauss_legendre(3, t, w);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_NEAR(t[0], -std::sqrt(0.6), 1e-15);
  EXPECT_NEAR(t[1], 0.0, 1e-15);
  EXPECT_NEAR(w[0], 5.0 / 9.0, 1e-15);
  EXPECT_NEAR(w[1], 8.0 / 9.0, 1e-15);
}

TEST(Quadrature, WeightsSumToSphereArea) {
  for (int n : {0, 1, 4, 10}) {
    const SphereQuadrature q = build_quadrature(n);
    double sum = 0.0;
    for (double w : q.weights) {
      EXPECT_GT(w, 0.0);
      sum += w;
    }
    EXPECT_NEAR(sum, 4.0 * kPi, 1e-12 * 4.0 * kPi);
    EXPECT_GE(q.exact_degree, n);
  }
}

TEST(Quadrature, MixedKindsThrow) {
  const SphereQuadrature q = build_quadrature(2);
  EXPECT_THROW(surface_inner_product([](const Direction&) { return FieldValue(1.0); },
                                     [](const Direction&) { return FieldValue(Vec3(1, 0, 0)); }, q),
               Error);
}

}  // namespace
}  // namespace exthodge
