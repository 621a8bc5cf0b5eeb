// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "exthodge/error.hpp"
#include "exthodge/grid.hpp"

namespace exthodge {
namespace {

constexpr double kPi = std::numbers::pi;

double inv_r(const Vec3& x) { return 1.0 / x.norm(); }
Vec3 grad_inv_r(const Vec3& x) { return Vec3(-x / std::pow(x.norm(), 3)); }

// Weighted relative L2 error of a grid vector field against an exact field.
double rel_error(const ShellGrid& g, const GridVectorField& a, const std::function<Vec3(const Vec3&)>& exact) {
  const GridVectorField e = sample_vector(g, exact);
  GridVectorField d{a.values - e.values};
  return std::sqrt(grid_inner(g, d, d) / grid_inner(g, e, e));
}

TEST(ShellGrid, RejectsBadSpecs) {
  EXPECT_THROW(ShellGrid({0.0, 32.0, 64, 8}), Error);
  EXPECT_THROW(ShellGrid({1.0, 8.0, 64, 8}), Error);
  EXPECT_THROW(ShellGrid({1.0, 32.0, 8, 8}), Error);
  EXPECT_THROW(ShellGrid({1.0, 32.0, 64, 0}), Error);
}

TEST(ShellGrid, GeometricRadiiAndPoleFreeAngles) {
  const ShellGrid g({1.0, 32.0, 32, 6});
  const auto& r = g.radii();
  EXPECT_DOUBLE_EQ(r.front(), 1.0);
  EXPECT_NEAR(r.back(), 32.0, 1e-12);
  for (std::size_t i = 2; i < r.size(); ++i) EXPECT_NEAR(r[i] / r[i - 1], r[1] / r[0], 1e-12);
  for (double th : g.thetas()) EXPECT_LT(std::abs(th), 0.5 * kPi - 1e-3);
  EXPECT_EQ(g.size(), g.n_r() * g.n_theta() * g.n_phi());
}

TEST(ShellGrid, QuadratureIntegratesVolume) {
  const ShellGrid g({1.0, 32.0, 64, 4});
  const double exact = 4.0 * kPi / 3.0 * (32.0 * 32.0 * 32.0 - 1.0);
  double trap = 0.0, smooth = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    trap += g.weight(i);
    smooth += g.smooth_weight(i);
  }
  EXPECT_NEAR(trap / exact, 1.0, 1e-2);
  EXPECT_NEAR(smooth / exact, 1.0, 2e-5);
}

TEST(DiscreteOperators, GradientOfConstantIsZero) {
  const ShellGrid g({1.0, 16.0, 24, 4});
  const GridVectorField v = discrete_grad(g, sample_scalar(g, [](const Vec3&) { return 2.5; }));
  EXPECT_LT(v.values.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(DiscreteOperators, GradientOfInverseRadiusConvergesAtOrderTwo) {
  double errs[2];
  int idx = 0;
  for (int n_r : {32, 64}) {
    const ShellGrid g({1.0, 32.0, n_r, 6});
    errs[idx++] = rel_error(g, discrete_grad(g, sample_scalar(g, inv_r)), grad_inv_r);
  }
  EXPECT_LT(errs[1], 1e-2);
  EXPECT_GT(errs[0] / errs[1], 3.0);
}

TEST(DiscreteOperators, DivergenceOfCurlIsSmallButNotZero) {
  const ShellGrid g({1.0, 16.0, 48, 8});
  const auto field = [](const Vec3& x) -> Vec3 { return Vec3(-x.y(), x.x(), 0.0) / (1.0 + x.squaredNorm()); };
  const GridScalarField dc = discrete_div(g, discrete_curl(g, sample_vector(g, field)));
  const GridScalarField d = discrete_div(g, sample_vector(g, [](const Vec3& x) { return x; }));
  EXPECT_LT(dc.values.cwiseAbs().maxCoeff(), 0.1);
  EXPECT_GT(dc.values.cwiseAbs().maxCoeff(), 0.0);
  // div x = 3 up to the angular truncation error
  EXPECT_LT((d.values.array() - 3.0).abs().maxCoeff(), 0.1);
}

TEST(DiscreteOperators, CurlOfGradientVanishesForSmoothPotential) {
  const ShellGrid g({1.0, 16.0, 48, 8});
  const GridVectorField c = discrete_curl(g, discrete_grad(g, sample_scalar(g, inv_r)));
  GridVectorField grad = discrete_grad(g, sample_scalar(g, inv_r));
  EXPECT_LT(std::sqrt(grid_inner(g, c, c) / grid_inner(g, grad, grad)), 5e-2);
}

TEST(PotentialGrid, StaggeredGradientConverges) {
  const auto u = [](const Vec3& x) { return x.z() / std::pow(x.norm(), 3); };
  const auto du = [](const Vec3& x) -> Vec3 {
    const double r = x.norm();
    return Vec3(0, 0, 1) / std::pow(r, 3) - 3.0 * x.z() * x / std::pow(r, 5);
  };
  double errs[2];
  int idx = 0;
  for (int n_r : {32, 64}) {
    const ShellGrid g({1.0, 32.0, n_r, 10});
    errs[idx++] = rel_error(g, potential_grad(g, sample_potential(g, u)), du);
  }
  EXPECT_LT(errs[1], 2e-2);
  EXPECT_GT(errs[0] / errs[1], 1.8);
}

TEST(PotentialGrid, InterpolationIsExactOnSpheres) {
  const ShellGrid g({1.0, 16.0, 20, 4});
  const GridScalarField v = potential_on_nodes(g, sample_potential(g, inv_r));
  for (int node = 0; node < g.size(); ++node) {
    if (g.on_boundary(node)) EXPECT_NEAR(v.values[node], 1.0 / g.radius(node), 1e-15);
  }
}

TEST(Pairing, SmoothRuleIsAccurate) {
  const ShellGrid g({1.0, 32.0, 48, 6});
  // int |x|^-4 over the shell = 4 pi (1 - 1/32)
  const GridVectorField f = sample_vector(g, grad_inv_r);
  EXPECT_NEAR(grid_pairing(g, f, f) / (4.0 * kPi * (1.0 - 1.0 / 32.0)), 1.0, 1e-6);
}

TEST(FieldFile, RoundTripIsExact) {
  const ShellGrid g({1.0, 16.0, 16, 2});
  const GridVectorField v = sample_vector(g, [](const Vec3& x) { return Vec3(std::sin(x.x()), 1.0 / 3.0, x.z()); });
  std::stringstream ss;
  write_grid_field(ss, g, v.values, true);
  const GridFieldFile f = read_grid_field(ss);
  EXPECT_TRUE(f.vector);
  EXPECT_EQ(f.spec.n_r, 16);
  EXPECT_EQ(f.spec.n_ang, 2);
  EXPECT_EQ(f.values, v.values);
}

TEST(FieldFile, ScalarRoundTrip) {
  const ShellGrid g({1.0, 16.0, 16, 1});
  const GridScalarField u = sample_scalar(g, inv_r);
  std::stringstream ss;
  write_grid_field(ss, g, u.values, false);
  const GridFieldFile f = read_grid_field(ss);
  EXPECT_FALSE(f.vector);
  EXPECT_EQ(f.values, u.values);
}

std::string parse_message(const std::string& text) {
  std::istringstream is(text);
  try {
    read_grid_field(is);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Parse);
    return e.what();
  }
  return "";
}

TEST(FieldFile, ErrorsCarryLineNumbers) {
  const ShellGrid g({1.0, 16.0, 16, 1});
  std::stringstream ss;
  write_grid_field(ss, g, sample_vector(g, grad_inv_r).values, true);
  const std::string good = ss.str();

  EXPECT_NE(parse_message("").find("line 1"), std::string::npos);
  EXPECT_NE(parse_message("hello\n").find("line 1"), std::string::npos);

  // break the value column on the fourth line
  std::string bad = good;
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) pos = bad.find('\n', pos) + 1;
  const std::size_t end = bad.find('\n', pos);
  const std::size_t comma = bad.rfind(',', end);
  bad.replace(comma + 1, end - comma - 1, "abc");
  const std::string msg = parse_message(bad);
  EXPECT_NE(msg.find("line 4"), std::string::npos) << msg;

  // truncated file
  const std::string cut = good.substr(0, good.size() / 2);
  EXPECT_NE(parse_message(cut.substr(0, cut.rfind('\n') + 1)).find("rows"), std::string::npos);
}

}  // namespace
}  // namespace exthodge
