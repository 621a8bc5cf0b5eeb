// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "exthodge/builtins.hpp"
#include "exthodge/error.hpp"
#include "exthodge/helmholtz.hpp"
#include "exthodge/weighted.hpp"

namespace exthodge {
namespace {

constexpr double kPi = std::numbers::pi;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::InvalidArgument;
}

double rel(const ShellGrid& g, const GridVectorField& a, const GridVectorField& b, double s = 0.0) {
  const Medium id = Medium::identity();
  return weighted_grid_norm(g, GridVectorField{a.values - b.values}, s, id) / weighted_grid_norm(g, b, s, id);
}

// Vanishes on r = 1 and r = 32.
double bump(const Vec3& x) {
  const double r = x.norm();
  return (r - 1.0) * (32.0 - r) / (r * r * r) * (1.0 + 0.3 * x.z() / r + 0.2 * x.x() / r);
}

TEST(Cutoff, Endpoints) {
  const Cutoff c(CutoffSpec{2.0, 4.0});
  EXPECT_EQ(c(2.0).eta, 0.0);
  EXPECT_EQ(c(4.0).eta, 1.0);
  EXPECT_EQ(c(1.0).eta, 0.0);
  EXPECT_EQ(c(9.0).eta, 1.0);
  EXPECT_NEAR(c(2.0).d1, 0.0, 1e-15);
  EXPECT_NEAR(c(4.0).d1, 0.0, 1e-15);
  EXPECT_NEAR(c(2.0).d2, 0.0, 1e-15);
  EXPECT_NEAR(c(4.0).d2, 0.0, 1e-15);
  EXPECT_NEAR(c(3.0).eta, 0.5, 1e-15);
}

TEST(Cutoff, DerivativesAgreeWithDifferences) {
  const Cutoff c(CutoffSpec{2.0, 4.0});
  const double h = 1e-5;
  double integral = 0.0;
  const int n = 2000;
  for (int i = 0; i < n; ++i) {
    const double r = 2.0 + (i + 0.5) * 2.0 / n;
    integral += c(r).d1 * 2.0 / n;
    EXPECT_NEAR(c(r).d1, (c(r + h).eta - c(r - h).eta) / (2 * h), 1e-8);
    EXPECT_NEAR(c(r).d2, (c(r + h).d1 - c(r - h).d1) / (2 * h), 1e-7);
  }
  EXPECT_NEAR(integral, 1.0, 1e-6);
}

TEST(Medium, Admissibility) {
  EXPECT_EQ(code_of([] { Medium::radial(-1.0, 2.0); }), ErrorCode::InadmissibleMedium);
  EXPECT_EQ(code_of([] { Medium::radial(0.5, 0.4).require_admissible(1.0); }), ErrorCode::InadmissibleMedium);
  EXPECT_NO_THROW(Medium::radial(0.5, 2.0).require_admissible(0.0));
  EXPECT_NO_THROW(Medium::identity().require_admissible(3.0));
  EXPECT_NEAR(Medium::radial(0.5, 2.0).radial_factor(1.0), 1.25, 1e-15);
}

TEST(Decompose, ReconstructsInputExactly) {
  const ShellGrid g({1.0, 32.0, 32, 6});
  const Medium id = Medium::identity();
  const ManufacturedField mf = manufactured_mix(g, 0.0, id, Cutoff(default_cutoff(g.spec())));
  const DecompositionResult res = weighted_decompose(mf.field, 0.0, id, g);
  EXPECT_LT((res.grad_part.values + res.sol_part.values - mf.field.values).cwiseAbs().maxCoeff(),
            1e-12 * mf.field.values.cwiseAbs().maxCoeff());
  EXPECT_LE(res.diagnostics.reconstruction_error, 1e-12);
  EXPECT_FALSE(res.correction.has_value());
}

TEST(Decompose, PartsAreWeightedOrthogonal) {
  const ShellGrid g({1.0, 32.0, 32, 6});
  for (double s : {-1.0, 0.0, 1.0}) {
    const Medium eps = Medium::radial(0.5, 2.0);
    const ManufacturedField mf = manufactured_mix(g, s, eps, Cutoff(default_cutoff(g.spec())));
    const DecompositionResult res = weighted_decompose(mf.field, s, eps, g);
    const double ip = weighted_grid_inner(g, res.grad_part, res.sol_part, s, eps);
    const double nf = weighted_grid_norm(g, mf.field, s, eps);
    EXPECT_LT(std::abs(ip) / (nf * nf), 1e-8) << s;
    EXPECT_LT(res.diagnostics.orthogonality, 1e-8) << s;
  }
}

TEST(Decompose, DiscreteGradientIsFixed) {
  const ShellGrid g({1.0, 32.0, 32, 6});
  const Medium id = Medium::identity();
  const GridVectorField F = potential_grad(g, sample_potential(g, bump));
  const DecompositionResult res = weighted_decompose(F, 0.0, id, g);
  EXPECT_LT(weighted_grid_norm(g, res.sol_part, 0.0, id) / weighted_grid_norm(g, F, 0.0, id), 1e-8);
  // a second pass leaves the gradient part unchanged
  const DecompositionResult again = weighted_decompose(res.grad_part, 0.0, id, g);
  EXPECT_LT(rel(g, again.grad_part, res.grad_part), 1e-8);
}

TEST(Decompose, ManufacturedRecoveryImprovesUnderRefinement) {
  const Medium id = Medium::identity();
  double prev = 1.0;
  for (const GridSpec& spec : {GridSpec{1.0, 32.0, 32, 6}, GridSpec{1.0, 32.0, 64, 8}}) {
    const ShellGrid g(spec);
    const ManufacturedField mf = manufactured_mix(g, 0.0, id, Cutoff(default_cutoff(spec)));
    const DecompositionResult res = weighted_decompose(mf.field, 0.0, id, g);
    const double err = std::max(rel(g, res.grad_part, mf.grad_part), rel(g, res.sol_part, mf.sol_part));
    EXPECT_LT(err, prev);
    prev = err;
  }
  EXPECT_LT(prev, 5e-2);
}

TEST(Decompose, BallDirichletFieldIsSolenoidal) {
  const ShellGrid g({1.0, 32.0, 48, 6});
  const Medium id = Medium::identity();
  const ManufacturedField ball = dirichlet_ball_field(g);
  const DecompositionResult res = weighted_decompose(ball.field, 0.0, id, g);
  EXPECT_LT(weighted_grid_norm(g, res.grad_part, 0.0, id) / weighted_grid_norm(g, ball.field, 0.0, id), 5e-2);
}

TEST(Decompose, RejectsBadInputs) {
  const ShellGrid g({1.0, 32.0, 16, 2});
  const GridVectorField F = zero_vector(g);
  EXPECT_EQ(code_of([&] { weighted_decompose(F, 0.5, Medium::identity(), g); }), ErrorCode::InvalidWeight);
  EXPECT_EQ(code_of([&] { weighted_decompose(F, 1.0, Medium::radial(0.5, 0.4), g); }),
            ErrorCode::InadmissibleMedium);
  GridVectorField short_field{Eigen::VectorXd::Zero(5)};
  EXPECT_EQ(code_of([&] { weighted_decompose(short_field, 0.0, Medium::identity(), g); }),
            ErrorCode::InvalidArgument);
}

TEST(DirichletField, MatchesTruncatedBallSolution) {
  const ShellGrid g({1.0, 32.0, 64, 6});
  const DirichletField D = compute_dirichlet_field(Medium::identity(), g);
  const GridVectorField exact = sample_vector(g, [](const Vec3& x) -> Vec3 {
    const double r = x.norm();
    return -x / (r * r * r) / (1.0 - 1.0 / 32.0);
  });
  EXPECT_LT(rel(g, D.field, exact), 5e-2);
  // potential is 1 on the obstacle
  for (int node = 0; node < g.size(); ++node) {
    if (g.radial_index(node) == 0) EXPECT_NEAR(D.potential.values[node], 1.0, 1e-12);
  }
}

TEST(DirichletField, StaysRadialInRadialMedium) {
  const ShellGrid g({1.0, 32.0, 48, 6});
  const DirichletField D = compute_dirichlet_field(Medium::radial(0.5, 2.0), g);
  double tangential = 0.0, total = 0.0;
  for (int node = 0; node < g.size(); ++node) {
    const Vec3 e = g.position(node).normalized();
    const Vec3 v = D.field.at(node);
    tangential = std::max(tangential, (v - v.dot(e) * e).norm());
    total = std::max(total, v.norm());
  }
  EXPECT_LT(tangential / total, 1e-8);
}

TEST(ProjectOffDirichlet, RemovesTheDirichletComponent) {
  const ShellGrid g({1.0, 32.0, 32, 4});
  const Medium id = Medium::identity();
  const GridVectorField H = dirichlet_ball_field(g).field;
  const GridVectorField zero = project_off_dirichlet(H, id, g, H);
  EXPECT_LT(zero.values.cwiseAbs().maxCoeff(), 1e-14 * H.values.cwiseAbs().maxCoeff());

  const GridVectorField F = sample_vector(g, [](const Vec3& x) -> Vec3 { return Vec3(1.0, x.z(), 0.0) / x.squaredNorm(); });
  const GridVectorField P = project_off_dirichlet(F, id, g, H);
  EXPECT_LT(std::abs(weighted_grid_inner(g, P, H, 0.0, id)) / (weighted_grid_norm(g, F, 0.0, id) * weighted_grid_norm(g, H, 0.0, id)),
            1e-14);
}

TEST(GrowingDirichlet, TangentialTraceVanishesOnUnitSphere) {
  for (int n = 1; n <= 3; ++n) {
    for (int m = 1; m <= 2 * n + 1; ++m) {
      const Vec3 e = Vec3(0.3, -0.5, 0.4).normalized();
      const Vec3 v = growing_dirichlet_field(n, m, e);
      EXPECT_LT((v - v.dot(e) * e).norm(), 1e-14);
    }
  }
}

TEST(GrowingDirichlet, CurlAndDivergenceVanish) {
  const PointField f = [](const Vec3& x) { return FieldValue(growing_dirichlet_field(2, 3, x)); };
  const Vec3 x(1.3, -0.8, 1.1);
  const double scale = growing_dirichlet_field(2, 3, x).norm() / x.norm();
  EXPECT_LT(magnitude(fd_oracle(f, Operator::Curl, x, 1e-3, FdOrder::Eighth)) / scale, 1e-8);
  EXPECT_LT(magnitude(fd_oracle(f, Operator::Div, x, 1e-3, FdOrder::Eighth)) / scale, 1e-8);
}

TEST(GrowingDirichlet, CountMatchesDimension) {
  EXPECT_EQ(count_growing_dirichlet(-3.0), 8);
  EXPECT_EQ(count_growing_dirichlet(-2.0), 3);
  EXPECT_EQ(count_growing_dirichlet(-1.0), 0);
  for (double s : {-1.6, -2.2, -3.0, -4.4, -5.9}) {
    EXPECT_EQ(count_growing_dirichlet(s), dirichlet_dim(s, 1, 1) - 1) << s;
  }
}

TEST(Correction, EmptyBelowThreshold) {
  const ShellGrid g({1.0, 32.0, 16, 2});
  const Cutoff c(default_cutoff(g.spec()));
  EXPECT_EQ(code_of([&] { build_correction_basis(1.0, Medium::identity(), c, g); }), ErrorCode::EmptyBasis);
}

TEST(Correction, FieldsLiveInCutoffAnnulus) {
  const Cutoff c(CutoffSpec{2.0, 4.0});
  const Medium id = Medium::identity();
  for (int m = 1; m <= 3; ++m) {
    const TowerIndex p = TowerIndex::p(Sign::Minus, 1, m);
    EXPECT_LT(correction_field_value(p, id, c, Vec3(1.5, 0.2, 0.1)).norm(), 1e-14);
    EXPECT_LT(correction_field_value(p, id, c, Vec3(3.0, 4.0, 2.0)).norm(), 1e-14);
    EXPECT_GT(correction_field_value(p, id, c, Vec3(1.8, 1.9, 1.0)).norm(), 1e-3);
  }
}

TEST(Correction, BasisAtTwoAndGramRoundTrip) {
  const ShellGrid g({1.0, 32.0, 48, 6});
  const Cutoff c(default_cutoff(g.spec()));
  const CorrectionBasis basis = build_correction_basis(2.0, Medium::identity(), c, g);
  ASSERT_EQ(basis.indices.size(), 3u);
  for (const TowerIndex& t : basis.indices) EXPECT_EQ(t.n, 1);
  for (std::size_t i = 0; i < basis.fields.size(); ++i) {
    const Eigen::VectorXd coeff = extract_correction_coefficients(basis.fields[i], basis, g);
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(3);
    unit[static_cast<Eigen::Index>(i)] = 1.0;
    EXPECT_LT((coeff - unit).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Correction, SingleElementHasNoOtherParts) {
  const ShellGrid g({1.0, 32.0, 48, 6});
  const Cutoff c(default_cutoff(g.spec()));
  const Medium id = Medium::identity();
  const CorrectionBasis basis = build_correction_basis(2.0, id, c, g);
  const DecompositionResult res = decompose_with_correction(basis.fields[1], 2.0, id, g, c);
  ASSERT_TRUE(res.correction.has_value());
  EXPECT_NEAR(res.correction->coefficients[1], 1.0, 1e-10);
  const double n = weighted_grid_norm(g, basis.fields[1], 2.0, id);
  EXPECT_LT(weighted_grid_norm(g, res.grad_part, 2.0, id) / n, 1e-9);
  EXPECT_LT(weighted_grid_norm(g, res.sol_part, 2.0, id) / n, 1e-9);
}

TEST(Correction, RecoversCoefficientsOfMix) {
  const ShellGrid g({1.0, 32.0, 64, 8});
  const Cutoff c(default_cutoff(g.spec()));
  const Medium id = Medium::identity();
  const ManufacturedField mf = manufactured_mix(g, 2.0, id, c, true);
  const DecompositionResult res = decompose_with_correction(mf.field, 2.0, id, g, c);
  ASSERT_TRUE(res.correction.has_value());
  const double err = (res.correction->coefficients - mf.coefficients).cwiseAbs().maxCoeff() /
                     mf.coefficients.cwiseAbs().maxCoeff();
  EXPECT_LT(err, 5e-2);
}

TEST(FluxPairing, LaplacianOfCutoffOverRadius) {
  const FluxPairing fp = flux_pairing(Cutoff(CutoffSpec{2.0, 4.0}));
  EXPECT_NEAR(fp.volume_integral, -4.0 * kPi, 1e-6);
  EXPECT_NEAR(fp.volume_integral, fp.flux_oracle, 1e-6);
}

}  // namespace
}  // namespace exthodge
