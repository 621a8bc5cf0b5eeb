// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

// Weighted Helmholtz decomposition on a truncated exterior shell.
//
// weighted_decompose finds u with u = 0 on both bounding spheres minimizing
// ||F - grad u|| in the <eps rho^(2s) ., .> norm, i.e. the discrete weak problem
//   <eps rho^(2s) grad u, grad phi> = <eps rho^(2s) F, grad phi>.
// For s > 3/2 the finite-dimensional correction space spanned by
// (grad div - eps^-1 curl curl)(eta P), P decaying potential towers, is split
// off first by pairing against the witnesses grad(r^n y_{n,m}).

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "exthodge/grid.hpp"
#include "exthodge/towers.hpp"

namespace exthodge {

struct CutoffSpec {
  double r1 = 2.0;
  double r2 = 4.0;
};

struct CutoffValue {
  double eta = 0.0;
  double d1 = 0.0;  // d eta / dr
  double d2 = 0.0;  // d^2 eta / dr^2
};

// Quintic smoothstep from 0 at r1 to 1 at r2.
class Cutoff {
 public:
  explicit Cutoff(const CutoffSpec& spec);
  const CutoffSpec& spec() const { return spec_; }
  CutoffValue operator()(double r) const;

 private:
  CutoffSpec spec_;
};

Cutoff make_cutoff(const CutoffSpec& spec);
// r1 = 2 r0, r2 = 4 r0.
CutoffSpec default_cutoff(const GridSpec& grid);

class Medium {
 public:
  enum class Kind { Identity, Radial, General };
  using MatrixField = std::function<Mat3(const Vec3&)>;

  static Medium identity();
  // eps = (1 + c (1 + r^2)^(-tau/2)) Id; needs c > -1 and tau > 0.
  static Medium radial(double c, double tau);
  static Medium general(MatrixField eps, double tau);

  Kind kind() const { return kind_; }
  double c() const { return c_; }
  double tau() const { return tau_; }
  std::string describe() const;

  Mat3 at(const Vec3& x) const;
  // The scalar factor of a radial medium (1 for the identity).
  double radial_factor(double r) const;

  // Throws InadmissibleMedium unless the decay rate suits the weight s.
  void require_admissible(double s) const;

 private:
  Kind kind_ = Kind::Identity;
  double c_ = 0.0;
  double tau_ = 0.0;
  MatrixField eps_;
};

struct Diagnostics {
  double orthogonality = 0.0;        // |<eps rho^2s grad, sol>| / ||F||_s^2
  double weak_div_residual = 0.0;    // ||D^-1/2 G^T W sol|| / ||F||_W, D = diag(G^T W G)
  double reconstruction_error = 0.0; // max |grad + sol + corr - F| / max |F|
  double solver_residual = 0.0;
  int iterations = 0;
};

struct CorrectionPart {
  std::vector<TowerIndex> basis;
  Eigen::VectorXd coefficients;
  GridVectorField field;
};

struct DecompositionResult {
  GridVectorField grad_part;
  GridVectorField sol_part;
  std::optional<CorrectionPart> correction;
  GridPotential staggered_potential;
  GridScalarField potential;  // interpolated to the nodes
  Diagnostics diagnostics;
};

// sqrt(sum_node w rho^(2s) F . eps F)
double weighted_grid_norm(const ShellGrid& grid, const GridVectorField& F, double s, const Medium& eps);
// sum_node w rho^(2s) F . eps G
double weighted_grid_inner(const ShellGrid& grid, const GridVectorField& F, const GridVectorField& G, double s,
                           const Medium& eps);

// Throws InvalidWeight, InadmissibleMedium, SolverDiverged.
DecompositionResult weighted_decompose(const GridVectorField& F, double s, const Medium& eps, const ShellGrid& grid,
                                       double tol = 1e-10);

struct DirichletField {
  GridVectorField field;
  GridScalarField potential;
  int iterations = 0;
};

// E = grad v with div(eps grad v) = 0, v = 1 at r0 and v = 0 at R.
DirichletField compute_dirichlet_field(const Medium& eps, const ShellGrid& grid, double tol = 1e-10);

// grad((r^n - r^(-n-1)) y_{n,m}) for the unit ball. Needs n >= 1 and |x| >= 1.
Vec3 growing_dirichlet_field(int n, int m, const Vec3& point);

// Number of growing Dirichlet fields in L^2_s: orders n >= 1 with n - 1 < -s - 3/2.
int count_growing_dirichlet(double s);

struct CorrectionBasis {
  double s = 0.0;
  std::vector<TowerIndex> indices;       // P_{-,n,m} spanning Pbar_{s-2}
  std::vector<GridVectorField> fields;   // box_eps(eta P)
  std::vector<GridVectorField> witnesses;
  Eigen::MatrixXd gram;                  // gram(i, j) = <fields[i], witnesses[j]>
};

// Throws EmptyBasis when Pbar_{s-2} = {0}, SingularGram if the pairing degenerates.
CorrectionBasis build_correction_basis(double s, const Medium& eps, const Cutoff& cutoff, const ShellGrid& grid);

// (box_eps(eta P))(x) evaluated analytically.
Vec3 correction_field_value(const TowerIndex& p, const Medium& eps, const Cutoff& cutoff, const Vec3& x);

Eigen::VectorXd extract_correction_coefficients(const GridVectorField& F, const CorrectionBasis& basis,
                                                const ShellGrid& grid);

DecompositionResult decompose_with_correction(const GridVectorField& F, double s, const Medium& eps,
                                              const ShellGrid& grid, const Cutoff& cutoff, double tol = 1e-10);

// F - (<eps F, H> / <eps H, H>) H
GridVectorField project_off_dirichlet(const GridVectorField& F, const Medium& eps, const ShellGrid& grid,
                                      const GridVectorField& H);

// int Delta(eta / r) dx over the cutoff annulus, and the same quantity as the
// flux of grad(eta / r) through the bounding spheres.
struct FluxPairing {
  double volume_integral = 0.0;
  double flux_oracle = 0.0;
};

FluxPairing flux_pairing(const Cutoff& cutoff);

}  // namespace exthodge
