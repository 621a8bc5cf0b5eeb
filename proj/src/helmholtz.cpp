// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

#include "exthodge/helmholtz.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/LU>
#include <cmath>
#include <numbers>
#include <sstream>

#include "exthodge/error.hpp"
#include "exthodge/sphere.hpp"
#include "exthodge/weighted.hpp"

namespace exthodge {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

Cutoff::Cutoff(const CutoffSpec& spec) : spec_(spec) {
  if (!(spec.r1 > 0.0) || !(spec.r2 > spec.r1)) {
    throw Error(ErrorCode::InvalidArgument, "cutoff needs 0 < r1 < r2");
  }
}

CutoffValue Cutoff::operator()(double r) const {
  const double width = spec_.r2 - spec_.r1;
  if (r <= spec_.r1) return {0.0, 0.0, 0.0};
  if (r >= spec_.r2) return {1.0, 0.0, 0.0};
  const double t = (r - spec_.r1) / width;
  const double u = 1.0 - t;
  return {t * t * t * (10.0 - 15.0 * t + 6.0 * t * t), 30.0 * t * t * u * u / width,
          60.0 * t * u * (1.0 - 2.0 * t) / (width * width)};
}

Cutoff make_cutoff(const CutoffSpec& spec) { return Cutoff(spec); }

CutoffSpec default_cutoff(const GridSpec& grid) { return {2.0 * grid.r0, 4.0 * grid.r0}; }

Medium Medium::identity() { return Medium(); }

Medium Medium::radial(double c, double tau) {
  if (!(c > -1.0) || !std::isfinite(c)) throw Error(ErrorCode::InadmissibleMedium, "radial medium needs c > -1");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw Error(ErrorCode::InadmissibleMedium, "radial medium needs tau > 0");
  Medium m;
  m.kind_ = Kind::Radial;
  m.c_ = c;
  m.tau_ = tau;
  return m;
}

Medium Medium::general(MatrixField eps, double tau) {
  if (!eps) throw Error(ErrorCode::InvalidArgument, "general medium needs a matrix field");
  Medium m;
  m.kind_ = Kind::General;
  m.tau_ = tau;
  m.eps_ = std::move(eps);
  return m;
}

std::string Medium::describe() const {
  switch (kind_) {
    case Kind::Identity: return "identity";
    case Kind::Radial: return "radial:" + num(c_) + "," + num(tau_);
    case Kind::General: return "general";
  }
  return "?";
}

double Medium::radial_factor(double r) const {
  if (kind_ != Kind::Radial) return 1.0;
  return 1.0 + c_ * std::pow(1.0 + r * r, -0.5 * tau_);
}

Mat3 Medium::at(const Vec3& x) const {
  if (kind_ == Kind::General) {
    const Mat3 e = eps_(x);
    if (!e.allFinite() || (e - e.transpose()).norm() > 1e-12 * e.norm()) {
      throw Error(ErrorCode::InadmissibleMedium, "medium is not symmetric at a sample point");
    }
    if (Eigen::SelfAdjointEigenSolver<Mat3>(e, Eigen::EigenvaluesOnly).eigenvalues()[0] <= 0.0) {
      throw Error(ErrorCode::InadmissibleMedium, "medium is not positive definite at a sample point");
    }
    return e;
  }
  return radial_factor(x.norm()) * Mat3::Identity();
}

void Medium::require_admissible(double s) const {
  if (kind_ == Kind::Identity) return;
  if (!check_admissibility(tau_, s, AdmissibilityRole::Epsilon)) {
    throw Error(ErrorCode::InadmissibleMedium,
                "decay rate tau = " + num(tau_) + " is not admissible for s = " + num(s));
  }
}

namespace {

void check_field(const ShellGrid& grid, const GridVectorField& F) {
  if (F.values.size() != 3 * grid.size()) throw Error(ErrorCode::InvalidArgument, "field size does not match grid");
  if (!F.values.allFinite()) throw Error(ErrorCode::InvalidArgument, "field has non-finite samples");
}

// Block diagonal w rho^(2s) eps, 3N x 3N.
SparseMatrix weight_matrix(const ShellGrid& grid, double s, const Medium& eps) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(eps.kind() == Medium::Kind::General ? 9 : 3) * grid.size());
  for (int node = 0; node < grid.size(); ++node) {
    const double r = grid.radius(node);
    const double w = grid.weight(node) * std::pow(1.0 + r * r, s);
    if (eps.kind() == Medium::Kind::General) {
      const Mat3 e = eps.at(grid.position(node));
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) trip.emplace_back(3 * node + a, 3 * node + b, w * e(a, b));
      }
    } else {
      const double f = w * eps.radial_factor(r);
      for (int a = 0; a < 3; ++a) trip.emplace_back(3 * node + a, 3 * node + a, f);
    }
  }
  SparseMatrix W(3 * grid.size(), 3 * grid.size());
  W.setFromTriplets(trip.begin(), trip.end());
  return W;
}

// Potential levels strictly between the spheres (the potential is prescribed on both).
SparseMatrix interior_selection(const ShellGrid& grid) {
  const int per_shell = grid.n_theta() * grid.n_phi();
  const int first = per_shell, count = (grid.n_r() - 1) * per_shell;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(count));
  for (int c = 0; c < count; ++c) trip.emplace_back(first + c, c, 1.0);
  SparseMatrix S(grid.potential_size(), count);
  S.setFromTriplets(trip.begin(), trip.end());
  return S;
}

struct SolveStats {
  int iterations = 0;
  double residual = 0.0;
};

Eigen::VectorXd solve_spd(const SparseMatrix& A, const Eigen::VectorXd& b, double tol, SolveStats& stats) {
  Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper, Eigen::DiagonalPreconditioner<double>> cg;
  cg.setTolerance(tol);
  cg.setMaxIterations(static_cast<Eigen::Index>(50.0 * std::sqrt(static_cast<double>(A.rows()))));
  cg.compute(A);
  Eigen::VectorXd x = cg.solve(b);
  stats.iterations = static_cast<int>(cg.iterations());
  stats.residual = cg.error();
  if (cg.info() != Eigen::Success || !x.allFinite()) {
    throw Error(ErrorCode::SolverDiverged, "conjugate gradients stopped after " + std::to_string(stats.iterations) +
                                               " iterations at relative residual " + num(stats.residual));
  }
  return x;
}

double max_abs(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

double weighted_grid_inner(const ShellGrid& grid, const GridVectorField& F, const GridVectorField& G, double s,
                           const Medium& eps) {
  check_field(grid, F);
  check_field(grid, G);
  return F.values.dot(weight_matrix(grid, s, eps) * G.values);
}

double weighted_grid_norm(const ShellGrid& grid, const GridVectorField& F, double s, const Medium& eps) {
  return std::sqrt(std::max(0.0, weighted_grid_inner(grid, F, F, s, eps)));
}

DecompositionResult weighted_decompose(const GridVectorField& F, double s, const Medium& eps, const ShellGrid& grid,
                                       double tol) {
  WeightContext{s, 3}.require_valid();
  eps.require_admissible(s);
  check_field(grid, F);
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");

  const SparseMatrix W = weight_matrix(grid, s, eps);
  const SparseMatrix S = interior_selection(grid);
  const SparseMatrix Gi = grid.potential_gradient() * S;
  const SparseMatrix GiT = Gi.transpose();
  const SparseMatrix A = GiT * W * Gi;
  const Eigen::VectorXd WF = W * F.values;
  const Eigen::VectorXd b = GiT * WF;

  // Residuals are measured in the Jacobi-scaled dual norm relative to ||F||_W,
  // which stays meaningful when F is already weighted-solenoidal.
  const Eigen::VectorXd inv_sqrt_diag = A.diagonal().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  const double norm2 = F.values.dot(WF);
  const double fnorm = std::sqrt(std::max(0.0, norm2));
  const auto dual_norm = [&](const Eigen::VectorXd& r) { return r.cwiseProduct(inv_sqrt_diag).norm(); };

  SolveStats stats;
  Eigen::VectorXd ui = Eigen::VectorXd::Zero(A.rows());
  if (dual_norm(b) > 1e-3 * tol * fnorm) ui = solve_spd(A, b, tol, stats);

  DecompositionResult res;
  res.staggered_potential.values = S * ui;
  res.potential = potential_on_nodes(grid, res.staggered_potential);
  res.grad_part.values = grid.potential_gradient() * res.staggered_potential.values;
  res.sol_part.values = F.values - res.grad_part.values;

  Diagnostics& d = res.diagnostics;
  d.iterations = stats.iterations;
  d.solver_residual = stats.residual;
  d.orthogonality = norm2 > 0.0 ? std::abs(res.grad_part.values.dot(W * res.sol_part.values)) / norm2 : 0.0;
  d.weak_div_residual = fnorm > 0.0 ? dual_norm(GiT * (W * res.sol_part.values)) / fnorm : 0.0;
  const double fmax = max_abs(F.values);
  d.reconstruction_error = fmax > 0.0 ? max_abs(res.grad_part.values + res.sol_part.values - F.values) / fmax : 0.0;
  return res;
}

DirichletField compute_dirichlet_field(const Medium& eps, const ShellGrid& grid, double tol) {
  eps.require_admissible(0.0);
  const SparseMatrix W = weight_matrix(grid, 0.0, eps);
  const SparseMatrix S = interior_selection(grid);
  const SparseMatrix Gi = grid.potential_gradient() * S;
  const SparseMatrix GiT = Gi.transpose();
  const SparseMatrix A = GiT * W * Gi;

  Eigen::VectorXd boundary = Eigen::VectorXd::Zero(grid.potential_size());
  boundary.head(grid.n_theta() * grid.n_phi()).setOnes();
  const Eigen::VectorXd b = -(GiT * (W * (grid.potential_gradient() * boundary)));

  SolveStats stats;
  const Eigen::VectorXd vi = solve_spd(A, b, tol, stats);
  DirichletField out;
  const GridPotential v{boundary + S * vi};
  out.potential = potential_on_nodes(grid, v);
  out.field = potential_grad(grid, v);
  out.iterations = stats.iterations;
  return out;
}

Vec3 growing_dirichlet_field(int n, int m, const Vec3& point) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "growing Dirichlet fields need n >= 1");
  if (point.norm() < 1.0 - 1e-12) throw Error(ErrorCode::InvalidArgument, "point lies inside the unit ball");
  const Vec3 grow = std::get<Vec3>(eval_tower(TowerIndex::u(Sign::Plus, -1, n, m), point));
  const Vec3 decay = std::get<Vec3>(eval_tower(TowerIndex::u(Sign::Minus, -1, n, m), point));
  return grow - decay;
}

int count_growing_dirichlet(double s) {
  WeightContext{s, 3}.require_valid();
  int count = 0;
  for (int n = 1; n - 1 < -s - 1.5; ++n) count += 2 * n + 1;
  return count;
}

Vec3 correction_field_value(const TowerIndex& p, const Medium& eps, const Cutoff& cutoff, const Vec3& x) {
  if (p.family != Family::P || p.sign != Sign::Minus) {
    throw Error(ErrorCode::InvalidArgument, "correction fields are built on decaying potential fields");
  }
  p.validate();
  const double r = x.norm();
  if (!(r > 0.0)) throw Error(ErrorCode::OriginSingular, "correction fields are singular at the origin");
  const Direction dir = Direction::from_cartesian(x);
  const Frame f = frame(dir);
  const SphHarmJet jet = eval_sph_harm_jet(p.harmonic(), dir);
  const double y = jet.value;
  const Vec3 Y = (jet.d_phi / std::cos(dir.theta)) * f.e_phi + jet.d_theta * f.e_theta;

  // P = g(r) (alpha y e_r + beta Y) with g = (2 xi^1 / n) r^-n, alpha = n, beta = 1.
  const int n = p.n;
  const double lambda = sph_eigenvalue(n);
  const double alpha = n, beta = 1.0;
  const double g = 2.0 * xi_coeff(Sign::Minus, n, 1) / n * std::pow(r, -n);
  const double g1 = -n * g / r;
  const double g2 = n * (n + 1.0) * g / (r * r);
  const CutoffValue eta = cutoff(r);

  const Vec3 P = g * (alpha * y * f.e_r + beta * Y);
  // Delta(eta P) for P harmonic and homogeneous of degree -n.
  const Vec3 lap = (eta.d2 + 2.0 * eta.d1 / r - 2.0 * n * eta.d1 / r) * P;
  if (eps.kind() == Medium::Kind::Identity) return lap;

  // div(eta P) = q(r) y, grad div(eta P) = q' y e_r + (q / r) Y.
  const double eg = eta.eta * g, eg1 = eta.d1 * g + eta.eta * g1;
  const double eg2 = eta.d2 * g + 2.0 * eta.d1 * g1 + eta.eta * g2;
  const double q = alpha * eg1 + 2.0 * alpha * eg / r - lambda * beta * eg / r;
  const double q1 = alpha * eg2 + 2.0 * alpha * (eg1 / r - eg / (r * r)) - lambda * beta * (eg1 / r - eg / (r * r));
  const Vec3 grad_div = q1 * y * f.e_r + (q / r) * Y;
  const Mat3 inv = eps.at(x).inverse();
  return lap + (Mat3::Identity() - inv) * (grad_div - lap);
}

CorrectionBasis build_correction_basis(double s, const Medium& eps, const Cutoff& cutoff, const ShellGrid& grid) {
  WeightContext{s, 3}.require_valid();
  CorrectionBasis basis;
  basis.s = s;
  basis.indices = enumerate_basis({BasisFamily::PBar, s - 2.0, 0});
  if (basis.indices.empty()) {
    throw Error(ErrorCode::EmptyBasis, "the correction space is trivial for s = " + num(s));
  }
  for (const TowerIndex& p : basis.indices) {
    basis.fields.push_back(
        sample_vector(grid, [&](const Vec3& x) { return correction_field_value(p, eps, cutoff, x); }));
    const TowerIndex w = TowerIndex::u(Sign::Plus, -1, p.n, p.m);
    basis.witnesses.push_back(sample_vector(grid, [&](const Vec3& x) { return std::get<Vec3>(eval_tower(w, x)); }));
  }
  const auto size = static_cast<Eigen::Index>(basis.indices.size());
  basis.gram.resize(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) {
      basis.gram(i, j) = grid_pairing(grid, basis.fields[static_cast<std::size_t>(i)],
                                    basis.witnesses[static_cast<std::size_t>(j)]);
    }
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis.gram);
  if (!(lu.rcond() > 1e-12)) {
    throw Error(ErrorCode::SingularGram, "pairing matrix is singular (rcond " + num(lu.rcond()) + ")");
  }
  return basis;
}

Eigen::VectorXd extract_correction_coefficients(const GridVectorField& F, const CorrectionBasis& basis,
                                                const ShellGrid& grid) {
  check_field(grid, F);
  Eigen::VectorXd pairing(static_cast<Eigen::Index>(basis.witnesses.size()));
  for (std::size_t j = 0; j < basis.witnesses.size(); ++j) {
    pairing[static_cast<Eigen::Index>(j)] = grid_pairing(grid, F, basis.witnesses[j]);
  }
  // sum_i c_i gram(i, j) = pairing(j)
  return basis.gram.transpose().partialPivLu().solve(pairing);
}

DecompositionResult decompose_with_correction(const GridVectorField& F, double s, const Medium& eps,
                                              const ShellGrid& grid, const Cutoff& cutoff, double tol) {
  WeightContext{s, 3}.require_valid();
  if (!(s > 1.5)) throw Error(ErrorCode::EmptyBasis, "the correction space is trivial for s <= 3/2");
  eps.require_admissible(s);
  check_field(grid, F);
  const CorrectionBasis basis = build_correction_basis(s, eps, cutoff, grid);
  CorrectionPart corr;
  corr.basis = basis.indices;
  corr.coefficients = extract_correction_coefficients(F, basis, grid);
  corr.field = zero_vector(grid);
  for (std::size_t i = 0; i < basis.fields.size(); ++i) {
    corr.field.values += corr.coefficients[static_cast<Eigen::Index>(i)] * basis.fields[i].values;
  }
  DecompositionResult res = weighted_decompose({F.values - corr.field.values}, s, eps, grid, tol);
  const double fmax = max_abs(F.values);
  res.diagnostics.reconstruction_error =
      fmax > 0.0 ? max_abs(res.grad_part.values + res.sol_part.values + corr.field.values - F.values) / fmax : 0.0;
  res.correction = std::move(corr);
  return res;
}

GridVectorField project_off_dirichlet(const GridVectorField& F, const Medium& eps, const ShellGrid& grid,
                                      const GridVectorField& H) {
  const double hh = weighted_grid_inner(grid, H, H, 0.0, eps);
  if (!(hh > 0.0)) throw Error(ErrorCode::InvalidArgument, "Dirichlet field is zero");
  const double fh = weighted_grid_inner(grid, F, H, 0.0, eps);
  return {F.values - (fh / hh) * H.values};
}

FluxPairing flux_pairing(const Cutoff& cutoff) {
  const double r1 = cutoff.spec().r1, r2 = cutoff.spec().r2;
  std::vector<double> t, w;
  gauss_legendre(48, t, w);
  // f = eta / r, Delta f = f'' + 2 f' / r
  auto df = [&](double r, const CutoffValue& e) { return e.d1 / r - e.eta / (r * r); };
  double volume = 0.0;
  const double mid = 0.5 * (r1 + r2), half = 0.5 * (r2 - r1);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = mid + half * t[i];
    const CutoffValue e = cutoff(r);
    const double d2f = e.d2 / r - 2.0 * e.d1 / (r * r) + 2.0 * e.eta / (r * r * r);
    volume += half * w[i] * r * r * (d2f + 2.0 * df(r, e) / r);
  }
  FluxPairing out;
  out.volume_integral = 4.0 * kPi * volume;
  out.flux_oracle = 4.0 * kPi * (r2 * r2 * df(r2, cutoff(r2)) - r1 * r1 * df(r1, cutoff(r1)));
  return out;
}

}  // namespace exthodge
