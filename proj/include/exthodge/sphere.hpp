// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

// Real spherical harmonics, the polar frame and quadrature on the unit sphere.
//
// Polar coordinates are (r, phi, theta) with theta the latitude:
//   x = r (cos phi cos theta, sin phi cos theta, sin theta),
// so the poles sit at theta = +-pi/2 and are never sampled.

#pragma once

#include <span>
#include <vector>

#include "exthodge/vec.hpp"

namespace exthodge {

struct Direction {
  double phi = 0.0;    // azimuth
  double theta = 0.0;  // latitude in (-pi/2, pi/2)

  Vec3 cartesian() const;
  static Direction from_cartesian(const Vec3& x);
};

// Index of y_{n,m}: m = 1 is zonal, m = 2k carries cos(k phi), m = 2k+1 carries sin(k phi).
struct SphHarmIndex {
  int n = 0;
  int m = 1;

  SphHarmIndex() = default;
  SphHarmIndex(int n_, int m_);

  int azimuthal_order() const { return m / 2; }
  static int count(int n) { return 2 * n + 1; }
};

struct Frame {
  Vec3 e_r;
  Vec3 e_phi;
  Vec3 e_theta;
};

Frame frame(const Direction& dir);

// y together with its partial derivatives in phi and theta.
struct SphHarmJet {
  double value = 0.0;
  double d_phi = 0.0;
  double d_theta = 0.0;
};

double eval_sph_harm(const SphHarmIndex& idx, const Direction& dir);
SphHarmJet eval_sph_harm_jet(const SphHarmIndex& idx, const Direction& dir);

// Y_{n,m} = grad_S y_{n,m} = (1/cos theta) e_phi d_phi y + e_theta d_theta y.
Vec3 eval_sph_harm_surface_grad(const SphHarmIndex& idx, const Direction& dir);

inline double sph_eigenvalue(int n) { return static_cast<double>(n) * (n + 1); }

// Central-difference Laplace-Beltrami of y_{n,m} plus n(n+1) y_{n,m}.
// Throws PoleProximity when dir is within 2h of a pole.
double laplace_beltrami_residual(const SphHarmIndex& idx, const Direction& dir, double h);

// Gauss-Legendre nodes and weights on [-1, 1], ascending.
void gauss_legendre(int count, std::vector<double>& nodes, std::vector<double>& weights);

// Gauss-Legendre in sin(theta) times uniform phi. Node order: theta-major, phi-minor.
struct SphereQuadrature {
  std::vector<Direction> nodes;
  std::vector<double> weights;
  int exact_degree = 0;
  int n_theta = 0;
  int n_phi = 0;
};

SphereQuadrature build_quadrature(int n_max);

using SurfaceFunction = std::function<FieldValue(const Direction&)>;

// sum_i w_i f(x_i) . g(x_i) in node order. Throws KindMismatch if the kinds differ.
double surface_inner_product(const SurfaceFunction& f, const SurfaceFunction& g,
                             const SphereQuadrature& quad);

}  // namespace exthodge
