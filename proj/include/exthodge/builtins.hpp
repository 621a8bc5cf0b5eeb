// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

// Built-in input fields with known parts.

#pragma once

#include <string>
#include <vector>

#include "exthodge/helmholtz.hpp"

namespace exthodge {

struct ManufacturedField {
  GridVectorField field;
  GridVectorField grad_part;
  GridVectorField sol_part;
  std::vector<TowerIndex> basis;   // empty unless correction content was added
  Eigen::VectorXd coefficients;
  GridVectorField correction_part;
};

// e_r / r^2: the Dirichlet field of the ball for eps = Id, entirely solenoidal.
ManufacturedField dirichlet_ball_field(const ShellGrid& grid);

// grad u0 + sol0, plus sum_i c_i box_eps(eta P_i) when s > 3/2.
//
// u0 vanishes on both spheres unless decaying_potential is set, in which case
// u0 = (1 - r0/r)(r0/r)^3 y_{1,1} is left nonzero at R. sol0 is a tangential
// toroidal field, plus eps^-1 rho^(-2s) curl(h(r) e_3 x x) when s < 3/2.
ManufacturedField manufactured_mix(const ShellGrid& grid, double s, const Medium& eps, const Cutoff& cutoff,
                                   bool decaying_potential = false);

// Known names: "dirichlet-ball", "manufactured-mix". Throws InvalidArgument otherwise.
ManufacturedField builtin_field(const std::string& name, const ShellGrid& grid, double s, const Medium& eps,
                                const Cutoff& cutoff);

}  // namespace exthodge
