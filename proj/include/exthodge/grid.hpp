// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

// Truncated exterior shell r0 <= r <= R discretized as a geometric radial grid
// times a pole-free (phi, theta) tensor grid, fields sampled on it, and plain
// second-order finite-difference grad/div/curl.

#pragma once

#include <Eigen/SparseCore>
#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "exthodge/vec.hpp"

namespace exthodge {

struct GridSpec {
  double r0 = 1.0;
  double R = 32.0;
  int n_r = 64;
  int n_ang = 8;
};

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

class ShellGrid {
 public:
  // Throws InvalidArgument unless r0 > 0, R >= 16 r0, n_r >= 16 and n_ang >= 1.
  explicit ShellGrid(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  int n_r() const { return spec_.n_r; }
  int n_theta() const { return static_cast<int>(theta_.size()); }
  int n_phi() const { return static_cast<int>(phi_.size()); }
  int size() const { return n_r() * n_theta() * n_phi(); }

  int index(int i, int j, int k) const { return (i * n_theta() + j) * n_phi() + k; }
  int radial_index(int node) const { return node / (n_theta() * n_phi()); }

  const std::vector<double>& radii() const { return r_; }
  const std::vector<double>& thetas() const { return theta_; }
  const std::vector<double>& phis() const { return phi_; }

  double radius(int node) const { return r_[static_cast<std::size_t>(radial_index(node))]; }
  Vec3 position(int node) const { return pos_[static_cast<std::size_t>(node)]; }
  bool on_boundary(int node) const {
    const int i = radial_index(node);
    return i == 0 || i == n_r() - 1;
  }

  // Volume quadrature weight: radial trapezoid in r^2 dr times the angular weight.
  double weight(int node) const { return weight_[static_cast<std::size_t>(node)]; }
  // Fourth-order alternative: extended Simpson in log r with end corrections.
  double smooth_weight(int node) const { return smooth_weight_[static_cast<std::size_t>(node)]; }

  // d/dx, d/dy, d/dz as sparse N x N matrices.
  const SparseMatrix& partial(int axis) const { return partial_[static_cast<std::size_t>(axis)]; }
  // Stacked gradient, 3N x N, rows interleaved as 3 * node + component.
  const SparseMatrix& gradient() const { return grad_; }

  // Potentials for the decomposition live on a radially staggered grid: level 0
  // is r0, levels 1..n_r-1 are the geometric midpoints of consecutive radii and
  // level n_r is R. Index (level * n_theta + j) * n_phi + k.
  int potential_size() const { return (n_r() + 1) * n_theta() * n_phi(); }
  const std::vector<double>& potential_radii() const { return level_r_; }
  Vec3 potential_position(int level, int j, int k) const;
  // 3N x M gradient at the nodes, compact in r.
  const SparseMatrix& potential_gradient() const { return pgrad_; }
  // N x M interpolation to the nodes.
  const SparseMatrix& potential_to_nodes() const { return pinterp_; }

 private:
  GridSpec spec_;
  std::vector<double> r_, theta_, phi_, theta_weight_, level_r_;
  std::vector<Vec3> pos_;
  std::vector<double> weight_, smooth_weight_;
  std::array<SparseMatrix, 3> partial_;
  SparseMatrix grad_, pgrad_, pinterp_;

  void build_operators();
  void build_potential_operators();
};

// Scalar samples, one per node.
struct GridScalarField {
  Eigen::VectorXd values;
};

// Cartesian vector samples, interleaved as 3 * node + component.
struct GridVectorField {
  Eigen::VectorXd values;

  Vec3 at(int node) const { return values.segment<3>(3 * node); }
};

// Samples on the staggered potential grid.
struct GridPotential {
  Eigen::VectorXd values;
};

GridPotential sample_potential(const ShellGrid& grid, const std::function<double(const Vec3&)>& f);
GridVectorField potential_grad(const ShellGrid& grid, const GridPotential& p);
GridScalarField potential_on_nodes(const ShellGrid& grid, const GridPotential& p);

GridScalarField sample_scalar(const ShellGrid& grid, const std::function<double(const Vec3&)>& f);
GridVectorField sample_vector(const ShellGrid& grid, const std::function<Vec3(const Vec3&)>& f);
GridVectorField zero_vector(const ShellGrid& grid);

GridVectorField discrete_grad(const ShellGrid& grid, const GridScalarField& u);
GridScalarField discrete_div(const ShellGrid& grid, const GridVectorField& v);
GridVectorField discrete_curl(const ShellGrid& grid, const GridVectorField& v);

// sum_node weight * f . g
double grid_inner(const ShellGrid& grid, const GridVectorField& f, const GridVectorField& g);
double grid_integral(const ShellGrid& grid, const GridScalarField& f);
// sum_node smooth_weight * f . g, for smooth integrands.
double grid_pairing(const ShellGrid& grid, const GridVectorField& f, const GridVectorField& g);

// Column format: a metadata line, a column header, one row per node in grid order.
struct GridFieldFile {
  GridSpec spec;
  bool vector = true;
  Eigen::VectorXd values;  // N or 3N entries
};

void write_grid_field(std::ostream& os, const ShellGrid& grid, const Eigen::VectorXd& values, bool vector);
// Throws Parse with the offending line number.
GridFieldFile read_grid_field(std::istream& is);

}  // namespace exthodge
