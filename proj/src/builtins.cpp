// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

#include "exthodge/builtins.hpp"

#include <cmath>

#include "exthodge/error.hpp"
#include "exthodge/sphere.hpp"
#include "exthodge/weighted.hpp"

namespace exthodge {

ManufacturedField dirichlet_ball_field(const ShellGrid& grid) {
  ManufacturedField out;
  out.field = sample_vector(grid, [](const Vec3& x) -> Vec3 { return x / std::pow(x.norm(), 3); });
  out.sol_part = out.field;
  out.grad_part = zero_vector(grid);
  out.correction_part = zero_vector(grid);
  return out;
}

ManufacturedField manufactured_mix(const ShellGrid& grid, double s, const Medium& eps, const Cutoff& cutoff,
                                   bool decaying_potential) {
  WeightContext{s, 3}.require_valid();
  const double r0 = grid.spec().r0, R = grid.spec().R;
  const bool with_correction = s > 1.5;

  // u0 = b(r) a(x / r), grad u0 = b' a e_r + (b / r) grad_S a.
  auto grad_u0 = [=](const Vec3& x) -> Vec3 {
    const double r = x.norm();
    const Vec3 e = x / r;
    if (decaying_potential) {
      const double k = std::sqrt(3.0 / (4.0 * std::acos(-1.0)));  // y_{1,1} = k x_3 / r
      const double q = r0 / r;
      const double b = (1.0 - q) * q * q * q;
      const double db = (q * q * q * q - 3.0 * (1.0 - q) * q * q * q) / r;
      const Vec3 grad_s = k * (Vec3(0, 0, 1) - e[2] * e);
      return db * k * e[2] * e + (b / r) * grad_s;
    }
    // b = q (1 - q)(1 - r / R) = q - q^2 - (1 - q) r0 / R, q = r0 / r
    const double q = r0 / r;
    const double b = q * (1.0 - q) * (1.0 - r / R);
    const double db = -(q / r) * (1.0 - 2.0 * q + r0 / R);
    const double a = 1.0 + 0.5 * e[2] + 0.5 * e[0];
    const Vec3 grad_s = 0.5 * (Vec3(0, 0, 1) - e[2] * e) + 0.5 * (Vec3(1, 0, 0) - e[0] * e);
    return db * a * e + (b / r) * grad_s;
  };

  // f(r) e_r x Y_{1,3} with Y_{1,3} the surface gradient of y_{1,3}.
  auto toroidal = [=](const Vec3& x) -> Vec3 {
    const double r = x.norm();
    const Direction dir = Direction::from_cartesian(x);
    const Vec3 Y = eval_sph_harm_surface_grad({1, 3}, dir);
    const double q = r0 / r;
    return q * q * (x / r).cross(Y);
  };

  // eps^-1 rho^(-2s) curl(h e_3 x x), h = (r0 / r)^3:
  // curl(h e_3 x x) = 2 h e_3 + (h' / r)(r^2 e_3 - x_3 x).
  auto poloidal = [=](const Vec3& x) -> Vec3 {
    const double r = x.norm();
    const double h = std::pow(r0 / r, 3), dh = -3.0 * h / r;
    const Vec3 c = 2.0 * h * Vec3(0, 0, 1) + (dh / r) * (r * r * Vec3(0, 0, 1) - x[2] * x);
    return std::pow(1.0 + r * r, -s) * eps.at(x).inverse() * c;
  };

  ManufacturedField out;
  out.grad_part = sample_vector(grid, grad_u0);
  out.sol_part = sample_vector(grid, [&](const Vec3& x) -> Vec3 {
    return with_correction ? toroidal(x) : Vec3(toroidal(x) + poloidal(x));
  });
  out.correction_part = zero_vector(grid);
  if (with_correction) {
    const CorrectionBasis basis = build_correction_basis(s, eps, cutoff, grid);
    out.basis = basis.indices;
    out.coefficients.resize(static_cast<Eigen::Index>(basis.fields.size()));
    for (std::size_t i = 0; i < basis.fields.size(); ++i) {
      const double c = 1.0 + 0.25 * static_cast<double>(i);
      out.coefficients[static_cast<Eigen::Index>(i)] = c;
      out.correction_part.values += c * basis.fields[i].values;
    }
  }
  out.field.values = out.grad_part.values + out.sol_part.values + out.correction_part.values;
  return out;
}

ManufacturedField builtin_field(const std::string& name, const ShellGrid& grid, double s, const Medium& eps,
                                const Cutoff& cutoff) {
  if (name == "dirichlet-ball") return dirichlet_ball_field(grid);
  if (name == "manufactured-mix") return manufactured_mix(grid, s, eps, cutoff);
  throw Error(ErrorCode::InvalidArgument, "unknown builtin field '" + name + "'");
}

}  // namespace exthodge
