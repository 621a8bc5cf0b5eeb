// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

// Explicit tower functions and fields built on one spherical harmonic.
//
//   z^k      = xi^k r^(theta+2k) y                       (Delta-tower, family Z)
//   U^{2k}   = z^k,   U^{2k-1} = grad z^k                 (div grad-tower)
//   V^{2k}   = r e_r x grad z^k,  V^{2k-1} = -curl V^{2k} (curl curl-tower)
//   P        = U^1 - V^1 / (1 + theta)
//
// with theta = n for the growing sign and -n-1 for the decaying sign. The
// ground floors satisfy V^{-1} = (1 + theta) U^{-1}; P is normalized with that
// constant so that it is harmonic.

#pragma once

#include <optional>
#include <string>

#include "exthodge/sphere.hpp"
#include "exthodge/vec.hpp"

namespace exthodge {

enum class Family { U, V, P, Z, ExceptionalU };
enum class Sign { Plus, Minus };

const char* family_name(Family f);
inline int sign_factor(Sign s) { return s == Sign::Plus ? 1 : -1; }

struct TowerIndex {
  Family family = Family::U;
  Sign sign = Sign::Minus;
  int floor = 0;  // tower floor; the power k for family Z; unused for P
  int n = 0;
  int m = 1;

  static TowerIndex u(Sign sign, int floor, int n, int m);
  static TowerIndex v(Sign sign, int floor, int n, int m);
  static TowerIndex p(Sign sign, int n, int m);
  static TowerIndex z(Sign sign, int k, int n, int m);
  static TowerIndex exceptional(Sign sign, int floor);

  // Throws InvalidArgument if the index breaks the family constraints.
  void validate() const;
  bool is_vector() const;
  SphHarmIndex harmonic() const { return {n, m}; }
  std::string label() const;

  friend bool operator==(const TowerIndex&, const TowerIndex&) = default;
};

// theta_{+,n} = n, theta_{-,n} = -n - 1
inline int base_degree(Sign sign, int n) { return sign == Sign::Plus ? n : -n - 1; }

int homogeneity_degree(const TowerIndex& idx);

// xi^k_{+-,n} = Gamma(1 +- (n + 1/2)) / (4^k k! Gamma(k + 1 +- (n + 1/2))), via log-gamma.
double xi_coeff(Sign sign, int n, int k);

FieldValue eval_tower(const TowerIndex& idx, const Vec3& point);

// The exceptional tower on y_{0,1}: the generic order-0 tower
// without the constant factor y_{0,1}.
FieldValue eval_exceptional(Sign sign, int floor, const Vec3& point);

enum class Operator { Grad, Curl, Div, Laplacian };
const char* operator_name(Operator op);

// coefficient * tower(index)
struct TowerTerm {
  double coefficient = 1.0;
  TowerIndex index;
};

// Symbolic tower algebra. std::nullopt stands for the zero field.
// Throws KindMismatch when the operator does not accept the tower's kind.
std::optional<TowerTerm> apply_operator(Operator op, const TowerIndex& idx);

FieldValue eval_term(const std::optional<TowerTerm>& term, const Vec3& point, bool vector_kind);

enum class FdOrder { Fourth = 4, Eighth = 8 };

// Cartesian central differences of a point-evaluable field. Throws
// OriginProximity when the stencil would come within reach of the origin.
FieldValue fd_oracle(const PointField& field, Operator op, const Vec3& point, double h,
                     FdOrder order = FdOrder::Fourth);

}  // namespace exthodge
