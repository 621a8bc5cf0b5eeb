// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <functional>
#include <variant>

namespace exthodge {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// A pointwise value of a scalar function or a vector field.
using FieldValue = std::variant<double, Vec3>;

inline bool is_scalar(const FieldValue& v) { return std::holds_alternative<double>(v); }

inline double magnitude(const FieldValue& v) {
  return is_scalar(v) ? std::abs(std::get<double>(v)) : std::get<Vec3>(v).norm();
}

// Euclidean distance between two values of the same kind.
double distance(const FieldValue& a, const FieldValue& b);
FieldValue scaled(const FieldValue& v, double c);

using PointField = std::function<FieldValue(const Vec3&)>;

}  // namespace exthodge
