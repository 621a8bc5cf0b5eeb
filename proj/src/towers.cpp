// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

#include "exthodge/towers.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "exthodge/error.hpp"
#include "exthodge/lgamma.hpp"

namespace exthodge {

double distance(const FieldValue& a, const FieldValue& b) {
  if (a.index() != b.index()) throw Error(ErrorCode::KindMismatch, "comparing a scalar with a vector");
  if (is_scalar(a)) return std::abs(std::get<double>(a) - std::get<double>(b));
  return (std::get<Vec3>(a) - std::get<Vec3>(b)).norm();
}

FieldValue scaled(const FieldValue& v, double c) {
  if (is_scalar(v)) return c * std::get<double>(v);
  return Vec3(c * std::get<Vec3>(v));
}

const char* family_name(Family f) {
  switch (f) {
    case Family::U: return "U";
    case Family::V: return "V";
    case Family::P: return "P";
    case Family::Z: return "z";
    case Family::ExceptionalU: return "Uexc";
  }
  return "?";
}

const char* operator_name(Operator op) {
  switch (op) {
    case Operator::Grad: return "grad";
    case Operator::Curl: return "curl";
    case Operator::Div: return "div";
    case Operator::Laplacian: return "laplacian";
  }
  return "?";
}

TowerIndex TowerIndex::u(Sign sign, int floor, int n, int m) {
  TowerIndex t{Family::U, sign, floor, n, m};
  t.validate();
  return t;
}

TowerIndex TowerIndex::v(Sign sign, int floor, int n, int m) {
  TowerIndex t{Family::V, sign, floor, n, m};
  t.validate();
  return t;
}

TowerIndex TowerIndex::p(Sign sign, int n, int m) {
  TowerIndex t{Family::P, sign, 1, n, m};
  t.validate();
  return t;
}

TowerIndex TowerIndex::z(Sign sign, int k, int n, int m) {
  TowerIndex t{Family::Z, sign, k, n, m};
  t.validate();
  return t;
}

TowerIndex TowerIndex::exceptional(Sign sign, int floor) {
  TowerIndex t{Family::ExceptionalU, sign, floor, 0, 1};
  t.validate();
  return t;
}

void TowerIndex::validate() const {
  auto fail = [this](const std::string& why) {
    throw Error(ErrorCode::InvalidArgument, "invalid tower index " + label() + ": " + why);
  };
  if (n < 0 || m < 1 || m > 2 * n + 1) fail("harmonic index out of range");
  switch (family) {
    case Family::U:
      if (floor < -1) fail("floor must be >= -1");
      break;
    case Family::V:
      if (floor < -1) fail("floor must be >= -1");
      if (n < 1) fail("order-0 curl curl-towers vanish; use the exceptional family");
      break;
    case Family::P:
      if (n < 1) fail("order-0 potential fields vanish; use the exceptional family");
      break;
    case Family::Z:
      if (floor < 0) fail("Delta-tower power k must be >= 0");
      break;
    case Family::ExceptionalU:
      if (n != 0 || m != 1) fail("exceptional towers live on (n, m) = (0, 1)");
      if (floor < -1) fail("floor must be >= -1");
      break;
  }
}

bool TowerIndex::is_vector() const {
  switch (family) {
    case Family::U:
    case Family::ExceptionalU:
      return floor % 2 != 0;
    case Family::Z:
      return false;
    case Family::V:
    case Family::P:
      return true;
  }
  return false;
}

std::string TowerIndex::label() const {
  std::ostringstream os;
  os << family_name(family);
  if (family != Family::P) os << "^" << floor;
  os << "_{" << (sign == Sign::Plus ? '+' : '-') << "," << n << "," << m << "}";
  return os.str();
}

int homogeneity_degree(const TowerIndex& idx) {
  const int base = base_degree(idx.sign, idx.n);
  switch (idx.family) {
    case Family::Z: return base + 2 * idx.floor;
    case Family::P: return base + 1;
    case Family::U:
    case Family::V:
    case Family::ExceptionalU: return base + idx.floor;
  }
  return 0;
}

double xi_coeff(Sign sign, int n, int k) {
  if (n < 0 || k < 0) throw Error(ErrorCode::InvalidArgument, "xi needs n >= 0 and k >= 0");
  if (k == 0) return 1.0;
  const double a = 1.0 + sign_factor(sign) * (n + 0.5);
  const SignedLogGamma top = log_gamma(a);
  const SignedLogGamma bottom = log_gamma(a + k);
  const SignedLogGamma fact = log_gamma(k + 1.0);
  const double log_abs = top.log_abs - bottom.log_abs - fact.log_abs - k * std::log(4.0);
  return top.sign * bottom.sign * std::exp(log_abs);
}

namespace {

struct Polar {
  double r;
  Direction dir;
  Frame frame;
};

Polar to_polar(const Vec3& x) {
  const double r = x.norm();
  if (!(r > 0.0)) throw Error(ErrorCode::OriginSingular, "tower fields are singular at the origin");
  const Direction dir = Direction::from_cartesian(x);
  return {r, dir, frame(dir)};
}

// grad(c r^a y) = c r^(a-1) (a y e_r + Y)
Vec3 grad_radial_harmonic(double c, int a, const Polar& p, double y, const Vec3& Y) {
  return c * std::pow(p.r, a - 1) * (a * y * p.frame.e_r + Y);
}

// -curl(c r^a e_r x Y) = c r^(a-1) (lambda y e_r + (1 + a) Y)
Vec3 minus_curl_toroidal(double c, int a, int n, const Polar& p, double y, const Vec3& Y) {
  return c * std::pow(p.r, a - 1) * (sph_eigenvalue(n) * y * p.frame.e_r + (1.0 + a) * Y);
}

}  // namespace

FieldValue eval_tower(const TowerIndex& idx, const Vec3& point) {
  idx.validate();
  const Polar p = to_polar(point);
  const int base = base_degree(idx.sign, idx.n);

  if (idx.family == Family::ExceptionalU) return eval_exceptional(idx.sign, idx.floor, point);

  const SphHarmIndex h = idx.harmonic();
  const SphHarmJet jet = eval_sph_harm_jet(h, p.dir);
  const Vec3 Y = (jet.d_phi / std::cos(p.dir.theta)) * p.frame.e_phi + jet.d_theta * p.frame.e_theta;
  const double y = jet.value;

  switch (idx.family) {
    case Family::Z: {
      const int k = idx.floor;
      return xi_coeff(idx.sign, idx.n, k) * std::pow(p.r, base + 2 * k) * y;
    }
    case Family::U: {
      if (idx.floor % 2 == 0) {
        const int k = idx.floor / 2;
        return xi_coeff(idx.sign, idx.n, k) * std::pow(p.r, base + 2 * k) * y;
      }
      const int k = (idx.floor + 1) / 2;
      return grad_radial_harmonic(xi_coeff(idx.sign, idx.n, k), base + 2 * k, p, y, Y);
    }
    case Family::V: {
      if (idx.floor % 2 == 0) {
        const int k = idx.floor / 2;
        return Vec3(xi_coeff(idx.sign, idx.n, k) * std::pow(p.r, base + 2 * k) * p.frame.e_r.cross(Y));
      }
      const int k = (idx.floor + 1) / 2;
      return minus_curl_toroidal(xi_coeff(idx.sign, idx.n, k), base + 2 * k, idx.n, p, y, Y);
    }
    case Family::P: {
      const double xi1 = xi_coeff(idx.sign, idx.n, 1);
      const int a = base + 2;
      const Vec3 u1 = grad_radial_harmonic(xi1, a, p, y, Y);
      const Vec3 v1 = minus_curl_toroidal(xi1, a, idx.n, p, y, Y);
      return Vec3(u1 - v1 / (1.0 + base));
    }
    case Family::ExceptionalU: break;
  }
  throw Error(ErrorCode::InvalidArgument, "unhandled tower family");
}

FieldValue eval_exceptional(Sign sign, int floor, const Vec3& point) {
  if (floor < -1) throw Error(ErrorCode::InvalidArgument, "exceptional floor must be >= -1");
  const Polar p = to_polar(point);
  const int base = base_degree(sign, 0);
  if (floor % 2 == 0) {
    const int k = floor / 2;
    return xi_coeff(sign, 0, k) * std::pow(p.r, base + 2 * k);
  }
  const int k = (floor + 1) / 2;
  const int a = base + 2 * k;
  return Vec3(xi_coeff(sign, 0, k) * a * std::pow(p.r, a - 1) * p.frame.e_r);
}

namespace {

std::optional<TowerTerm> term(double c, TowerIndex idx) { return TowerTerm{c, idx}; }

// Indices that are identically zero by construction (grad of a constant).
bool vanishes(const TowerIndex& idx) {
  return (idx.family == Family::U || idx.family == Family::ExceptionalU) && idx.sign == Sign::Plus &&
         idx.n == 0 && idx.floor == -1;
}

std::optional<TowerTerm> nonzero(std::optional<TowerTerm> t) {
  if (t && vanishes(t->index)) return std::nullopt;
  return t;
}

[[noreturn]] void kind_mismatch(Operator op, const TowerIndex& idx) {
  throw Error(ErrorCode::KindMismatch,
              std::string(operator_name(op)) + " is not defined for " +
                  (idx.is_vector() ? "the vector field " : "the scalar function ") + idx.label());
}

}  // namespace

std::optional<TowerTerm> apply_operator(Operator op, const TowerIndex& idx) {
  idx.validate();
  const bool vec = idx.is_vector();
  if (op == Operator::Grad && vec) kind_mismatch(op, idx);
  if ((op == Operator::Curl || op == Operator::Div) && !vec) kind_mismatch(op, idx);
  if (vanishes(idx)) return std::nullopt;

  TowerIndex out = idx;
  switch (idx.family) {
    case Family::Z: {
      if (op == Operator::Grad) {
        out.family = Family::U;
        out.floor = 2 * idx.floor - 1;
        return nonzero(term(1.0, out));
      }
      // Laplacian: Delta z^k = z^{k-1}, z^{-1} = 0
      if (idx.floor == 0) return std::nullopt;
      out.floor = idx.floor - 1;
      return term(1.0, out);
    }
    case Family::U:
    case Family::ExceptionalU: {
      switch (op) {
        case Operator::Grad:
          out.floor = idx.floor - 1;
          return nonzero(term(1.0, out));
        case Operator::Div:
          if (idx.floor == -1) return std::nullopt;
          out.floor = idx.floor - 1;
          return term(1.0, out);
        case Operator::Curl:
          return std::nullopt;
        case Operator::Laplacian:
          if (idx.floor - 2 < -1) return std::nullopt;
          out.floor = idx.floor - 2;
          return nonzero(term(1.0, out));
      }
      break;
    }
    case Family::V: {
      switch (op) {
        case Operator::Div:
          return std::nullopt;
        case Operator::Curl:
          if (idx.floor % 2 == 0) {
            out.floor = idx.floor - 1;
            return term(-1.0, out);
          }
          if (idx.floor == -1) return std::nullopt;
          out.floor = idx.floor - 1;
          return term(1.0, out);
        case Operator::Laplacian:
          if (idx.floor - 2 < -1) return std::nullopt;
          out.floor = idx.floor - 2;
          return term(1.0, out);
        case Operator::Grad:
          break;
      }
      break;
    }
    case Family::P: {
      const double c = 1.0 + base_degree(idx.sign, idx.n);
      switch (op) {
        case Operator::Div:
          return term(1.0, TowerIndex::u(idx.sign, 0, idx.n, idx.m));
        case Operator::Curl:
          return term(-1.0 / c, TowerIndex::v(idx.sign, 0, idx.n, idx.m));
        case Operator::Laplacian:
          return std::nullopt;
        case Operator::Grad:
          break;
      }
      break;
    }
  }
  kind_mismatch(op, idx);
}

FieldValue eval_term(const std::optional<TowerTerm>& t, const Vec3& point, bool vector_kind) {
  if (!t) return vector_kind ? FieldValue(Vec3(Vec3::Zero())) : FieldValue(0.0);
  return scaled(eval_tower(t->index, point), t->coefficient);
}

namespace {

// Central-difference weights for offsets 1..order/2 (antisymmetric first
// derivative, symmetric second derivative with the given center weight).
struct Stencil {
  std::array<double, 4> first{};
  std::array<double, 4> second{};
  double second_center = 0.0;
  int half_width = 0;
};

Stencil stencil(FdOrder order) {
  Stencil s;
  if (order == FdOrder::Fourth) {
    s.half_width = 2;
    s.first = {2.0 / 3.0, -1.0 / 12.0, 0.0, 0.0};
    s.second = {4.0 / 3.0, -1.0 / 12.0, 0.0, 0.0};
    s.second_center = -5.0 / 2.0;
  } else {
    s.half_width = 4;
    s.first = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    s.second = {8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0};
    s.second_center = -205.0 / 72.0;
  }
  return s;
}

// Componentwise partial derivatives of a field sampled as up to three components.
template <class Sample>
double partial(const Sample& sample, const Stencil& st, int axis, double h) {
  double acc = 0.0;
  for (int j = 1; j <= st.half_width; ++j) {
    acc += st.first[static_cast<std::size_t>(j - 1)] * (sample(axis, j) - sample(axis, -j));
  }
  return acc / h;
}

}  // namespace

FieldValue fd_oracle(const PointField& field, Operator op, const Vec3& point, double h, FdOrder order) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "step h must be positive");
  const Stencil st = stencil(order);
  if (point.norm() <= std::max(4.0, 2.0 * st.half_width) * h) {
    throw Error(ErrorCode::OriginProximity, "finite-difference stencil reaches the origin");
  }
  const FieldValue center = field(point);
  const bool vec = !is_scalar(center);
  if (op == Operator::Grad && vec) throw Error(ErrorCode::KindMismatch, "grad of a vector field");
  if ((op == Operator::Curl || op == Operator::Div) && !vec) {
    throw Error(ErrorCode::KindMismatch, std::string(operator_name(op)) + " of a scalar function");
  }

  auto shifted = [&](int axis, int j) {
    Vec3 q = point;
    q[axis] += j * h;
    return field(q);
  };

  if (op == Operator::Laplacian) {
    if (!vec) {
      double acc = 3.0 * st.second_center * std::get<double>(center);
      for (int axis = 0; axis < 3; ++axis) {
        for (int j = 1; j <= st.half_width; ++j) {
          acc += st.second[static_cast<std::size_t>(j - 1)] *
                 (std::get<double>(shifted(axis, j)) + std::get<double>(shifted(axis, -j)));
        }
      }
      return acc / (h * h);
    }
    Vec3 acc = 3.0 * st.second_center * std::get<Vec3>(center);
    for (int axis = 0; axis < 3; ++axis) {
      for (int j = 1; j <= st.half_width; ++j) {
        acc += st.second[static_cast<std::size_t>(j - 1)] *
               (std::get<Vec3>(shifted(axis, j)) + std::get<Vec3>(shifted(axis, -j)));
      }
    }
    return Vec3(acc / (h * h));
  }

  if (op == Operator::Grad) {
    auto sample = [&](int axis, int j) { return std::get<double>(shifted(axis, j)); };
    return Vec3(partial(sample, st, 0, h), partial(sample, st, 1, h), partial(sample, st, 2, h));
  }

  // Jacobian J(c, axis) = d v_c / d x_axis
  Mat3 jac;
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 acc = Vec3::Zero();
    for (int j = 1; j <= st.half_width; ++j) {
      acc += st.first[static_cast<std::size_t>(j - 1)] *
             (std::get<Vec3>(shifted(axis, j)) - std::get<Vec3>(shifted(axis, -j)));
    }
    jac.col(axis) = acc / h;
  }
  if (op == Operator::Div) return jac.trace();
  return Vec3(jac(2, 1) - jac(1, 2), jac(0, 2) - jac(2, 0), jac(1, 0) - jac(0, 1));
}

}  // namespace exthodge
