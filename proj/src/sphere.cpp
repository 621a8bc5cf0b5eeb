// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

#include "exthodge/sphere.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "exthodge/error.hpp"

namespace exthodge {

namespace {

constexpr double kPi = std::numbers::pi;

// Legendre functions normalized to unit L2 norm on [-1, 1], evaluated at
// t = sin(theta), for fixed azimuthal order k. Fills p[n] for n = k..n_max
// (entries below k are left zero). c = cos(theta) > 0.
void normalized_legendre_column(int n_max, int k, double t, double c, std::vector<double>& p) {
  p.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  double pkk = std::sqrt(0.5);
  for (int j = 1; j <= k; ++j) {
    pkk *= std::sqrt((2.0 * j + 1.0) / (2.0 * j)) * c;
  }
  if (k > n_max) return;
  p[k] = pkk;
  if (k + 1 > n_max) return;
  p[k + 1] = std::sqrt(2.0 * k + 3.0) * t * pkk;
  for (int n = k + 2; n <= n_max; ++n) {
    const double nn = static_cast<double>(n) * n;
    const double kk = static_cast<double>(k) * k;
    const double a = std::sqrt((4.0 * nn - 1.0) / (nn - kk));
    const double b = std::sqrt((2.0 * n + 1.0) * ((n - 1.0) * (n - 1.0) - kk) /
                               ((2.0 * n - 3.0) * (nn - kk)));
    p[n] = a * t * p[n - 1] - b * p[n - 2];
  }
}

}  // namespace

Vec3 Direction::cartesian() const {
  return {std::cos(phi) * std::cos(theta), std::sin(phi) * std::cos(theta), std::sin(theta)};
}

Direction Direction::from_cartesian(const Vec3& x) {
  const double rho = std::hypot(x[0], x[1]);
  double phi = std::atan2(x[1], x[0]);
  if (phi < 0.0) phi += 2.0 * kPi;
  return {phi, std::atan2(x[2], rho)};
}

SphHarmIndex::SphHarmIndex(int n_, int m_) : n(n_), m(m_) {
  if (n < 0 || m < 1 || m > 2 * n + 1) {
    throw Error(ErrorCode::InvalidArgument,
                "spherical harmonic index out of range: n=" + std::to_string(n) +
                    " m=" + std::to_string(m));
  }
}

Frame frame(const Direction& dir) {
  const double cp = std::cos(dir.phi), sp = std::sin(dir.phi);
  const double ct = std::cos(dir.theta), st = std::sin(dir.theta);
  return {Vec3(ct * cp, ct * sp, st), Vec3(-sp, cp, 0.0), Vec3(-st * cp, -st * sp, ct)};
}

SphHarmJet eval_sph_harm_jet(const SphHarmIndex& idx, const Direction& dir) {
  const int n = idx.n;
  const int k = idx.azimuthal_order();
  const double t = std::sin(dir.theta);
  const double c = std::cos(dir.theta);

  std::vector<double> p;
  normalized_legendre_column(n, k, t, c, p);
  const double pn = p[n];
  const double pn1 = n - 1 >= k ? p[n - 1] : 0.0;
  // (1 - t^2) dP_n^k/dt = -n t P_n^k + (n + k) P_{n-1}^k, rewritten for the normalized family.
  const double lift = std::sqrt((2.0 * n + 1.0) * (static_cast<double>(n) * n - static_cast<double>(k) * k) /
                                (2.0 * n - 1.0));
  const double dpn_dtheta = (n == 0) ? 0.0 : (-n * t * pn + lift * pn1) / c;

  SphHarmJet jet;
  if (k == 0) {
    const double norm = 1.0 / std::sqrt(2.0 * kPi);
    jet.value = norm * pn;
    jet.d_theta = norm * dpn_dtheta;
    jet.d_phi = 0.0;
    return jet;
  }
  const double norm = 1.0 / std::sqrt(kPi);
  const double ck = std::cos(k * dir.phi), sk = std::sin(k * dir.phi);
  if (idx.m % 2 == 0) {
    jet.value = norm * pn * ck;
    jet.d_theta = norm * dpn_dtheta * ck;
    jet.d_phi = -norm * pn * k * sk;
  } else {
    jet.value = norm * pn * sk;
    jet.d_theta = norm * dpn_dtheta * sk;
    jet.d_phi = norm * pn * k * ck;
  }
  return jet;
}

double eval_sph_harm(const SphHarmIndex& idx, const Direction& dir) {
  return eval_sph_harm_jet(idx, dir).value;
}

Vec3 eval_sph_harm_surface_grad(const SphHarmIndex& idx, const Direction& dir) {
  const SphHarmJet jet = eval_sph_harm_jet(idx, dir);
  const Frame f = frame(dir);
  return (jet.d_phi / std::cos(dir.theta)) * f.e_phi + jet.d_theta * f.e_theta;
}

double laplace_beltrami_residual(const SphHarmIndex& idx, const Direction& dir, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "step h must be positive");
  if (kPi / 2.0 - std::abs(dir.theta) < 2.0 * h) {
    throw Error(ErrorCode::PoleProximity, "direction within 2h of a pole");
  }
  auto y = [&](double phi, double theta) { return eval_sph_harm(idx, {phi, theta}); };
  const double y0 = y(dir.phi, dir.theta);
  const double d2phi = (y(dir.phi + h, dir.theta) - 2.0 * y0 + y(dir.phi - h, dir.theta)) / (h * h);
  const double yp = y(dir.phi, dir.theta + h);
  const double ym = y(dir.phi, dir.theta - h);
  const double d2theta = (yp - 2.0 * y0 + ym) / (h * h);
  const double dtheta = (yp - ym) / (2.0 * h);
  const double c = std::cos(dir.theta);
  const double lb = d2phi / (c * c) + d2theta - std::tan(dir.theta) * dtheta;
  return lb + sph_eigenvalue(idx.n) * y0;
}

void gauss_legendre(int count, std::vector<double>& nodes, std::vector<double>& weights) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "Gauss-Legendre needs at least one node");
  nodes.assign(static_cast<std::size_t>(count), 0.0);
  weights.assign(static_cast<std::size_t>(count), 0.0);
  // Returns P_count(x) and P'_count(x).
  auto legendre = [count](double x) {
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= count; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, count * (x * p1 - p0) / (x * x - 1.0)};
  };
  for (int i = 0; i < (count + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (count + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(count - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(count - 1 - i)] = w;
  }
  if (count % 2 == 1) nodes[static_cast<std::size_t>(count / 2)] = 0.0;
}

SphereQuadrature build_quadrature(int n_max) {
  if (n_max < 0) throw Error(ErrorCode::InvalidArgument, "n_max must be non-negative");
  SphereQuadrature q;
  q.n_theta = n_max + 1;
  q.n_phi = 2 * (n_max + 1);
  q.exact_degree = 2 * n_max + 1;
  std::vector<double> t, wt;
  gauss_legendre(q.n_theta, t, wt);
  const double dphi = 2.0 * kPi / q.n_phi;
  q.nodes.reserve(static_cast<std::size_t>(q.n_theta * q.n_phi));
  q.weights.reserve(q.nodes.capacity());
  for (int j = 0; j < q.n_theta; ++j) {
    const double theta = std::asin(t[static_cast<std::size_t>(j)]);
    for (int k = 0; k < q.n_phi; ++k) {
      q.nodes.push_back({k * dphi, theta});
      q.weights.push_back(wt[static_cast<std::size_t>(j)] * dphi);
    }
  }
  return q;
}

double surface_inner_product(const SurfaceFunction& f, const SurfaceFunction& g,
                             const SphereQuadrature& quad) {
  double sum = 0.0;
  for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
    const FieldValue a = f(quad.nodes[i]);
    const FieldValue b = g(quad.nodes[i]);
    if (a.index() != b.index()) {
      throw Error(ErrorCode::KindMismatch, "inner product of a scalar with a vector");
    }
    const double prod = is_scalar(a) ? std::get<double>(a) * std::get<double>(b)
                                     : std::get<Vec3>(a).dot(std::get<Vec3>(b));
    sum += quad.weights[i] * prod;
  }
  return sum;
}

}  // namespace exthodge
