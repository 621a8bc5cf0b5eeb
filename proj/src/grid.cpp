// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

#include "exthodge/grid.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>

#include "exthodge/error.hpp"
#include "exthodge/sphere.hpp"

namespace exthodge {

namespace {

constexpr double kPi = std::numbers::pi;

// First-derivative weights at x0 of the quadratic through (xa, x0, xb).
std::array<double, 3> three_point(double xa, double x0, double xb) {
  const double ha = x0 - xa, hb = xb - x0;
  return {-hb / (ha * (ha + hb)), (hb - ha) / (ha * hb), ha / (hb * (ha + hb))};
}

// First-derivative weights at x0 from (x0, x1, x2), one-sided.
std::array<double, 3> one_sided(double x0, double x1, double x2) {
  const double w1 = (x0 - x2) / ((x1 - x0) * (x1 - x2));
  const double w2 = (x0 - x1) / ((x2 - x0) * (x2 - x1));
  return {-(w1 + w2), w1, w2};
}

}  // namespace

ShellGrid::ShellGrid(const GridSpec& spec) : spec_(spec) {
  if (!(spec.r0 > 0.0) || !(spec.R >= 16.0 * spec.r0) || !std::isfinite(spec.R)) {
    throw Error(ErrorCode::InvalidArgument, "grid needs r0 > 0 and R >= 16 r0");
  }
  if (spec.n_r < 16) throw Error(ErrorCode::InvalidArgument, "grid needs n_r >= 16");
  if (spec.n_ang < 1 || spec.n_ang > 64) throw Error(ErrorCode::InvalidArgument, "grid needs 1 <= n_ang <= 64");

  const double ratio = std::pow(spec.R / spec.r0, 1.0 / (spec.n_r - 1));
  r_.resize(static_cast<std::size_t>(spec.n_r));
  for (int i = 0; i < spec.n_r; ++i) r_[static_cast<std::size_t>(i)] = spec.r0 * std::pow(ratio, i);
  r_.back() = spec.R;

  std::vector<double> t;
  gauss_legendre(spec.n_ang + 1, t, theta_weight_);
  for (double x : t) theta_.push_back(std::asin(x));
  const int n_phi = 2 * (spec.n_ang + 1);
  for (int k = 0; k < n_phi; ++k) phi_.push_back(2.0 * kPi * k / n_phi);

  const int n = size();
  pos_.resize(static_cast<std::size_t>(n));
  weight_.resize(static_cast<std::size_t>(n));
  smooth_weight_.resize(static_cast<std::size_t>(n));
  const double dphi = 2.0 * kPi / n_phi;
  const double dt = std::log(ratio);
  constexpr std::array<double, 4> kEnd{17.0 / 48.0, 59.0 / 48.0, 43.0 / 48.0, 49.0 / 48.0};
  for (int i = 0; i < n_r(); ++i) {
    const double lo = i > 0 ? r_[i - 1] : r_[i];
    const double hi = i + 1 < n_r() ? r_[i + 1] : r_[i];
    const double wr = 0.5 * (hi - lo) * r_[i] * r_[i];
    const int from_end = std::min(i, n_r() - 1 - i);
    const double ws = (from_end < 4 ? kEnd[from_end] : 1.0) * dt * r_[i] * r_[i] * r_[i];
    for (int j = 0; j < n_theta(); ++j) {
      for (int k = 0; k < n_phi; ++k) {
        const int node = index(i, j, k);
        pos_[node] = r_[i] * Direction{phi_[k], theta_[j]}.cartesian();
        weight_[node] = wr * theta_weight_[j] * dphi;
        smooth_weight_[node] = ws * theta_weight_[j] * dphi;
      }
    }
  }
  level_r_.push_back(r_.front());
  for (int i = 1; i < n_r(); ++i) level_r_.push_back(std::sqrt(r_[i - 1] * r_[i]));
  level_r_.push_back(r_.back());
  build_operators();
  build_potential_operators();
}

Vec3 ShellGrid::potential_position(int level, int j, int k) const {
  return level_r_[level] * Direction{phi_[k], theta_[j]}.cartesian();
}

void ShellGrid::build_operators() {
  const int n = size(), nt = n_theta(), np = n_phi();
  std::vector<Eigen::Triplet<double>> trip[3];
  const double dphi = 2.0 * kPi / np;

  for (int i = 0; i < n_r(); ++i) {
    std::array<int, 3> ri;
    std::array<double, 3> rw;
    if (i == 0) {
      ri = {0, 1, 2};
      rw = one_sided(r_[0], r_[1], r_[2]);
    } else if (i == n_r() - 1) {
      ri = {i, i - 1, i - 2};
      rw = one_sided(r_[i], r_[i - 1], r_[i - 2]);
    } else {
      // centered in log r, which is uniform on the geometric grid
      ri = {i - 1, i, i + 1};
      rw = three_point(std::log(r_[i - 1]), std::log(r_[i]), std::log(r_[i + 1]));
      for (double& w : rw) w /= r_[i];
    }
    for (int j = 0; j < nt; ++j) {
      // theta neighbours; past a pole the meridian continues on phi + pi
      // at latitude +-pi - theta.
      std::array<int, 3> tj{j - 1, j, j + 1};
      std::array<int, 3> shift{0, 0, 0};
      const double ta = j > 0 ? theta_[j - 1] : -kPi - theta_[0];
      const double tb = j + 1 < nt ? theta_[j + 1] : kPi - theta_[nt - 1];
      if (j == 0) {
        tj[0] = 0;
        shift[0] = np / 2;
      }
      if (j == nt - 1) {
        tj[2] = nt - 1;
        shift[2] = np / 2;
      }
      const std::array<double, 3> tw = three_point(ta, theta_[j], tb);

      const double c = std::cos(theta_[j]);
      for (int k = 0; k < np; ++k) {
        const int node = index(i, j, k);
        const Frame f = frame({phi_[k], theta_[j]});
        const double r = r_[i];
        auto add = [&](int col, double d_r, double d_phi, double d_theta) {
          for (int axis = 0; axis < 3; ++axis) {
            const double v = f.e_r[axis] * d_r + f.e_phi[axis] * d_phi / (r * c) + f.e_theta[axis] * d_theta / r;
            if (v != 0.0) trip[axis].emplace_back(node, col, v);
          }
        };
        for (int a = 0; a < 3; ++a) add(index(ri[a], j, k), rw[a], 0.0, 0.0);
        add(index(i, j, (k + 1) % np), 0.0, 0.5 / dphi, 0.0);
        add(index(i, j, (k + np - 1) % np), 0.0, -0.5 / dphi, 0.0);
        for (int a = 0; a < 3; ++a) add(index(i, tj[a], (k + shift[a]) % np), 0.0, 0.0, tw[a]);
      }
    }
  }

  std::vector<Eigen::Triplet<double>> gtrip;
  for (int axis = 0; axis < 3; ++axis) {
    partial_[axis].resize(n, n);
    partial_[axis].setFromTriplets(trip[axis].begin(), trip[axis].end());
    for (int row = 0; row < n; ++row) {
      for (SparseMatrix::InnerIterator it(partial_[axis], row); it; ++it) {
        gtrip.emplace_back(3 * row + axis, static_cast<int>(it.col()), it.value());
      }
    }
  }
  grad_.resize(3 * n, n);
  grad_.setFromTriplets(gtrip.begin(), gtrip.end());
}

void ShellGrid::build_potential_operators() {
  const int n = size(), nt = n_theta(), np = n_phi(), last = n_r() - 1;
  const double dphi = 2.0 * kPi / np;
  auto pindex = [&](int level, int j, int k) { return (level * nt + j) * np + k; };
  // Levels and weights giving the potential at radius r_i.
  auto interp = [&](int i) -> std::vector<std::pair<int, double>> {
    if (i == 0) return {{0, 1.0}};
    if (i == last) return {{last + 1, 1.0}};
    return {{i, 0.5}, {i + 1, 0.5}};
  };

  std::vector<Eigen::Triplet<double>> gtrip, itrip;
  for (int i = 0; i < n_r(); ++i) {
    // Node i always differences levels i and i + 1. At the spheres this is the
    // half-cell difference, which keeps the least-squares rows square in r.
    const double h = level_r_[i + 1] - level_r_[i];
    const std::vector<std::pair<int, double>> radial{{i, -1.0 / h}, {i + 1, 1.0 / h}};
    const auto values = interp(i);
    for (int j = 0; j < nt; ++j) {
      std::array<int, 3> tj{j - 1, j, j + 1};
      std::array<int, 3> shift{0, 0, 0};
      const double ta = j > 0 ? theta_[j - 1] : -kPi - theta_[0];
      const double tb = j + 1 < nt ? theta_[j + 1] : kPi - theta_[nt - 1];
      if (j == 0) {
        tj[0] = 0;
        shift[0] = np / 2;
      }
      if (j == nt - 1) {
        tj[2] = nt - 1;
        shift[2] = np / 2;
      }
      const std::array<double, 3> tw = three_point(ta, theta_[j], tb);
      const double c = std::cos(theta_[j]);
      for (int k = 0; k < np; ++k) {
        const int node = index(i, j, k);
        const Frame f = frame({phi_[k], theta_[j]});
        const double r = r_[i];
        auto add = [&](int col, const Vec3& dir, double w) {
          for (int axis = 0; axis < 3; ++axis) {
            if (dir[axis] * w != 0.0) gtrip.emplace_back(3 * node + axis, col, dir[axis] * w);
          }
        };
        for (const auto& [level, w] : radial) add(pindex(level, j, k), f.e_r, w);
        for (const auto& [level, v] : values) {
          itrip.emplace_back(node, pindex(level, j, k), v);
          add(pindex(level, j, (k + 1) % np), f.e_phi, v * 0.5 / (dphi * r * c));
          add(pindex(level, j, (k + np - 1) % np), f.e_phi, -v * 0.5 / (dphi * r * c));
          for (int a = 0; a < 3; ++a) add(pindex(level, tj[a], (k + shift[a]) % np), f.e_theta, v * tw[a] / r);
        }
      }
    }
  }
  pgrad_.resize(3 * n, potential_size());
  pgrad_.setFromTriplets(gtrip.begin(), gtrip.end());
  pinterp_.resize(n, potential_size());
  pinterp_.setFromTriplets(itrip.begin(), itrip.end());
}

GridPotential sample_potential(const ShellGrid& grid, const std::function<double(const Vec3&)>& f) {
  GridPotential out{Eigen::VectorXd(grid.potential_size())};
  for (int level = 0; level <= grid.n_r(); ++level) {
    for (int j = 0; j < grid.n_theta(); ++j) {
      for (int k = 0; k < grid.n_phi(); ++k) {
        out.values[(level * grid.n_theta() + j) * grid.n_phi() + k] = f(grid.potential_position(level, j, k));
      }
    }
  }
  return out;
}

GridVectorField potential_grad(const ShellGrid& grid, const GridPotential& p) {
  if (p.values.size() != grid.potential_size()) throw Error(ErrorCode::InvalidArgument, "potential size does not match grid");
  return {grid.potential_gradient() * p.values};
}

GridScalarField potential_on_nodes(const ShellGrid& grid, const GridPotential& p) {
  if (p.values.size() != grid.potential_size()) throw Error(ErrorCode::InvalidArgument, "potential size does not match grid");
  return {grid.potential_to_nodes() * p.values};
}

GridScalarField sample_scalar(const ShellGrid& grid, const std::function<double(const Vec3&)>& f) {
  GridScalarField out{Eigen::VectorXd(grid.size())};
  for (int node = 0; node < grid.size(); ++node) out.values[node] = f(grid.position(node));
  return out;
}

GridVectorField sample_vector(const ShellGrid& grid, const std::function<Vec3(const Vec3&)>& f) {
  GridVectorField out{Eigen::VectorXd(3 * grid.size())};
  for (int node = 0; node < grid.size(); ++node) out.values.segment<3>(3 * node) = f(grid.position(node));
  return out;
}

GridVectorField zero_vector(const ShellGrid& grid) { return {Eigen::VectorXd::Zero(3 * grid.size())}; }

GridVectorField discrete_grad(const ShellGrid& grid, const GridScalarField& u) {
  if (u.values.size() != grid.size()) throw Error(ErrorCode::InvalidArgument, "field size does not match grid");
  return {grid.gradient() * u.values};
}

namespace {

Eigen::VectorXd component(const GridVectorField& v, int axis, int n) {
  Eigen::VectorXd out(n);
  for (int node = 0; node < n; ++node) out[node] = v.values[3 * node + axis];
  return out;
}

void check_vector(const ShellGrid& grid, const GridVectorField& v) {
  if (v.values.size() != 3 * grid.size()) throw Error(ErrorCode::InvalidArgument, "field size does not match grid");
}

}  // namespace

GridScalarField discrete_div(const ShellGrid& grid, const GridVectorField& v) {
  check_vector(grid, v);
  const int n = grid.size();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int axis = 0; axis < 3; ++axis) out += grid.partial(axis) * component(v, axis, n);
  return {out};
}

GridVectorField discrete_curl(const ShellGrid& grid, const GridVectorField& v) {
  check_vector(grid, v);
  const int n = grid.size();
  std::array<Eigen::VectorXd, 3> vc;
  for (int axis = 0; axis < 3; ++axis) vc[axis] = component(v, axis, n);
  auto d = [&](int axis, int comp) -> Eigen::VectorXd { return grid.partial(axis) * vc[comp]; };
  const Eigen::VectorXd cx = d(1, 2) - d(2, 1);
  const Eigen::VectorXd cy = d(2, 0) - d(0, 2);
  const Eigen::VectorXd cz = d(0, 1) - d(1, 0);
  GridVectorField out{Eigen::VectorXd(3 * n)};
  for (int node = 0; node < n; ++node) out.values.segment<3>(3 * node) = Vec3(cx[node], cy[node], cz[node]);
  return out;
}

double grid_inner(const ShellGrid& grid, const GridVectorField& f, const GridVectorField& g) {
  check_vector(grid, f);
  check_vector(grid, g);
  double sum = 0.0;
  for (int node = 0; node < grid.size(); ++node) sum += grid.weight(node) * f.at(node).dot(g.at(node));
  return sum;
}

double grid_pairing(const ShellGrid& grid, const GridVectorField& f, const GridVectorField& g) {
  check_vector(grid, f);
  check_vector(grid, g);
  double sum = 0.0;
  for (int node = 0; node < grid.size(); ++node) sum += grid.smooth_weight(node) * f.at(node).dot(g.at(node));
  return sum;
}

double grid_integral(const ShellGrid& grid, const GridScalarField& f) {
  if (f.values.size() != grid.size()) throw Error(ErrorCode::InvalidArgument, "field size does not match grid");
  double sum = 0.0;
  for (int node = 0; node < grid.size(); ++node) sum += grid.weight(node) * f.values[node];
  return sum;
}

namespace {

constexpr const char* kMagic = "# exthodge-grid-field";

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

[[noreturn]] void parse_error(int line, const std::string& what) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + what);
}

double parse_double(std::string_view text, int line) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(x)) {
    parse_error(line, "not a finite number: '" + std::string(text) + "'");
  }
  return x;
}

int parse_int(std::string_view text, int line) {
  int x = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || ptr != text.data() + text.size()) parse_error(line, "not an integer: '" + std::string(text) + "'");
  return x;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

const char* column_header(bool vector) { return vector ? "r,phi,theta,v_x,v_y,v_z" : "r,phi,theta,u"; }

}  // namespace

void write_grid_field(std::ostream& os, const ShellGrid& grid, const Eigen::VectorXd& values, bool vector) {
  const int per = vector ? 3 : 1;
  if (values.size() != per * grid.size()) throw Error(ErrorCode::InvalidArgument, "field size does not match grid");
  const GridSpec& g = grid.spec();
  os << kMagic << " version=1 r0=" << format_double(g.r0) << " R=" << format_double(g.R) << " n_r=" << g.n_r
     << " n_ang=" << g.n_ang << " kind=" << (vector ? "vector" : "scalar") << "\n";
  os << column_header(vector) << "\n";
  const int nt = grid.n_theta(), np = grid.n_phi();
  for (int i = 0; i < grid.n_r(); ++i) {
    for (int j = 0; j < nt; ++j) {
      for (int k = 0; k < np; ++k) {
        const int node = grid.index(i, j, k);
        os << format_double(grid.radii()[i]) << ',' << format_double(grid.phis()[k]) << ','
           << format_double(grid.thetas()[j]);
        for (int c = 0; c < per; ++c) os << ',' << format_double(values[per * node + c]);
        os << '\n';
      }
    }
  }
  if (!os) throw Error(ErrorCode::Io, "failed writing grid field");
}

GridFieldFile read_grid_field(std::istream& is) {
  std::string line;
  int line_no = 1;
  if (!std::getline(is, line)) parse_error(line_no, "empty input");
  std::string_view head = trim(line);
  if (head.substr(0, std::string_view(kMagic).size()) != kMagic) parse_error(line_no, "missing grid-field header");
  std::map<std::string, std::string, std::less<>> meta;
  for (std::string_view tok : split(head.substr(std::string_view(kMagic).size()), ' ')) {
    if (tok.empty()) continue;
    const auto eq = tok.find('=');
    if (eq == std::string_view::npos) parse_error(line_no, "expected key=value, got '" + std::string(tok) + "'");
    meta[std::string(tok.substr(0, eq))] = std::string(tok.substr(eq + 1));
  }
  for (const char* key : {"version", "r0", "R", "n_r", "n_ang", "kind"}) {
    if (!meta.count(key)) parse_error(line_no, std::string("missing header key '") + key + "'");
  }
  if (meta["version"] != "1") parse_error(line_no, "unsupported version " + meta["version"]);
  GridFieldFile out;
  out.spec.r0 = parse_double(meta["r0"], line_no);
  out.spec.R = parse_double(meta["R"], line_no);
  out.spec.n_r = parse_int(meta["n_r"], line_no);
  out.spec.n_ang = parse_int(meta["n_ang"], line_no);
  if (meta["kind"] != "vector" && meta["kind"] != "scalar") parse_error(line_no, "kind must be vector or scalar");
  out.vector = meta["kind"] == "vector";

  std::unique_ptr<ShellGrid> grid;
  try {
    grid = std::make_unique<ShellGrid>(out.spec);
  } catch (const Error& e) {
    parse_error(line_no, e.what());
  }

  ++line_no;
  if (!std::getline(is, line)) parse_error(line_no, "missing column header");
  if (trim(line) != column_header(out.vector)) {
    parse_error(line_no, std::string("expected column header '") + column_header(out.vector) + "'");
  }

  const int per = out.vector ? 3 : 1;
  out.values.resize(per * grid->size());
  const int nt = grid->n_theta(), np = grid->n_phi();
  int row = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    if (row >= grid->size()) parse_error(line_no, "more rows than grid nodes");
    const auto cols = split(body, ',');
    if (static_cast<int>(cols.size()) != 3 + per) {
      parse_error(line_no, "expected " + std::to_string(3 + per) + " columns, got " + std::to_string(cols.size()));
    }
    const int i = row / (nt * np), j = (row / np) % nt, k = row % np;
    const double coords[3] = {parse_double(trim(cols[0]), line_no), parse_double(trim(cols[1]), line_no),
                              parse_double(trim(cols[2]), line_no)};
    const double expect[3] = {grid->radii()[i], grid->phis()[k], grid->thetas()[j]};
    for (int a = 0; a < 3; ++a) {
      if (std::abs(coords[a] - expect[a]) > 1e-9 * std::max(1.0, std::abs(expect[a]))) {
        parse_error(line_no, "coordinates do not match grid node " + std::to_string(row));
      }
    }
    const int node = grid->index(i, j, k);
    for (int c = 0; c < per; ++c) out.values[per * node + c] = parse_double(trim(cols[3 + c]), line_no);
    ++row;
  }
  if (row != grid->size()) {
    parse_error(line_no, "expected " + std::to_string(grid->size()) + " rows, got " + std::to_string(row));
  }
  return out;
}

}  // namespace exthodge
