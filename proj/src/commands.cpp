// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

#include "exthodge/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "exthodge/builtins.hpp"
#include "exthodge/error.hpp"
#include "exthodge/grid.hpp"
#include "exthodge/helmholtz.hpp"
#include "exthodge/sphere.hpp"
#include "exthodge/towers.hpp"
#include "exthodge/weighted.hpp"

namespace exthodge {

Vec3 PointSampler::shell_point(double r_min, double r_max) {
  const double r = r_min + (r_max - r_min) * uniform();
  const double z = 2.0 * uniform() - 1.0;
  const double phi = 2.0 * std::numbers::pi * uniform();
  const double c = std::sqrt(std::max(0.0, 1.0 - z * z));
  return r * Vec3(c * std::cos(phi), c * std::sin(phi), z);
}

namespace {

[[noreturn]] void bad_config(const std::string& msg) { throw Error(ErrorCode::InvalidArgument, "config: " + msg); }

// Reads typed values with defaults and records the resolved config.
class ConfigReader {
 public:
  ConfigReader(const Json& in, std::initializer_list<const char*> known) : in_(in) {
    if (!in_.is_object()) bad_config("expected a JSON object");
    const std::set<std::string> names(known.begin(), known.end());
    for (const auto& item : in_.items()) {
      if (!names.count(item.key())) bad_config("unknown key '" + item.key() + "'");
    }
  }

  double number(const char* key, double fallback) {
    double v = fallback;
    if (in_.contains(key)) {
      if (!in_[key].is_number()) bad_config(std::string("'") + key + "' must be a number");
      v = in_[key].get<double>();
    }
    if (!std::isfinite(v)) bad_config(std::string("'") + key + "' must be finite");
    out_[key] = v;
    return v;
  }

  std::int64_t integer(const char* key, std::int64_t fallback, std::int64_t lo, std::int64_t hi) {
    std::int64_t v = fallback;
    if (in_.contains(key)) {
      if (!in_[key].is_number_integer()) bad_config(std::string("'") + key + "' must be an integer");
      v = in_[key].get<std::int64_t>();
    }
    if (v < lo || v > hi) {
      bad_config(std::string("'") + key + "' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    out_[key] = v;
    return v;
  }

  std::uint64_t seed() {
    std::uint64_t v = 7;
    if (in_.contains("seed")) {
      if (!in_["seed"].is_number_integer() || (in_["seed"].is_number_integer() && !in_["seed"].is_number_unsigned() &&
                                               in_["seed"].get<std::int64_t>() < 0)) {
        bad_config("'seed' must be a non-negative integer");
      }
      v = in_["seed"].get<std::uint64_t>();
    }
    out_["seed"] = v;
    return v;
  }

  std::string text(const char* key, const std::string& fallback) {
    std::string v = fallback;
    if (in_.contains(key)) {
      if (!in_[key].is_string()) bad_config(std::string("'") + key + "' must be a string");
      v = in_[key].get<std::string>();
    }
    out_[key] = v;
    return v;
  }

  bool has(const char* key) const { return in_.contains(key); }

  std::vector<double> numbers(const char* key, std::vector<double> fallback) {
    if (in_.contains(key)) {
      const Json& j = in_[key];
      if (!j.is_array() || j.empty()) bad_config(std::string("'") + key + "' must be a non-empty array of numbers");
      fallback.clear();
      for (const Json& x : j) {
        if (!x.is_number() || !std::isfinite(x.get<double>())) {
          bad_config(std::string("'") + key + "' must be a non-empty array of numbers");
        }
        fallback.push_back(x.get<double>());
      }
    }
    out_[key] = fallback;
    return fallback;
  }

  std::vector<std::string> strings(const char* key, std::vector<std::string> fallback) {
    if (in_.contains(key)) {
      const Json& j = in_[key];
      if (!j.is_array() || j.empty()) bad_config(std::string("'") + key + "' must be a non-empty array of strings");
      fallback.clear();
      for (const Json& x : j) {
        if (!x.is_string()) bad_config(std::string("'") + key + "' must be a non-empty array of strings");
        fallback.push_back(x.get<std::string>());
      }
    }
    out_[key] = fallback;
    return fallback;
  }

  GridSpec grid() {
    GridSpec g;
    if (in_.contains("grid")) {
      const Json& j = in_["grid"];
      std::vector<double> v;
      if (j.is_string()) {
        std::stringstream ss(j.get<std::string>());
        std::string part;
        while (std::getline(ss, part, ',')) {
          double x = 0.0;
          const auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), x);
          if (ec != std::errc() || p != part.data() + part.size()) bad_config("'grid' must read r0,R,n_r,n_ang");
          v.push_back(x);
        }
      } else if (j.is_array()) {
        for (const Json& x : j) {
          if (!x.is_number()) bad_config("'grid' must read r0,R,n_r,n_ang");
          v.push_back(x.get<double>());
        }
      }
      if (v.size() != 4 || v[2] != std::floor(v[2]) || v[3] != std::floor(v[3]) || std::abs(v[2]) > 1e6 ||
          std::abs(v[3]) > 1e6) {
        bad_config("'grid' must read r0,R,n_r,n_ang with integer counts");
      }
      g = {v[0], v[1], static_cast<int>(v[2]), static_cast<int>(v[3])};
    }
    const ShellGrid check(g);  // validates
    (void)check;
    out_["grid"] = Json::array({g.r0, g.R, g.n_r, g.n_ang});
    return g;
  }

  Medium medium() {
    const std::string spec = text("medium", "identity");
    if (spec == "identity") return Medium::identity();
    if (spec.rfind("radial:", 0) == 0) {
      const std::string rest = spec.substr(7);
      const auto comma = rest.find(',');
      double c = 0.0, tau = 0.0;
      if (comma != std::string::npos) {
        const auto [p1, e1] = std::from_chars(rest.data(), rest.data() + comma, c);
        const auto [p2, e2] = std::from_chars(rest.data() + comma + 1, rest.data() + rest.size(), tau);
        if (e1 == std::errc() && e2 == std::errc() && p1 == rest.data() + comma && p2 == rest.data() + rest.size()) {
          return Medium::radial(c, tau);
        }
      }
    }
    bad_config("'medium' must be identity or radial:c,tau");
  }

  bool on_off(const char* key, bool fallback) {
    const std::string v = text(key, fallback ? "on" : "off");
    if (v != "on" && v != "off") bad_config(std::string("'") + key + "' must be on or off");
    return v == "on";
  }

  const Json& resolved() const { return out_; }

 private:
  const Json& in_;
  Json out_ = Json::object();
};

double rel_error(const FieldValue& a, const FieldValue& b, double scale) {
  const double d = distance(a, b);
  return scale > 0.0 ? d / scale : d;
}

// ---- verify-towers --------------------------------------------------------

struct TowerSuiteConfig {
  int n_max = 4;
  int k_max = 2;
  int n_points = 20;
  double h = 1e-3;
  double tol = 1e-6;
  std::uint64_t seed = 7;
};

std::vector<TowerIndex> suite_indices(const TowerSuiteConfig& c) {
  std::vector<TowerIndex> out;
  const int top_floor = 2 * c.k_max - 1;
  for (Sign sign : {Sign::Plus, Sign::Minus}) {
    for (int f = -1; f <= top_floor; ++f) out.push_back(TowerIndex::exceptional(sign, f));
    for (int n = 1; n <= c.n_max; ++n) {
      for (int m = 1; m <= 2 * n + 1; ++m) {
        for (int k = 0; k <= c.k_max + 1; ++k) out.push_back(TowerIndex::z(sign, k, n, m));
        for (int f = -1; f <= top_floor; ++f) {
          out.push_back(TowerIndex::u(sign, f, n, m));
          out.push_back(TowerIndex::v(sign, f, n, m));
        }
        out.push_back(TowerIndex::p(sign, n, m));
      }
    }
  }
  return out;
}

Report tower_suite(const TowerSuiteConfig& c, Json config) {
  Report rep(std::move(config));
  std::vector<Vec3> points;
  PointSampler rng(c.seed);
  for (int i = 0; i < c.n_points; ++i) points.push_back(rng.shell_point(1.1, 3.0));

  const std::vector<TowerIndex> indices = suite_indices(c);
  double eq_worst = 0.0, lap_worst = 0.0, homog_worst = 0.0, harm_worst = 0.0, ground_worst = 0.0,
         struct_worst = 0.0;
  std::size_t eq_count = 0;
  for (const TowerIndex& idx : indices) {
    const PointField f = [&idx](const Vec3& x) { return eval_tower(idx, x); };
    const bool vec = idx.is_vector();
    const int degree = homogeneity_degree(idx);
    const bool potential =
        idx.family == Family::P || ((idx.family == Family::U || idx.family == Family::V) && idx.floor <= 0);
    // Errors are measured against the largest value the field (or its image)
    // takes over the sample points, so nodal lines of y do not inflate them.
    for (Operator op : {Operator::Grad, Operator::Curl, Operator::Div, Operator::Laplacian}) {
      if (op == Operator::Grad && vec) continue;
      if ((op == Operator::Curl || op == Operator::Div) && !vec) continue;
      const bool out_vec = op == Operator::Grad || op == Operator::Curl || (op == Operator::Laplacian && vec);
      const std::optional<TowerTerm> term = apply_operator(op, idx);
      double err = 0.0, scale = 0.0;
      for (const Vec3& x : points) {
        const FieldValue analytic = eval_term(term, x, out_vec);
        err = std::max(err, distance(analytic, fd_oracle(f, op, x, c.h)));
        scale = std::max({scale, magnitude(analytic),
                          magnitude(f(x)) / std::pow(x.norm(), op == Operator::Laplacian ? 2 : 1)});
        ++eq_count;
      }
      const double e = scale > 0.0 ? err / scale : err;
      eq_worst = std::max(eq_worst, e);
      if (op == Operator::Laplacian && (idx.family == Family::Z || idx.family == Family::ExceptionalU)) {
        lap_worst = std::max(lap_worst, e);
      }
    }
    double harm_err = 0.0, harm_scale = 0.0;
    for (const Vec3& x : points) {
      const FieldValue value = f(x);
      const double r = x.norm();
      // eval(2x) = 2^d eval(x), eval(x / 2) = 2^-d eval(x)
      for (double t : {2.0, 0.5}) {
        const FieldValue expect = scaled(value, std::pow(t, degree));
        homog_worst = std::max(homog_worst, rel_error(f(t * x), expect, magnitude(expect)));
      }
      if (potential) {
        harm_err = std::max(harm_err, magnitude(fd_oracle(f, Operator::Laplacian, x, c.h, FdOrder::Eighth)));
        harm_scale = std::max(harm_scale, magnitude(value) / (r * r));
      }
      if (idx.family == Family::V && idx.floor == -1) {
        const TowerIndex u = TowerIndex::u(idx.sign, -1, idx.n, idx.m);
        const Vec3 v = std::get<Vec3>(value);
        const Vec3 expect = (1.0 + base_degree(idx.sign, idx.n)) * std::get<Vec3>(eval_tower(u, x));
        ground_worst = std::max(ground_worst, (v - expect).norm() / v.norm());
      }
      if (vec && idx.n >= 1 && (idx.family == Family::U || idx.family == Family::V)) {
        const Direction dir = Direction::from_cartesian(x);
        const Vec3 e_r = x / r;
        const Vec3 Y = eval_sph_harm_surface_grad(idx.harmonic(), dir);
        const Vec3 F = std::get<Vec3>(value);
        const double scale = F.norm() * std::max(1.0, Y.norm());
        if (scale > 0.0) {
          if (idx.family == Family::V && idx.floor % 2 == 0) {
            struct_worst = std::max(struct_worst, std::max(std::abs(F.dot(e_r)), std::abs(F.dot(Y))) / scale);
          }
          if (idx.family == Family::U && idx.floor % 2 != 0) {
            struct_worst = std::max(struct_worst, std::abs(F.dot(e_r.cross(Y))) / scale);
          }
        }
      }
    }
    if (potential) harm_worst = std::max(harm_worst, harm_scale > 0.0 ? harm_err / harm_scale : harm_err);
  }

  rep.check_le(CheckGroup::TowerEquations, "tower-equations", eq_worst, c.tol);
  rep.check_le(CheckGroup::LaplaceTower, "laplace-recurrence", lap_worst, c.tol);
  if (c.k_max >= 1) {
    // Delta(r / 2) = 1 / r on the exceptional tower.
    double worst = 0.0;
    const PointField half_r = [](const Vec3& x) { return eval_exceptional(Sign::Minus, 2, x); };
    for (const Vec3& x : points) {
      const double lap = std::get<double>(fd_oracle(half_r, Operator::Laplacian, x, c.h));
      worst = std::max(worst, std::abs(lap - 1.0 / x.norm()) * x.norm());
    }
    rep.check_le(CheckGroup::LaplaceTower, "exceptional-laplacian", worst, 1e-7);
  }
  rep.check_le(CheckGroup::Homogeneity, "homogeneity", homog_worst, 1e-12);
  rep.check_le(CheckGroup::Harmonicity, "harmonicity", harm_worst, c.tol);
  if (c.n_max >= 1) {
    rep.check_le(CheckGroup::GroundIdentity, "ground-identity", ground_worst, 1e-10);
    rep.check_le(CheckGroup::TowerEquations, "frame-structure", struct_worst, 1e-12);
  }
  Json ground = Json::array();
  for (int n = 1; n <= c.n_max; ++n) {
    for (Sign sign : {Sign::Plus, Sign::Minus}) {
      ground.push_back({{"sign", sign == Sign::Plus ? "+" : "-"}, {"n", n}, {"V/U", 1 + base_degree(sign, n)}});
    }
  }
  rep.data()["ground_constant"] = std::move(ground);
  rep.data()["indices"] = indices.size();
  rep.data()["operator_evaluations"] = eq_count;
  return rep;
}

// ---- dims ----------------------------------------------------------------

std::int64_t binomial3(int q) { return q == 0 || q == 3 ? 1 : 3; }

Report dims_suite(const std::vector<double>& s_list, const std::vector<double>& qs, const std::vector<double>& ds,
                  Json config) {
  Report rep(std::move(config));
  if (qs.size() != ds.size()) bad_config("'q_list' and 'd_presets' must have equal length");

  std::int64_t worst = 0;
  for (int q = 0; q <= 3; ++q) worst = std::max(worst, std::abs(mu(0, q) - binomial3(q)));
  rep.check_le(CheckGroup::Mu, "mu-ground-binomial", static_cast<double>(worst), 0.0);

  worst = 0;
  for (int sigma = 0; sigma <= 10; ++sigma) {
    // 2 sigma + 3 harmonics of order n = sigma + 1
    const std::int64_t count = SphHarmIndex::count(sigma + 1);
    worst = std::max({worst, std::abs(mu(sigma, 1) - count), std::abs(mu(sigma, 2) - count)});
  }
  rep.check_le(CheckGroup::Mu, "mu-harmonic-count", static_cast<double>(worst), 0.0);

  int failures = 0;
  for (int N = 1; N <= 6; ++N) {
    for (int q = 0; q <= N; ++q) {
      for (int sigma = 0; sigma <= 12; ++sigma) {
        try {
          if (mu(sigma, q, N) < 0) ++failures;
        } catch (const Error&) {
          ++failures;
        }
      }
    }
  }
  rep.check_le(CheckGroup::Mu, "mu-integral", failures, 0.0);

  const std::int64_t e1 = dirichlet_dim(-2.0, 1, 1), e2 = dirichlet_dim(-3.0, 1, 1), e3 = dirichlet_dim(-1.6, 2, 0);
  rep.check(CheckGroup::DirichletDim, "dirichlet-dim-examples", e1 == 4 && e2 == 9 && e3 == 3,
            static_cast<double>(std::abs(e1 - 4) + std::abs(e2 - 9) + std::abs(e3 - 3)), 0.0);

  // Step function on a fine grid: non-increasing, jumps only across -3/2 - k.
  int bad_steps = 0;
  for (int q : {1, 2}) {
    std::int64_t prev = -1;
    double prev_s = 0.0;
    for (double s = -8.0; s < 0.49; s += 0.125) {
      if (!WeightContext{s, 3}.valid()) continue;
      const std::int64_t d = dirichlet_dim(s, q, q == 1 ? 1 : 0);
      if (prev >= 0) {
        // some -3/2 - k, k >= 0, lies in (prev_s, s)
        const double k_lo = std::max(0.0, std::floor(-1.5 - s) + 1.0);
        const bool crosses = k_lo < -1.5 - prev_s;
        if (d > prev || (d != prev) != crosses) ++bad_steps;
      }
      prev = d;
      prev_s = s;
    }
  }
  rep.check_le(CheckGroup::DirichletDim, "step-function", bad_steps, 0.0);

  Json table = Json::array();
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const int q = static_cast<int>(qs[i]);
    for (double s : s_list) {
      table.push_back({{"s", s}, {"q", q}, {"d_q", static_cast<std::int64_t>(ds[i])},
                       {"d_s", dirichlet_dim(s, q, static_cast<std::int64_t>(ds[i]))}});
    }
  }
  rep.data()["table"] = std::move(table);
  Json mus = Json::array();
  for (int sigma = 0; sigma <= 10; ++sigma) {
    mus.push_back({{"sigma", sigma}, {"mu1", mu(sigma, 1)}, {"mu2", mu(sigma, 2)}});
  }
  rep.data()["mu"] = std::move(mus);
  return rep;
}

// ---- integrability -------------------------------------------------------

BasisFamily parse_family(const std::string& name) {
  for (BasisFamily f : {BasisFamily::VBar, BasisFamily::UBar, BasisFamily::UCheck}) {
    if (name == basis_family_name(f)) return f;
  }
  bad_config("unknown family '" + name + "' (expected Vbar, Ubar or Ucheck)");
}

Report integrability_suite(const std::vector<std::string>& families, const std::vector<double>& floors, int n_max,
                           const std::vector<double>& s_values, const std::vector<double>& R_values, Json config) {
  Report rep(std::move(config));
  int total = 0, disagree = 0, inconsistent = 0;
  Json rows = Json::array();
  for (const std::string& name : families) {
    const BasisFamily family = parse_family(name);
    int fam_total = 0, fam_agree = 0;
    for (double fl : floors) {
      const int floor = static_cast<int>(fl);
      std::vector<TowerIndex> indices;
      if (family == BasisFamily::UCheck) {
        indices.push_back(TowerIndex::exceptional(Sign::Minus, floor));
      } else {
        for (int n = 1; n <= n_max; ++n) {
          indices.push_back(family == BasisFamily::VBar ? TowerIndex::v(Sign::Minus, floor, n, 1)
                                                        : TowerIndex::u(Sign::Minus, floor, n, 1));
        }
      }
      for (const TowerIndex& idx : indices) {
        const auto verdicts = growth_oracle(idx, s_values, R_values);
        for (const GrowthVerdict& v : verdicts) {
          const bool predicted = is_integrable(idx, v.s);
          const bool ok = v.consistent && predicted == v.integrable;
          ++total;
          ++fam_total;
          if (ok) ++fam_agree;
          if (!ok) ++disagree;
          if (!v.consistent) ++inconsistent;
        }
      }
    }
    rows.push_back({{"family", name}, {"cases", fam_total}, {"agree", fam_agree}});
  }
  rep.check_le(CheckGroup::Integrability, "classifier-agreement", disagree, 0.0);
  rep.check_le(CheckGroup::Integrability, "oracle-consistency", inconsistent, 0.0);

  const bool ex1 = is_integrable(TowerIndex::v(Sign::Minus, -1, 1, 1), 1.0);
  const bool ex2 = is_integrable(TowerIndex::v(Sign::Minus, 0, 1, 1), 1.0);
  const bool ex3 = is_integrable(TowerIndex::exceptional(Sign::Minus, 0), 0.0);
  rep.check(CheckGroup::Integrability, "examples", ex1 && !ex2 && !ex3, (ex1 ? 0 : 1) + (ex2 ? 1 : 0) + (ex3 ? 1 : 0),
            0.0);
  rep.data()["families"] = std::move(rows);
  rep.data()["cases"] = total;
  return rep;
}

// ---- decompose -----------------------------------------------------------

double rel_weighted(const ShellGrid& g, const GridVectorField& a, const GridVectorField& b, double s,
                    const Medium& eps) {
  const double nb = weighted_grid_norm(g, b, s, eps);
  const GridVectorField d{a.values - b.values};
  const double nd = weighted_grid_norm(g, d, s, eps);
  return nb > 0.0 ? nd / nb : nd;
}

Json diagnostics_json(const Diagnostics& d) {
  return {{"orthogonality", d.orthogonality},
          {"weak_div_residual", d.weak_div_residual},
          {"reconstruction_error", d.reconstruction_error},
          {"solver_residual", d.solver_residual},
          {"iterations", d.iterations}};
}

void write_part(const std::filesystem::path& dir, const char* name, const ShellGrid& grid, const Eigen::VectorXd& v,
                bool vector) {
  std::ofstream os(dir / name);
  if (!os) throw Error(ErrorCode::Io, "cannot write " + (dir / name).string());
  write_grid_field(os, grid, v, vector);
  if (!os) throw Error(ErrorCode::Io, "cannot write " + (dir / name).string());
}

struct DecomposeOptions {
  double s = 0.0;
  bool correction = false;
  double tol = 1e-8;
  double solver_tol = 1e-10;
};

DecompositionResult run_decomposition(const GridVectorField& F, const DecomposeOptions& o, const Medium& eps,
                                      const ShellGrid& grid) {
  if (o.correction) {
    return decompose_with_correction(F, o.s, eps, grid, Cutoff(default_cutoff(grid.spec())), o.solver_tol);
  }
  return weighted_decompose(F, o.s, eps, grid, o.solver_tol);
}

void check_diagnostics(Report& rep, const Diagnostics& d, double tol, double solver_tol) {
  rep.check_le(CheckGroup::Decomposition, "reconstruction", d.reconstruction_error, 1e-12);
  rep.check_le(CheckGroup::Decomposition, "weighted-orthogonality", d.orthogonality, tol);
  rep.check_le(CheckGroup::Decomposition, "weak-divergence", d.weak_div_residual, 100.0 * solver_tol);
}

constexpr double kRecoveryTol = 5e-2;

}  // namespace

Report cmd_verify_towers(const Json& config) {
  ConfigReader in(config, {"n_max", "k_max", "n_points", "seed", "h", "tol"});
  TowerSuiteConfig c;
  c.n_max = static_cast<int>(in.integer("n_max", 4, 0, 8));
  c.k_max = static_cast<int>(in.integer("k_max", 2, 0, 8));
  c.n_points = static_cast<int>(in.integer("n_points", 20, 1, 10000));
  c.seed = in.seed();
  c.h = in.number("h", 1e-3);
  c.tol = in.number("tol", 1e-6);
  if (!(c.h > 0.0 && c.h <= 0.05)) bad_config("'h' must lie in (0, 0.05]");
  if (!(c.tol > 0.0)) bad_config("'tol' must be positive");
  return tower_suite(c, in.resolved());
}

Report cmd_dims(const Json& config) {
  ConfigReader in(config, {"s_list", "q_list", "d_presets"});
  std::vector<double> default_s;
  for (double s = -6.0; s <= 0.25; s += 0.25) {
    if (WeightContext{s, 3}.valid()) default_s.push_back(s);
  }
  const auto s_list = in.numbers("s_list", default_s);
  const auto q_list = in.numbers("q_list", {1.0, 2.0});
  const auto d_list = in.numbers("d_presets", {1.0, 0.0});
  for (double q : q_list) {
    if (q != std::floor(q) || q < 0 || q > 3) bad_config("'q_list' entries must be integers in [0, 3]");
  }
  for (double d : d_list) {
    if (d != std::floor(d) || d < 0 || d > 1e9) bad_config("'d_presets' entries must be non-negative integers");
  }
  for (double s : s_list) {
    if (!WeightContext{s, 3}.valid()) bad_config("weight s = " + std::to_string(s) + " lies in the excluded set");
    if (s >= 0.5) bad_config("the dimension count needs s < 1/2");
  }
  return dims_suite(s_list, q_list, d_list, in.resolved());
}

Report cmd_integrability(const Json& config) {
  ConfigReader in(config, {"families", "floors", "n_max", "s_min", "s_max", "R_list"});
  const auto families = in.strings("families", {"Vbar", "Ubar", "Ucheck"});
  const auto floors = in.numbers("floors", {-1.0, 0.0, 1.0});
  const int n_max = static_cast<int>(in.integer("n_max", 3, 1, 8));
  const auto s_min = in.integer("s_min", -3, -20, 20);
  const auto s_max = in.integer("s_max", 3, -20, 20);
  const auto R_list = in.numbers("R_list", {1e2, 1e3, 1e4});
  for (double f : floors) {
    if (f != std::floor(f) || f < -1 || f > 7) bad_config("'floors' entries must be integers in [-1, 7]");
  }
  for (double R : R_list) {
    if (!(R > 1.0)) bad_config("'R_list' entries must exceed 1");
  }
  if (s_min > s_max) bad_config("'s_min' must not exceed 's_max'");
  std::vector<double> s_values;
  for (auto s = s_min; s <= s_max; ++s) s_values.push_back(static_cast<double>(s));
  return integrability_suite(families, floors, n_max, s_values, R_list, in.resolved());
}

Report cmd_decompose(const Json& config) {
  ConfigReader in(config, {"field_file", "builtin", "s", "medium", "grid", "correction", "tol", "solver_tol",
                           "parts_out", "seed"});
  if (in.has("field_file") && in.has("builtin")) bad_config("give either 'field_file' or 'builtin'");
  DecomposeOptions o;
  o.s = in.number("s", 0.0);
  WeightContext{o.s, 3}.require_valid();
  const Medium eps = in.medium();
  o.correction = in.on_off("correction", false);
  o.tol = in.number("tol", 1e-8);
  o.solver_tol = in.number("solver_tol", 1e-10);
  in.seed();  // accepted for uniformity; the decomposition draws no random numbers
  if (!(o.tol > 0.0) || !(o.solver_tol > 0.0)) bad_config("tolerances must be positive");
  if (o.correction && !(o.s > 1.5)) bad_config("the correction space is trivial for s <= 3/2");

  std::optional<ManufacturedField> known;
  GridVectorField F;
  std::optional<ShellGrid> grid;
  if (in.has("field_file")) {
    const std::string path = in.text("field_file", "");
    std::ifstream is(path);
    if (!is) throw Error(ErrorCode::Io, "cannot open " + path);
    GridFieldFile file = read_grid_field(is);
    if (!file.vector) throw Error(ErrorCode::Parse, path + ": expected a vector field");
    if (in.has("grid")) {
      const GridSpec g = in.grid();
      if (g.r0 != file.spec.r0 || g.R != file.spec.R || g.n_r != file.spec.n_r || g.n_ang != file.spec.n_ang) {
        bad_config("'grid' does not match the field file");
      }
    }
    grid.emplace(file.spec);
    F.values = std::move(file.values);
  } else {
    const std::string name = in.text("builtin", "manufactured-mix");
    grid.emplace(in.grid());
    known = builtin_field(name, *grid, o.s, eps, Cutoff(default_cutoff(grid->spec())));
    F = known->field;
  }
  const std::string parts_out = in.text("parts_out", "");

  Json echo = in.resolved();
  echo["grid"] = Json::array({grid->spec().r0, grid->spec().R, grid->spec().n_r, grid->spec().n_ang});
  Report rep(echo);
  const DecompositionResult res = run_decomposition(F, o, eps, *grid);
  check_diagnostics(rep, res.diagnostics, o.tol, o.solver_tol);

  const double fnorm = weighted_grid_norm(*grid, F, o.s, eps);
  Json norms = {{"input", fnorm},
                {"grad_part", weighted_grid_norm(*grid, res.grad_part, o.s, eps)},
                {"sol_part", weighted_grid_norm(*grid, res.sol_part, o.s, eps)}};
  if (res.correction) norms["correction_part"] = weighted_grid_norm(*grid, res.correction->field, o.s, eps);
  rep.data()["norms"] = norms;
  rep.data()["diagnostics"] = diagnostics_json(res.diagnostics);

  if (known) {
    const std::string name = in.resolved()["builtin"].get<std::string>();
    if (name == "dirichlet-ball") {
      const double ratio = norms["grad_part"].get<double>() / fnorm;
      rep.check_le(CheckGroup::DirichletField, "grad-part-ratio", ratio, kRecoveryTol);
    } else {
      rep.check_le(CheckGroup::Decomposition, "grad-part-recovery",
                   rel_weighted(*grid, res.grad_part, known->grad_part, o.s, eps), kRecoveryTol);
      rep.check_le(CheckGroup::Decomposition, "sol-part-recovery",
                   rel_weighted(*grid, res.sol_part, known->sol_part, o.s, eps), kRecoveryTol);
    }
    if (res.correction && known->coefficients.size() == res.correction->coefficients.size() &&
        known->coefficients.size() > 0) {
      const double err = (res.correction->coefficients - known->coefficients).cwiseAbs().maxCoeff() /
                         known->coefficients.cwiseAbs().maxCoeff();
      rep.check_le(CheckGroup::Correction, "coefficient-recovery", err, kRecoveryTol);
    }
  }
  if (res.correction) {
    Json coeffs = Json::array();
    for (std::size_t i = 0; i < res.correction->basis.size(); ++i) {
      coeffs.push_back({{"index", res.correction->basis[i].label()},
                        {"coefficient", res.correction->coefficients[static_cast<Eigen::Index>(i)]}});
    }
    rep.data()["correction"] = std::move(coeffs);
  }

  if (!parts_out.empty()) {
    const std::filesystem::path dir(parts_out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create " + parts_out);
    write_part(dir, "grad_part.csv", *grid, res.grad_part.values, true);
    write_part(dir, "sol_part.csv", *grid, res.sol_part.values, true);
    if (res.correction) write_part(dir, "correction_part.csv", *grid, res.correction->field.values, true);
    write_part(dir, "potential.csv", *grid, res.potential.values, false);
  }
  return rep;
}

namespace {

// Radial isotropic medium: E = -(1 / (r^2 f(r))) / I e_r with I = int_r0^R dt / (t^2 f(t)).
Vec3 radial_dirichlet_oracle(const Medium& eps, double r0, double R, const Vec3& x) {
  std::vector<double> t, w;
  gauss_legendre(64, t, w);
  // substitute t = 1/u, dt / t^2 = -du
  const double a = 1.0 / R, b = 1.0 / r0;
  double I = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double u = 0.5 * (a + b) + 0.5 * (b - a) * t[i];
    I += 0.5 * (b - a) * w[i] / eps.radial_factor(1.0 / u);
  }
  const double r = x.norm();
  return -(1.0 / (r * r * eps.radial_factor(r) * I)) * (x / r);
}

Report sphere_suite() {
  Report rep(Json::object());
  const SphereQuadrature quad = build_quadrature(16);
  double orth = 0.0;
  for (int n = 0; n <= 8; ++n) {
    for (int m = 1; m <= 2 * n + 1; ++m) {
      for (int n2 = 0; n2 <= n; ++n2) {
        for (int m2 = 1; m2 <= 2 * n2 + 1; ++m2) {
          const SphHarmIndex a(n, m), b(n2, m2);
          const double ip = surface_inner_product([&](const Direction& d) { return eval_sph_harm(a, d); },
                                                  [&](const Direction& d) { return eval_sph_harm(b, d); }, quad);
          orth = std::max(orth, std::abs(ip - (n == n2 && m == m2 ? 1.0 : 0.0)));
        }
      }
    }
  }
  rep.check_le(CheckGroup::SphereHarmonics, "orthonormality", orth, 1e-10);
  double grad = 0.0;
  for (int n = 0; n <= 6; ++n) {
    for (int m = 1; m <= 2 * n + 1; ++m) {
      const SphHarmIndex a(n, m);
      const SurfaceFunction Y = [&](const Direction& d) { return eval_sph_harm_surface_grad(a, d); };
      grad = std::max(grad, std::abs(surface_inner_product(Y, Y, quad) - sph_eigenvalue(n)));
    }
  }
  rep.check_le(CheckGroup::SphereHarmonics, "surface-gradient-norm", grad, 1e-8);
  // Laplace-Beltrami residual at h and h / 2: observed order log2(ratio).
  const Direction dir{0.7, 0.3};
  double worst_order = 0.0;
  for (int n = 1; n <= 6; ++n) {
    const SphHarmIndex a(n, std::min(2, 2 * n + 1));
    const double e1 = std::abs(laplace_beltrami_residual(a, dir, 1e-2));
    const double e2 = std::abs(laplace_beltrami_residual(a, dir, 5e-3));
    worst_order = std::max(worst_order, std::abs(std::log2(e1 / e2) - 2.0));
  }
  rep.check_le(CheckGroup::SphereHarmonics, "laplace-beltrami-order", worst_order, 0.2);
  return rep;
}

Report helmholtz_suite(double tol) {
  Report rep(Json::object());
  const Medium id = Medium::identity();
  const GridSpec coarse{1.0, 32.0, 64, 8}, fine{1.0, 32.0, 128, 16};

  // Manufactured mix at s = 0 and one refinement step.
  std::array<double, 2> grad_err{}, sol_err{};
  for (int level = 0; level < 2; ++level) {
    const ShellGrid g(level == 0 ? coarse : fine);
    const ManufacturedField mf = manufactured_mix(g, 0.0, id, Cutoff(default_cutoff(g.spec())));
    const DecompositionResult res = weighted_decompose(mf.field, 0.0, id, g);
    if (level == 0) check_diagnostics(rep, res.diagnostics, tol, 1e-10);
    grad_err[level] = rel_weighted(g, res.grad_part, mf.grad_part, 0.0, id);
    sol_err[level] = rel_weighted(g, res.sol_part, mf.sol_part, 0.0, id);
  }
  rep.check_le(CheckGroup::Decomposition, "manufactured-recovery", std::max(grad_err[0], sol_err[0]), kRecoveryTol);
  rep.check(CheckGroup::Decomposition, "refinement-decrease",
            grad_err[1] < grad_err[0] && sol_err[1] < sol_err[0],
            std::max(grad_err[1] / grad_err[0], sol_err[1] / sol_err[0]), 1.0);

  const ShellGrid g(coarse);
  const double R = coarse.R;
  const DirichletField D = compute_dirichlet_field(id, g);
  const GridVectorField exact = sample_vector(g, [&](const Vec3& x) -> Vec3 {
    const double r = x.norm();
    return -(1.0 / (1.0 - 1.0 / R)) * x / (r * r * r);
  });
  rep.check_le(CheckGroup::DirichletField, "ball-identity", rel_weighted(g, D.field, exact, 0.0, id), kRecoveryTol);
  const Medium radial = Medium::radial(1.0, 2.0);
  const DirichletField Dr = compute_dirichlet_field(radial, g);
  const GridVectorField oracle =
      sample_vector(g, [&](const Vec3& x) { return radial_dirichlet_oracle(radial, coarse.r0, R, x); });
  rep.check_le(CheckGroup::DirichletField, "ball-radial-medium", rel_weighted(g, Dr.field, oracle, 0.0, id),
               kRecoveryTol);

  const ManufacturedField ball = dirichlet_ball_field(g);
  const DecompositionResult bres = weighted_decompose(ball.field, 0.0, id, g);
  rep.check_le(CheckGroup::DirichletField, "ball-grad-part-ratio",
               weighted_grid_norm(g, bres.grad_part, 0.0, id) / weighted_grid_norm(g, ball.field, 0.0, id),
               kRecoveryTol);

  const FluxPairing fp = flux_pairing(Cutoff(default_cutoff(coarse)));
  const double four_pi = 4.0 * std::numbers::pi;
  rep.check_le(CheckGroup::FluxPairing, "flux-pairing",
               std::max(std::abs(fp.volume_integral + four_pi), std::abs(fp.volume_integral - fp.flux_oracle)) /
                   four_pi,
               1e-6);

  // Correction machinery at s = 2.
  const Cutoff cut(default_cutoff(coarse));
  const CorrectionBasis basis = build_correction_basis(2.0, id, cut, g);
  rep.check(CheckGroup::Correction, "basis-size", static_cast<std::int64_t>(basis.indices.size()) == mu(0, 1),
            static_cast<double>(basis.indices.size()), static_cast<double>(mu(0, 1)));
  double roundtrip = 0.0;
  for (std::size_t i = 0; i < basis.fields.size(); ++i) {
    Eigen::VectorXd c = extract_correction_coefficients(basis.fields[i], basis, g);
    c[static_cast<Eigen::Index>(i)] -= 1.0;
    roundtrip = std::max(roundtrip, c.cwiseAbs().maxCoeff());
  }
  rep.check_le(CheckGroup::Correction, "gram-roundtrip", roundtrip, 1e-10);
  std::array<double, 2> coeff_err{};
  for (int level = 0; level < 2; ++level) {
    const ShellGrid gr(GridSpec{1.0, level == 0 ? 32.0 : 64.0, level == 0 ? 64 : 76, 8});
    const Cutoff c(default_cutoff(gr.spec()));
    const ManufacturedField mf = manufactured_mix(gr, 2.0, id, c, true);
    const DecompositionResult res = decompose_with_correction(mf.field, 2.0, id, gr, c);
    coeff_err[level] = (res.correction->coefficients - mf.coefficients).cwiseAbs().maxCoeff() /
                       mf.coefficients.cwiseAbs().maxCoeff();
  }
  rep.check_le(CheckGroup::Correction, "coefficient-recovery", coeff_err[0], kRecoveryTol);
  rep.check(CheckGroup::Correction, "coefficient-r-improvement", coeff_err[1] < coeff_err[0],
            coeff_err[1] / coeff_err[0], 1.0);

  // Growing Dirichlet fields of the ball.
  PointSampler rng(11);
  double resid = 0.0, trace = 0.0;
  for (int n = 1; n <= 2; ++n) {
    for (int m = 1; m <= 2 * n + 1; ++m) {
      const PointField f = [n, m](const Vec3& x) { return FieldValue(growing_dirichlet_field(n, m, x)); };
      for (int i = 0; i < 5; ++i) {
        const Vec3 x = rng.shell_point(1.5, 3.0);
        const double scale = std::get<Vec3>(f(x)).norm() / x.norm();
        resid = std::max(resid, magnitude(fd_oracle(f, Operator::Curl, x, 1e-3, FdOrder::Eighth)) / scale);
        resid = std::max(resid, magnitude(fd_oracle(f, Operator::Div, x, 1e-3, FdOrder::Eighth)) / scale);
        const Vec3 e = rng.shell_point(1.0, 1.0).normalized();
        const Vec3 v = growing_dirichlet_field(n, m, e);
        trace = std::max(trace, (v - v.dot(e) * e).norm());
      }
    }
  }
  rep.check_le(CheckGroup::GrowingDirichlet, "curl-div-residual", resid, 1e-8);
  rep.check_le(CheckGroup::GrowingDirichlet, "tangential-trace", trace, 1e-14);
  const int count = count_growing_dirichlet(-3.0);
  const std::int64_t expect = dirichlet_dim(-3.0, 1, 1) - 1;
  rep.check(CheckGroup::GrowingDirichlet, "count", count == expect, count, static_cast<double>(expect));
  return rep;
}

}  // namespace

Report cmd_report_all(const Json& config) {
  ConfigReader in(config, {"seed", "tol"});
  const std::uint64_t seed = in.seed();
  const double tol = in.number("tol", 1e-8);
  if (!(tol > 0.0)) bad_config("'tol' must be positive");
  Report rep(in.resolved());
  rep.merge(sphere_suite(), "sphere");
  TowerSuiteConfig tc;
  tc.seed = seed;
  rep.merge(tower_suite(tc, Json::object()), "towers");
  rep.merge(cmd_dims(Json::object()), "dims");
  rep.merge(cmd_integrability(Json::object()), "integrability");
  rep.merge(helmholtz_suite(tol), "helmholtz");
  return rep;
}

Report run_command(const std::string& command, const Json& config) {
  if (command == "verify-towers") return cmd_verify_towers(config);
  if (command == "dims") return cmd_dims(config);
  if (command == "integrability") return cmd_integrability(config);
  if (command == "decompose") return cmd_decompose(config);
  if (command == "report-all") return cmd_report_all(config);
  throw Error(ErrorCode::InvalidArgument, "unknown command '" + command + "'");
}

}  // namespace exthodge
