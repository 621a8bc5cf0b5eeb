// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

// exthodge command-line front end. Builds a JSON config from the flags, runs
// the command through the C library and writes the report.
//
// Exit codes: 0 all checks pass, 1 a check or the solver failed, 2 usage error.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "exthodge/exthodge.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Flags {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::string> grid;
  std::optional<std::string> medium;
  std::optional<double> s;
  std::optional<std::string> correction;
  std::string out;

  std::optional<int> n_max, k_max, n_points;
  std::optional<double> h;
  std::vector<double> s_list, q_list, d_presets;
  std::vector<std::string> families;
  std::vector<double> floors, s_range, R_list;
  std::optional<std::string> field, builtin, parts_out;
};

template <class T>
void put(Json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
void put(Json& j, const char* key, const std::vector<T>& v) {
  if (!v.empty()) j[key] = v;
}

int exit_code_for(exth_status status) {
  switch (status) {
    case EXTH_OK: return kExitPass;
    case EXTH_ERR_INVALID_ARGUMENT:
    case EXTH_ERR_INVALID_WEIGHT:
    case EXTH_ERR_INADMISSIBLE_MEDIUM:
    case EXTH_ERR_EMPTY_BASIS:
    case EXTH_ERR_PARSE:
    case EXTH_ERR_IO: return kExitUsage;
    default: return kExitFail;
  }
}

int run(const std::string& command, const Json& config, const Flags& flags) {
  exth_report* report = nullptr;
  const std::string text = config.dump();
  const exth_status status = exth_run(command.c_str(), text.c_str(), &report);
  if (status != EXTH_OK) {
    std::fprintf(stderr, "exthodge %s: %s: %s\n", command.c_str(), exth_status_name(status), exth_last_error());
    return exit_code_for(status);
  }
  const std::string json = exth_report_json(report);
  const bool passed = exth_report_passed(report) != 0;
  exth_report_destroy(report);

  if (command == "decompose") {
    const Json parsed = Json::parse(json);
    if (parsed.contains("data") && parsed["data"].contains("diagnostics")) {
      const Json& d = parsed["data"]["diagnostics"];
      std::fprintf(stderr, "orthogonality %.3e  weak divergence %.3e  reconstruction %.3e  iterations %d\n",
                   d["orthogonality"].get<double>(), d["weak_div_residual"].get<double>(),
                   d["reconstruction_error"].get<double>(), d["iterations"].get<int>());
    }
  }

  if (flags.out.empty()) {
    std::fwrite(json.data(), 1, json.size(), stdout);
  } else {
    std::ofstream os(flags.out, std::ios::binary);
    os << json;
    if (!os) {
      std::fprintf(stderr, "exthodge %s: cannot write %s\n", command.c_str(), flags.out.c_str());
      return kExitUsage;
    }
  }
  return passed ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tower fields, weighted dimension counts and weighted Helmholtz decompositions."};
  app.require_subcommand(1);
  app.set_version_flag("--version", exth_version());
  Flags f;

  auto common = [&f](CLI::App* sub) {
    sub->add_option("--out", f.out, "Write the report here instead of stdout");
  };
  auto seeded = [&f](CLI::App* sub) { sub->add_option("--seed", f.seed, "Seed for random point sampling"); };
  auto tolerance = [&f](CLI::App* sub, const char* what) { sub->add_option("--tol", f.tol, what); };

  CLI::App* towers = app.add_subcommand("verify-towers", "Check the tower equations against finite differences");
  common(towers);
  seeded(towers);
  tolerance(towers, "Relative tolerance of the finite-difference comparison");
  towers->add_option("--n-max", f.n_max, "Largest harmonic order (<= 8)");
  towers->add_option("--k-max", f.k_max, "Largest tower power; floors run up to 2 k_max - 1");
  towers->add_option("--n-points", f.n_points, "Random points in 1.1 <= |x| <= 3");
  towers->add_option("--step", f.h, "Finite-difference step");

  CLI::App* dims = app.add_subcommand("dims", "Tabulate mu and the Dirichlet dimension counts");
  common(dims);
  dims->add_option("--s-list", f.s_list, "Weights, comma separated")->delimiter(',');
  dims->add_option("--q-list", f.q_list, "Form degrees, comma separated")->delimiter(',');
  dims->add_option("--d-presets", f.d_presets, "Obstacle Betti numbers matching --q-list")->delimiter(',');

  CLI::App* integ = app.add_subcommand("integrability", "Compare the integrability rule with a growth oracle");
  common(integ);
  integ->add_option("--families", f.families, "Vbar,Ubar,Ucheck")->delimiter(',');
  integ->add_option("--floors", f.floors, "Tower floors, comma separated")->delimiter(',');
  integ->add_option("--n-max", f.n_max, "Largest harmonic order");
  integ->add_option("--s-range", f.s_range, "Integer weight range min,max")->delimiter(',')->expected(2);
  integ->add_option("--R-list", f.R_list, "Truncation radii, comma separated")->delimiter(',');

  CLI::App* dec = app.add_subcommand("decompose", "Weighted Helmholtz decomposition of a vector field");
  common(dec);
  seeded(dec);
  tolerance(dec, "Tolerance of the weighted orthogonality check");
  auto* field_opt = dec->add_option("--field", f.field, "Vector field file");
  dec->add_option("--builtin", f.builtin, "dirichlet-ball or manufactured-mix")->excludes(field_opt);
  dec->add_option("--s", f.s, "Weight exponent");
  dec->add_option("--grid", f.grid, "r0,R,n_r,n_ang");
  dec->add_option("--medium", f.medium, "identity or radial:c,tau");
  dec->add_option("--correction", f.correction, "on or off")->check(CLI::IsMember({"on", "off"}));
  dec->add_option("--parts-out", f.parts_out, "Directory for the part files");

  CLI::App* all = app.add_subcommand("report-all", "Run every verification suite");
  common(all);
  seeded(all);
  tolerance(all, "Tolerance of the weighted orthogonality checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  Json config = Json::object();
  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  if (command == "verify-towers") {
    put(config, "n_max", f.n_max);
    put(config, "k_max", f.k_max);
    put(config, "n_points", f.n_points);
    put(config, "seed", f.seed);
    put(config, "h", f.h);
    put(config, "tol", f.tol);
  } else if (command == "dims") {
    put(config, "s_list", f.s_list);
    put(config, "q_list", f.q_list);
    put(config, "d_presets", f.d_presets);
  } else if (command == "integrability") {
    put(config, "families", f.families);
    put(config, "floors", f.floors);
    put(config, "n_max", f.n_max);
    if (!f.s_range.empty()) {
      if (f.s_range[0] != static_cast<long>(f.s_range[0]) || f.s_range[1] != static_cast<long>(f.s_range[1])) {
        std::fprintf(stderr, "exthodge integrability: --s-range needs integers\n");
        return kExitUsage;
      }
      config["s_min"] = static_cast<long>(f.s_range[0]);
      config["s_max"] = static_cast<long>(f.s_range[1]);
    }
    put(config, "R_list", f.R_list);
  } else if (command == "decompose") {
    put(config, "field_file", f.field);
    put(config, "builtin", f.builtin);
    put(config, "s", f.s);
    put(config, "grid", f.grid);
    put(config, "medium", f.medium);
    put(config, "correction", f.correction);
    put(config, "tol", f.tol);
    put(config, "parts_out", f.parts_out);
    put(config, "seed", f.seed);
  } else {
    put(config, "seed", f.seed);
    put(config, "tol", f.tol);
  }
  return run(command, config, f);
}
