// Copyright 2026 The exthodge Authors
// SPDX-License-Identifier: Apache-2.0

#include "exthodge/exthodge.h"

#include <cmath>
#include <fstream>
#include <memory>
#include <string>

#include "exthodge/builtins.hpp"
#include "exthodge/commands.hpp"
#include "exthodge/error.hpp"
#include "exthodge/grid.hpp"
#include "exthodge/helmholtz.hpp"
#include "exthodge/sphere.hpp"
#include "exthodge/towers.hpp"
#include "exthodge/weighted.hpp"

using namespace exthodge;

struct exth_grid {
  std::shared_ptr<const ShellGrid> grid;
};

struct exth_field {
  std::shared_ptr<const ShellGrid> grid;
  GridVectorField field;
};

struct exth_medium {
  Medium medium;
};

struct exth_decomposition {
  DecompositionResult result;
};

struct exth_report {
  Report report;
  std::string json;
};

namespace {

thread_local std::string g_last_error;

exth_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return EXTH_ERR_INVALID_ARGUMENT;
    case ErrorCode::PoleProximity: return EXTH_ERR_POLE_PROXIMITY;
    case ErrorCode::OriginSingular: return EXTH_ERR_ORIGIN_SINGULAR;
    case ErrorCode::OriginProximity: return EXTH_ERR_ORIGIN_PROXIMITY;
    case ErrorCode::KindMismatch: return EXTH_ERR_KIND_MISMATCH;
    case ErrorCode::InvalidWeight: return EXTH_ERR_INVALID_WEIGHT;
    case ErrorCode::PositiveSignUnsupported: return EXTH_ERR_POSITIVE_SIGN_UNSUPPORTED;
    case ErrorCode::NonIntegralResult: return EXTH_ERR_NON_INTEGRAL_RESULT;
    case ErrorCode::SolverDiverged: return EXTH_ERR_SOLVER_DIVERGED;
    case ErrorCode::InadmissibleMedium: return EXTH_ERR_INADMISSIBLE_MEDIUM;
    case ErrorCode::EmptyBasis: return EXTH_ERR_EMPTY_BASIS;
    case ErrorCode::SingularGram: return EXTH_ERR_SINGULAR_GRAM;
    case ErrorCode::Parse: return EXTH_ERR_PARSE;
    case ErrorCode::Io: return EXTH_ERR_IO;
  }
  return EXTH_ERR_INTERNAL;
}

exth_status fail(exth_status status, const std::string& msg) {
  g_last_error = msg;
  return status;
}

template <class F>
exth_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return EXTH_OK;
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(EXTH_ERR_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(EXTH_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(EXTH_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(EXTH_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

TowerIndex to_index(const exth_tower_index* c) {
  require(c != nullptr, "tower index is NULL");
  require(c->sign == EXTH_SIGN_PLUS || c->sign == EXTH_SIGN_MINUS, "unknown sign");
  const Sign sign = c->sign == EXTH_SIGN_PLUS ? Sign::Plus : Sign::Minus;
  TowerIndex idx;
  switch (c->family) {
    case EXTH_FAMILY_U: idx = TowerIndex::u(sign, c->floor, c->n, c->m); break;
    case EXTH_FAMILY_V: idx = TowerIndex::v(sign, c->floor, c->n, c->m); break;
    case EXTH_FAMILY_P: idx = TowerIndex::p(sign, c->n, c->m); break;
    case EXTH_FAMILY_Z: idx = TowerIndex::z(sign, c->floor, c->n, c->m); break;
    case EXTH_FAMILY_EXCEPTIONAL: idx = TowerIndex::exceptional(sign, c->floor); break;
    default: throw Error(ErrorCode::InvalidArgument, "unknown tower family");
  }
  return idx;
}

exth_tower_index from_index(const TowerIndex& idx) {
  exth_tower_index c{};
  switch (idx.family) {
    case Family::U: c.family = EXTH_FAMILY_U; break;
    case Family::V: c.family = EXTH_FAMILY_V; break;
    case Family::P: c.family = EXTH_FAMILY_P; break;
    case Family::Z: c.family = EXTH_FAMILY_Z; break;
    case Family::ExceptionalU: c.family = EXTH_FAMILY_EXCEPTIONAL; break;
  }
  c.sign = idx.sign == Sign::Plus ? EXTH_SIGN_PLUS : EXTH_SIGN_MINUS;
  c.floor = idx.floor;
  c.n = idx.n;
  c.m = idx.m;
  return c;
}

Operator to_operator(int op) {
  switch (op) {
    case EXTH_OP_GRAD: return Operator::Grad;
    case EXTH_OP_CURL: return Operator::Curl;
    case EXTH_OP_DIV: return Operator::Div;
    case EXTH_OP_LAPLACIAN: return Operator::Laplacian;
    default: throw Error(ErrorCode::InvalidArgument, "unknown operator");
  }
}

Direction direction(double phi, double theta) {
  require(std::isfinite(phi) && std::isfinite(theta), "angles must be finite");
  if (!(std::abs(theta) < 0.5 * 3.14159265358979323846)) {
    throw Error(ErrorCode::PoleProximity, "latitude must lie strictly between the poles");
  }
  return {phi, theta};
}

const Medium& medium_or_identity(const exth_medium* m) {
  static const Medium identity = Medium::identity();
  return m ? m->medium : identity;
}

}  // namespace

extern "C" {

const char* exth_version(void) { return kVersion; }

const char* exth_status_name(exth_status status) {
  switch (status) {
    case EXTH_OK: return "ok";
    case EXTH_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case EXTH_ERR_POLE_PROXIMITY: return "pole_proximity";
    case EXTH_ERR_ORIGIN_SINGULAR: return "origin_singular";
    case EXTH_ERR_ORIGIN_PROXIMITY: return "origin_proximity";
    case EXTH_ERR_KIND_MISMATCH: return "kind_mismatch";
    case EXTH_ERR_INVALID_WEIGHT: return "invalid_weight";
    case EXTH_ERR_POSITIVE_SIGN_UNSUPPORTED: return "positive_sign_unsupported";
    case EXTH_ERR_NON_INTEGRAL_RESULT: return "non_integral_result";
    case EXTH_ERR_SOLVER_DIVERGED: return "solver_diverged";
    case EXTH_ERR_INADMISSIBLE_MEDIUM: return "inadmissible_medium";
    case EXTH_ERR_EMPTY_BASIS: return "empty_basis";
    case EXTH_ERR_SINGULAR_GRAM: return "singular_gram";
    case EXTH_ERR_PARSE: return "parse";
    case EXTH_ERR_IO: return "io";
    case EXTH_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* exth_last_error(void) { return g_last_error.c_str(); }

exth_status exth_sph_harm(int n, int m, double phi, double theta, double* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is NULL");
    *out = eval_sph_harm(SphHarmIndex(n, m), direction(phi, theta));
  });
}

exth_status exth_sph_harm_surface_grad(int n, int m, double phi, double theta, double out[3]) {
  return guarded([&] {
    require(out != nullptr, "output pointer is NULL");
    const Vec3 Y = eval_sph_harm_surface_grad(SphHarmIndex(n, m), direction(phi, theta));
    for (int a = 0; a < 3; ++a) out[a] = Y[a];
  });
}

exth_status exth_tower_eval(const exth_tower_index* idx, const double x[3], double out[3], int* is_vector) {
  return guarded([&] {
    require(x != nullptr && out != nullptr, "point or output pointer is NULL");
    const FieldValue v = eval_tower(to_index(idx), Vec3(x[0], x[1], x[2]));
    if (is_scalar(v)) {
      out[0] = std::get<double>(v);
    } else {
      const Vec3& w = std::get<Vec3>(v);
      for (int a = 0; a < 3; ++a) out[a] = w[a];
    }
    if (is_vector) *is_vector = is_scalar(v) ? 0 : 1;
  });
}

exth_status exth_tower_apply(int op, const exth_tower_index* idx, exth_tower_index* result, double* coefficient,
                             int* is_zero) {
  return guarded([&] {
    require(result != nullptr && coefficient != nullptr && is_zero != nullptr, "output pointer is NULL");
    const auto term = apply_operator(to_operator(op), to_index(idx));
    *is_zero = term ? 0 : 1;
    *coefficient = term ? term->coefficient : 0.0;
    *result = term ? from_index(term->index) : exth_tower_index{};
  });
}

exth_status exth_tower_homogeneity(const exth_tower_index* idx, int* degree) {
  return guarded([&] {
    require(degree != nullptr, "output pointer is NULL");
    *degree = homogeneity_degree(to_index(idx));
  });
}

exth_status exth_weight_valid(double s, int* valid) {
  return guarded([&] {
    require(valid != nullptr, "output pointer is NULL");
    *valid = std::isfinite(s) && WeightContext{s, 3}.valid() ? 1 : 0;
  });
}

exth_status exth_is_integrable(const exth_tower_index* idx, double s, int* integrable) {
  return guarded([&] {
    require(integrable != nullptr, "output pointer is NULL");
    *integrable = is_integrable(to_index(idx), s) ? 1 : 0;
  });
}

exth_status exth_mu(int sigma, int q, int N, int64_t* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is NULL");
    *out = mu(sigma, q, N);
  });
}

exth_status exth_dirichlet_dim(double s, int q, int64_t d_q, int N, int64_t* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is NULL");
    *out = dirichlet_dim(s, q, d_q, N);
  });
}

exth_status exth_grid_create(double r0, double R, int n_r, int n_ang, exth_grid** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is NULL");
    *out = nullptr;
    auto grid = std::make_shared<const ShellGrid>(GridSpec{r0, R, n_r, n_ang});
    *out = new exth_grid{std::move(grid)};
  });
}

void exth_grid_destroy(exth_grid* grid) { delete grid; }

exth_status exth_grid_node_count(const exth_grid* grid, int* count) {
  return guarded([&] {
    require(grid != nullptr && count != nullptr, "grid or output pointer is NULL");
    *count = grid->grid->size();
  });
}

exth_status exth_grid_node_position(const exth_grid* grid, int node, double out[3]) {
  return guarded([&] {
    require(grid != nullptr && out != nullptr, "grid or output pointer is NULL");
    require(node >= 0 && node < grid->grid->size(), "node index out of range");
    const Vec3 p = grid->grid->position(node);
    for (int a = 0; a < 3; ++a) out[a] = p[a];
  });
}

exth_status exth_field_create(const exth_grid* grid, const double* values, size_t count, exth_field** out) {
  return guarded([&] {
    require(grid != nullptr && values != nullptr && out != nullptr, "NULL argument");
    *out = nullptr;
    require(count == 3 * static_cast<size_t>(grid->grid->size()), "expected 3 values per node");
    GridVectorField f{Eigen::Map<const Eigen::VectorXd>(values, static_cast<Eigen::Index>(count))};
    require(f.values.allFinite(), "field has non-finite samples");
    *out = new exth_field{grid->grid, std::move(f)};
  });
}

exth_status exth_field_builtin(const exth_grid* grid, const char* name, double s, const exth_medium* medium,
                               exth_field** out) {
  return guarded([&] {
    require(grid != nullptr && name != nullptr && out != nullptr, "NULL argument");
    *out = nullptr;
    const ShellGrid& g = *grid->grid;
    ManufacturedField mf = builtin_field(name, g, s, medium_or_identity(medium), Cutoff(default_cutoff(g.spec())));
    *out = new exth_field{grid->grid, std::move(mf.field)};
  });
}

exth_status exth_field_read(const char* path, exth_field** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "NULL argument");
    *out = nullptr;
    std::ifstream is(path);
    if (!is) throw Error(ErrorCode::Io, std::string("cannot open ") + path);
    GridFieldFile file = read_grid_field(is);
    if (!file.vector) throw Error(ErrorCode::Parse, std::string(path) + ": expected a vector field");
    auto grid = std::make_shared<const ShellGrid>(file.spec);
    *out = new exth_field{std::move(grid), GridVectorField{std::move(file.values)}};
  });
}

exth_status exth_field_write(const exth_field* field, const char* path) {
  return guarded([&] {
    require(field != nullptr && path != nullptr, "NULL argument");
    std::ofstream os(path);
    if (!os) throw Error(ErrorCode::Io, std::string("cannot write ") + path);
    write_grid_field(os, *field->grid, field->field.values, true);
    if (!os) throw Error(ErrorCode::Io, std::string("cannot write ") + path);
  });
}

exth_status exth_field_values(const exth_field* field, const double** values, size_t* count) {
  return guarded([&] {
    require(field != nullptr && values != nullptr && count != nullptr, "NULL argument");
    *values = field->field.values.data();
    *count = static_cast<size_t>(field->field.values.size());
  });
}

void exth_field_destroy(exth_field* field) { delete field; }

exth_status exth_medium_identity(exth_medium** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is NULL");
    *out = new exth_medium{Medium::identity()};
  });
}

exth_status exth_medium_radial(double c, double tau, exth_medium** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is NULL");
    *out = nullptr;
    *out = new exth_medium{Medium::radial(c, tau)};
  });
}

void exth_medium_destroy(exth_medium* medium) { delete medium; }

exth_status exth_decompose(const exth_field* field, double s, const exth_medium* medium, int correction, double tol,
                           exth_decomposition** out) {
  return guarded([&] {
    require(field != nullptr && out != nullptr, "NULL argument");
    *out = nullptr;
    const ShellGrid& g = *field->grid;
    const Medium& eps = medium_or_identity(medium);
    DecompositionResult res = correction
                                  ? decompose_with_correction(field->field, s, eps, g, Cutoff(default_cutoff(g.spec())), tol)
                                  : weighted_decompose(field->field, s, eps, g, tol);
    *out = new exth_decomposition{std::move(res)};
  });
}

exth_status exth_decomposition_part(const exth_decomposition* d, int part, const double** values, size_t* count) {
  return guarded([&] {
    require(d != nullptr && values != nullptr && count != nullptr, "NULL argument");
    const Eigen::VectorXd* v = nullptr;
    switch (part) {
      case EXTH_PART_GRAD: v = &d->result.grad_part.values; break;
      case EXTH_PART_SOL: v = &d->result.sol_part.values; break;
      case EXTH_PART_POTENTIAL: v = &d->result.potential.values; break;
      case EXTH_PART_CORRECTION:
        if (!d->result.correction) throw Error(ErrorCode::EmptyBasis, "no correction part was computed");
        v = &d->result.correction->field.values;
        break;
      default: throw Error(ErrorCode::InvalidArgument, "unknown part");
    }
    *values = v->data();
    *count = static_cast<size_t>(v->size());
  });
}

exth_status exth_decomposition_diagnostics(const exth_decomposition* d, exth_diagnostics* out) {
  return guarded([&] {
    require(d != nullptr && out != nullptr, "NULL argument");
    const Diagnostics& g = d->result.diagnostics;
    *out = {g.orthogonality, g.weak_div_residual, g.reconstruction_error, g.solver_residual, g.iterations};
  });
}

exth_status exth_decomposition_coefficients(const exth_decomposition* d, const double** values, size_t* count) {
  return guarded([&] {
    require(d != nullptr && values != nullptr && count != nullptr, "NULL argument");
    if (!d->result.correction) throw Error(ErrorCode::EmptyBasis, "no correction part was computed");
    *values = d->result.correction->coefficients.data();
    *count = static_cast<size_t>(d->result.correction->coefficients.size());
  });
}

void exth_decomposition_destroy(exth_decomposition* d) { delete d; }

exth_status exth_run(const char* command, const char* config_json, exth_report** out) {
  return guarded([&] {
    require(command != nullptr && out != nullptr, "NULL argument");
    *out = nullptr;
    const Json config =
        config_json && *config_json ? Json::parse(config_json) : Json::object();
    Report rep = run_command(command, config);
    std::string json = rep.dump();
    *out = new exth_report{std::move(rep), std::move(json)};
  });
}

const char* exth_report_json(const exth_report* report) { return report ? report->json.c_str() : ""; }

int exth_report_passed(const exth_report* report) { return report && report->report.passed() ? 1 : 0; }

void exth_report_destroy(exth_report* report) { delete report; }

}  // extern "C"
