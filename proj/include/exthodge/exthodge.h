/* Copyright 2026 The exthodge Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the exthodge library.
 *
 * Every function returns an exth_status. On failure a description is kept in
 * thread-local storage and can be read with exth_last_error() until the next
 * call on the same thread. Objects are opaque handles released with the
 * matching *_destroy function; destroying NULL is a no-op. Arrays handed out
 * by accessors stay valid until the owning handle is destroyed.
 */

#ifndef EXTHODGE_EXTHODGE_H_
#define EXTHODGE_EXTHODGE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(EXTHODGE_BUILDING_LIBRARY)
#define EXTH_API __attribute__((visibility("default")))
#else
#define EXTH_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum exth_status {
  EXTH_OK = 0,
  EXTH_ERR_INVALID_ARGUMENT = 1,
  EXTH_ERR_POLE_PROXIMITY = 2,
  EXTH_ERR_ORIGIN_SINGULAR = 3,
  EXTH_ERR_ORIGIN_PROXIMITY = 4,
  EXTH_ERR_KIND_MISMATCH = 5,
  EXTH_ERR_INVALID_WEIGHT = 6,
  EXTH_ERR_POSITIVE_SIGN_UNSUPPORTED = 7,
  EXTH_ERR_NON_INTEGRAL_RESULT = 8,
  EXTH_ERR_SOLVER_DIVERGED = 9,
  EXTH_ERR_INADMISSIBLE_MEDIUM = 10,
  EXTH_ERR_EMPTY_BASIS = 11,
  EXTH_ERR_SINGULAR_GRAM = 12,
  EXTH_ERR_PARSE = 13,
  EXTH_ERR_IO = 14,
  EXTH_ERR_INTERNAL = 15
} exth_status;

EXTH_API const char* exth_version(void);
EXTH_API const char* exth_status_name(exth_status status);
/* Message of the last failed call on this thread, "" if none. */
EXTH_API const char* exth_last_error(void);

/* ---- spherical harmonics ------------------------------------------------ */

/* Latitude theta in (-pi/2, pi/2). m = 1 is zonal, m = 2k cos(k phi), m = 2k+1 sin(k phi). */
EXTH_API exth_status exth_sph_harm(int n, int m, double phi, double theta, double* out);
EXTH_API exth_status exth_sph_harm_surface_grad(int n, int m, double phi, double theta, double out[3]);

/* ---- tower fields ------------------------------------------------------- */

typedef enum exth_family {
  EXTH_FAMILY_U = 0,
  EXTH_FAMILY_V = 1,
  EXTH_FAMILY_P = 2,
  EXTH_FAMILY_Z = 3,
  EXTH_FAMILY_EXCEPTIONAL = 4
} exth_family;

typedef enum exth_sign { EXTH_SIGN_PLUS = 0, EXTH_SIGN_MINUS = 1 } exth_sign;

typedef enum exth_operator {
  EXTH_OP_GRAD = 0,
  EXTH_OP_CURL = 1,
  EXTH_OP_DIV = 2,
  EXTH_OP_LAPLACIAN = 3
} exth_operator;

typedef struct exth_tower_index {
  int family; /* exth_family */
  int sign;   /* exth_sign */
  int floor;  /* power k for the Z family, ignored for P */
  int n;
  int m;
} exth_tower_index;

/* Writes 1 component for scalar towers and 3 for vector towers. */
EXTH_API exth_status exth_tower_eval(const exth_tower_index* idx, const double x[3], double out[3], int* is_vector);
/* op(tower) = coefficient * result; *is_zero is set when the image vanishes. */
EXTH_API exth_status exth_tower_apply(int op, const exth_tower_index* idx, exth_tower_index* result,
                                      double* coefficient, int* is_zero);
EXTH_API exth_status exth_tower_homogeneity(const exth_tower_index* idx, int* degree);

/* ---- weighted spaces ---------------------------------------------------- */

EXTH_API exth_status exth_weight_valid(double s, int* valid);
EXTH_API exth_status exth_is_integrable(const exth_tower_index* idx, double s, int* integrable);
EXTH_API exth_status exth_mu(int sigma, int q, int N, int64_t* out);
EXTH_API exth_status exth_dirichlet_dim(double s, int q, int64_t d_q, int N, int64_t* out);

/* ---- grids, fields, media ----------------------------------------------- */

typedef struct exth_grid exth_grid;
typedef struct exth_field exth_field;
typedef struct exth_medium exth_medium;
typedef struct exth_decomposition exth_decomposition;
typedef struct exth_report exth_report;

EXTH_API exth_status exth_grid_create(double r0, double R, int n_r, int n_ang, exth_grid** out);
EXTH_API void exth_grid_destroy(exth_grid* grid);
EXTH_API exth_status exth_grid_node_count(const exth_grid* grid, int* count);
EXTH_API exth_status exth_grid_node_position(const exth_grid* grid, int node, double out[3]);

/* values holds 3 * node_count doubles, interleaved x, y, z per node. */
EXTH_API exth_status exth_field_create(const exth_grid* grid, const double* values, size_t count, exth_field** out);
/* name: "dirichlet-ball" or "manufactured-mix". */
EXTH_API exth_status exth_field_builtin(const exth_grid* grid, const char* name, double s, const exth_medium* medium,
                                        exth_field** out);
/* Reads a vector field file; the grid comes from its header. */
EXTH_API exth_status exth_field_read(const char* path, exth_field** out);
EXTH_API exth_status exth_field_write(const exth_field* field, const char* path);
EXTH_API exth_status exth_field_values(const exth_field* field, const double** values, size_t* count);
EXTH_API void exth_field_destroy(exth_field* field);

EXTH_API exth_status exth_medium_identity(exth_medium** out);
/* eps = (1 + c (1 + r^2)^(-tau/2)) Id */
EXTH_API exth_status exth_medium_radial(double c, double tau, exth_medium** out);
EXTH_API void exth_medium_destroy(exth_medium* medium);

/* ---- decomposition ------------------------------------------------------ */

typedef struct exth_diagnostics {
  double orthogonality;
  double weak_div_residual;
  double reconstruction_error;
  double solver_residual;
  int iterations;
} exth_diagnostics;

typedef enum exth_part {
  EXTH_PART_GRAD = 0,
  EXTH_PART_SOL = 1,
  EXTH_PART_CORRECTION = 2,
  EXTH_PART_POTENTIAL = 3
} exth_part;

/* correction != 0 splits off the tower correction space first (needs s > 3/2). */
EXTH_API exth_status exth_decompose(const exth_field* field, double s, const exth_medium* medium, int correction,
                                    double tol, exth_decomposition** out);
/* Vector parts have 3 * node_count entries, the potential node_count.
 * EXTH_PART_CORRECTION fails with EXTH_ERR_EMPTY_BASIS when no correction was computed. */
EXTH_API exth_status exth_decomposition_part(const exth_decomposition* d, int part, const double** values,
                                             size_t* count);
EXTH_API exth_status exth_decomposition_diagnostics(const exth_decomposition* d, exth_diagnostics* out);
EXTH_API exth_status exth_decomposition_coefficients(const exth_decomposition* d, const double** values,
                                                     size_t* count);
EXTH_API void exth_decomposition_destroy(exth_decomposition* d);

/* ---- verification commands ---------------------------------------------- */

/* command: verify-towers, dims, integrability, decompose or report-all.
 * config_json: a JSON object of command parameters (NULL or "" for defaults).
 * A returned report may still record failed checks; see exth_report_passed. */
EXTH_API exth_status exth_run(const char* command, const char* config_json, exth_report** out);
EXTH_API const char* exth_report_json(const exth_report* report);
EXTH_API int exth_report_passed(const exth_report* report);
EXTH_API void exth_report_destroy(exth_report* report);

#ifdef __cplusplus
}
#endif

#endif /* EXTHODGE_EXTHODGE_H_ */
