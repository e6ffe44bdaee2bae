#ifndef COLLATZGF_H
#define COLLATZGF_H

/* C interface to the generalized-Collatz generating-function library.
 *
 * All functions returning cgf_status set a thread-local error message
 * retrievable with cgf_last_error() on failure. Strings returned through
 * char** out-parameters are heap-allocated JSON documents; release them
 * with cgf_string_free(). Maps are opaque immutable handles, safe to share
 * across threads once constructed. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cgf_status {
    CGF_OK = 0,
    CGF_ERROR_PARSE = 1,      /* malformed config/options/report input */
    CGF_ERROR_VALIDATION = 2, /* integrality conditions violated */
    CGF_ERROR_DOMAIN = 3,     /* argument outside the proven domain */
    CGF_ERROR_BUDGET = 4,     /* truncation or dimension budget exceeded */
    CGF_ERROR_NUMERIC = 5,    /* non-finite sample or pole proximity */
    CGF_ERROR_ARGUMENT = 6,   /* null pointer or malformed scalar argument */
    CGF_ERROR_INTERNAL = 7
} cgf_status;

typedef struct cgf_map cgf_map;

/* Library version string; static storage, do not free. */
const char* cgf_version(void);

/* Message of the most recent failure on this thread; static until the next
 * failing call, do not free. Empty string when no failure occurred. */
const char* cgf_last_error(void);

void cgf_string_free(char* s);

/* Constructors. Presets: 3n+1, 3n-1, classical, double-3n+1, coupled-2d,
 * mu-ge-lambda. The JSON schema is the one emitted by cgf_map_describe's
 * "config" field: {d, m, branches:[{r, A, b}]} with rationals as
 * [numerator, denominator]. */
cgf_status cgf_map_from_preset(const char* name, cgf_map** out);
cgf_status cgf_map_from_json(const char* config_json, cgf_map** out);
void cgf_map_free(cgf_map* map);

/* {config, d, m, amax, bmax, radius_w, classes:[{r, lambda, mu}]} */
cgf_status cgf_map_describe(const cgf_map* map, char** json_out);

/* Exact orbit t_0(n)..t_k(n); values as decimal strings.
 * {dim, k, orbit:[["..",..],..]} */
cgf_status cgf_map_orbit(const cgf_map* map, const long* n, size_t dim, int k, char** json_out);

/* Truncated generating functions of level k on the box `limits`.
 * {dim, k, limits, components:[[[re,im],...],...]}, row-major with the last
 * variable fastest. */
cgf_status cgf_series(const cgf_map* map, int k, const int* limits, size_t dim, char** json_out);

/* Partial-fraction data. r selects one residue class (length dim); pass
 * r == NULL for every class. Terms carry {ell, nu, factors:[{unit, scale,
 * exponent, root}]} with exact rationals as [num, den]. */
cgf_status cgf_pfd(const cgf_map* map, const long* r, size_t dim, char** json_out);

/* Runs one named check (recurrence | contour | bivariate |
 * corollary_structure | bound | convergence | branch_invariance |
 * delta_identity). options_json may be NULL, or an object with any of:
 * k_min, k_max, limits, quad_nodes, K, n_max, k_bound, seed, tol_scale,
 * tol_floor, tol_relative, tol_tail_multiplier, z_points ([[re,im],..] per
 * point), w_points. Returns a report document {schema_version, manifest,
 * checks:[...]}; all_pass is reported inside each check block. */
cgf_status cgf_verify(const cgf_map* map, const char* check_name, const char* options_json,
                      char** json_out);

/* Merges report documents (union of records per check kind, aggregates
 * recomputed; inconsistent records are rejected). */
cgf_status cgf_report_merge(const char* const* docs, size_t count, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* COLLATZGF_H */
