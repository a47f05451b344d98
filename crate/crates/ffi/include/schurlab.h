#ifndef SCHURLAB_H
#define SCHURLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SchurlabStatus {
  SCHURLAB_STATUS_OK = 0,
  SCHURLAB_STATUS_NULL_POINTER = 1,
  SCHURLAB_STATUS_INVALID_UTF8 = 2,
  SCHURLAB_STATUS_DIMENSION = 3,
  SCHURLAB_STATUS_ARGUMENT = 4,
  SCHURLAB_STATUS_DEGENERATE = 5,
  SCHURLAB_STATUS_DOMAIN = 6,
  SCHURLAB_STATUS_UNDEFINED_PROJECTION = 7,
  SCHURLAB_STATUS_CLASSIFICATION = 8,
  SCHURLAB_STATUS_CONSTRUCTION = 9,
  SCHURLAB_STATUS_SAMPLING = 10,
  SCHURLAB_STATUS_CASE = 11,
  SCHURLAB_STATUS_PROCEDURE = 12,
  SCHURLAB_STATUS_REFUSED = 13,
  SCHURLAB_STATUS_JSON = 14,
  SCHURLAB_STATUS_IO = 15,
  /**
   * Output buffer too small.
   */
  SCHURLAB_STATUS_BUFFER_TOO_SMALL = 16,
  SCHURLAB_STATUS_PANIC = 99,
} SchurlabStatus;

/**
 * A Reuleaux body.
 */
typedef struct SchurlabBody SchurlabBody;

/**
 * A point configuration (Euclidean or spherical).
 */
typedef struct SchurlabConfig SchurlabConfig;

/**
 * Summary of a clique-bound audit.
 */
typedef struct SchurlabAudit {
  size_t d;
  size_t n;
  size_t edges;
  size_t cliques;
  size_t bound;
  /**
   * Smallest pairwise intersection of `d`-cliques, or -1 with fewer than two.
   */
  int64_t min_pairwise_intersection;
  size_t expected_min_intersection;
  bool in_scope;
  bool passed;
} SchurlabAudit;

typedef struct SchurlabRedBlue {
  size_t blue_count;
  double min_blue_blue;
  double max_red_blue;
  double interior_margin;
  double threshold;
  bool passed;
} SchurlabRedBlue;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *schurlab_version(void);

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *schurlab_last_error(void);

/**
 * Builds a Euclidean configuration from `n * dim` row-major coordinates.
 *
 * # Safety
 * `coords` must point to `n * dim` readable doubles and `out` must be writable.
 */
enum SchurlabStatus schurlab_config_new_euclidean(const double *coords,
                                                  size_t n,
                                                  size_t dim,
                                                  struct SchurlabConfig **out);

/**
 * Parses a configuration from its JSON form.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` must be writable.
 */
enum SchurlabStatus schurlab_config_from_json(const char *json, struct SchurlabConfig **out);

/**
 * # Safety
 * `config` must come from this library and not be used afterwards; null is ignored.
 */
void schurlab_config_free(struct SchurlabConfig *config);

/**
 * Number of points, 0 for null.
 *
 * # Safety
 * `config` must be null or a live handle.
 */
size_t schurlab_config_len(const struct SchurlabConfig *config);

/**
 * Intrinsic dimension, 0 for null.
 *
 * # Safety
 * `config` must be null or a live handle.
 */
size_t schurlab_config_dim(const struct SchurlabConfig *config);

/**
 * Number of `l`-cliques in the diameter graph. `eq_tol` of 0 selects the
 * default tolerance.
 *
 * # Safety
 * `config` must be a live handle and `out` writable.
 */
enum SchurlabStatus schurlab_count_cliques(const struct SchurlabConfig *config,
                                           size_t l,
                                           double eq_tol,
                                           size_t *out);

/**
 * Audits the `d`-clique bounds; `d` of 0 uses the configuration's dimension.
 *
 * # Safety
 * `config` must be a live handle and `out` writable.
 */
enum SchurlabStatus schurlab_audit(const struct SchurlabConfig *config,
                                   size_t d,
                                   double eq_tol,
                                   struct SchurlabAudit *out);

/**
 * Smallest enclosing ball of a Euclidean configuration. `center` receives
 * `capacity >= dim` doubles.
 *
 * # Safety
 * `config` must be a live handle, `center` must hold `capacity` doubles and
 * `radius` must be writable.
 */
enum SchurlabStatus schurlab_min_enclosing_ball(const struct SchurlabConfig *config,
                                                double *center,
                                                size_t capacity,
                                                double *radius);

/**
 * Reuleaux simplex on the regular unit simplex in R^d.
 *
 * # Safety
 * `out` must be writable.
 */
enum SchurlabStatus schurlab_body_regular_simplex(size_t d, struct SchurlabBody **out);

/**
 * Rugby ball on the regular unit (d-1)-simplex in R^d.
 *
 * # Safety
 * `out` must be writable.
 */
enum SchurlabStatus schurlab_body_regular_rugby_ball(size_t d, struct SchurlabBody **out);

/**
 * # Safety
 * `body` must come from this library and not be used afterwards; null is ignored.
 */
void schurlab_body_free(struct SchurlabBody *body);

/**
 * Membership of the point with `dim` coordinates.
 *
 * # Safety
 * `body` must be a live handle, `point` must hold `dim` doubles and `out`
 * must be writable.
 */
enum SchurlabStatus schurlab_body_contains(const struct SchurlabBody *body,
                                           const double *point,
                                           size_t dim,
                                           bool *out);

/**
 * Margins of the red/blue construction in R^d with contraction `delta`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SchurlabStatus schurlab_red_blue_margins(size_t d, double delta, struct SchurlabRedBlue *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCHURLAB_H */
