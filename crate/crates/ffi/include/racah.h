#ifndef RACAH_H
#define RACAH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Arithmetic of an engine.
 */
typedef enum RacahMode {
  RACAH_MODE_CLASSICAL = 0,
  RACAH_MODE_QUANTUM = 1,
} RacahMode;

/**
 * Modes covered by [`racah_verify`].
 */
typedef enum RacahModeSelection {
  RACAH_MODE_SELECTION_CLASSICAL = 0,
  RACAH_MODE_SELECTION_QUANTUM = 1,
  RACAH_MODE_SELECTION_BOTH = 2,
} RacahModeSelection;

/**
 * Parameter handling for [`racah_verify`].
 */
typedef enum RacahParams {
  RACAH_PARAMS_EXACT = 0,
  RACAH_PARAMS_RANDOM = 1,
} RacahParams;

/**
 * Status code returned by every fallible call.
 */
typedef enum RacahStatus {
  RACAH_STATUS_OK = 0,
  RACAH_STATUS_NULL_POINTER = 1,
  RACAH_STATUS_INVALID_ARGUMENT = 2,
  RACAH_STATUS_BAD_INDICES = 3,
  RACAH_STATUS_MODE_MISMATCH = 4,
  RACAH_STATUS_ALGEBRA_FAILURE = 5,
  RACAH_STATUS_IO = 6,
  RACAH_STATUS_PANIC = 7,
} RacahStatus;

/**
 * Suite run by [`racah_verify`].
 */
typedef enum RacahSuite {
  RACAH_SUITE_RACAH = 0,
  RACAH_SUITE_SUBSTRUCTURES = 1,
  RACAH_SUITE_CASIMIRS = 2,
  RACAH_SUITE_INVOLUTION = 3,
  RACAH_SUITE_LIMIT = 4,
  RACAH_SUITE_ALL = 5,
} RacahSuite;

/**
 * Symbolic engine over `n` sites holding the two- and one-index Casimirs.
 */
typedef struct RacahEngine RacahEngine;

/**
 * An exact observable produced by an engine.
 */
typedef struct RacahObservable RacahObservable;

/**
 * Verification options for [`racah_verify`].
 */
typedef struct RacahVerifyOptions {
  uint32_t n;
  enum RacahModeSelection mode;
  enum RacahSuite suite;
  enum RacahParams params;
  bool has_seed;
  uint64_t seed;
  /**
   * Worker threads; 0 means available parallelism.
   */
  uint32_t threads;
} RacahVerifyOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call on the same thread.
 */
const char *racah_last_error_message(void);

/**
 * Release a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void racah_string_free(char *s);

/**
 * Create an engine over `n >= 1` sites with symbolic parameters.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum RacahStatus racah_engine_new(enum RacahMode mode, uint32_t n, struct RacahEngine **out);

/**
 * Release an engine. Null is ignored.
 *
 * # Safety
 * `engine` must come from [`racah_engine_new`] and not have been freed.
 */
void racah_engine_free(struct RacahEngine *engine);

/**
 * Number of sites, or 0 for null.
 *
 * # Safety
 * `engine` must be null or a live engine.
 */
uint32_t racah_engine_sites(const struct RacahEngine *engine);

/**
 * Left Casimir on sites `1..=m`.
 *
 * # Safety
 * `engine` must be a live engine and `out` valid for writes.
 */
enum RacahStatus racah_left_casimir(const struct RacahEngine *engine,
                                    uint32_t m,
                                    struct RacahObservable **out);

/**
 * Right Casimir on the last `m` sites.
 *
 * # Safety
 * `engine` must be a live engine and `out` valid for writes.
 */
enum RacahStatus racah_right_casimir(const struct RacahEngine *engine,
                                     uint32_t m,
                                     struct RacahObservable **out);

/**
 * Two-index Casimir `C_ij`.
 *
 * # Safety
 * `engine` must be a live engine and `out` valid for writes.
 */
enum RacahStatus racah_two_index_c(const struct RacahEngine *engine,
                                   uint32_t i,
                                   uint32_t j,
                                   struct RacahObservable **out);

/**
 * One-index Casimir `C_i`.
 *
 * # Safety
 * `engine` must be a live engine and `out` valid for writes.
 */
enum RacahStatus racah_one_index_c(const struct RacahEngine *engine,
                                   uint32_t i,
                                   struct RacahObservable **out);

/**
 * `P_ij = C_ij - C_i - C_j`.
 *
 * # Safety
 * `engine` must be a live engine and `out` valid for writes.
 */
enum RacahStatus racah_p(const struct RacahEngine *engine,
                         uint32_t i,
                         uint32_t j,
                         struct RacahObservable **out);

/**
 * `F_ijk = ½ {P_ij, P_jk}`.
 *
 * # Safety
 * `engine` must be a live engine and `out` valid for writes.
 */
enum RacahStatus racah_f(const struct RacahEngine *engine,
                         uint32_t i,
                         uint32_t j,
                         uint32_t k,
                         struct RacahObservable **out);

/**
 * Casimir of the site subset `indices[0..len]`.
 *
 * # Safety
 * `engine` must be a live engine, `indices` valid for `len` reads and `out`
 * valid for writes.
 */
enum RacahStatus racah_subset_casimir(const struct RacahEngine *engine,
                                      const uint32_t *indices,
                                      size_t len,
                                      struct RacahObservable **out);

/**
 * Poisson bracket or `[a, b]/(i hb)`, following the engine mode.
 *
 * # Safety
 * All handles must be live and `out` valid for writes.
 */
enum RacahStatus racah_bracket(const struct RacahEngine *engine,
                               const struct RacahObservable *a,
                               const struct RacahObservable *b,
                               struct RacahObservable **out);

/**
 * Release an observable. Null is ignored.
 *
 * # Safety
 * `obs` must come from this library and not have been freed.
 */
void racah_observable_free(struct RacahObservable *obs);

/**
 * Number of stored terms, or 0 for null.
 *
 * # Safety
 * `obs` must be null or a live observable.
 */
size_t racah_observable_term_count(const struct RacahObservable *obs);

/**
 * Whether the observable is exactly zero; null counts as zero.
 *
 * # Safety
 * `obs` must be null or a live observable.
 */
bool racah_observable_is_zero(const struct RacahObservable *obs);

/**
 * Canonical text form, released with [`racah_string_free`].
 *
 * # Safety
 * `obs` must be a live observable and `out` valid for writes.
 */
enum RacahStatus racah_observable_render(const struct RacahObservable *obs, char **out);

/**
 * Run a verification suite. On success `out_json` receives the report
 * (release with [`racah_string_free`]) and `out_exit_code` the command-line
 * exit code the report implies.
 *
 * # Safety
 * `options` must be valid for reads; both outputs valid for writes.
 */
enum RacahStatus racah_verify(const struct RacahVerifyOptions *options,
                              char **out_json,
                              int32_t *out_exit_code);

/**
 * DOT description of the substructure chain for `n >= 3` sites.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum RacahStatus racah_chain_graph_dot(uint32_t n, char **out);

/**
 * Library version as a static NUL-terminated string.
 */
const char *racah_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* RACAH_H */
