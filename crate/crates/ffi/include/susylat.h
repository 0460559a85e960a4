#ifndef SUSYLAT_H
#define SUSYLAT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Largest Hilbert space the enumeration entry points accept.
 */
#define SUSYLAT_MAX_DIM 5000000

typedef enum SusylatBoundary {
  SUSYLAT_BOUNDARY_TORUS = 0,
  /**
   * Periodic along the first axis, open along the second.
   */
  SUSYLAT_BOUNDARY_CYLINDER = 1,
  /**
   * Periodic along the second axis, open along the first.
   */
  SUSYLAT_BOUNDARY_CYLINDER_OPEN_FIRST = 2,
  SUSYLAT_BOUNDARY_OPEN = 3,
} SusylatBoundary;

/**
 * Result codes.
 */
typedef enum SusylatStatus {
  SUSYLAT_STATUS_OK = 0,
  SUSYLAT_STATUS_INVALID_ARGUMENT = 1,
  SUSYLAT_STATUS_PARSE = 2,
  SUSYLAT_STATUS_CAPACITY = 3,
  SUSYLAT_STATUS_INCONSISTENT = 4,
  SUSYLAT_STATUS_INTERNAL = 5,
  SUSYLAT_STATUS_NULL_POINTER = 6,
  SUSYLAT_STATUS_PANIC = 7,
} SusylatStatus;

/**
 * Opaque ground-state report handle.
 */
typedef struct SusylatGroundStates SusylatGroundStates;

/**
 * Opaque lattice handle.
 */
typedef struct SusylatLattice SusylatLattice;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a lattice from command-line shorthand (`rect:5x5`,
 * `octagon:2x2:torus`, ...) or from a TOML spec holding one `[[lattice]]`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out` must be writable.
 */
enum SusylatStatus susylat_lattice_from_spec(const char *spec, struct SusylatLattice **out);

/**
 * Square-lattice torus with periodicity vectors `u` and `v`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SusylatStatus susylat_lattice_square_torus(int64_t ux,
                                                int64_t uy,
                                                int64_t vx,
                                                int64_t vy,
                                                struct SusylatLattice **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum SusylatStatus susylat_lattice_chain(size_t n, bool periodic, struct SusylatLattice **out);

/**
 * Square lattice in the diagonal frame, periodic along `(m,-m)` and `(n,n)`
 * as selected by `boundary`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SusylatStatus susylat_lattice_square_diagonal(size_t m,
                                                   size_t n,
                                                   enum SusylatBoundary boundary,
                                                   struct SusylatLattice **out);

/**
 * Octagon-square lattice of `m x l` plaquettes without defects.
 *
 * # Safety
 * `out` must be writable.
 */
enum SusylatStatus susylat_lattice_octagon_square(size_t m,
                                                  size_t l,
                                                  enum SusylatBoundary boundary,
                                                  struct SusylatLattice **out);

/**
 * # Safety
 * `lattice` must come from a `susylat_lattice_*` constructor and not be used afterwards.
 */
void susylat_lattice_free(struct SusylatLattice *lattice);

/**
 * # Safety
 * `lattice` must be a live handle or null (which yields 0).
 */
size_t susylat_lattice_n_sites(const struct SusylatLattice *lattice);

/**
 * # Safety
 * `lattice` must be a live handle or null (which yields 0).
 */
size_t susylat_lattice_n_edges(const struct SusylatLattice *lattice);

/**
 * Witten index by enumerating the hard-core configurations.
 *
 * # Safety
 * `lattice` must be a live handle; `out` must be writable.
 */
enum SusylatStatus susylat_witten_enumeration(const struct SusylatLattice *lattice, int64_t *out);

/**
 * Witten index of a square-lattice torus from the transfer matrix.
 *
 * # Safety
 * `out` must be writable.
 */
enum SusylatStatus susylat_witten_transfer(int64_t ux,
                                           int64_t uy,
                                           int64_t vx,
                                           int64_t vy,
                                           int64_t *out);

/**
 * Rhombus tilings of a square-lattice torus, split by tile-count parity.
 *
 * # Safety
 * `t_b` and `t_f` must be writable.
 */
enum SusylatStatus susylat_tilings(int64_t ux,
                                   int64_t uy,
                                   int64_t vx,
                                   int64_t vy,
                                   uint64_t max_nodes,
                                   uint64_t *t_b,
                                   uint64_t *t_f);

/**
 * `2` when `3 | d`, else `-1`; `d = 0` is rejected.
 *
 * # Safety
 * `out` must be writable.
 */
enum SusylatStatus susylat_theta(int64_t d, int64_t *out);

/**
 * Exact ground-state counts per fermion sector.
 *
 * # Safety
 * `lattice` must be a live handle; `out` must be writable.
 */
enum SusylatStatus susylat_ground_states(const struct SusylatLattice *lattice,
                                         uint64_t seed,
                                         struct SusylatGroundStates **out);

/**
 * # Safety
 * `gs` must be a live handle or null (which yields 0).
 */
size_t susylat_ground_states_n_sectors(const struct SusylatGroundStates *gs);

/**
 * Ground states at fermion number `f` (0 past the last sector).
 *
 * # Safety
 * `gs` must be a live handle or null (which yields 0).
 */
uint64_t susylat_ground_states_h(const struct SusylatGroundStates *gs, size_t f);

/**
 * Hilbert-space dimension at fermion number `f` (0 past the last sector).
 *
 * # Safety
 * `gs` must be a live handle or null (which yields 0).
 */
uint64_t susylat_ground_states_dim(const struct SusylatGroundStates *gs, size_t f);

/**
 * # Safety
 * `gs` must be a live handle or null (which yields 0).
 */
uint64_t susylat_ground_states_total(const struct SusylatGroundStates *gs);

/**
 * # Safety
 * `gs` must be a live handle or null (which yields 0).
 */
int64_t susylat_ground_states_witten(const struct SusylatGroundStates *gs);

/**
 * # Safety
 * `gs` must come from `susylat_ground_states` and not be used afterwards.
 */
void susylat_ground_states_free(struct SusylatGroundStates *gs);

/**
 * Message for the last failing call on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *susylat_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *susylat_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUSYLAT_H */
