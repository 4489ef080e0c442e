#ifndef TORICSING_H
#define TORICSING_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TsStatus {
  TS_STATUS_OK = 0,
  TS_STATUS_INVALID = 1,
  TS_STATUS_BUDGET = 2,
  TS_STATUS_INCOHERENT = 3,
  TS_STATUS_OVERFLOW = 4,
  TS_STATUS_NULL_POINTER = 5,
  TS_STATUS_BUFFER_TOO_SMALL = 6,
  TS_STATUS_PANIC = 7,
} TsStatus;

// A point configuration.
typedef struct TsConfig TsConfig;

// A toric ideal with its reduced Gröbner basis.
typedef struct TsIdeal TsIdeal;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread. Owned by the library and
// valid until the next call.
const char *ts_last_error(void);

// Closed-form configuration of D_n or E_n (A_n falls back to the Hilbert
// basis).
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum TsStatus ts_config_closed_form(char kind, size_t n, struct TsConfig **out);

// Hilbert basis configuration of the diagram, searched in a box of the given
// bound (0 for the default).
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum TsStatus ts_config_lipman(char kind, size_t n, uint32_t bound, struct TsConfig **out);

// Configuration from `npoints` points of dimension `dim`, stored row-major.
//
// # Safety
// `data` must point to `npoints * dim` readable values and `out` to writable
// storage for one handle.
enum TsStatus ts_config_from_points(const int64_t *data,
                                    size_t npoints,
                                    size_t dim,
                                    struct TsConfig **out);

// Number of points, or 0 for a null handle.
//
// # Safety
// `cfg` must be null or a live handle.
size_t ts_config_len(const struct TsConfig *cfg);

// Ambient dimension, or 0 for a null handle.
//
// # Safety
// `cfg` must be null or a live handle.
size_t ts_config_dim(const struct TsConfig *cfg);

// Copy point `index` into `buf`, which holds `cap` values.
//
// # Safety
// `cfg` must be a live handle and `buf` must have room for `cap` values.
enum TsStatus ts_config_point(const struct TsConfig *cfg, size_t index, int64_t *buf, size_t cap);

// # Safety
// `cfg` must be null or a handle not yet freed.
void ts_config_free(struct TsConfig *cfg);

// Toric ideal of `cfg` under an order such as `"degrevlex"` or
// `"lex:3,1,2"`. `steps` bounds the reduction work; 0 selects the default.
//
// # Safety
// `cfg` must be a live handle, `order` a NUL-terminated string and `out`
// writable storage for one handle.
enum TsStatus ts_toric_ideal(const struct TsConfig *cfg,
                             const char *order,
                             uint64_t steps,
                             struct TsIdeal **out);

// Number of reduced Gröbner basis elements, or 0 for a null handle.
//
// # Safety
// `ideal` must be null or a live handle.
size_t ts_ideal_len(const struct TsIdeal *ideal);

// Number of variables, or 0 for a null handle.
//
// # Safety
// `ideal` must be null or a live handle.
size_t ts_ideal_nvars(const struct TsIdeal *ideal);

// Exponent vectors of element `index`: lead into `lead`, trail into
// `trail`, each with room for `cap` values.
//
// # Safety
// `ideal` must be a live handle; `lead` and `trail` must each have room for
// `cap` values.
enum TsStatus ts_ideal_element(const struct TsIdeal *ideal,
                               size_t index,
                               uint32_t *lead,
                               uint32_t *trail,
                               size_t cap);

// Whether the initial ideal is generated by squarefree monomials.
//
// # Safety
// `ideal` must be a live handle and `out` writable.
enum TsStatus ts_ideal_is_squarefree(const struct TsIdeal *ideal, bool *out);

// Reduced Gröbner basis as JSON. Release with [`ts_string_free`].
//
// # Safety
// `ideal` must be a live handle and `out` writable.
enum TsStatus ts_ideal_to_json(const struct TsIdeal *ideal, char **out);

// Number of minimal generating sets in decimal. Release with
// [`ts_string_free`].
//
// # Safety
// `ideal` must be a live handle and `out` writable.
enum TsStatus ts_count_minimal_generating_sets(const struct TsIdeal *ideal, char **out);

// # Safety
// `ideal` must be null or a handle not yet freed.
void ts_ideal_free(struct TsIdeal *ideal);

// Run every check on the printed Gröbner basis of D_n or E_n. `all_pass`
// receives the overall verdict; `report_json`, if not null, the full
// report (release with [`ts_string_free`]).
//
// # Safety
// `all_pass` must be writable; `report_json` must be null or writable.
enum TsStatus ts_verify(char kind, size_t n, bool *all_pass, char **report_json);

// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void ts_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORICSING_H */
