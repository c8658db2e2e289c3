/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef DPGEOM_H
#define DPGEOM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Concept classes accepted by [`dpg_learn`].
 */
typedef enum DpgClass {
  DPG_CONJ = 0,
  DPG_DISJ = 1,
  DPG_CONVEX_KGON = 2,
  DPG_K_UNION_GON = 3,
} DpgClass;

/**
 * Result codes.
 */
typedef enum DpgStatus {
  DPG_OK = 0,
  DPG_NULL_POINTER = 1,
  DPG_INVALID_ARGUMENT = 2,
  DPG_KIND_MISMATCH = 3,
  DPG_RESOURCE = 4,
  DPG_PARSE = 5,
  DPG_IO = 6,
  DPG_UNSATISFIABLE = 7,
  DPG_INTERNAL = 8,
  DPG_PANIC = 9,
} DpgStatus;

/**
 * Dual arrangement handle.
 */
typedef struct DpgArrangement DpgArrangement;

/**
 * Learned hypothesis handle.
 */
typedef struct DpgHypothesis DpgHypothesis;

/**
 * Labeled sample handle.
 */
typedef struct DpgSample DpgSample;

/**
 * Parameters of [`dpg_learn`].
 */
typedef struct DpgLearnParams {
  enum DpgClass class_;
  size_t k;
  /**
   * Grid resolution, or the variable count for Boolean classes.
   */
  uint32_t d;
  double alpha;
  double beta;
  double epsilon;
  double delta;
  uint64_t seed;
  /**
   * Ordered-triple cap for unions of polygons; 0 selects the default.
   */
  uint64_t triple_cap;
} DpgLearnParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *dpg_version(void);

/**
 * Copy of the calling thread's last error message, or NULL when there is
 * none. Release it with [`dpg_string_free`].
 */
char *dpg_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void dpg_string_free(char *s);

/**
 * Grid sample of `n` points `(xs[i], ys[i])` with 0/1 `labels`.
 *
 * # Safety
 * The three arrays must hold `n` readable elements; `out` must be writable.
 */
enum DpgStatus dpg_sample_new_grid(uint32_t d,
                                   const uint32_t *xs,
                                   const uint32_t *ys,
                                   const uint8_t *labels_,
                                   size_t n,
                                   struct DpgSample **out_sample);

/**
 * Boolean sample of `n` rows; `bits` is row-major with `vars` 0/1 bytes per
 * row.
 *
 * # Safety
 * `bits` must hold `n * vars` bytes and `labels` `n` bytes; `out` must be
 * writable.
 */
enum DpgStatus dpg_sample_new_bool(size_t vars,
                                   const uint8_t *bits,
                                   const uint8_t *labels_,
                                   size_t n,
                                   struct DpgSample **out_sample);

/**
 * Parses a JSON Lines sample (header line, then one example per line).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum DpgStatus dpg_sample_from_jsonl(const char *text, struct DpgSample **out_sample);

/**
 * Number of examples; 0 for NULL.
 *
 * # Safety
 * `s` must be NULL or a live sample handle.
 */
size_t dpg_sample_len(const struct DpgSample *s);

/**
 * # Safety
 * `s` must be NULL or a sample handle not yet freed.
 */
void dpg_sample_free(struct DpgSample *s);

/**
 * Runs the private learner.
 *
 * # Safety
 * `sample` and `params` must be valid; `out` must be writable.
 */
enum DpgStatus dpg_learn(const struct DpgSample *sample,
                         const struct DpgLearnParams *params,
                         struct DpgHypothesis **out_h);

/**
 * # Safety
 * `h` must be a live hypothesis handle and `result` writable.
 */
enum DpgStatus dpg_hypothesis_eval_grid(const struct DpgHypothesis *h,
                                        uint32_t x,
                                        uint32_t y,
                                        bool *result);

/**
 * # Safety
 * `h` must be a live hypothesis handle, `bits` must hold `vars` bytes and
 * `result` must be writable.
 */
enum DpgStatus dpg_hypothesis_eval_bool(const struct DpgHypothesis *h,
                                        const uint8_t *bits,
                                        size_t vars,
                                        bool *result);

/**
 * Serialises the hypothesis; free the string with [`dpg_string_free`].
 *
 * # Safety
 * `h` must be a live hypothesis handle and `json` writable.
 */
enum DpgStatus dpg_hypothesis_to_json(const struct DpgHypothesis *h, char **json);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum DpgStatus dpg_hypothesis_from_json(const char *json, struct DpgHypothesis **out_h);

/**
 * # Safety
 * `h` must be NULL or a hypothesis handle not yet freed.
 */
void dpg_hypothesis_free(struct DpgHypothesis *h);

/**
 * Builds the dual arrangement of a grid sample.
 *
 * # Safety
 * `sample` must be a live sample handle; `out` must be writable.
 */
enum DpgStatus dpg_arrangement_build(const struct DpgSample *sample, struct DpgArrangement **out_a);

/**
 * Number of faces; 0 for NULL.
 *
 * # Safety
 * `a` must be NULL or a live arrangement handle.
 */
size_t dpg_arrangement_face_count(const struct DpgArrangement *a);

/**
 * # Safety
 * `a` must be NULL or an arrangement handle not yet freed.
 */
void dpg_arrangement_free(struct DpgArrangement *a);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DPGEOM_H */
