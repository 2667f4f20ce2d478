#ifndef CMAPF_H
#define CMAPF_H

#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CmapfRule {
  CMAPF_RULE_RANDOM = 0,
  CMAPF_RULE_GREEDY_PSI = 1,
  CMAPF_RULE_GREEDY_DEGREE = 2,
} CmapfRule;

typedef enum CmapfStatus {
  CMAPF_STATUS_OK = 0,
  CMAPF_STATUS_NULL_POINTER = 1,
  CMAPF_STATUS_INVALID_UTF8 = 2,
  CMAPF_STATUS_PARSE_ERROR = 3,
  CMAPF_STATUS_INVALID_ARGUMENT = 4,
  CMAPF_STATUS_BUFFER_TOO_SMALL = 5,
  CMAPF_STATUS_BUDGET_EXCEEDED = 6,
  CMAPF_STATUS_INVALID_PLAN = 7,
  CMAPF_STATUS_INTERNAL = 8,
  CMAPF_STATUS_PANIC = 9,
} CmapfStatus;

typedef enum CmapfVerdict {
  CMAPF_VERDICT_FEASIBLE = 0,
  CMAPF_VERDICT_INFEASIBLE_VIA_REDUCTION = 1,
  CMAPF_VERDICT_PROVEN_INFEASIBLE = 2,
} CmapfVerdict;

/**
 * Parsed instance file.
 */
typedef struct CmapfInstance CmapfInstance;

/**
 * Sequence of moves.
 */
typedef struct CmapfPlan CmapfPlan;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next cmapf call on the same thread.
 */
const char *cmapf_last_error(void);

/**
 * Parses an instance file from a NUL-terminated UTF-8 string.
 *
 * # Safety
 * `text` must be a valid C string and `out` a writable pointer.
 */
enum CmapfStatus cmapf_instance_parse(const char *text, struct CmapfInstance **out);

/**
 * # Safety
 * `inst` must be null or a handle from [`cmapf_instance_parse`] not yet freed.
 */
void cmapf_instance_free(struct CmapfInstance *inst);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `inst` must be null or a live handle.
 */
uintptr_t cmapf_instance_vertex_count(const struct CmapfInstance *inst);

/**
 * Whether `w` is admissible with a strongly connected reduced graph.
 *
 * # Safety
 * `inst` must be a live handle, `w` must point to `w_len` values and `out`
 * must be writable.
 */
enum CmapfStatus cmapf_is_independent(const struct CmapfInstance *inst,
                                      const uintptr_t *w,
                                      uintptr_t w_len,
                                      bool *out);

/**
 * Grows a maximal independent set from the instance seed.
 *
 * # Safety
 * `inst` must be a live handle, `buf` must hold `cap` values and `len` must
 * be writable.
 */
enum CmapfStatus cmapf_maximal_independent(const struct CmapfInstance *inst,
                                           enum CmapfRule rule,
                                           uint64_t seed,
                                           uintptr_t *buf,
                                           uintptr_t cap,
                                           uintptr_t *len);

/**
 * Maximum independent superset of the instance seed. A non-positive
 * `budget_secs` means no time limit; `proven` is false when the budget ran out.
 *
 * # Safety
 * As for [`cmapf_maximal_independent`]; `proven` must be writable.
 */
enum CmapfStatus cmapf_exact_cmis(const struct CmapfInstance *inst,
                                  double budget_secs,
                                  uintptr_t *buf,
                                  uintptr_t cap,
                                  uintptr_t *len,
                                  bool *proven);

/**
 * Solves the instance. With `oracle` the exhaustive search runs on the
 * original graph; otherwise the reduction over `w` is used, or over a set
 * found by random restarts when `w` is null. `*plan` receives a handle
 * for feasible verdicts and null otherwise.
 *
 * # Safety
 * `inst` must be a live handle, `w` null or pointing to `w_len` values,
 * `verdict` and `plan` writable.
 */
enum CmapfStatus cmapf_solve(const struct CmapfInstance *inst,
                             const uintptr_t *w,
                             uintptr_t w_len,
                             bool oracle,
                             enum CmapfVerdict *verdict,
                             struct CmapfPlan **plan);

/**
 * Builds a plan from `len` moves given as parallel `from` / `to` arrays.
 *
 * # Safety
 * `from` and `to` must point to `len` values each; `out` must be writable.
 */
enum CmapfStatus cmapf_plan_new(const uintptr_t *from,
                                const uintptr_t *to,
                                uintptr_t len,
                                struct CmapfPlan **out);

/**
 * Number of moves, or 0 for a null handle.
 *
 * # Safety
 * `plan` must be null or a live handle.
 */
uintptr_t cmapf_plan_len(const struct CmapfPlan *plan);

/**
 * Reads move `index`.
 *
 * # Safety
 * `plan` must be a live handle; `from` and `to` must be writable.
 */
enum CmapfStatus cmapf_plan_move(const struct CmapfPlan *plan,
                                 uintptr_t index,
                                 uintptr_t *from,
                                 uintptr_t *to);

/**
 * # Safety
 * `plan` must be null or a live handle not yet freed.
 */
void cmapf_plan_free(struct CmapfPlan *plan);

/**
 * Replays `plan` from the instance source with constraint checking.
 * Returns `CMAPF_STATUS_INVALID_PLAN` with a diagnostic when it fails.
 *
 * # Safety
 * Both handles must be live.
 */
enum CmapfStatus cmapf_validate(const struct CmapfInstance *inst, const struct CmapfPlan *plan);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CMAPF_H */
