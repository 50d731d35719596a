#ifndef NATFULL_H
#define NATFULL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Which analyzer to run on an instance.
typedef enum NatfullAnalyzer {
  // Restriction and extension of scalars along a morphism.
  NATFULL_ANALYZER_SCALARS = 0,
  // Coinduction and induction along a bimodule.
  NATFULL_ANALYZER_BIMODULE = 1,
  // Forgetful and cotensor functors of a coring.
  NATFULL_ANALYZER_CORING = 2,
  // Induction and cotensor functors of a coring morphism.
  NATFULL_ANALYZER_CORING_MORPHISM = 3,
} NatfullAnalyzer;

// Result code of every fallible call.
typedef enum NatfullStatus {
  NATFULL_STATUS_OK = 0,
  NATFULL_STATUS_NULL_POINTER = 1,
  NATFULL_STATUS_INVALID_UTF8 = 2,
  NATFULL_STATUS_PARSE = 3,
  NATFULL_STATUS_VALIDATION = 4,
  NATFULL_STATUS_UNKNOWN_ID = 5,
  NATFULL_STATUS_INVALID_MODULUS = 6,
  NATFULL_STATUS_IO = 7,
  // Hypotheses of an analyzer fail on the input.
  NATFULL_STATUS_UNSUPPORTED = 8,
  // Criteria disagree or a witness failed re-verification.
  NATFULL_STATUS_INCONSISTENT = 9,
  NATFULL_STATUS_INTERNAL = 10,
} NatfullStatus;

// A resolved and validated instance file.
typedef struct NatfullInstance NatfullInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version, a static nul-terminated string.
const char *natfull_version(void);

// Message of the last failed call on this thread, or null. Valid until the
// next call into the library on the same thread.
const char *natfull_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` is null or a string from this library not yet freed.
void natfull_string_free(char *s);

// Parses and validates an instance from JSON text.
//
// # Safety
// `json` is a nul-terminated string; `out` is valid for writes.
enum NatfullStatus natfull_instance_parse(const char *json, struct NatfullInstance **out);

// Loads and validates an instance file.
//
// # Safety
// `path` is a nul-terminated string; `out` is valid for writes.
enum NatfullStatus natfull_instance_load(const char *path, struct NatfullInstance **out);

// Releases an instance. Null is ignored.
//
// # Safety
// `inst` is null or a handle from this library not yet freed.
void natfull_instance_free(struct NatfullInstance *inst);

// The prime of an instance, or 0 for a null handle.
//
// # Safety
// `inst` is null or a live handle.
uint32_t natfull_instance_prime(const struct NatfullInstance *inst);

// Runs an analyzer on the object `id` of the relevant section and writes
// the JSON report to `out`. `id` may be null when the section has exactly
// one object.
//
// # Safety
// `inst` is a live handle; `id` is null or a nul-terminated string; `out`
// is valid for writes.
enum NatfullStatus natfull_analyze(const struct NatfullInstance *inst,
                                   enum NatfullAnalyzer analyzer,
                                   const char *id,
                                   uint64_t seed,
                                   char **out);

// Emits a catalog fixture as instance-file JSON. `p == 0` selects the
// default prime; `base` is null except for fixtures built on another.
//
// # Safety
// `id` is a nul-terminated string; `base` is null or one; `out` is valid
// for writes.
enum NatfullStatus natfull_fixture_emit(const char *id, uint32_t p, const char *base, char **out);

// Runs the seeded equivalence suite over all kinds and writes its JSON
// report. `p == 0` alternates between 2 and 3. Returns `Inconsistent` when
// the report contains a violation; the report is written either way.
//
// # Safety
// `out` is valid for writes.
enum NatfullStatus natfull_suite_run(uint64_t seed,
                                     size_t count,
                                     uint32_t p,
                                     size_t max_dim,
                                     char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NATFULL_H */
