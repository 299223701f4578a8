#ifndef SOFT_BITOP_H
#define SOFT_BITOP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Separation axioms, passed as `uint32_t`.
#define SB_AXIOM_T0 0

#define SB_AXIOM_T1 1

#define SB_AXIOM_T2 2

// Status codes. 1 to 3 match the CLI exit codes.
typedef enum SbStatus {
  SB_STATUS_OK = 0,
  // A theorem check failed.
  SB_STATUS_INVARIANT_FAILURE = 1,
  // Malformed description, unknown names, bad arguments.
  SB_STATUS_INPUT = 2,
  // A capacity guard was hit.
  SB_STATUS_CAPACITY = 3,
  SB_STATUS_NULL_POINTER = 4,
  // A string argument was not valid UTF-8.
  SB_STATUS_UTF8 = 5,
  // The library panicked; the handle should not be used further.
  SB_STATUS_PANIC = 6,
} SbStatus;

// A resolved space description.
typedef struct SbSpace SbSpace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *sb_last_error(void);

// Parses and resolves a JSON space description.
//
// # Safety
// `json` is a nul-terminated string; `out` is writable.
enum SbStatus sb_space_from_json(const char *json, struct SbSpace **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `space` is null or a handle from `sb_space_from_json` not yet freed.
void sb_space_free(struct SbSpace *space);

// Number of soft elements of the ambient soft set.
//
// # Safety
// `space` is a live handle; `out` is writable.
enum SbStatus sb_space_se_count(const struct SbSpace *space, size_t *out);

// Number of parameters.
//
// # Safety
// `space` is a live handle; `out` is writable.
enum SbStatus sb_space_param_count(const struct SbSpace *space, size_t *out);

// Pairwise soft separation of the space.
//
// # Safety
// `space` is a live handle; `out` is writable.
enum SbStatus sb_space_soft_separation(const struct SbSpace *space, uint32_t axiom_code, bool *out);

// Pairwise separation of the induced pair on the soft elements.
//
// # Safety
// `space` is a live handle; `out` is writable.
enum SbStatus sb_space_induced_separation(const struct SbSpace *space,
                                          uint32_t axiom_code,
                                          bool *out);

// Pairwise separation of the component pair at parameter `param`.
//
// # Safety
// `space` is a live handle; `out` is writable.
enum SbStatus sb_space_component_separation(const struct SbSpace *space,
                                            size_t param,
                                            uint32_t axiom_code,
                                            bool *out);

// Runs every theorem check. Returns `INVARIANT_FAILURE` if any check
// fails; the number of failing checks is written to `failures` when it is
// not null.
//
// # Safety
// `space` is a live handle; `failures` is null or writable.
enum SbStatus sb_space_verify(const struct SbSpace *space, size_t *failures);

// JSON report identical to `soft-bitop --json check` (`verify` false) or
// `soft-bitop --json verify` (`verify` true). Free with `sb_string_free`.
//
// # Safety
// `space` is a live handle; `out` is writable.
enum SbStatus sb_space_report_json(const struct SbSpace *space, bool verify, char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` is null or a string from this library not yet freed.
void sb_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SOFT_BITOP_H */
