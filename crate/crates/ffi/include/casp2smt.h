#ifndef CASP2SMT_H
#define CASP2SMT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum Casp2smtStatus {
  CASP2SMT_STATUS_OK = 0,
  CASP2SMT_STATUS_NULL_ARGUMENT = 1,
  CASP2SMT_STATUS_INVALID_UTF8 = 2,
  CASP2SMT_STATUS_PARSE_ERROR = 3,
  CASP2SMT_STATUS_NOT_TIGHT = 4,
  CASP2SMT_STATUS_SOLVER_ERROR = 5,
  CASP2SMT_STATUS_ENUMERATION_REFUSED = 6,
  CASP2SMT_STATUS_ORACLE_CAP_EXCEEDED = 7,
  CASP2SMT_STATUS_INVALID_ARGUMENT = 8,
  CASP2SMT_STATUS_INTERNAL = 9,
} Casp2smtStatus;

/**
 * Support encoding used by the translation.
 */
typedef enum Casp2smtMode {
  /**
   * Completion for tight programs, SCC rankings otherwise.
   */
  CASP2SMT_MODE_AUTO = 0,
  CASP2SMT_MODE_TIGHT = 1,
  CASP2SMT_MODE_PLAIN = 2,
  CASP2SMT_MODE_SCC = 3,
} Casp2smtMode;

/**
 * Opaque parsed program.
 */
typedef struct Casp2smtProgram Casp2smtProgram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `source` (NUL-terminated UTF-8). On success `*out` owns a handle
 * to release with [`casp2smt_program_free`].
 *
 * # Safety
 * `source` must be a valid C string and `out` a valid pointer.
 */
enum Casp2smtStatus casp2smt_program_parse(const char *source, struct Casp2smtProgram **out);

/**
 * Releases a program handle. Null is ignored.
 *
 * # Safety
 * `program` must come from [`casp2smt_program_parse`] and not be used again.
 */
void casp2smt_program_free(struct Casp2smtProgram *program);

/**
 * Number of atoms occurring in the program.
 *
 * # Safety
 * `program` must be a live handle; `out` a valid pointer.
 */
enum Casp2smtStatus casp2smt_program_atom_count(const struct Casp2smtProgram *program, size_t *out);

/**
 * Whether the positive dependency graph over non-input atoms is acyclic.
 *
 * # Safety
 * `program` must be a live handle; `out` a valid pointer.
 */
enum Casp2smtStatus casp2smt_program_is_tight(const struct Casp2smtProgram *program, bool *out);

/**
 * Canonical text of the program.
 *
 * # Safety
 * `program` must be a live handle; `out` a valid pointer.
 */
enum Casp2smtStatus casp2smt_program_print(const struct Casp2smtProgram *program, char **out);

/**
 * SMT-LIB script for the program.
 *
 * # Safety
 * `program` must be a live handle; `out` a valid pointer.
 */
enum Casp2smtStatus casp2smt_emit_smtlib(const struct Casp2smtProgram *program,
                                         enum Casp2smtMode mode,
                                         char **out);

/**
 * Brute-force answer sets, one canonical line each, or `UNSATISFIABLE`.
 *
 * # Safety
 * `program` must be a live handle; `out` a valid pointer.
 */
enum Casp2smtStatus casp2smt_oracle_answer_sets(const struct Casp2smtProgram *program, char **out);

/**
 * Answer sets computed by the external solver, one canonical line each, or
 * `UNSATISFIABLE`. `solver` may be null for the default command; `count` 0
 * asks for all; `extended` enumerates distinct valuations as well.
 *
 * # Safety
 * `program` must be a live handle, `solver` null or a valid C string, `out`
 * a valid pointer.
 */
enum Casp2smtStatus casp2smt_solve(const struct Casp2smtProgram *program,
                                   const char *solver,
                                   uint32_t timeout_seconds,
                                   uint32_t count,
                                   bool extended,
                                   enum Casp2smtMode mode,
                                   char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used again.
 */
void casp2smt_string_free(char *s);

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library on the same thread.
 */
const char *casp2smt_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CASP2SMT_H */
