#ifndef TMSAT_H
#define TMSAT_H

/* Generated by cbindgen from the tmsat-capi crate. Regenerate with cargo build; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which solving engine to run.
 */
typedef enum TmEngine {
  TM_ENGINE_DPLL = 0,
  /**
   * Exhaustive scan; capped at 24 variables.
   */
  TM_ENGINE_BRUTE_FORCE = 1,
} TmEngine;

/**
 * How transition rules are translated into clauses.
 */
typedef enum TmFidelity {
  /**
   * One clause per rule; deterministic machines only.
   */
  TM_FIDELITY_LITERAL = 0,
  /**
   * Selector variables per step; accepts any machine.
   */
  TM_FIDELITY_GENERAL = 1,
} TmFidelity;

/**
 * What the first tableau row pins down.
 */
typedef enum TmMode {
  /**
   * The whole tape: input from square 1, blanks after.
   */
  TM_MODE_FULL = 0,
  /**
   * A pinned prefix, a blank separator, and free certificate squares.
   */
  TM_MODE_CERTIFICATE_FREE = 1,
} TmMode;

/**
 * Result of every fallible call. Anything other than `Ok` leaves a
 * message for [`tmsat_last_error`].
 */
typedef enum TmStatus {
  TM_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  TM_STATUS_NULL_POINTER = 1,
  /**
   * A text argument was not valid UTF-8.
   */
  TM_STATUS_INVALID_UTF8 = 2,
  /**
   * A machine description or DIMACS document failed to parse.
   */
  TM_STATUS_PARSE_ERROR = 3,
  /**
   * An input word used symbols outside the machine's alphabet, or did
   * not fit the step bound.
   */
  TM_STATUS_INPUT_ERROR = 4,
  /**
   * The encoder rejected the run (nondeterminism under literal
   * fidelity, an oversized layout, a pin mismatch).
   */
  TM_STATUS_ENCODE_ERROR = 5,
  /**
   * The solver refused the formula (too many variables for the
   * exhaustive engine).
   */
  TM_STATUS_SOLVE_ERROR = 6,
} TmStatus;

/**
 * A yes/no answer: satisfiable or not, accepting or not.
 */
typedef enum TmVerdict {
  TM_VERDICT_NO = 0,
  TM_VERDICT_YES = 1,
} TmVerdict;

/**
 * A CNF formula. Opaque; create with [`tmsat_encode`] or
 * [`tmsat_formula_parse_dimacs`], release with [`tmsat_formula_free`].
 */
typedef struct TmFormula TmFormula;

/**
 * A parsed machine. Opaque; create with [`tmsat_machine_parse`], release
 * with [`tmsat_machine_free`].
 */
typedef struct TmMachine TmMachine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message for the most recent failure on this thread, or null when
 * nothing has failed yet. The pointer stays valid until the next failing
 * call on the same thread. Do not free it.
 */
const char *tmsat_last_error(void);

/**
 * Parses a machine description document.
 *
 * # Safety
 * `text` must point to a NUL-terminated string; `out` must point to
 * writable storage for one pointer.
 */
enum TmStatus tmsat_machine_parse(const char *text, struct TmMachine **out);

/**
 * Releases a machine handle. Null is tolerated.
 *
 * # Safety
 * `machine` must have come from [`tmsat_machine_parse`] and not have been
 * freed already.
 */
void tmsat_machine_free(struct TmMachine *machine);

/**
 * Writes whether the machine has at most one rule per (state, symbol)
 * pair.
 *
 * # Safety
 * `machine` must be a live handle; `out` must be writable.
 */
enum TmStatus tmsat_machine_is_deterministic(const struct TmMachine *machine, bool *out);

/**
 * Runs the machine on `input` for at most `steps` steps, exploring every
 * nondeterministic branch. On success `verdict` says whether some branch
 * accepts and `accept_step` holds the earliest accepting step (0 when the
 * verdict is no).
 *
 * # Safety
 * `machine` must be a live handle; `input` must be NUL-terminated;
 * `verdict` and `accept_step` must be writable.
 */
enum TmStatus tmsat_simulate(const struct TmMachine *machine,
                             const char *input,
                             size_t steps,
                             enum TmVerdict *verdict,
                             size_t *accept_step);

/**
 * Compiles the machine's runs on `input` within `steps` steps into a CNF
 * formula that is satisfiable iff some run accepts. `pin_len` and
 * `cert_len` are read in certificate-free mode only; full mode ignores
 * them.
 *
 * # Safety
 * `machine` must be a live handle; `input` must be NUL-terminated; `out`
 * must point to writable storage for one pointer.
 */
enum TmStatus tmsat_encode(const struct TmMachine *machine,
                           const char *input,
                           size_t steps,
                           enum TmMode mode,
                           size_t pin_len,
                           size_t cert_len,
                           enum TmFidelity fidelity,
                           struct TmFormula **out);

/**
 * Parses a DIMACS CNF document into a formula handle.
 *
 * # Safety
 * `text` must be NUL-terminated; `out` must point to writable storage for
 * one pointer.
 */
enum TmStatus tmsat_formula_parse_dimacs(const char *text, struct TmFormula **out);

/**
 * Renders the formula as DIMACS into a newly allocated string. Release
 * the string with [`tmsat_string_free`].
 *
 * # Safety
 * `formula` must be a live handle; `out` must point to writable storage
 * for one pointer.
 */
enum TmStatus tmsat_formula_dimacs(const struct TmFormula *formula, char **out);

/**
 * Writes the formula's variable count.
 *
 * # Safety
 * `formula` must be a live handle; `out` must be writable.
 */
enum TmStatus tmsat_formula_vars(const struct TmFormula *formula, size_t *out);

/**
 * Writes the formula's clause count.
 *
 * # Safety
 * `formula` must be a live handle; `out` must be writable.
 */
enum TmStatus tmsat_formula_clauses(const struct TmFormula *formula, size_t *out);

/**
 * Releases a formula handle. Null is tolerated.
 *
 * # Safety
 * `formula` must have come from this library and not have been freed
 * already.
 */
void tmsat_formula_free(struct TmFormula *formula);

/**
 * Decides satisfiability with the chosen engine. The exhaustive engine
 * refuses formulas with more than 24 variables.
 *
 * # Safety
 * `formula` must be a live handle; `verdict` must be writable.
 */
enum TmStatus tmsat_solve(const struct TmFormula *formula,
                          enum TmEngine engine,
                          enum TmVerdict *verdict);

/**
 * Releases a string produced by this library. Null is tolerated.
 *
 * # Safety
 * `text` must have come from [`tmsat_formula_dimacs`] and not have been
 * freed already.
 */
void tmsat_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TMSAT_H */
