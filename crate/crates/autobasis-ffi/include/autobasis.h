#ifndef AUTOBASIS_H
#define AUTOBASIS_H

/* Generated from the autobasis-ffi crate by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible function.
 */
typedef enum AbStatus {
  /**
   * Success.
   */
  AB_STATUS_OK = 0,
  /**
   * Malformed input text or an unknown corpus name.
   */
  AB_STATUS_PARSE = 1,
  /**
   * The order search was exhausted without a decision.
   */
  AB_STATUS_INCONCLUSIVE = 2,
  /**
   * A precondition was violated or a resource limit was hit.
   */
  AB_STATUS_PRECONDITION = 3,
  /**
   * A required pointer argument was null or not valid UTF-8.
   */
  AB_STATUS_NULL_ARGUMENT = 4,
  /**
   * An internal panic was caught at the boundary.
   */
  AB_STATUS_INTERNAL = 5,
} AbStatus;

/**
 * Opaque handle to a machine recognizing base-k expansions of a set.
 */
typedef struct AbMachine AbMachine;

/**
 * Flat result of the basis decision. Strings are owned by the caller;
 * release the whole struct's contents with [`ab_basis_result_clear`].
 */
typedef struct AbBasisResult {
  /**
   * The set is an asymptotic additive basis.
   */
  bool asymptotic_basis;
  /**
   * The set is a basis with no exception above 0.
   */
  bool exact_basis;
  /**
   * Minimal order found, or -1 when no order applies.
   */
  int64_t order;
  /**
   * Decimal threshold M (least value from which representation never
   * fails).
   */
  char *threshold;
  /**
   * Space-separated decimal exceptions; empty string when none.
   */
  char *exceptions;
  /**
   * Number of exceptions.
   */
  size_t exception_count;
  /**
   * State count of the minimized canonical machine.
   */
  size_t states;
} AbBasisResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. Never null; empty
 * before the first failure. The pointer stays valid until the next failing
 * call on the same thread.
 */
const char *ab_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer previously returned by this library and not
 * yet released.
 */
void ab_string_free(char *s);

/**
 * Parses a machine from the text format (see the library documentation for
 * the grammar) and writes a handle to `out`.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be a valid pointer.
 */
enum AbStatus ab_machine_parse(const char *text, struct AbMachine **out);

/**
 * Looks up a built-in example machine by name (`evil2`, `cantor3`,
 * `rudinshapiro2`, `digits01base4`, `digits02base4`, or `hard(k,m)`).
 *
 * # Safety
 * `name` must be a nul-terminated string; `out` must be a valid pointer.
 */
enum AbStatus ab_machine_corpus(const char *name, struct AbMachine **out);

/**
 * Releases a machine handle.
 *
 * # Safety
 * `m` must be null or a handle previously returned by this library and not
 * yet released.
 */
void ab_machine_free(struct AbMachine *m);

/**
 * Base of the machine's digit alphabet, or 0 when `m` is null.
 *
 * # Safety
 * `m` must be null or a valid handle.
 */
uint32_t ab_machine_base(const struct AbMachine *m);

/**
 * Number of states, or 0 when `m` is null.
 *
 * # Safety
 * `m` must be null or a valid handle.
 */
size_t ab_machine_states(const struct AbMachine *m);

/**
 * Renders the machine in the text format, most significant digit first when
 * `msd` is set. The string goes to `out`; release it with
 * [`ab_string_free`].
 *
 * # Safety
 * `m` must be a valid handle; `out` must be a valid pointer.
 */
enum AbStatus ab_machine_render(const struct AbMachine *m, bool msd, char **out);

/**
 * Tests membership of a value (decimal string) in the machine's set.
 *
 * # Safety
 * `m` must be a valid handle; `value_decimal` a nul-terminated string;
 * `out` a valid pointer.
 */
enum AbStatus ab_machine_accepts(const struct AbMachine *m, const char *value_decimal, bool *out);

/**
 * Growth classification. Writes `true` to `is_exponential` for exponential
 * growth, else `false` with the polynomial degree in `degree`.
 *
 * # Safety
 * `m` must be a valid handle; `is_exponential` and `degree` valid pointers.
 */
enum AbStatus ab_classify(const struct AbMachine *m, bool *is_exponential, size_t *degree);

/**
 * Gcd of the set's members as a decimal string in `out`; release it with
 * [`ab_string_free`].
 *
 * # Safety
 * `m` must be a valid handle; `out` a valid pointer.
 */
enum AbStatus ab_gcd(const struct AbMachine *m, char **out);

/**
 * Decides the basis question. `asymptotic` allows finitely many exceptions;
 * `exact_sum` makes order-j sums use exactly j summands instead of 1..=j.
 * On `AB_STATUS_OK` the caller owns the strings inside `out`; release them
 * with [`ab_basis_result_clear`].
 *
 * # Safety
 * `m` must be a valid handle; `out` a valid pointer.
 */
enum AbStatus ab_basis(const struct AbMachine *m,
                       bool asymptotic,
                       uint32_t max_order,
                       bool exact_sum,
                       struct AbBasisResult *out);

/**
 * Releases the strings inside a basis result and zeroes the pointers.
 *
 * # Safety
 * `r` must be null or point to a result previously filled by [`ab_basis`]
 * whose strings have not been released yet.
 */
void ab_basis_result_clear(struct AbBasisResult *r);

/**
 * Number of ordered representations of `n_decimal` as a sum of exactly
 * `order` members (pairwise distinct when `distinct` is set), written to
 * `out` as a decimal string; release it with [`ab_string_free`].
 *
 * # Safety
 * `m` must be a valid handle; `n_decimal` a nul-terminated string; `out` a
 * valid pointer.
 */
enum AbStatus ab_count(const struct AbMachine *m,
                       uint32_t order,
                       bool distinct,
                       const char *n_decimal,
                       char **out);

/**
 * Sets the per-thread cap on subset-construction states (resource guard).
 * Zero is rejected.
 */
enum AbStatus ab_set_state_limit(size_t limit);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AUTOBASIS_H */
