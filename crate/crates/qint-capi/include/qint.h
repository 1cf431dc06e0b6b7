/* C interface to the qint quantum-integer library. */

#ifndef QINT_H
#define QINT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/* Opaque handles; create and destroy through the functions below. */
typedef struct QintPoly QintPoly;
typedef struct QintRule QintRule;

// Output formats for [`qint_poly_render`].
typedef enum QintPolyFormat {
  QINT_POLY_FORMAT_PLAIN = 0,
  QINT_POLY_FORMAT_LATEX = 1,
  QINT_POLY_FORMAT_JSON = 2,
} QintPolyFormat;

// Status codes shared by every API function. The first three mirror the
// CLI exit-code contract.
typedef enum QintStatus {
  // Operation succeeded (and any verification passed).
  QINT_STATUS_OK = 0,
  // The operation ran but the verification verdict is negative.
  QINT_STATUS_VERIFY_FAILED = 1,
  // Malformed input: bad text, bad JSON, bad tables or out-of-range
  // indices.
  QINT_STATUS_INVALID_INPUT = 2,
  // A required pointer argument was null.
  QINT_STATUS_NULL_POINTER = 3,
  // An internal invariant failed; this is a bug in the library.
  QINT_STATUS_INTERNAL_ERROR = 4,
} QintStatus;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static string; do not free.
const char *qint_version(void);

// Message for the most recent failure on this thread, or null. The caller
// frees the returned string with [`qint_string_free`].
char *qint_last_error_message(void);

// Release a string returned by this library. Null is a no-op.
//
// # Safety
// `s` must be null or a pointer previously returned by a qint function
// that documents `qint_string_free` ownership, not yet freed.
void qint_string_free(char *s);

// Release a polynomial handle. Null is a no-op.
//
// # Safety
// `p` must be null or an unfreed handle from this library.
void qint_poly_free(QintPoly *p);

// Release a rule handle. Null is a no-op.
//
// # Safety
// `r` must be null or an unfreed handle from this library.
void qint_rule_free(QintRule *r);

// Parse the polynomial grammar (e.g. `"1 - 2/3 q^2 + q^5"`).
//
// # Safety
// `text` must be a valid NUL-terminated string; `out` must be writable.
enum QintStatus qint_poly_parse(const char *text, QintPoly **out);

// Build a polynomial from its canonical JSON `{"coeffs": ["n/d", ...]}`.
//
// # Safety
// `json` must be a valid NUL-terminated string; `out` must be writable.
enum QintStatus qint_poly_from_json(const char *json, QintPoly **out);

// Render a polynomial; the result is freed with [`qint_string_free`].
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum QintStatus qint_poly_render(const QintPoly *p, enum QintPolyFormat format, char **out);

// Exact evaluation at a rational point given as `"n"` or `"n/d"`; the
// result string is in the same form.
//
// # Safety
// `p` must be a live handle; `x` a valid string; `out` writable.
enum QintStatus qint_poly_eval(const QintPoly *p, const char *x, char **out);

// Whether the polynomial is zero.
//
// # Safety
// `p` must be a live handle; `out` writable.
enum QintStatus qint_poly_is_zero(const QintPoly *p, bool *out);

// Degree of the polynomial; the zero polynomial reports -1.
//
// # Safety
// `p` must be a live handle; `out` writable.
enum QintStatus qint_poly_degree(const QintPoly *p, int64_t *out);

// The quantum integer `[n]_q`; `n = 0` gives the zero polynomial.
//
// # Safety
// `out` must be writable.
enum QintStatus qint_quantum_int(uint64_t n, QintPoly **out);

// Build a built-in rule (`fundamental`, `rule1`, `rule2`,
// `linear_example`) tabulated up to `horizon` (>= 1).
//
// # Safety
// `name` must be a valid string; `out` writable.
enum QintStatus qint_rule_named(const char *name, uint64_t horizon, QintRule **out);

// Build a rule from its JSON form `{"N", "r", "s", "t"}`.
//
// # Safety
// `json` must be a valid string; `out` writable.
enum QintStatus qint_rule_from_json(const char *json, QintRule **out);

// Serialize a rule to its JSON form.
//
// # Safety
// `r` must be a live handle; `out` writable.
enum QintStatus qint_rule_to_json(const QintRule *r, char **out);

// Tabulated horizon of a rule.
//
// # Safety
// `r` must be a live handle; `out` writable.
enum QintStatus qint_rule_horizon(const QintRule *r, uint64_t *out);

// Symbolically verify the addition identity up to `horizon` (0 = the
// rule's own horizon). Returns `QINT_STATUS_OK` on an empty failure list,
// `QINT_STATUS_VERIFY_FAILED` otherwise. When `report_json` is non-null it
// receives the full report either way.
//
// # Safety
// `r` must be a live handle; `report_json` null or writable.
enum QintStatus qint_rule_verify(const QintRule *r, uint64_t horizon, char **report_json);

// Randomized evaluation cross-check at `trials` seeded rational points.
// Status semantics match [`qint_rule_verify`].
//
// # Safety
// `r` must be a live handle; `report_json` null or writable.
enum QintStatus qint_rule_spot_check(const QintRule *r,
                                     uint64_t horizon,
                                     uint64_t trials,
                                     uint64_t seed,
                                     char **report_json);

// Compute `r'_n a + s'_m b + t'_{m,n} a b`.
//
// # Safety
// `r`, `a`, `b` must be live handles; `out` writable.
enum QintStatus qint_rule_apply(const QintRule *r,
                                uint64_t m,
                                uint64_t n,
                                const QintPoly *a,
                                const QintPoly *b,
                                QintPoly **out);

// Division-algorithm standard form. `result_json` (nullable) receives
// `{"U", "V", "residual", "is_fundamental"}`; `is_fundamental` (nullable)
// the flag. Returns `QINT_STATUS_OK` when the residual is the fundamental
// rule, `QINT_STATUS_VERIFY_FAILED` otherwise.
//
// # Safety
// `r` must be a live handle; out-pointers null or writable.
enum QintStatus qint_rule_normalize(const QintRule *r,
                                    uint64_t horizon,
                                    char **result_json,
                                    bool *is_fundamental);

// Build the rule determined by a (U, V) pair given as
// `{"U": [...], "V": [...]}`. `horizon` 0 means the tables' length.
//
// # Safety
// `uv_json` must be a valid string; `out` writable.
enum QintStatus qint_rule_from_uv_json(const char *uv_json, uint64_t horizon, QintRule **out);

// Recover the (U, V) pair of a verified rule as JSON. Tables that are not
// an addition rule yield `QINT_STATUS_VERIFY_FAILED`.
//
// # Safety
// `r` must be a live handle; `uv_json` writable.
enum QintStatus qint_rule_extract_uv(const QintRule *r, uint64_t horizon, char **uv_json);

// Build the zero identity of a (U, V) pair; the identity JSON
// `{"N", "u", "v", "w"}` is written to `zi_json`.
//
// # Safety
// `uv_json` must be a valid string; `zi_json` writable.
enum QintStatus qint_zero_from_uv_json(const char *uv_json, uint64_t horizon, char **zi_json);

// Verify a zero identity given as JSON. Status semantics match
// [`qint_rule_verify`].
//
// # Safety
// `zi_json` must be a valid string; `report_json` null or writable.
enum QintStatus qint_zero_verify_json(const char *zi_json, uint64_t horizon, char **report_json);

// Decompose a verified zero identity back into its (U, V) pair.
//
// # Safety
// `zi_json` must be a valid string; `uv_json` writable.
enum QintStatus qint_zero_decompose_json(const char *zi_json, uint64_t horizon, char **uv_json);

// Degree bound on a zero identity: `deg(u'_n) < n - 1` forces `u'_n = 0`
// (and symmetrically for `v'_m`). `QINT_STATUS_VERIFY_FAILED` when the
// bound fails; `holds` (nullable) receives the flag.
//
// # Safety
// `zi_json` must be a valid string; `holds` null or writable.
enum QintStatus qint_zero_degree_bound_json(const char *zi_json, uint64_t horizon, bool *holds);

// Generate the solution sequence grown from seed `h` up to `horizon`
// (0 = the rule's own horizon); the JSON `{"h", "N", "f"}` is written to
// `seq_json`.
//
// # Safety
// `r` and `h` must be live handles; `seq_json` writable.
enum QintStatus qint_seq_generate(const QintRule *r,
                                  const QintPoly *h,
                                  uint64_t horizon,
                                  char **seq_json);

// Check a stored sequence (JSON `{"h", "N", "f"}`) against the rule's
// functional equation over all `m + n <= horizon` (0 = the sequence's N).
// Status semantics match [`qint_rule_verify`].
//
// # Safety
// `r` must be a live handle; `seq_json` a valid string; `report_json`
// null or writable.
enum QintStatus qint_seq_check(const QintRule *r,
                               const char *seq_json,
                               uint64_t horizon,
                               char **report_json);

// Closed-form solution entry f_n for `fundamental`, `rule1` or `rule2`.
//
// # Safety
// `name` must be a valid string; `h` a live handle; `out` writable.
enum QintStatus qint_closed_form(const char *name, const QintPoly *h, uint64_t n, QintPoly **out);

// Evaluate the necessary condition `A h = B` on seeds for a (U, V) pair;
// the report JSON `{"A", "B", "verdict"[, "candidate"]}` is written to
// `report_json`.
//
// # Safety
// `uv_json` must be a valid string; `report_json` writable.
enum QintStatus qint_seed_admissibility_json(const char *uv_json, char **report_json);

// Empirical seed probe: generate from `h` and check the functional
// equation up to `horizon` (0 = the library default of 12). Returns
// `QINT_STATUS_OK` when the whole family is consistent,
// `QINT_STATUS_VERIFY_FAILED` otherwise.
//
// # Safety
// `r` and `h` must be live handles.
enum QintStatus qint_seed_test(const QintRule *r, const QintPoly *h, uint64_t horizon);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* QINT_H */
