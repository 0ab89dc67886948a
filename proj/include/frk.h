/* C interface to the finite restriction kit: build groups and scale systems,
 * attach measures on the dual side, compute exponents and constants, and run
 * the verification suites. All functions return frk_status; results come back
 * through out-parameters. Handles are opaque and must be released with the
 * matching *_free. Strings returned through char** are malloc'd; free them
 * with frk_string_free. */

#ifndef FRK_H
#define FRK_H

#include <stddef.h>
#include <stdint.h>

#if defined(__GNUC__) && __GNUC__ >= 4
#define FRK_API __attribute__((visibility("default")))
#else
#define FRK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum frk_status {
  FRK_OK = 0,
  FRK_ERR_INVALID_ARGUMENT = 1,
  FRK_ERR_DOMAIN = 2,
  FRK_ERR_SIZE_CAP = 3,
  FRK_ERR_PARSE = 4,
  FRK_ERR_CHECK_FAILED = 5,
  FRK_ERR_INTERNAL = 6
} frk_status;

typedef struct frk_group frk_group;
typedef struct frk_system frk_system;
typedef struct frk_measure frk_measure;
typedef struct frk_report frk_report;

FRK_API const char* frk_version(void);

/* Message for the most recent failing call on this thread. */
FRK_API const char* frk_last_error(void);

FRK_API void frk_string_free(char* s);

/* ---- groups ---------------------------------------------------------- */

FRK_API frk_status frk_group_cyclic(int64_t modulus, int rank, uint64_t size_cap, frk_group** out);

/* GF(p^degree)^rank; poly lists the degree+1 coefficients of the modulus
 * polynomial, constant term first, and may be NULL when degree == 1. */
FRK_API frk_status frk_group_finite_field(int64_t p, int degree, const int64_t* poly, int rank,
                                  uint64_t size_cap, frk_group** out);

FRK_API void frk_group_free(frk_group* g);
FRK_API frk_status frk_group_cardinality(const frk_group* g, uint64_t* out);
FRK_API frk_status frk_group_describe(const frk_group* g, char** out);

/* ---- ball systems ---------------------------------------------------- */

FRK_API frk_status frk_system_build(const frk_group* g, frk_system** out);
FRK_API void frk_system_free(frk_system* s);
FRK_API frk_status frk_system_scale_count(const frk_system* s, size_t* out);
FRK_API frk_status frk_system_scales(const frk_system* s, int64_t* primal, size_t cap, size_t* count);
FRK_API frk_status frk_system_constants(const frk_system* s, double* c1, double* c2, double* c3);

/* Ball axioms plus the regularity/decay conditions of the scale system. */
FRK_API frk_status frk_system_check(const frk_system* s, uint64_t seed, frk_report** out);

/* ---- measures on the dual group -------------------------------------- */

FRK_API frk_status frk_measure_paraboloid(const frk_group* g, frk_measure** out);

/* Normalized surface measure on the graph of the polynomial `text` in the
 * first rank-1 coordinates, e.g. "x0^2 + x1^2" or "x0^3 + 2*x0". */
FRK_API frk_status frk_measure_graph(const frk_group* g, const char* text, frk_measure** out);

/* weights_json: object mapping flat dual indices to nonnegative weights,
 * e.g. {"0": 0.5, "7": 0.25}. */
FRK_API frk_status frk_measure_from_weights(const frk_group* g, const char* weights_json,
                                    frk_measure** out);

FRK_API void frk_measure_free(frk_measure* m);
FRK_API frk_status frk_measure_mass(const frk_measure* m, double* out);

/* Best constants in mu(B_s) <= A s^a and |mu-check(x)| <= B ||x||^{-b/2}. */
FRK_API frk_status frk_measure_constants(const frk_measure* m, const frk_system* s, const char* a,
                                 const char* b, double* A, double* B);

FRK_API frk_status frk_measure_analyze(const frk_measure* m, const frk_system* s, const char* a,
                               const char* b, frk_report** out);

/* ---- exponents -------------------------------------------------------- */

/* Exact exponents as numerator/denominator pairs, derived from (rank, a, b).
 * a and b are rational literals such as "1", "3/2", or "1.5". */
typedef struct frk_exponents {
  int64_t r0_num, r0_den;
  int64_t theta_num, theta_den;
  int64_t sigma_num, sigma_den;
  int64_t tau_num, tau_den;
  int64_t conv_r0_num, conv_r0_den;
  int64_t conv_s0_num, conv_s0_den;
} frk_exponents;

FRK_API frk_status frk_exponent_profile(int rank, const char* a, const char* b, frk_exponents* out);

FRK_API frk_status frk_cbar_constant(int rank, const char* a, const char* b, double c1, double c2,
                             double c3, double A, double B, double* out);

/* ---- verification ----------------------------------------------------- */

typedef struct frk_scan_options {
  int mode; /* 0 auto, 1 exhaustive, 2 random */
  uint64_t seed;
  uint64_t samples;
  uint64_t exhaustive_cap;
  uint64_t lorentz_samples;
} frk_scan_options;

FRK_API void frk_scan_options_init(frk_scan_options* opts);

/* Full verification: constants, decomposition bounds, restriction and
 * convolution scans, operator norms, Lorentz ratios. */
FRK_API frk_status frk_verify(const frk_measure* m, const frk_system* s, const char* a, const char* b,
                      const frk_scan_options* opts, frk_report** out);

/* ---- reports ---------------------------------------------------------- */

FRK_API void frk_report_free(frk_report* r);
FRK_API frk_status frk_report_passed(const frk_report* r, int* out);
FRK_API frk_status frk_report_record_count(const frk_report* r, size_t* out);
FRK_API frk_status frk_report_json(const frk_report* r, char** out);
FRK_API frk_status frk_report_csv(const frk_report* r, int with_header, char** out);
FRK_API frk_status frk_report_elapsed_seconds(const frk_report* r, double* out);

#ifdef __cplusplus
}
#endif

#endif /* FRK_H */
