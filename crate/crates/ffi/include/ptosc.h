#ifndef PTOSC_H
#define PTOSC_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PtoscAssembly {
  PTOSC_ASSEMBLY_DIRECT = 0,
  PTOSC_ASSEMBLY_SECOND_QUANTIZED = 1,
} PtoscAssembly;

typedef enum PtoscSort {
  PTOSC_SORT_MAGNITUDE = 0,
  PTOSC_SORT_REAL_PART = 1,
} PtoscSort;

// Status codes. Zero is success.
typedef enum PtoscStatus {
  PTOSC_STATUS_OK = 0,
  PTOSC_STATUS_NULL_POINTER = 1,
  PTOSC_STATUS_DOMAIN = 2,
  PTOSC_STATUS_REJECTED = 3,
  PTOSC_STATUS_NO_CLOSED_FORM = 4,
  PTOSC_STATUS_NO_CONVERGENCE = 5,
  PTOSC_STATUS_BASIS_TOO_SMALL = 6,
  PTOSC_STATUS_NON_FINITE = 7,
  PTOSC_STATUS_OUT_OF_RANGE = 8,
  PTOSC_STATUS_INTERNAL = 9,
  PTOSC_STATUS_PANIC = 10,
} PtoscStatus;

typedef enum PtoscStrategy {
  PTOSC_STRATEGY_SUM = 0,
  PTOSC_STRATEGY_DIFF = 1,
  PTOSC_STRATEGY_NEG_DIFF = 2,
  PTOSC_STRATEGY_VARIATIONAL = 3,
  PTOSC_STRATEGY_MANUAL = 4,
} PtoscStrategy;

typedef enum PtoscValueClass {
  PTOSC_VALUE_CLASS_REAL = 0,
  PTOSC_VALUE_CLASS_PAIR = 1,
  PTOSC_VALUE_CLASS_STRAY = 2,
} PtoscValueClass;

typedef enum PtoscVerdict {
  PTOSC_VERDICT_ALL_REAL_POSITIVE = 0,
  PTOSC_VERDICT_ALL_REAL_NEGATIVE = 1,
  PTOSC_VERDICT_BROKEN = 2,
  PTOSC_VERDICT_MIXED_REAL = 3,
} PtoscVerdict;

// Opaque PT diagnosis.
typedef struct PtoscDiagnosis PtoscDiagnosis;

// Opaque dense complex matrix.
typedef struct PtoscMatrix PtoscMatrix;

// Opaque oscillator parameters.
typedef struct PtoscSpec PtoscSpec;

// Opaque sorted eigenvalue list.
typedef struct PtoscSpectrum PtoscSpectrum;

typedef struct PtoscCoefficients {
  double d;
  double u;
  double v;
} PtoscCoefficients;

typedef struct PtoscComplex {
  double re;
  double im;
} PtoscComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the
// next call into this library from the same thread.
const char *ptosc_last_error_message(void);

// Static name of a status code.
const char *ptosc_status_name(enum PtoscStatus status);

// Momentum-shift oscillator with potential strength `w_potential` and shift `l_shift`.
enum PtoscStatus ptosc_spec_new_momentum(double w_potential,
                                         double l_shift,
                                         struct PtoscSpec **out);

// Coordinate-shift oscillator with kinetic strength `l_kinetic` and shift `r_shift`.
enum PtoscStatus ptosc_spec_new_coordinate(double l_kinetic,
                                           double r_shift,
                                           struct PtoscSpec **out);

void ptosc_spec_free(struct PtoscSpec *spec);

// Auxiliary frequency for `strategy`; `manual_w` is read only for manual.
enum PtoscStatus ptosc_select_frequency(const struct PtoscSpec *spec,
                                        enum PtoscStrategy strategy,
                                        double manual_w,
                                        double *out_w);

enum PtoscStatus ptosc_coefficients(const struct PtoscSpec *spec,
                                    double w,
                                    struct PtoscCoefficients *out);

// Diagonal energy of level `n`; `out_is_eigenvalue` is false when that value
// is only an expectation (variational or manual frequency).
enum PtoscStatus ptosc_closed_form_energy(const struct PtoscSpec *spec,
                                          enum PtoscStrategy strategy,
                                          double manual_w,
                                          uint64_t n,
                                          double *out_value,
                                          bool *out_is_eigenvalue);

// Truncated Hamiltonian of size `size` at frequency `w`.
enum PtoscStatus ptosc_hamiltonian(const struct PtoscSpec *spec,
                                   double w,
                                   size_t size,
                                   enum PtoscAssembly assembly,
                                   struct PtoscMatrix **out);

// Dimension of `m`, or 0 for null.
size_t ptosc_matrix_dim(const struct PtoscMatrix *m);

enum PtoscStatus ptosc_matrix_get(const struct PtoscMatrix *m,
                                  size_t row,
                                  size_t col,
                                  struct PtoscComplex *out);

void ptosc_matrix_free(struct PtoscMatrix *m);

// All eigenvalues of `m`, sorted.
enum PtoscStatus ptosc_matrix_spectrum(const struct PtoscMatrix *m,
                                       enum PtoscSort sort,
                                       struct PtoscSpectrum **out);

size_t ptosc_spectrum_len(const struct PtoscSpectrum *s);

enum PtoscStatus ptosc_spectrum_get(const struct PtoscSpectrum *s,
                                    size_t index,
                                    struct PtoscComplex *out);

void ptosc_spectrum_free(struct PtoscSpectrum *s);

// Builds, diagonalizes and classifies the leading `count` eigenvalues.
enum PtoscStatus ptosc_diagnose(const struct PtoscSpec *spec,
                                enum PtoscStrategy strategy,
                                double manual_w,
                                size_t basis_size,
                                size_t count,
                                double tol_real,
                                enum PtoscSort sort,
                                struct PtoscDiagnosis **out);

enum PtoscStatus ptosc_diagnosis_verdict(const struct PtoscDiagnosis *d, enum PtoscVerdict *out);

// Frequency the diagnosis was run at, or NaN for null.
double ptosc_diagnosis_frequency(const struct PtoscDiagnosis *d);

// Number of examined eigenvalues, or 0 for null.
size_t ptosc_diagnosis_count(const struct PtoscDiagnosis *d);

// Examined eigenvalue `index` and its class. `out_class` may be null.
enum PtoscStatus ptosc_diagnosis_value(const struct PtoscDiagnosis *d,
                                       size_t index,
                                       struct PtoscComplex *out,
                                       enum PtoscValueClass *out_class);

void ptosc_diagnosis_free(struct PtoscDiagnosis *d);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PTOSC_H */
