#ifndef BESSELWELL_H
#define BESSELWELL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BwStatus {
  BW_STATUS_OK = 0,
  BW_STATUS_NULL_POINTER = 1,
  BW_STATUS_INVALID_ARGUMENT = 2,
  BW_STATUS_DOMAIN = 3,
  BW_STATUS_REGIME = 4,
  BW_STATUS_POLE = 5,
  BW_STATUS_UNDERFLOW = 6,
  BW_STATUS_OVERFLOW = 7,
  BW_STATUS_ACCURACY = 8,
  BW_STATUS_NO_SIGN_CHANGE = 9,
  BW_STATUS_SCAN_EXHAUSTED = 10,
  BW_STATUS_INCOMPATIBLE = 11,
  BW_STATUS_RESOLUTION = 12,
  BW_STATUS_OUT_OF_RANGE = 13,
  BW_STATUS_PANIC = 14,
} BwStatus;

typedef enum BwFamily {
  BW_FAMILY_V1 = 1,
  BW_FAMILY_V2 = 2,
  BW_FAMILY_V3 = 3,
  BW_FAMILY_V4 = 4,
  BW_FAMILY_V5 = 5,
  BW_FAMILY_V6 = 6,
} BwFamily;

// Parity filter codes for `bw_spectrum_new`.
typedef enum BwParity {
  BW_PARITY_BOTH = -1,
  BW_PARITY_EVEN = 0,
  BW_PARITY_ODD = 1,
} BwParity;

typedef enum BwCondition {
  BW_CONDITION_J_PRIME_ZERO = 0,
  BW_CONDITION_J_ZERO = 1,
  BW_CONDITION_K_PRIME_ZERO = 2,
  BW_CONDITION_K_ZERO = 3,
  BW_CONDITION_J_NEG_PRIME_ZERO = 4,
  BW_CONDITION_J_NEG_ZERO = 5,
  BW_CONDITION_DPSI_ZERO_AT_ORIGIN = 6,
  BW_CONDITION_PSI_ZERO_AT_ORIGIN = 7,
} BwCondition;

// Opaque list of levels.
typedef struct BwSpectrum BwSpectrum;

// Opaque sampled wavefunction.
typedef struct BwWavefunction BwWavefunction;

// One special energy. `parity` is 0 for even, 1 for odd; `condition`
// holds a `BwCondition` value.
typedef struct BwLevel {
  double energy;
  int32_t parity;
  int32_t condition;
  double residual;
  double bracket_lo;
  double bracket_hi;
  bool physical;
} BwLevel;

typedef struct BwScattering {
  double a_re;
  double a_im;
  double b_re;
  double b_im;
  double reflection;
  double transmission;
} BwScattering;

// Row-major 2x2 complex matrix.
typedef struct BwMatrix2 {
  double re[4];
  double im[4];
} BwMatrix2;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf` (NUL-terminated,
// truncated to `len`). Returns the full message length without the NUL,
// or 0 when the last call succeeded.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
size_t bw_last_error_message(char *buf, size_t len);

// Library version as a static NUL-terminated string.
const char *bw_version(void);

// Special energies of one family (a `BwFamily` code), sorted ascending.
// `parity` takes a `BwParity` code. `n_max` = 0 returns
// every root in the default search range.
//
// # Safety
// `out` must be a valid pointer; on success `*out` owns a handle to be
// released with [`bw_spectrum_free`].
enum BwStatus bw_spectrum_new(int32_t family,
                              double v0,
                              double a,
                              int32_t parity,
                              bool nonphysical,
                              size_t n_max,
                              struct BwSpectrum **out);

// Number of levels; 0 for a null handle.
//
// # Safety
// `s` must be null or a live handle from [`bw_spectrum_new`].
size_t bw_spectrum_len(const struct BwSpectrum *s);

// # Safety
// `s` must be a live handle and `out` a valid pointer.
enum BwStatus bw_spectrum_get(const struct BwSpectrum *s, size_t index, struct BwLevel *out);

// # Safety
// `s` must be null or a handle from [`bw_spectrum_new`] not yet freed.
void bw_spectrum_free(struct BwSpectrum *s);

// Samples the wavefunction of `level` on `n_points` uniform points.
//
// # Safety
// `level` and `out` must be valid pointers; release the handle with
// [`bw_wavefunction_free`].
enum BwStatus bw_wavefunction_new(int32_t family,
                                  double v0,
                                  double a,
                                  const struct BwLevel *level,
                                  double x_min,
                                  double x_max,
                                  size_t n_points,
                                  bool cosmetic_flip,
                                  struct BwWavefunction **out);

// # Safety
// `w` must be null or a live handle.
size_t bw_wavefunction_len(const struct BwWavefunction *w);

// Copies abscissae and values into caller buffers of `len` doubles each;
// either buffer may be null. `len` must equal [`bw_wavefunction_len`].
//
// # Safety
// `w` must be a live handle; non-null buffers must hold `len` doubles.
enum BwStatus bw_wavefunction_copy(const struct BwWavefunction *w,
                                   double *xs,
                                   double *psi,
                                   size_t len);

// # Safety
// `w` must be null or a handle from [`bw_wavefunction_new`] not yet freed.
void bw_wavefunction_free(struct BwWavefunction *w);

// Amplitudes A, B and R, T for V4 or V2 at one energy.
//
// # Safety
// `out` must be a valid pointer.
enum BwStatus bw_scatter(int32_t family,
                         double energy,
                         double v0,
                         double a,
                         struct BwScattering *out);

// Transfer matrix of V4 at one energy.
//
// # Safety
// `out` must be a valid pointer.
enum BwStatus bw_transfer_matrix(double energy, double v0, double a, struct BwMatrix2 *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BESSELWELL_H */
