#ifndef BILAP_H
#define BILAP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

#define BILAP_OK 0

#define BILAP_ERR_NULL_ARGUMENT 1

#define BILAP_ERR_DOMAIN 2

#define BILAP_ERR_BAND_LIMIT 3

#define BILAP_ERR_DIMENSION 4

#define BILAP_ERR_IO 5

#define BILAP_ERR_FORMAT 6

#define BILAP_ERR_OTHER 7

/**
 * Linear multiplier selector for `bilap_apply_linear`.
 */
typedef enum BilapMultiplier {
  /**
   * |xi|^param, zero mode removed.
   */
  BilapMultiplier_FractionalDerivative = 0,
  /**
   * |xi|^{-param}, zero mode removed.
   */
  BilapMultiplier_RieszPotential = 1,
  /**
   * (1 + |xi|^2)^{param/2}, zero mode kept.
   */
  BilapMultiplier_Inhomogeneous = 2,
  /**
   * i xi_axis / |xi|, zero mode removed.
   */
  BilapMultiplier_RieszTransform = 3,
  /**
   * i xi_axis, zero mode removed.
   */
  BilapMultiplier_Partial = 4,
} BilapMultiplier;

/**
 * Opaque complex field handle.
 */
typedef struct BilapField BilapField;

/**
 * Opaque periodic grid handle.
 */
typedef struct BilapGrid BilapGrid;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread.  The
 * pointer stays valid until the next failing call on the thread.
 */
const char *bilap_last_error(void);

/**
 * Create a periodic grid: `dim` in {1,2}, `points_per_axis` a power
 * of two >= 8, `period` > 0.
 */
int bilap_grid_new(uint32_t dim, uint32_t points_per_axis, double period, struct BilapGrid **out);

void bilap_grid_free(struct BilapGrid *grid);

/**
 * Total number of grid points (`N^dim`); 0 for a null handle.
 */
uintptr_t bilap_grid_len(const struct BilapGrid *grid);

/**
 * Build a field from `len` interleaved (re, im) space samples in
 * row-major order; `len` must equal the grid length.
 */
int bilap_field_from_space(const struct BilapGrid *grid,
                           const double *interleaved,
                           uintptr_t len,
                           struct BilapField **out);

void bilap_field_free(struct BilapField *field);

/**
 * Copy the space samples into `len` interleaved (re, im) pairs.
 */
int bilap_field_space(const struct BilapField *field, double *interleaved, uintptr_t len);

/**
 * Copy the normalized Fourier coefficients (a pure mode has
 * coefficient 1) into `len` interleaved (re, im) pairs.
 */
int bilap_field_freq(const struct BilapField *field, double *interleaved, uintptr_t len);

/**
 * New field with all coefficients at or above the N/3 cutoff removed.
 */
int bilap_field_band_limit(const struct BilapField *field, struct BilapField **out);

/**
 * New field with the zero-frequency coefficient removed.
 */
int bilap_field_mean_project(const struct BilapField *field, struct BilapField **out);

/**
 * Apply a radial Fourier multiplier; `axis` is used only by the Riesz
 * transform and partial derivative.
 */
int bilap_apply_linear(enum BilapMultiplier kind,
                       double param,
                       uint32_t axis,
                       const struct BilapField *field,
                       struct BilapField **out);

/**
 * Alias-free pointwise product of two band-limited fields.
 */
int bilap_dealiased_product(const struct BilapField *a,
                            const struct BilapField *b,
                            struct BilapField **out);

/**
 * Bilinear fractional integral of order `nu` in (0, 2*dim).
 */
int bilap_bilinear_fractional(double nu,
                              const struct BilapField *a,
                              const struct BilapField *b,
                              struct BilapField **out);

/**
 * Lebesgue (quasi-)norm, any p > 0.
 */
int bilap_lebesgue_norm(const struct BilapField *field, double p, double *out);

/**
 * Mixed norm L^p(outer axis) L^q(inner axis); requires dim = 2.
 */
int bilap_mixed_norm(const struct BilapField *field, double p, double q, double *out);

/**
 * Write the field in the self-describing binary format.
 */
int bilap_field_write(const struct BilapField *field, const char *path);

/**
 * Read a field from the self-describing binary format.
 */
int bilap_field_read(const char *path, struct BilapField **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BILAP_H */
