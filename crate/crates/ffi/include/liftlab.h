#ifndef LIFTLAB_H
#define LIFTLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LiftlabDesignStatus {
  LIFTLAB_DESIGN_STATUS_VERIFIED = 0,
  LIFTLAB_DESIGN_STATUS_NOT_A_DESIGN = 1,
  LIFTLAB_DESIGN_STATUS_COMPLETE_DESIGN = 2,
} LiftlabDesignStatus;

typedef enum LiftlabFamily {
  LIFTLAB_FAMILY_SIMPLEX = 0,
  LIFTLAB_FAMILY_SIMPLEX_TRACE = 1,
  LIFTLAB_FAMILY_HAMMING = 2,
  /**
   * Binary Reed-Muller RM(order, m); `q` must be 2.
   */
  LIFTLAB_FAMILY_REED_MULLER = 3,
  /**
   * Projective Reed-Muller of degree `order`.
   */
  LIFTLAB_FAMILY_PROJECTIVE_REED_MULLER = 4,
} LiftlabFamily;

typedef enum LiftlabMethod {
  LIFTLAB_METHOD_AUTO = 0,
  LIFTLAB_METHOD_DIRECT = 1,
  LIFTLAB_METHOD_VIA_DUAL = 2,
} LiftlabMethod;

typedef enum LiftlabStatus {
  LIFTLAB_STATUS_OK = 0,
  LIFTLAB_STATUS_NULL_POINTER = 1,
  LIFTLAB_STATUS_INVALID_ARGUMENT = 2,
  LIFTLAB_STATUS_BUDGET_EXCEEDED = 3,
  LIFTLAB_STATUS_OVERFLOW = 4,
  LIFTLAB_STATUS_FAILED = 5,
  LIFTLAB_STATUS_PANIC = 6,
} LiftlabStatus;

typedef struct LiftlabCode LiftlabCode;

typedef struct LiftlabConfig LiftlabConfig;

typedef struct LiftlabField LiftlabField;

typedef struct LiftlabWeights LiftlabWeights;

/**
 * Outcome of a design check. `lambda` is meaningful only when `is_design`.
 */
typedef struct LiftlabCertificate {
  uint64_t t;
  uint64_t v;
  uint64_t k;
  uint64_t b;
  uint64_t lambda;
  bool is_design;
  enum LiftlabDesignStatus status;
} LiftlabCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL. Valid until the next
 * failing call on the same thread.
 */
const char *liftlab_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void liftlab_string_free(char *s);

/**
 * A configuration; zero for `budget` or `subset_budget` keeps the default,
 * zero `workers` uses every available core.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum LiftlabStatus liftlab_config_new(uint64_t budget,
                                      uint64_t subset_budget,
                                      uint32_t workers,
                                      struct LiftlabConfig **out);

/**
 * # Safety
 * `cfg` must come from [`liftlab_config_new`] or be NULL.
 */
void liftlab_config_free(struct LiftlabConfig *cfg);

/**
 * The field GF(q).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum LiftlabStatus liftlab_field_new(uint64_t q, struct LiftlabField **out);

/**
 * # Safety
 * `field` must be a valid handle.
 */
uint64_t liftlab_field_order(const struct LiftlabField *field);

/**
 * # Safety
 * `field` must be a valid handle.
 */
uint64_t liftlab_field_characteristic(const struct LiftlabField *field);

/**
 * # Safety
 * `field` must come from [`liftlab_field_new`] or be NULL.
 */
void liftlab_field_free(struct LiftlabField *field);

/**
 * A named code family over GF(q). `order` is the Reed-Muller order or
 * projective degree and is ignored otherwise.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum LiftlabStatus liftlab_code_family(enum LiftlabFamily family,
                                       uint64_t q,
                                       uint32_t m,
                                       uint32_t order,
                                       struct LiftlabCode **out);

/**
 * The code spanned by the rows of a `rows x cols` matrix over `field`,
 * entries given row-major as element indices.
 *
 * # Safety
 * `data` must point to `rows * cols` values; `field` and `out` must be valid.
 */
enum LiftlabStatus liftlab_code_from_generator(const struct LiftlabField *field,
                                               size_t rows,
                                               size_t cols,
                                               const uint32_t *data,
                                               struct LiftlabCode **out);

/**
 * The extension of `code` to GF(q^degree).
 *
 * # Safety
 * `code` and `out` must be valid; `cfg` may be NULL.
 */
enum LiftlabStatus liftlab_code_lift(const struct LiftlabCode *code,
                                     uint32_t degree,
                                     const struct LiftlabConfig *cfg,
                                     struct LiftlabCode **out);

/**
 * # Safety
 * `code` must be a valid handle.
 */
size_t liftlab_code_length(const struct LiftlabCode *code);

/**
 * # Safety
 * `code` must be a valid handle.
 */
size_t liftlab_code_dimension(const struct LiftlabCode *code);

/**
 * # Safety
 * `code` must be a valid handle.
 */
uint64_t liftlab_code_field_order(const struct LiftlabCode *code);

/**
 * # Safety
 * `code` must come from this library or be NULL.
 */
void liftlab_code_free(struct LiftlabCode *code);

/**
 * Exact weight distribution of `code`.
 *
 * # Safety
 * `code` and `out` must be valid; `cfg` may be NULL.
 */
enum LiftlabStatus liftlab_code_weights(const struct LiftlabCode *code,
                                        enum LiftlabMethod method,
                                        const struct LiftlabConfig *cfg,
                                        struct LiftlabWeights **out);

/**
 * Number of entries, `n + 1`.
 *
 * # Safety
 * `w` must be a valid handle.
 */
size_t liftlab_weights_len(const struct LiftlabWeights *w);

/**
 * `A_i` when it fits in 64 bits.
 *
 * # Safety
 * `w` and `out` must be valid.
 */
enum LiftlabStatus liftlab_weights_count_u64(const struct LiftlabWeights *w,
                                             size_t i,
                                             uint64_t *out);

/**
 * `A_i` in decimal; release with [`liftlab_string_free`]. NULL when `i` is
 * out of range.
 *
 * # Safety
 * `w` must be a valid handle.
 */
char *liftlab_weights_count_string(const struct LiftlabWeights *w, size_t i);

/**
 * The enumerator polynomial, e.g. `1 + 7z^3 + 7z^4 + 1z^7`; release with
 * [`liftlab_string_free`].
 *
 * # Safety
 * `w` must be a valid handle.
 */
char *liftlab_weights_enumerator(const struct LiftlabWeights *w);

/**
 * # Safety
 * `w` must come from this library or be NULL.
 */
void liftlab_weights_free(struct LiftlabWeights *w);

/**
 * Checks whether the supports of the weight-`weight` codewords form a
 * `t`-design.
 *
 * # Safety
 * `code` and `out` must be valid; `cfg` may be NULL.
 */
enum LiftlabStatus liftlab_design_verify(const struct LiftlabCode *code,
                                         size_t weight,
                                         size_t t,
                                         const struct LiftlabConfig *cfg,
                                         struct LiftlabCertificate *out);

/**
 * Verifies the predicted 3-design in RM(1, m) lifted to GF(4).
 *
 * # Safety
 * `agree` and `out` must be valid; `cfg` may be NULL.
 */
enum LiftlabStatus liftlab_conjecture_rm1(uint32_t m,
                                          const struct LiftlabConfig *cfg,
                                          bool *agree,
                                          struct LiftlabCertificate *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIFTLAB_H */
