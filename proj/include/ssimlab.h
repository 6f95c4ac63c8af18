#ifndef SSIMLAB_H
#define SSIMLAB_H

/* C interface to the ssimlab similarity toolkit. Handles are opaque; every
 * entry point returns a status code and leaves a thread-local message for
 * ssimlab_last_error. Strings handed back through char** are heap blocks the
 * caller releases with ssimlab_free. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ssimlab_status {
  SSIMLAB_OK = 0,
  SSIMLAB_ERR_NUMERIC = 1, /* solver breakdown, violated bound, refused fit */
  SSIMLAB_ERR_CONFIG = 2,  /* bad arguments, unknown keys, malformed inputs */
  SSIMLAB_ERR_IO = 3       /* filesystem failures while writing results */
} ssimlab_status;

typedef struct ssimlab_field ssimlab_field;
typedef struct ssimlab_config ssimlab_config;

const char* ssimlab_version(void);

/* Message for the most recent failing call on this thread; empty after a
 * success. The pointer stays valid until the next ssimlab call on the same
 * thread. */
const char* ssimlab_last_error(void);

/* Fields are nx*ny doubles, row-major with x fastest, living on the unit
 * square with vertex layout (nx, ny >= 2). */
ssimlab_status ssimlab_field_create(size_t nx, size_t ny, const double* values,
                                    ssimlab_field** out);
ssimlab_status ssimlab_field_load_pgm(const char* path, ssimlab_field** out);
ssimlab_status ssimlab_field_save_pgm(const ssimlab_field* f, const char* path,
                                      unsigned maxval);
void ssimlab_field_destroy(ssimlab_field* f);
size_t ssimlab_field_nx(const ssimlab_field* f);
size_t ssimlab_field_ny(const ssimlab_field* f);
/* Borrowed pointer into the field, valid until the field is destroyed. */
const double* ssimlab_field_values(const ssimlab_field* f);

/* Configs start from the library defaults; set accepts the same key=value
 * vocabulary as config files (function, image, methods, steps, eval_step,
 * window_size, window_anchor, boundary, c1, c2, kernel_shape, lambda, sinc,
 * image_sizes, seed, kernel_node_cap). Unknown keys are config errors. */
ssimlab_status ssimlab_config_create(ssimlab_config** out);
ssimlab_status ssimlab_config_set(ssimlab_config* cfg, const char* key,
                                  const char* value);
/* Apply a flat key=value file ('#' comments, blank lines ignored). */
ssimlab_status ssimlab_config_load(ssimlab_config* cfg, const char* path);
void ssimlab_config_destroy(ssimlab_config* cfg);

typedef struct ssimlab_compare_result {
  double ssim;
  double wssim;
  double l1;
  double l2;
  double dissim_global;   /* 1 - ssim, computed without the cancellation */
  double dissim_weighted; /* 1 - wssim, same route */
  double c_fg;            /* dissim_global <= c_fg * l2^2 */
  double c_f;
  double c;
  double C_fg; /* dissim_weighted <= C_fg * l2^2 */
  double C_f;
  double R;       /* sup-norm bound entering the reverse inequality */
  double c_prime; /* reverse constant, 0 when not applicable */
  double w_max;   /* max effective window weight */
} ssimlab_compare_result;

/* cfg may be NULL for the defaults (22x22 uniform window, centered,
 * renormalized at the boundary; window_size 0 selects the whole domain). */
ssimlab_status ssimlab_compare(const ssimlab_field* f, const ssimlab_field* g,
                               const ssimlab_config* cfg,
                               ssimlab_compare_result* out);

typedef struct ssimlab_lower_bound_result {
  double lhs;    /* (l2^2 - mean squared window-mean gap) / (4R^2 + c2) */
  double dissim; /* weighted dissimilarity the lhs must not exceed */
  double slack;
  int holds;
  double r_used;
  double r_required;
  int r_verified; /* precondition sup of second moments <= R^2 */
  double l2sq;
  double mean_sq_mu_diff;
  double w_max;
  double c_prime;
  int c_prime_applicable;
  double certificate_lhs; /* c_prime * l2^2 */
  int certificate_holds;
} ssimlab_lower_bound_result;

ssimlab_status ssimlab_check_lower_bound(const ssimlab_field* f,
                                         const ssimlab_field* g,
                                         const ssimlab_config* cfg,
                                         ssimlab_lower_bound_result* out);

/* Convergence experiments. Results land under out_dir (created if missing) as
 * CSV plus a sibling .meta.txt; *summary receives the human-readable table.
 * Either of out_dir and summary may be NULL to skip that output. */
ssimlab_status ssimlab_run_function_experiment(const ssimlab_config* cfg,
                                               const char* out_dir,
                                               char** summary);
ssimlab_status ssimlab_run_image_experiment(const ssimlab_config* cfg,
                                            const char* out_dir,
                                            char** summary);

/* Randomized inequality sweep; trials 0 selects 200. *report (optional)
 * receives a key=value tally ending in result=PASS or result=FAIL. Returns
 * SSIMLAB_ERR_NUMERIC when a gated inequality failed. */
ssimlab_status ssimlab_verify_bounds(const ssimlab_config* cfg, size_t trials,
                                     char** report);

void ssimlab_free(char* p);

#ifdef __cplusplus
}
#endif

#endif /* SSIMLAB_H */
