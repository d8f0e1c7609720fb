#ifndef VARLIP_VARLIP_H
#define VARLIP_VARLIP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(VARLIP_BUILD)
#    define VL_API __declspec(dllexport)
#  else
#    define VL_API __declspec(dllimport)
#  endif
#else
#  define VL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vl_status {
  VL_OK = 0,
  VL_ERR_ARGUMENT = 1,
  VL_ERR_DOMAIN = 2,
  VL_ERR_EXPONENT_RANGE = 3,
  VL_ERR_HYPOTHESIS = 4,
  VL_ERR_SCHEMA = 5,
  VL_ERR_INSUFFICIENT_DATA = 6,
  VL_ERR_IO = 7,
  VL_ERR_INTERNAL = 99
} vl_status;

typedef struct vl_grid vl_grid;
typedef struct vl_function vl_function;
typedef struct vl_exponent vl_exponent;

/* Message of the last failed call on this thread; "" if none. */
VL_API const char* vl_last_error(void);
VL_API const char* vl_version(void);

/* lower has dim entries. */
VL_API vl_status vl_grid_create(int dim, const double* lower, double side, int cells, vl_grid** out);
VL_API void vl_grid_destroy(vl_grid* grid);
VL_API size_t vl_grid_size(const vl_grid* grid);

VL_API vl_status vl_function_create(const vl_grid* grid, const double* values, size_t count,
                                    vl_function** out);
VL_API void vl_function_destroy(vl_function* f);
VL_API size_t vl_function_size(const vl_function* f);
VL_API vl_status vl_function_values(const vl_function* f, double* out, size_t count);

/* params_json: object of numbers, e.g. {"p_infty": 3.5, "c": 0.5}; may be NULL. */
VL_API vl_status vl_exponent_builtin(const vl_grid* grid, const char* family, const char* params_json,
                                     vl_exponent** out);
/* p_infty <= 0 means undeclared. */
VL_API vl_status vl_exponent_create(const vl_grid* grid, const double* values, size_t count,
                                    double p_infty, vl_exponent** out);
VL_API void vl_exponent_destroy(vl_exponent* p);

VL_API vl_status vl_luxemburg_norm(const vl_function* f, const vl_exponent* p, double* out);
VL_API vl_status vl_fractional_maximal(const vl_function* f, double alpha, vl_function** out);
VL_API vl_status vl_variable_fractional_maximal(const vl_function* f, const vl_function* delta,
                                                vl_function** out);
VL_API vl_status vl_sharp_maximal(const vl_function* f, vl_function** out);
VL_API vl_status vl_potential(const vl_function* f, const vl_function* delta, vl_function** out);
VL_API vl_status vl_maximal_commutator(const vl_function* b, const vl_function* f, double alpha,
                                       vl_function** out);
VL_API vl_status vl_nonlinear_fractional_commutator(const vl_function* b, const vl_function* f,
                                                    double alpha, vl_function** out);
VL_API vl_status vl_nonlinear_sharp_commutator(const vl_function* b, const vl_function* f,
                                               vl_function** out);
VL_API vl_status vl_pointwise_lipschitz_norm(const vl_function* b, const vl_function* delta,
                                             double* out);
VL_API vl_status vl_integral_lipschitz_norm(const vl_function* b, double beta, const vl_exponent* p,
                                            double* out);

/* Newline-separated check ids in run order. *needed receives the length
   including the terminating NUL; buf may be NULL to query it. */
VL_API vl_status vl_suite_list_checks(char* buf, size_t capacity, size_t* needed);

/* Runs the verification suite and writes report.json and summary.csv into
   out_dir. checks may be NULL (n_checks 0) for the config's selection;
   seed_override may be NULL. *exit_code is 0 when every check passed, 2 when
   one failed, 1 when the call did not return VL_OK. */
VL_API vl_status vl_suite_run(const char* config_json, const char* out_dir, const char* const* checks,
                              size_t n_checks, const uint64_t* seed_override, int* exit_code);

#ifdef __cplusplus
}
#endif

#endif
