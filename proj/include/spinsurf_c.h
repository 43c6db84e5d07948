#ifndef SPINSURF_C_H
#define SPINSURF_C_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SPINSURF_API __declspec(dllexport)
#else
#define SPINSURF_API __attribute__((visibility("default")))
#endif

/* Status codes. Nonzero values other than SPINSURF_ERR_INTERNAL mirror spinsurf::ErrorCode. */
enum {
  SPINSURF_OK = 0,
  SPINSURF_ERR_INVALID_ARGUMENT = 1,
  SPINSURF_ERR_INVALID_SPIN_ELEMENT = 2,
  SPINSURF_ERR_DEGENERATE_PARAMETRIZATION = 3,
  SPINSURF_ERR_LIFT_DISCONTINUITY = 4,
  SPINSURF_ERR_VANISHING_SPINOR = 5,
  SPINSURF_ERR_NORM_VIOLATION = 6,
  SPINSURF_ERR_BUDGET_EXCEEDED = 7,
  SPINSURF_ERR_PARSE = 8,
  SPINSURF_ERR_POLE = 9,
  SPINSURF_ERR_PRECONDITION_FAILED = 10,
  SPINSURF_ERR_IO = 11,
  SPINSURF_ERR_INTERNAL = 100
};

typedef struct spinsurf_patch spinsurf_patch;
typedef struct spinsurf_field spinsurf_field;
typedef struct spinsurf_immersion spinsurf_immersion;

/* Message of the last failing call on this thread, "" if none. */
SPINSURF_API const char* spinsurf_last_error(void);
/* Frees strings returned through char** out-parameters. */
SPINSURF_API void spinsurf_string_free(char* s);

/* Runs a JSON run configuration. report_json receives the JSON report and exit_code the
   process exit code (0 ok, 1 validation, 2 residual, 3 I/O). */
SPINSURF_API int spinsurf_run(const char* config_json, char** report_json, int* exit_code);

SPINSURF_API int spinsurf_suite_count(void);
SPINSURF_API const char* spinsurf_suite_name(int index);
/* options_json may be NULL. */
SPINSURF_API int spinsurf_run_suite(const char* name, const char* options_json, char** report_json, int* passed);

/* domain is {u0, u1, v0, v1}; NULL selects the surface default. */
SPINSURF_API int spinsurf_patch_builtin(const char* name, const double* domain, int nu, int nv, spinsurf_patch** out);
/* Samples the classical Weierstrass surface of (f, g) over z = u + iv, then frames it. */
SPINSURF_API int spinsurf_patch_weierstrass(const char* f, const char* g, const double* domain, int nu, int nv,
                                            spinsurf_patch** out);
SPINSURF_API int spinsurf_patch_minimal_r4(const char* const* psi, const double* domain, int nu, int nv,
                                           spinsurf_patch** out);
SPINSURF_API void spinsurf_patch_free(spinsurf_patch* p);
SPINSURF_API int spinsurf_patch_size(const spinsurf_patch* p, int* nu, int* nv);
/* out holds nu * nv * 4 doubles, u fastest. */
SPINSURF_API int spinsurf_patch_positions(const spinsurf_patch* p, double* out);

/* phi0 is (plus, minus) as 8 quaternion components. */
SPINSURF_API int spinsurf_field_restrict(const spinsurf_patch* p, const double* phi0, spinsurf_field** out);
SPINSURF_API void spinsurf_field_free(spinsurf_field* f);
/* out holds nu * nv * 8 doubles. */
SPINSURF_API int spinsurf_field_values(const spinsurf_field* f, double* out);
/* name is "dirac", "gauss_formula" or "norm_condition"; max residual over all components. */
SPINSURF_API int spinsurf_field_residual(const spinsurf_field* f, const char* name, double* max);

SPINSURF_API int spinsurf_immersion_from_field(const spinsurf_field* f, spinsurf_immersion** out);
SPINSURF_API int spinsurf_immersion_two_step(const spinsurf_patch* p, const double* phi0, spinsurf_immersion** out);
SPINSURF_API void spinsurf_immersion_free(spinsurf_immersion* m);
SPINSURF_API int spinsurf_immersion_positions(const spinsurf_immersion* m, double* out);
/* Max distance after the best rigid motion onto the patch. */
SPINSURF_API int spinsurf_immersion_alignment_error(const spinsurf_immersion* m, const spinsurf_patch* p,
                                                    double* max_error);

/* CSV or OBJ by extension; axes selects OBJ coordinates and may be NULL. */
SPINSURF_API int spinsurf_patch_write(const spinsurf_patch* p, const char* path, const int* axes);
SPINSURF_API int spinsurf_immersion_write(const spinsurf_immersion* m, const char* path, const int* axes);

#ifdef __cplusplus
}
#endif

#endif /* SPINSURF_C_H */
