#ifndef CONICPEN_H
#define CONICPEN_H

/* C interface to the conicpen library.
 *
 * Every command takes a point document (text or JSON, see README) and
 * always hands back a result handle through *out, also on failure, so the
 * caller can read the JSON error document and the diagnostic. Release it
 * with cp_result_free. Strings returned by accessors stay valid until then.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CP_API __declspec(dllexport)
#else
#define CP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cp_status {
  CP_OK = 0,
  CP_INPUT_ERROR = 1,
  CP_DEGENERATE = 2,
  CP_BUDGET_EXHAUSTED = 3,
  CP_INTERNAL_ERROR = 4
} cp_status;

typedef struct cp_result cp_result;

typedef struct cp_conic_options {
  int oracle;        /* also build the 6x6 determinant conic and compare */
  int plot;          /* produce an SVG artifact */
  int plot_samples;  /* marching-squares grid size, default 512 */
} cp_conic_options;

typedef struct cp_quadric_options {
  int oracle;
  int pairing;           /* 0..209, or -1 for the default covering */
  int has_vertex_order;  /* use vertex_order below */
  int vertex_order[9];   /* input index for A..F and the three extra points */
  int mesh;              /* produce an OBJ artifact */
  int resolution;        /* grid cells per axis, default 64 */
} cp_quadric_options;

typedef struct cp_solver_options {
  uint64_t seed;
  int max_starts;
  double tol_residual;
  double tol_dedup;
  int early_stop_window;
} cp_solver_options;

typedef struct cp_cone_pair_options {
  double cone_tol;   /* how far the first three points may sit off the cone */
  double conic_tol;  /* shared-conic residual bound */
  int scene;         /* produce an OBJ scene artifact */
} cp_cone_pair_options;

CP_API void cp_conic_options_init(cp_conic_options* opts);
CP_API void cp_quadric_options_init(cp_quadric_options* opts);
CP_API void cp_solver_options_init(cp_solver_options* opts);
CP_API void cp_cone_pair_options_init(cp_cone_pair_options* opts);

/* opts may be NULL for defaults. */
CP_API cp_status cp_conic5(const char* document, size_t length, const cp_conic_options* opts, cp_result** out);
CP_API cp_status cp_quadric9(const char* document, size_t length, const cp_quadric_options* opts, cp_result** out);
CP_API cp_status cp_place_cone(const char* document, size_t length, const cp_solver_options* opts, cp_result** out);
CP_API cp_status cp_cone_pair(const char* document, size_t length, const cp_cone_pair_options* opts, cp_result** out);
CP_API cp_status cp_selfcheck(cp_result** out);

/* Re-verifies a result document produced by one of the commands above.
 * CP_OK when every recorded residual reproduces and is within tolerance;
 * the result JSON lists the problems otherwise. */
CP_API cp_status cp_verify_result(const char* json, size_t length, cp_result** out);

CP_API cp_status cp_result_status(const cp_result* r);
CP_API const char* cp_result_json(const cp_result* r);
/* NULL when no artifact was requested. */
CP_API const char* cp_result_artifact(const cp_result* r);
/* "svg", "obj" or NULL. */
CP_API const char* cp_result_artifact_kind(const cp_result* r);
/* Empty string on success. */
CP_API const char* cp_result_error(const cp_result* r);
CP_API void cp_result_free(cp_result* r);

CP_API const char* cp_status_name(cp_status s);
CP_API const char* cp_version(void);

#ifdef __cplusplus
}
#endif

#endif /* CONICPEN_H */
