/* C interface to the asdlab library. All strings are UTF-8 and owned by the
 * session; they stay valid until the next call on the same session. */
#ifndef ASDLAB_H
#define ASDLAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define ASDLAB_API __declspec(dllexport)
#else
#define ASDLAB_API __attribute__((visibility("default")))
#endif

/* Status codes double as CLI exit codes. */
typedef enum asdlab_status {
  ASDLAB_OK = 0,
  ASDLAB_VERIFY_FAILED = 1,
  ASDLAB_CONFIG_ERROR = 2,
  ASDLAB_DEGENERATE = 3,
  ASDLAB_REALITY = 4,
  ASDLAB_CONTOUR = 5,
  ASDLAB_INTERNAL = 6
} asdlab_status;

typedef struct asdlab_session asdlab_session;

ASDLAB_API const char* asdlab_version(void);
ASDLAB_API const char* asdlab_status_name(int status);

/* NULL on allocation failure. */
ASDLAB_API asdlab_session* asdlab_session_create(void);
ASDLAB_API void asdlab_session_destroy(asdlab_session* s);

/* Config as a JSON document, from a file or a string. */
ASDLAB_API int asdlab_session_load_config(asdlab_session* s, const char* path);
ASDLAB_API int asdlab_session_set_config(asdlab_session* s, const char* json_text);
ASDLAB_API int asdlab_session_set_output_dir(asdlab_session* s, const char* dir);
ASDLAB_API int asdlab_session_set_seed(asdlab_session* s, uint64_t seed);
ASDLAB_API int asdlab_session_set_tolerance(asdlab_session* s, double rel_tol);

/* Runs integrate, reduce, classify, monodromy or verify and writes its
 * artifacts; returns the status. */
ASDLAB_API int asdlab_session_run(asdlab_session* s, const char* command);

/* JSON report of the last successful run (empty string otherwise). */
ASDLAB_API const char* asdlab_session_report(const asdlab_session* s);
/* Message of the last failed call (empty string otherwise). */
ASDLAB_API const char* asdlab_session_last_error(const asdlab_session* s);

#ifdef __cplusplus
}
#endif

#endif
