#ifndef GALDESC_H
#define GALDESC_H

#include <stddef.h>
#include <stdint.h>

#if defined(GALDESC_BUILDING_LIBRARY)
#define GD_API __attribute__((visibility("default")))
#else
#define GD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status of a library call. A job that ran to completion returns GD_OK even
 * when its mathematical outcome is a failure; see gd_result_exit_code. */
typedef enum gd_status {
  GD_OK = 0,
  GD_ERR_NULL_ARGUMENT = 1,
  GD_ERR_UNKNOWN_COMMAND = 2,
  GD_ERR_OUT_OF_MEMORY = 3,
  GD_ERR_INTERNAL = 4
} gd_status;

typedef struct gd_options gd_options;
typedef struct gd_result gd_result;

GD_API const char* gd_version(void);
GD_API const char* gd_status_message(gd_status status);

GD_API size_t gd_command_count(void);
/* NULL when index is out of range. */
GD_API const char* gd_command_name(size_t index);

GD_API gd_status gd_options_create(gd_options** out);
GD_API void gd_options_free(gd_options* options);
GD_API gd_status gd_options_set_seed(gd_options* options, uint64_t seed);
GD_API gd_status gd_options_set_assert_irreducible(gd_options* options, int flag);

/* Runs a command on a JSON document. options may be NULL. On GD_OK, *out
 * owns a result that must be released with gd_result_free. */
GD_API gd_status gd_run(const char* command, const char* input_json, const gd_options* options, gd_result** out);

/* 0 pass, 1 mathematical failure, 2 usage or schema error; -1 for NULL. */
GD_API int gd_result_exit_code(const gd_result* result);
/* Canonical certificate text; owned by the result. */
GD_API const char* gd_result_certificate(const gd_result* result);
GD_API const char* gd_result_summary(const gd_result* result);
GD_API void gd_result_free(gd_result* result);

#ifdef __cplusplus
}
#endif

#endif
