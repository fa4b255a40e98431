#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "galdesc/galdesc.h"

static int failures = 0;

#define EXPECT(cond)                                               \
  do {                                                             \
    if (!(cond)) {                                                 \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                  \
    }                                                              \
  } while (0)

static const char* kQi =
    "{\"schema_version\": 1, \"field\": {\"kind\": \"extension\", \"base\": {\"kind\": \"rationals\"},"
    " \"modulus\": [\"1\", \"0\", \"1\"], \"symbol\": \"i\", \"automorphism_hints\": [\"-1*i\"]},"
    " \"structure\": {\"dim\": 1, \"cocycle\": [{\"aut\": \"-1*i\", \"matrix\": {\"shape\": [1, 1], \"rows\": [[\"i\"]]}}]}}";

static const char* kBroken =
    "{\"schema_version\": 1, \"field\": {\"kind\": \"extension\", \"base\": {\"kind\": \"rationals\"},"
    " \"modulus\": [\"1\", \"0\", \"1\"], \"symbol\": \"i\", \"automorphism_hints\": [\"-1*i\"]},"
    " \"structure\": {\"dim\": 1, \"cocycle\": [{\"aut\": \"-1*i\", \"matrix\": {\"shape\": [1, 1], \"rows\": [[\"2*i\"]]}}]}}";

int main(void) {
  EXPECT(strlen(gd_version()) > 0);
  EXPECT(strcmp(gd_status_message(GD_OK), "ok") == 0);
  EXPECT(gd_command_count() > 0);
  EXPECT(gd_command_name(gd_command_count()) == NULL);

  int found = 0;
  for (size_t i = 0; i < gd_command_count(); ++i) found |= strcmp(gd_command_name(i), "descend-vect") == 0;
  EXPECT(found);

  gd_options* opts = NULL;
  EXPECT(gd_options_create(&opts) == GD_OK);
  EXPECT(gd_options_set_seed(opts, 3) == GD_OK);
  EXPECT(gd_options_set_assert_irreducible(NULL, 1) == GD_ERR_NULL_ARGUMENT);

  gd_result* res = NULL;
  EXPECT(gd_run("descend-vect", kQi, opts, &res) == GD_OK);
  EXPECT(gd_result_exit_code(res) == 0);
  EXPECT(strstr(gd_result_certificate(res), "\"1+1*i\"") != NULL);

  /* the certificate re-verifies through the same API */
  gd_result* ver = NULL;
  EXPECT(gd_run("verify", gd_result_certificate(res), NULL, &ver) == GD_OK);
  EXPECT(gd_result_exit_code(ver) == 0);
  gd_result_free(ver);
  gd_result_free(res);

  res = NULL;
  EXPECT(gd_run("check-gstructure", kBroken, NULL, &res) == GD_OK);
  EXPECT(gd_result_exit_code(res) == 1);
  EXPECT(strstr(gd_result_certificate(res), "NotCocycle") != NULL);
  EXPECT(strlen(gd_result_summary(res)) > 0);
  gd_result_free(res);

  res = NULL;
  EXPECT(gd_run("descend-vect", "{not json", NULL, &res) == GD_OK);
  EXPECT(gd_result_exit_code(res) == 2);
  gd_result_free(res);

  EXPECT(gd_run("frobnicate", "{}", NULL, &res) == GD_ERR_UNKNOWN_COMMAND);
  EXPECT(gd_run(NULL, "{}", NULL, &res) == GD_ERR_NULL_ARGUMENT);
  EXPECT(gd_result_exit_code(NULL) == -1);
  EXPECT(gd_result_certificate(NULL) == NULL);

  gd_options_free(opts);
  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  return failures ? EXIT_FAILURE : EXIT_SUCCESS;
}
