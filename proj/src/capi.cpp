#include "galdesc/galdesc.h"

#include <algorithm>
#include <new>

#include "galdesc/jobs.hpp"

struct gd_options {
  gdesc::JobOptions options;
};

struct gd_result {
  int exit_code = 0;
  std::string certificate;
  std::string summary;
};

extern "C" {

const char* gd_version(void) { return GALDESC_VERSION; }

const char* gd_status_message(gd_status status) {
  switch (status) {
    case GD_OK: return "ok";
    case GD_ERR_NULL_ARGUMENT: return "null argument";
    case GD_ERR_UNKNOWN_COMMAND: return "unknown command";
    case GD_ERR_OUT_OF_MEMORY: return "out of memory";
    case GD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

size_t gd_command_count(void) { return gdesc::job_commands().size(); }

const char* gd_command_name(size_t index) {
  const auto& cmds = gdesc::job_commands();
  return index < cmds.size() ? cmds[index].c_str() : nullptr;
}

gd_status gd_options_create(gd_options** out) {
  if (!out) return GD_ERR_NULL_ARGUMENT;
  *out = new (std::nothrow) gd_options();
  return *out ? GD_OK : GD_ERR_OUT_OF_MEMORY;
}

void gd_options_free(gd_options* options) { delete options; }

gd_status gd_options_set_seed(gd_options* options, uint64_t seed) {
  if (!options) return GD_ERR_NULL_ARGUMENT;
  options->options.seed = seed;
  return GD_OK;
}

gd_status gd_options_set_assert_irreducible(gd_options* options, int flag) {
  if (!options) return GD_ERR_NULL_ARGUMENT;
  options->options.assert_irreducible = flag != 0;
  return GD_OK;
}

gd_status gd_run(const char* command, const char* input_json, const gd_options* options, gd_result** out) {
  if (!command || !input_json || !out) return GD_ERR_NULL_ARGUMENT;
  *out = nullptr;
  const auto& cmds = gdesc::job_commands();
  if (std::find(cmds.begin(), cmds.end(), command) == cmds.end()) return GD_ERR_UNKNOWN_COMMAND;
  try {
    gdesc::JobResult r = gdesc::run_job(command, std::string(input_json), options ? options->options : gdesc::JobOptions{});
    *out = new gd_result{r.exit_code, gdesc::canonical_dump(r.certificate), std::move(r.summary)};
    return GD_OK;
  } catch (const std::bad_alloc&) {
    return GD_ERR_OUT_OF_MEMORY;
  } catch (...) {
    return GD_ERR_INTERNAL;
  }
}

int gd_result_exit_code(const gd_result* result) { return result ? result->exit_code : -1; }

const char* gd_result_certificate(const gd_result* result) { return result ? result->certificate.c_str() : nullptr; }

const char* gd_result_summary(const gd_result* result) { return result ? result->summary.c_str() : nullptr; }

void gd_result_free(gd_result* result) { delete result; }

}
