#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "galdesc/certificate.hpp"

namespace gdesc {

struct JobOptions {
  std::uint64_t seed = 0;
  bool assert_irreducible = false;
};

struct JobResult {
  /// 0 pass, 1 mathematical failure, 2 usage or schema error.
  int exit_code = 0;
  Json certificate;
  /// One line per outcome, for humans.
  std::string summary;
};

/// Command names accepted by run_job, in documentation order.
const std::vector<std::string>& job_commands();

/// Runs one command on an input document given as text. Never throws for
/// bad input: every failure is reported through the certificate.
JobResult run_job(const std::string& command, const std::string& input, const JobOptions& options = {});
JobResult run_job(const std::string& command, const Json& input, const JobOptions& options = {});
inline JobResult run_job(const std::string& command, const char* input, const JobOptions& options = {}) {
  return run_job(command, std::string(input), options);
}

/// Field description with the group's non-identity images as hints, ready
/// to embed in an input document.
Json suite_field_json(const Field& ext, const GaloisGroup& group);

}  // namespace gdesc
