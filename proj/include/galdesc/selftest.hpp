#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "galdesc/random_instances.hpp"
#include "galdesc/serialize.hpp"

namespace gdesc {

/// Outcome of one randomized suite on one field. `hash` chains the canonical
/// text of every generated instance, so runs with equal seeds agree on it.
struct SuiteResult {
  std::string suite;
  std::string field;
  std::size_t instances = 0;
  std::size_t passed = 0;
  std::uint64_t hash = 0;
  std::vector<std::string> failures;

  bool pass() const { return passed == instances; }
};

/// Suite names in report order: vector_descent, sheaf_descent,
/// compat_pullback, compat_pushforward, compat_hom, morphism_recovery,
/// morphism_rejection, gluing_extension, gluing_conjugation, gluing_descent,
/// complexes.
const std::vector<std::string>& suite_names();
/// Instances per field for a suite.
std::size_t default_count(const std::string& suite);

/// Runs `count` instances; instance i draws from its own generator seeded by
/// (seed, suite, field, i). Never throws on instance failures.
SuiteResult run_suite(const std::string& suite, const SuiteField& field, std::size_t count, std::uint64_t seed);

struct SelftestConfig {
  std::uint64_t seed = 0;
  /// Empty means all suites / all suite fields.
  std::vector<std::string> suites;
  std::vector<std::string> fields;
  /// Overrides every suite's default count.
  std::optional<std::size_t> count;
  /// Worker threads; results are assembled in a fixed order regardless.
  std::size_t threads = 0;
};

struct SelftestReport {
  std::uint64_t seed = 0;
  std::vector<SuiteResult> results;

  bool pass() const;
};

/// Errors: SchemaError for unknown suite or field names.
SelftestReport run_selftest(const SelftestConfig& config);
Json selftest_to_json(const SelftestReport& report);

}  // namespace gdesc
