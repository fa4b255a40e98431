#pragma once

#include <string>
#include <vector>

#include "galdesc/error.hpp"

namespace gdesc {

/// One named check of a report with its pass flag and integer witnesses.
struct ReportCheck {
  std::string name;
  bool pass = true;
  Error::Witness witness;
};

/// Machine-readable outcome of a compatibility check.
struct Report {
  std::string name;
  bool pass = true;
  std::vector<ReportCheck> checks;

  void add(std::string check, bool ok, Error::Witness witness = {}) {
    pass = pass && ok;
    checks.push_back({std::move(check), ok, std::move(witness)});
  }
};

/// Re-raises `e` with extra witness entries (existing keys are kept).
[[noreturn]] inline void rethrow_with(const Error& e, const Error::Witness& extra) {
  Error::Witness w = e.witness();
  for (const auto& [k, v] : extra) w.emplace(k, v);
  throw Error(e.code(), e.what(), std::move(w));
}

}  // namespace gdesc
