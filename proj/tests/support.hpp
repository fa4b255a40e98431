#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "galdesc/random_instances.hpp"
#include "galdesc/serialize.hpp"

namespace testing {

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(GALDESC_FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline gdesc::Json load_fixture(const std::string& name) { return gdesc::Json::parse(read_fixture(name)); }

inline gdesc::Field quotient(const gdesc::Field& base, std::initializer_list<int> coeffs, const std::string& symbol) {
  std::vector<gdesc::FieldElem> m;
  for (int c : coeffs) m.push_back(base.from_int(c));
  return gdesc::Field::extension(base, std::move(m), symbol);
}

inline gdesc::Matrix mat(const gdesc::Field& f, std::size_t rows, std::size_t cols,
                         std::initializer_list<const char*> entries) {
  std::vector<gdesc::FieldElem> e;
  for (const char* s : entries) e.push_back(f.parse(s));
  return gdesc::Matrix(f, rows, cols, std::move(e));
}

template <class Fn>
gdesc::ErrorCode error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const gdesc::Error& e) {
    return e.code();
  }
  return gdesc::ErrorCode::Internal;
}

}  // namespace testing
