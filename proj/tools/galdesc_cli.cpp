// Command-line front end over the C API.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "galdesc/galdesc.h"

namespace {

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream s;
  s << in.rdbuf();
  out = s.str();
  return true;
}

bool write_file(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> commands;
  for (size_t i = 0; i < gd_command_count(); ++i) commands.emplace_back(gd_command_name(i));

  CLI::App app{"Exact extension of scalars and Galois descent with checkable certificates"};
  app.set_version_flag("--version", std::string(gd_version()));
  std::string command, in_path, out_path;
  std::uint64_t seed = 0;
  bool assert_irreducible = false;
  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(commands));
  app.add_option("--in", in_path, "Input JSON document (optional for selftest)");
  app.add_option("--out", out_path, "Where to write the certificate (stdout if omitted)");
  app.add_option("--seed", seed, "Seed for randomized suites");
  app.add_flag("--assert-irreducible", assert_irreducible,
               "Trust moduli over Q whose irreducibility the built-in test cannot settle");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  std::string input;
  if (in_path.empty()) {
    if (command != "selftest") {
      std::cerr << "error: --in is required for " << command << "\n";
      return 2;
    }
  } else if (!read_file(in_path, input)) {
    std::cerr << "error: cannot read " << in_path << "\n";
    return 2;
  }

  gd_options* options = nullptr;
  if (gd_options_create(&options) != GD_OK) return 2;
  gd_options_set_seed(options, seed);
  gd_options_set_assert_irreducible(options, assert_irreducible ? 1 : 0);
  gd_result* result = nullptr;
  const gd_status status = gd_run(command.c_str(), input.c_str(), options, &result);
  gd_options_free(options);
  if (status != GD_OK) {
    std::cerr << "error: " << gd_status_message(status) << "\n";
    return 2;
  }

  int code = gd_result_exit_code(result);
  if (out_path.empty()) {
    std::cout << gd_result_certificate(result);
  } else if (!write_file(out_path, gd_result_certificate(result))) {
    std::cerr << "error: cannot write " << out_path << "\n";
    code = 2;
  }
  std::cerr << gd_result_summary(result) << "\n";
  gd_result_free(result);
  return code;
}
