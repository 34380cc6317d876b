#pragma once

#include <cstdint>
#include <string>

#include "refl4/rational.hpp"

namespace refl4::cli {

struct RunConfig {
  std::string command;  // generate, audit, nerve, enumerate, tile, quotient, plinv
  std::string input;
  std::size_t max_length = 3;
  std::uint64_t prime = 5;
  Rational grid_step{1, 16};
  std::string output;  // empty: report goes to stdout
  std::string csv;     // growth CSV for enumerate
  std::size_t element_cap = 1'000'000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string probe = "5,5,5,5";
  std::size_t samples = 10'000;
};

enum ExitStatus : int { kPass = 0, kInputError = 1, kViolation = 2 };

struct RunResult {
  int status = kPass;
  std::string report;      // JSON text, empty on input error
  std::string diagnostic;  // human-readable message for status 1
  std::string csv;
};

bool is_known_command(const std::string& command);

// Runs one command and writes the report (and CSV) files named in config.
RunResult run(const RunConfig& config);

}  // namespace refl4::cli
