#pragma once

// Batch runner for JSON job documents:
//   {"version": 1, "jobs": [{"type": "snf" | "h1" | "ext-check" |
//                                     "square-class" | "analyze", ...}, ...]}
// One report per job, in input order. The exit code is the largest error
// code among the jobs (0 when all succeed).

#include <cstdint>
#include <string>
#include <string_view>

#include "galcoh/padic.hpp"

namespace galcoh {

struct RunOptions {
  enum class Format { Json, Text };
  Format format = Format::Json;
  long precision = 0;       // initial uniformizer digits; 0 = field default
  std::uint64_t seed = 0;   // for {"random": N} checks
  bool trace = false;       // rule traces in text output
};

struct RunResult {
  std::string output;
  int exit_code = 0;
};

RunResult run_jobs(std::string_view document, const RunOptions& options);

/// A field description {"p": 5, "tower": [...]} as used in job documents.
LocalField local_field_from_json(std::string_view text, long precision = 0);

}  // namespace galcoh
