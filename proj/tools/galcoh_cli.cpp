// galcoh: run a JSON job file and print the reports.
//
//   galcoh jobs.json [--format json|text] [--precision N] [--seed S] [--trace]
//
// Reads stdin when the path is "-". The process exit code is the report's
// exit code; 1 for usage errors.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "galcoh/galcoh.h"

namespace {

bool read_input(const std::string& path, std::string& out) {
  if (path == "-") {
    out.assign(std::istreambuf_iterator<char>(std::cin), {});
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group cohomology, p-adic square classes and surface analysis jobs"};
  std::string path;
  std::string format = "json";
  long precision = 0;
  std::uint64_t seed = 0;
  bool trace = false;
  app.add_option("jobs", path, "job file (JSON), or - for stdin")->required();
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--precision", precision, "initial p-adic precision in uniformizer digits (0 = default)")
      ->check(CLI::Range(0L, 4096L));
  app.add_option("--seed", seed, "seed for randomized checks");
  app.add_flag("--trace", trace, "include rule traces in text output");
  app.set_version_flag("--version", std::string(galcoh_version()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  std::string document;
  if (!read_input(path, document)) {
    std::cerr << "galcoh: cannot read " << path << "\n";
    return 1;
  }

  galcoh_context* ctx = nullptr;
  if (galcoh_context_create(&ctx) != GALCOH_OK) {
    std::cerr << "galcoh: cannot create context\n";
    return 5;
  }
  galcoh_context_set_precision(ctx, precision);
  galcoh_context_set_seed(ctx, seed);

  galcoh_report* report = nullptr;
  const galcoh_status st = galcoh_run_jobs(ctx, document.c_str(),
                                           format == "text" ? GALCOH_FORMAT_TEXT : GALCOH_FORMAT_JSON, trace, &report);
  int rc;
  if (st != GALCOH_OK) {
    std::cerr << "galcoh: " << galcoh_status_string(st) << ": " << galcoh_last_error(ctx) << "\n";
    rc = static_cast<int>(st);
  } else {
    std::fputs(galcoh_report_text(report), stdout);
    rc = galcoh_report_exit_code(report);
    galcoh_report_destroy(report);
  }
  galcoh_context_destroy(ctx);
  return rc;
}
