// Exercises the shared library through its C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "galcoh/galcoh.h"

namespace {

struct Context {
  galcoh_context* ctx = nullptr;
  Context() { REQUIRE(galcoh_context_create(&ctx) == GALCOH_OK); }
  ~Context() { galcoh_context_destroy(ctx); }
};

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::string(galcoh_version()) == "0.1.0");
  CHECK(std::string(galcoh_status_string(GALCOH_SCHEMA)) == "schema error");
}

TEST_CASE("null arguments") {
  CHECK(galcoh_context_create(nullptr) == GALCOH_BAD_ARGUMENT);
  galcoh_report* rep = nullptr;
  CHECK(galcoh_run_jobs(nullptr, "{}", GALCOH_FORMAT_JSON, 0, &rep) == GALCOH_BAD_ARGUMENT);
  Context c;
  CHECK(galcoh_run_jobs(c.ctx, nullptr, GALCOH_FORMAT_JSON, 0, &rep) == GALCOH_BAD_ARGUMENT);
  CHECK(std::string(galcoh_last_error(c.ctx)) == "null argument");
  CHECK(galcoh_context_set_precision(c.ctx, -1) == GALCOH_BAD_ARGUMENT);
  galcoh_context_destroy(nullptr);
  galcoh_report_destroy(nullptr);
}

TEST_CASE("run a job document") {
  Context c;
  galcoh_report* rep = nullptr;
  REQUIRE(galcoh_run_jobs(c.ctx, R"({"version": 1, "jobs": [{"type": "snf", "matrix": [[2, 0], [0, 3]]}]})",
                          GALCOH_FORMAT_JSON, 0, &rep) == GALCOH_OK);
  CHECK(galcoh_report_exit_code(rep) == 0);
  CHECK(std::string(galcoh_report_text(rep)).find("\"invariant_factors\": [\n") != std::string::npos);
  galcoh_report_destroy(rep);

  REQUIRE(galcoh_run_jobs(c.ctx, "[1, 2", GALCOH_FORMAT_TEXT, 0, &rep) == GALCOH_OK);
  CHECK(galcoh_report_exit_code(rep) == GALCOH_SCHEMA);
  galcoh_report_destroy(rep);
}

TEST_CASE("smith invariants") {
  Context c;
  const long a[] = {2, 4, 4, -6, 6, 12, 10, -4, -16};
  long f[3];
  size_t rank = 0;
  REQUIRE(galcoh_smith_invariants(c.ctx, 3, 3, a, f, &rank) == GALCOH_OK);
  REQUIRE(rank == 3);
  CHECK(f[0] == 2);
  CHECK(f[1] == 6);
  CHECK(f[2] == 12);
}

TEST_CASE("square test") {
  Context c;
  int sq = -1;
  REQUIRE(galcoh_is_square(c.ctx, R"({"p": 2})", "17", &sq) == GALCOH_OK);
  CHECK(sq == 1);
  REQUIRE(galcoh_is_square(c.ctx, R"({"p": 5, "tower": [{"kind": "unramified", "degree": 2}]})", "2", &sq) == GALCOH_OK);
  CHECK(sq == 1);
  REQUIRE(galcoh_is_square(c.ctx, R"({"p": 5})", "2", &sq) == GALCOH_OK);
  CHECK(sq == 0);
  CHECK(galcoh_is_square(c.ctx, R"({"p": 5})", "0", &sq) == GALCOH_INVALID_INPUT);
  CHECK(galcoh_is_square(c.ctx, R"({"q": 5})", "2", &sq) == GALCOH_SCHEMA);
  CHECK(std::string(galcoh_last_error(c.ctx)).find("q") != std::string::npos);
}
