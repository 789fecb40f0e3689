// Runs the galcoh executable on the job files in data/.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct Result {
  std::string out;
  int code;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(GALCOH_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

std::string data(const char* name) { return std::string(GALCOH_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("analyze: ramified quadratic over Q5") {
  const auto r = run(data("analyze_q5_eisenstein.json"));
  CHECK(r.code == 0);
  CHECK(r.out.find("\"chow_res\": \"ZERO\"") != std::string::npos);
}

TEST_CASE("snf example") {
  const auto r = run(data("snf_basic.json") + " --format text");
  CHECK(r.code == 0);
  CHECK(r.out.find("invariant_factors: [1,6]") != std::string::npos);
}

TEST_CASE("square-class example") {
  const auto r = run(data("square_q2.json") + " --format text");
  CHECK(r.code == 0);
  CHECK(r.out.find("verdict: square") != std::string::npos);
}

TEST_CASE("mixed batch, deterministic") {
  const auto a = run(data("mixed.json") + " --seed 3");
  const auto b = run(data("mixed.json") + " --seed 3");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"holds\": false") == std::string::npos);
}

TEST_CASE("stdin input") {
  const auto r = run("- < " + data("snf_basic.json"));
  CHECK(r.code == 0);
}

TEST_CASE("trace flag") {
  const auto plain = run(data("analyze_q5_eisenstein.json") + " --format text");
  const auto traced = run(data("analyze_q5_eisenstein.json") + " --format text --trace");
  CHECK(plain.out.find("rule_trace") == std::string::npos);
  CHECK(traced.out.find("R3") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run(data("invalid_square_d.json")).code == 2);
  CHECK(run(data("repeated_roots.json")).code == 2);
  CHECK(run(data("bad_schema.json")).code == 4);
  CHECK(run(data("does_not_exist.json")).code == 1);
  CHECK(run("--format yaml " + data("snf_basic.json")).code == 1);
  CHECK(run("").code == 1);
}

TEST_CASE("precision flag") {
  const auto r = run(data("square_q2.json") + " --precision 40");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"verdict\": \"square\"") != std::string::npos);
}
