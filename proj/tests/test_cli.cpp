// End-to-end tests that drive the installed command-line binary.  The test
// runner exports MSK_BIN with the path to the built executable.
#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "msk/serialize.hpp"

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out;  // stdout only; stderr is discarded
};

std::string binary_path() {
  const char* p = std::getenv("MSK_BIN");
  REQUIRE(p != nullptr);
  return p;
}

CmdResult run_cmd(const std::string& args, const std::string& env = "") {
  const std::string cmd =
      env + (env.empty() ? "" : " ") + "\"" + binary_path() + "\" " + args +
      " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult r;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof(buf), pipe)) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_dir() {
  static std::string dir = [] {
    char tmpl[] = "/tmp/msk_cli_XXXXXX";
    const char* d = mkdtemp(tmpl);
    REQUIRE(d != nullptr);
    return std::string(d);
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  const std::string path = temp_dir() + "/" + name;
  std::ofstream f(path);
  f << text;
  REQUIRE(f.good());
  return path;
}

std::vector<msk::Json> report_lines(const std::string& text) {
  std::vector<msk::Json> recs;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    recs.push_back(msk::Json::parse(line));
  }
  return recs;
}

}  // namespace

TEST_CASE("dim task reports the computed dimension") {
  const std::string path = write_file("dim.json", R"({
    "theta1": {"type": "monomial", "n": 2, "d": 1},
    "theta2": {"type": "monomial", "n": 1, "d": 1},
    "tasks": ["dim"]
  })");
  const CmdResult r = run_cmd("run " + path);
  CHECK(r.exit_code == 0);
  const auto recs = report_lines(r.out);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].at("task") == "dim");
  CHECK(recs[0].at("metrics").at("computed") == 2);
  CHECK(recs[0].at("verdict") == "pass");
}

TEST_CASE("transform with zero parameter is essentially exact") {
  const std::string path = write_file("cf0.json", R"({
    "theta1": {"type": "monomial", "n": 2, "d": 1},
    "tasks": ["crofoot"]
  })");
  const CmdResult r = run_cmd("run " + path);
  CHECK(r.exit_code == 0);
  const auto recs = report_lines(r.out);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].at("metrics").at("unitarity").get<double>() <= 1e-12);
}

TEST_CASE("malformed scenario exits with an input error and no records") {
  const std::string path = write_file("broken.json", "{nope");
  const CmdResult r = run_cmd("run " + path);
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("msk-report") == std::string::npos);
}

TEST_CASE("missing scenario file is an input error") {
  const CmdResult r = run_cmd("run " + temp_dir() + "/does_not_exist.json");
  CHECK(r.exit_code == 2);
}

TEST_CASE("identical runs produce identical reports") {
  const std::string path = write_file("repeat.json", R"({
    "seed": 11, "grid": 512,
    "theta1": {"type": "monomial", "n": 2, "d": 1},
    "symbol": {"random": {"degree": 1, "scale": 1.0}},
    "tasks": ["basis", "tto"]
  })");
  const CmdResult r1 = run_cmd("run " + path);
  const CmdResult r2 = run_cmd("run " + path);
  CHECK(r1.exit_code == 0);
  auto strip = [](const std::string& text) {
    std::string acc;
    for (msk::Json j : report_lines(text)) {
      j.erase("runtime_ms");
      acc += j.dump() + "\n";
    }
    return acc;
  };
  CHECK(strip(r1.out) == strip(r2.out));
}

TEST_CASE("seed flag overrides the scenario seed") {
  const std::string path = write_file("seeded.json", R"({
    "seed": 11, "grid": 512,
    "theta1": {"type": "monomial", "n": 2, "d": 1},
    "tasks": ["basis"]
  })");
  const CmdResult r = run_cmd("run " + path + " --seed 4321");
  CHECK(r.exit_code == 0);
  const auto recs = report_lines(r.out);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].at("instance").at("seed") == 4321);
}

TEST_CASE("environment seed fills in when the scenario omits one") {
  const std::string path = write_file("envseed.json", R"({
    "grid": 512,
    "theta1": {"type": "monomial", "n": 2, "d": 1},
    "tasks": ["basis"]
  })");
  const CmdResult r = run_cmd("run " + path, "MSK_SEED=777");
  CHECK(r.exit_code == 0);
  const auto recs = report_lines(r.out);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].at("instance").at("seed") == 777);
}

TEST_CASE("tolerance override can force a failing verdict") {
  const std::string path = write_file("tight.json", R"({
    "seed": 11, "grid": 512,
    "theta1": {"type": "monomial", "n": 2, "d": 1},
    "symbol": {"random": {"degree": 1, "scale": 1.0}},
    "tasks": ["tto"]
  })");
  const CmdResult r = run_cmd("run " + path + " --tol adjoint=1e-30");
  CHECK(r.exit_code == 1);
  const auto recs = report_lines(r.out);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].at("verdict") == "fail");
}

TEST_CASE("report can be redirected to a file") {
  const std::string path = write_file("tofile.json", R"({
    "theta1": {"type": "monomial", "n": 2, "d": 1},
    "tasks": ["dim"]
  })");
  const std::string out_path = temp_dir() + "/report.jsonl";
  const CmdResult r = run_cmd("run " + path + " --out " + out_path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("msk-report") == std::string::npos);
  std::ifstream f(out_path);
  std::stringstream buf;
  buf << f.rdbuf();
  const auto recs = report_lines(buf.str());
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].at("task") == "dim");
}

TEST_CASE("quick selftest passes") {
  const CmdResult r = run_cmd("selftest --level quick");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("dim subcommand takes inner specs directly") {
  const CmdResult r = run_cmd(
      R"(dim --theta1 '{"type": "monomial", "n": 2, "d": 1}')"
      R"( --theta2 '{"type": "monomial", "n": 1, "d": 1}' --grid 512)");
  CHECK(r.exit_code == 0);
  const auto recs = report_lines(r.out);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].at("metrics").at("computed") == 2);

  // theta2 defaults to theta1: the pair (z^2, z^2) spans one more dimension.
  const CmdResult r2 = run_cmd(
      R"(dim --theta1 '{"type": "monomial", "n": 2, "d": 1}' --grid 512)");
  CHECK(r2.exit_code == 0);
  const auto recs2 = report_lines(r2.out);
  REQUIRE(recs2.size() == 1);
  CHECK(recs2[0].at("metrics").at("computed") == 3);
}

TEST_CASE("schema subcommand documents the contract") {
  const CmdResult r = run_cmd("schema");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("msk-report/1") != std::string::npos);
  CHECK(r.out.find("tasks") != std::string::npos);
}

TEST_CASE("unknown flags are input errors") {
  const CmdResult r = run_cmd("run --frobnicate");
  CHECK(r.exit_code == 2);
}
