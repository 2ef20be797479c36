#include <catch2/catch_amalgamated.hpp>
#include <sstream>

#include "msk/instances.hpp"
#include "msk/scenario.hpp"
#include "msk/serialize.hpp"

using namespace msk;

TEST_CASE("matrix JSON round trip") {
  Rng rng(200);
  const CMat a = rng.gaussian_matrix(3, 2);
  const CMat back = mat_from_json(mat_to_json(a));
  CHECK(frob_norm(CMat(a - back)) < 1e-15);

  CHECK_THROWS_AS(mat_from_json(Json::parse(R"({"re": [[1]]})")), SchemaError);
  CHECK_THROWS_AS(
      mat_from_json(Json::parse(R"({"re": [[1]], "im": [[1, 2]]})")),
      SchemaError);
}

TEST_CASE("circle function JSON round trip") {
  Rng rng(201);
  const CircleFn f = CircleFn::from_fourier(rng.laurent(2, 3), 256);
  const Json j = circle_to_json(f);
  CHECK(j["M"] == 256);
  const CircleFn back = circle_from_json(j);
  CHECK(back.grid_size() == 256);
  CHECK(sub(f, back).sup_frobenius() < 1e-12);
}

TEST_CASE("inner function specs") {
  const Json mono = Json::parse(R"({"type": "monomial", "n": 2, "d": 1})");
  const InnerFn th = inner_from_spec(mono, 256);
  CHECK(th.dim() == 1);
  CHECK(th.degree_hint().value() == 2);

  const Json bp = Json::parse(R"({
    "type": "bp", "d": 1,
    "factors": [{"w": [0.5, 0.0], "P": {"re": [[1]], "im": [[0]]}}]
  })");
  const InnerFn b = inner_from_spec(bp, 256);
  CHECK(b.degree_hint().value() == 1);
  CHECK(std::abs(b.eval(Complex(0.5, 0.0))(0, 0)) < 1e-10);

  // Round trip: an inner function's own spec string reproduces it.
  const InnerFn again = inner_from_spec(Json::parse(b.spec_json()), 256);
  CHECK(sub(again.fn(), b.fn()).sup_frobenius() < 1e-12);

  CHECK_THROWS_AS(inner_from_spec(Json::parse(R"({"type": "nope"})"), 256),
                  SchemaError);
}

TEST_CASE("symbol specs") {
  Rng rng(202);
  const Json coeffs = Json::parse(R"({
    "coeffs": [[0, {"re": [[1]], "im": [[0]]}], [-1, {"re": [[2]], "im": [[0]]}]]
  })");
  const CircleFn f = symbol_from_spec(coeffs, 1, 256, rng);
  CHECK(std::abs(f.fourier_coeff(0)(0, 0) - Complex(1, 0)) < 1e-13);
  CHECK(std::abs(f.fourier_coeff(-1)(0, 0) - Complex(2, 0)) < 1e-13);

  const Json random = Json::parse(R"({"random": {"degree": 2, "scale": 1.0}})");
  Rng r1(7), r2(7);
  const CircleFn a = symbol_from_spec(random, 2, 256, r1);
  const CircleFn b = symbol_from_spec(random, 2, 256, r2);
  CHECK(sub(a, b).sup_frobenius() == 0.0);  // same stream, same symbol
}

TEST_CASE("scenario parsing and validation") {
  const Scenario sc = parse_scenario(R"({
    "seed": 42, "grid": 512, "d": 1,
    "theta1": {"type": "monomial", "n": 2, "d": 1},
    "theta2": {"type": "monomial", "n": 1, "d": 1},
    "tasks": ["dim"]
  })");
  CHECK(sc.seed == 42);
  CHECK(sc.seed_given);
  CHECK(sc.grid == 512);
  CHECK(sc.tasks.size() == 1);

  // Unknown keys are rejected.
  CHECK_THROWS_AS(parse_scenario(R"({"tasks": ["selftest"], "bogus": 1})"),
                  SchemaError);
  // Grid must be a power of two in range.
  CHECK_THROWS_AS(
      parse_scenario(R"({"grid": 100, "tasks": ["selftest"]})"), SchemaError);
  // Unknown task names are rejected.
  CHECK_THROWS_AS(parse_scenario(R"({"tasks": ["fly"]})"), SchemaError);
  // Tasks that need inner functions insist on them.
  CHECK_THROWS_AS(parse_scenario(R"({"tasks": ["basis"]})"), SchemaError);
  // tto needs a symbol as well.
  CHECK_THROWS_AS(parse_scenario(R"({
    "theta1": {"type": "monomial", "n": 1, "d": 1}, "tasks": ["tto"]
  })"),
                  SchemaError);
  // Malformed JSON propagates the parser's error.
  CHECK_THROWS_AS(parse_scenario("{nope"), Json::parse_error);
}

TEST_CASE("scenario reports are deterministic") {
  const char* text = R"({
    "seed": 9, "grid": 512, "d": 1,
    "theta1": {"type": "monomial", "n": 2, "d": 1},
    "theta2": {"type": "monomial", "n": 1, "d": 1},
    "symbol": {"random": {"degree": 1, "scale": 1.0}},
    "tasks": ["basis", "tto", "dim"]
  })";
  const Scenario sc = parse_scenario(text);
  RunOptions opt;
  std::ostringstream out1, out2;
  const int rc1 = run_scenario(sc, opt, out1);
  const int rc2 = run_scenario(sc, opt, out2);
  CHECK(rc1 == 0);
  CHECK(rc2 == 0);

  // Byte-identical reports once the runtime field is erased.
  auto strip = [](const std::string& text_in) {
    std::string acc;
    std::istringstream lines(text_in);
    std::string line;
    while (std::getline(lines, line)) {
      Json j = Json::parse(line);
      j.erase("runtime_ms");
      acc += j.dump() + "\n";
    }
    return acc;
  };
  CHECK(strip(out1.str()) == strip(out2.str()));

  // Every line is a schema-bearing record with the expected fields.
  std::istringstream lines(out1.str());
  std::string line;
  int records = 0;
  while (std::getline(lines, line)) {
    const Json j = Json::parse(line);
    CHECK(j.at("schema") == "msk-report/1");
    CHECK(j.contains("task"));
    CHECK(j.contains("instance"));
    CHECK(j.contains("metrics"));
    CHECK(j.contains("verdict"));
    CHECK(j.contains("runtime_ms"));
    ++records;
  }
  CHECK(records == 3);
}

TEST_CASE("seed override beats the scenario seed") {
  const char* text = R"({
    "seed": 9, "grid": 512, "d": 1,
    "theta1": {"type": "monomial", "n": 2, "d": 1},
    "tasks": ["basis"]
  })";
  const Scenario sc = parse_scenario(text);
  RunOptions opt;
  opt.seed_override = 1234;
  std::ostringstream out;
  run_scenario(sc, opt, out);
  const Json j = Json::parse(out.str().substr(0, out.str().find('\n')));
  CHECK(j.at("instance").at("seed") == 1234);
}

TEST_CASE("finding records serialize completely") {
  Finding f;
  f.check = "example_probe";
  f.instance_seed = 7;
  f.lhs = 1.0;
  f.rhs = 2.0;
  f.tolerance = 0.5;
  f.verdict = "differs";
  const Json j = finding_to_json(f);
  CHECK(j.at("check") == "example_probe");
  CHECK(j.at("instance_seed") == 7);
  CHECK(j.at("verdict") == "differs");
}

TEST_CASE("schema text names the moving parts") {
  const std::string s = schema_text();
  CHECK(s.find("msk-report/1") != std::string::npos);
  CHECK(s.find("tasks") != std::string::npos);
  CHECK(s.find("exit") != std::string::npos);
}
