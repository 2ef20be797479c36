#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "msk/scenario.hpp"

namespace {

std::uint64_t default_seed_from_env() {
  if (const char* env = std::getenv("MSK_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      // unusable value: fall back to the built-in default below
    }
  }
  return 20260819ULL;
}

int input_error(const std::string& what) {
  std::cerr << "error: " << what << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"model-space toolkit: bases, truncated Toeplitz operators, "
               "Crofoot transforms, zero-symbol checks"};
  app.require_subcommand(1);

  std::string out_path;
  std::optional<std::uint64_t> seed_flag;
  std::optional<int> grid_flag;
  std::vector<std::string> tol_flags;
  bool quiet = false;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "write report lines to FILE");
    sub->add_option("--seed", seed_flag, "override the run seed");
    sub->add_option("--grid", grid_flag, "override the sample-grid size");
    sub->add_option("--tol", tol_flags, "override a tolerance, KEY=VALUE")
        ->take_all();
    sub->add_flag("--quiet", quiet, "suppress the human-readable summary");
  };

  std::string scenario_path;
  CLI::App* cmd_run = app.add_subcommand("run", "run a scenario file");
  cmd_run->add_option("scenario", scenario_path, "scenario JSON file")
      ->required();
  add_common(cmd_run);

  std::string level = "quick";
  CLI::App* cmd_self = app.add_subcommand("selftest", "run module invariants");
  cmd_self->add_option("--level", level, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}));
  add_common(cmd_self);

  std::string theta1_spec, theta2_spec;
  CLI::App* cmd_dim =
      app.add_subcommand("dim", "dimension of the bounded-symbol operator space");
  cmd_dim->add_option("--theta1", theta1_spec, "inner spec JSON")->required();
  cmd_dim->add_option("--theta2", theta2_spec,
                      "inner spec JSON (defaults to theta1)");
  add_common(cmd_dim);

  CLI::App* cmd_schema =
      app.add_subcommand("schema", "print the scenario and report schemas");
  add_common(cmd_schema);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage problems are input errors
  }

  msk::RunOptions opt;
  opt.default_seed = default_seed_from_env();
  opt.seed_override = seed_flag;
  opt.grid_override = grid_flag;
  opt.quiet = quiet;
  for (const std::string& kv : tol_flags) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      return input_error("--tol expects KEY=VALUE, got \"" + kv + "\"");
    try {
      opt.tol_overrides[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (...) {
      return input_error("--tol value is not a number in \"" + kv + "\"");
    }
  }

  std::ofstream ofs;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    ofs.open(out_path);
    if (!ofs) return input_error("cannot open --out file " + out_path);
    out = &ofs;
  }

  try {
    if (cmd_run->parsed()) {
      std::ifstream in(scenario_path);
      if (!in) return input_error("cannot read scenario file " + scenario_path);
      std::ostringstream buf;
      buf << in.rdbuf();
      const msk::Scenario sc = msk::parse_scenario(buf.str());
      return msk::run_scenario(sc, opt, *out);
    }
    if (cmd_self->parsed()) {
      const std::uint64_t seed = seed_flag.value_or(opt.default_seed);
      std::ostream* jsonl = out_path.empty() ? nullptr : out;
      return msk::run_selftest(level == "quick", seed, std::cout, jsonl, quiet);
    }
    if (cmd_dim->parsed()) {
      const msk::Json t1 = msk::Json::parse(theta1_spec);
      const msk::Json t2 =
          theta2_spec.empty() ? t1 : msk::Json::parse(theta2_spec);
      return msk::run_dim(t1, t2, grid_flag.value_or(1024), *out);
    }
    *out << msk::schema_text() << "\n";
    return 0;
  } catch (const msk::Json::parse_error& e) {
    return input_error(e.what());  // message carries line and column
  } catch (const msk::Error& e) {
    return input_error(e.what());
  } catch (const std::exception& e) {
    return input_error(e.what());
  }
}
