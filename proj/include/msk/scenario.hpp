#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "msk/serialize.hpp"

namespace msk {

// Parsed batch-run description.  theta/symbol/W fields stay as JSON until a
// task needs them, so a scenario may omit anything its tasks never touch.
struct Scenario {
  std::uint64_t seed = 0;
  bool seed_given = false;
  int grid = 1024;
  std::optional<int> d;
  Json theta1;  // null when absent
  Json theta2;
  Json symbol;
  Json w1;
  Json w2;
  std::vector<std::string> tasks;
  std::map<std::string, double> tolerances;
};

// Validates structure and task requirements.  Malformed JSON propagates
// nlohmann's parse_error (message carries line/column); structural problems
// throw SchemaError naming the offending field.
Scenario parse_scenario(const std::string& text);

struct RunOptions {
  std::optional<std::uint64_t> seed_override;  // --seed beats scenario.seed
  std::optional<int> grid_override;
  std::map<std::string, double> tol_overrides;
  std::uint64_t default_seed = 20260819ULL;  // MSK_SEED or built-in
  bool quiet = false;
};

// Executes tasks in order, one JSONL record per task to `out`.
// Returns 0 when no verdict is "fail", 1 otherwise; findings stay neutral.
int run_scenario(const Scenario& sc, const RunOptions& opt, std::ostream& out);

// Module-invariant suites.  Prints a summary table to `out` (unless quiet)
// and returns 0 iff every invariant passed.  `jsonl` (optional) receives one
// record per invariant.
int run_selftest(bool quick, std::uint64_t seed, std::ostream& out,
                 std::ostream* jsonl, bool quiet);

// One-shot dimension report used by the `dim` subcommand.
int run_dim(const Json& theta1_spec, const Json& theta2_spec, int grid,
            std::ostream& out);

// Informal JSON schemas for scenario files and report records.
std::string schema_text();

}  // namespace msk
