#pragma once

#include <string>
#include <vector>

#include "msk/findings.hpp"
#include "msk/instances.hpp"

namespace msk::checks {

struct Params {
  std::uint64_t base_seed = 20260819ULL;
  int grid = 1024;
  int instances = 20;
  int max_dim = 3;
  bool quick = false;  // shrinks counts/ranges for fast smoke runs
};

struct Outcome {
  std::string name;
  bool pass = false;
  double worst = 0.0;  // worst observed value of the check's metric
  double tolerance = 0.0;
  int cases = 0;
  double runtime_ms = 0.0;
  std::string note;               // failure annotation (exception text)
  std::vector<Finding> findings;  // informational, never affects pass
};

inline constexpr int kCriterionCount = 13;

// Contract checks 1..13, each self-contained with its documented tolerance.
Outcome criterion(int number, const Params& p);
std::vector<Outcome> all_criteria(const Params& p);

// Wider module-level invariant sweep used by the selftest.
std::vector<Outcome> module_invariants(const Params& p);

}  // namespace msk::checks
