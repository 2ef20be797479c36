#pragma once

#include <cstdint>
#include <string>

namespace msk {

// Informational record: a quantitative comparison the toolkit wants to
// surface without failing the run (reported-value mismatches, probes of
// alternative formula variants, and similar).  Exit-code neutral.
struct Finding {
  std::string check;
  std::uint64_t instance_seed = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  std::string verdict;  // "agrees" | "differs"
};

}  // namespace msk
