// Contract gate: runs the thirteen numbered checks end to end on the seeded
// instance family and prints one line per check.  Exit status is the number
// of failed checks (0 = the whole contract holds).
#include <cstdio>
#include <vector>

#include "msk/checks.hpp"

int main() {
  msk::checks::Params params;
  const std::vector<msk::checks::Outcome> results =
      msk::checks::all_criteria(params);

  std::printf("%-3s %-26s %-6s %-12s %-12s %6s %9s\n", "#", "check", "status",
              "worst", "tolerance", "cases", "ms");
  int failed = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const msk::checks::Outcome& o = results[i];
    if (!o.pass) ++failed;
    std::printf("%-3zu %-26s %-6s %-12.3e %-12.3e %6d %9.1f\n", i + 1,
                o.name.c_str(), o.pass ? "pass" : "FAIL", o.worst, o.tolerance,
                o.cases, o.runtime_ms);
    if (!o.note.empty()) std::printf("    note: %s\n", o.note.c_str());
    for (const msk::Finding& f : o.findings) {
      std::printf("    finding: %s seed=%llu lhs=%.6e rhs=%.6e tol=%.1e %s\n",
                  f.check.c_str(),
                  static_cast<unsigned long long>(f.instance_seed), f.lhs,
                  f.rhs, f.tolerance, f.verdict.c_str());
    }
  }
  if (failed == 0) {
    std::printf("all %zu checks passed\n", results.size());
  } else {
    std::printf("%d of %zu checks FAILED\n", failed, results.size());
  }
  return failed;
}
