#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace crem::accept {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;  // one-line diagnostic (worst case, margin, ...)
};

struct RunResult {
  std::vector<CriterionResult> criteria;
  bool all_pass = false;
};

/// Runs the ten acceptance checks in order, printing one PASS/FAIL line per
/// criterion to stdout as it goes. `only` restricts to a single criterion id
/// (0 = run all). Seeds for every check derive from `master_seed`.
RunResult run_all(std::uint64_t master_seed, int threads, int only = 0);

/// JSON report for a completed run (criteria, pass flags, timings, details).
std::string report_json(const RunResult& result);

}  // namespace crem::accept
