// Acceptance gate: runs every criterion and prints one PASS/FAIL line each.
#include <cstdio>
#include <cstdlib>

#include "crem/accept.hpp"
#include "crem/parallel.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 1;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  const crem::accept::RunResult res = crem::accept::run_all(seed, crem::resolve_threads(0));
  std::printf("%s\n", res.all_pass ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL");
  return res.all_pass ? 0 : 1;
}
