// Runs every claim check at full size and prints one line per criterion.
// A criterion passes when its check holds and finishes within its time limit.

#include <cstdio>
#include <cstdlib>

#include "posetlab/verify.hpp"

int main(int argc, char** argv) {
  posetlab::claims::SuiteOptions opt;
  opt.max_n = 12;
  if (argc > 1) opt.workers = static_cast<unsigned>(std::max(1, std::atoi(argv[1])));

  int failures = 0;
  for (const auto& c : posetlab::claims::run_suite(opt)) {
    const bool in_time = c.seconds <= c.limit_seconds;
    const bool ok = c.passed && in_time;
    failures += !ok;
    std::printf("%s  #%-2d %-30s %8.3fs / %5.0fs%s\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(),
                c.seconds, c.limit_seconds, c.passed ? (in_time ? "" : "  (over time)") : "  (check failed)");
    if (!c.passed) std::printf("      %s\n", c.results.dump().c_str());
  }
  std::printf("%s: %d failing criteria\n", failures ? "FAILED" : "OK", failures);
  return failures ? EXIT_FAILURE : EXIT_SUCCESS;
}
