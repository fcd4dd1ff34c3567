// Acceptance gate: one line per criterion, nonzero exit on any failure.
// With no arguments every check runs in order; `--criterion N` (or a bare
// index) runs just that one, which is how CTest registers them.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "planar/harness.hpp"

int main(int argc, char** argv) {
  auto checks = planar::harness::all_checks();
  int lo = 1, hi = int(checks.size());
  int idx = 0;
  for (int a = 1; a < argc; ++a) {
    if (std::strcmp(argv[a], "--criterion") == 0) continue;
    char* end = nullptr;
    long v = std::strtol(argv[a], &end, 10);
    if (end == argv[a] || *end != '\0' || v < 1 || v > long(checks.size())) {
      std::fprintf(stderr, "criterion index must be in 1..%d\n", int(checks.size()));
      return 2;
    }
    idx = int(v);
  }
  if (idx) lo = hi = idx;

  int failed = 0;
  for (int i = lo; i <= hi; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    planar::harness::CheckResult r = checks[std::size_t(i) - 1]();
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2d %s - %s [%.1fs]\n", r.pass ? "PASS" : "FAIL", i,
                r.name.c_str(), r.detail.c_str(), secs);
    std::fflush(stdout);
    if (!r.pass) ++failed;
  }
  if (lo != hi)
    std::printf("%d/%d criteria passed\n", hi - lo + 1 - failed, hi - lo + 1);
  return failed ? 1 : 0;
}
