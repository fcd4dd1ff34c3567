#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "planar/geom.hpp"

namespace planar::harness {

// One verification check: a named pass/fail with a human-readable summary of
// what was measured. The acceptance binary prints one line per check; the
// `verify` command runs selected checks with caller-chosen budgets.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// The checks below default to the pinned acceptance budgets (trial counts,
// seeds, thresholds). Deterministic: same arguments, same verdict.
CheckResult check_counter_equivalence(int seeds = 10, std::uint64_t seed = 101);
CheckResult check_claim_identity(int pairs = 200, std::uint64_t seed = 102);
CheckResult check_kgon_argmax_oracle(int trials = 30, std::uint64_t seed = 103);
CheckResult check_island_dp(int trials = 50, std::uint64_t seed = 104);
CheckResult check_kgon_learner(std::uint64_t seed = 105);
CheckResult check_convex_learner(std::uint64_t seed = 106);
CheckResult check_amplification(int trials = 200, std::uint64_t seed = 107);
CheckResult check_distance_estimate(std::uint64_t seed = 108);
CheckResult check_missing_area(std::uint64_t seed = 109);
CheckResult check_benchmarks(std::uint64_t seed = 110);
CheckResult check_reference_set(int trials = 200, std::uint64_t seed = 111);

// All acceptance checks in their documented order.
std::vector<std::function<CheckResult()>> all_checks();

// ---- measurement sweeps shared with the stats and bench commands ----

struct SweepRow {
  double size = 0.0;
  double value = 0.0;
};

// Least-squares slope of log(value) against log(size). Rows with
// nonpositive entries are skipped; fewer than two usable rows give 0.
double fit_exponent(std::span<const SweepRow> rows);

// Median mass of the radius-0.3 disk missed by the hull of the uniform
// points landing inside it, per net size.
std::vector<SweepRow> missing_area_sweep(std::span<const int> ells, int trials,
                                         std::uint64_t seed);

// Size of the largest subset in convex position, by the exact convex-chain
// dynamic program over all bottom points.
int largest_convex_subset(std::span<const Point> pts);

struct ValtrRow {
  int n = 0;
  std::vector<int> subset_sizes;  // one entry per trial
  double median = 0.0;
};

std::vector<ValtrRow> valtr_sweep(std::span<const int> ns, int trials,
                                  std::uint64_t seed);

// Wall-clock sweeps. Values are seconds.
std::vector<SweepRow> bench_index_build(std::span<const int> sizes, std::uint64_t seed);
std::vector<SweepRow> bench_index_query(std::span<const int> sizes, std::uint64_t seed);
std::vector<SweepRow> bench_island(std::span<const int> net_sizes, std::uint64_t seed);

struct EnumRow {
  int n = 0;
  std::uint64_t candidates = 0;
  double bound = 0.0;  // C(2*C(n,2), 3)
  double seconds = 0.0;
};

std::vector<EnumRow> bench_kgon_enum(std::span<const int> net_sizes, std::uint64_t seed);

}  // namespace planar::harness
