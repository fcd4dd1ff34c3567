#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "planar/disc.hpp"
#include "planar/rng.hpp"

namespace planar {

// Net drawn from the sample with replacement (indices uniform, so duplicated
// sample points keep their multiplicity).
struct NetSample {
  std::vector<Point> points;
};

NetSample sample_net(const LabeledPointSet& s, size_t n, RngStream& rng);

// All lines through pairs of distinct net points, coincident lines collapsed
// (a line through a collinear subset appears once, keyed by its two
// lexicographically smallest points). Halfplane index h = 2*line + side,
// side 0 = left of the canonical pair direction, side 1 = right.
struct InducedHalfplanes {
  std::vector<LineRef> lines;
  size_t count() const { return lines.size() * 2; }
  Halfplane materialize(size_t halfplane_idx) const;
};

// Throws TooFewPoints when the net holds < 2 distinct points.
InducedHalfplanes induced_halfplanes(const NetSample& net);

struct ReferenceKGon {
  ConvexPolygon polygon;
  std::vector<std::uint32_t> halfplanes;  // ascending defining indices
  std::int64_t disc = 0;
};

struct EnumStats {
  std::uint64_t candidates = 0;  // k-subsets of halfplanes examined
  std::uint64_t yielded = 0;     // distinct bounded polygons emitted
};

// Streams every distinct bounded nonempty intersection of k induced
// halfplanes whose underlying lines are distinct. Duplicate polygons (the
// same region reached through different defining tuples, possible only for
// k >= 4 via redundant halfplanes) are emitted once, keyed by their vertex
// ring rounded to 1e-9. All lines in `ih` must be registered with `c`.
void enumerate_reference_kgons(const InducedHalfplanes& ih, int k,
                               const DiscrepancyCounter& c,
                               const std::function<void(const ReferenceKGon&)>& emit,
                               EnumStats* stats = nullptr);

struct KgonConfig {
  double net_c = 0.0;  // 0 = theory default 4*ln(6k)/ln(k)
  int log_base = 0;    // 0 or 'e' = natural log, 2 = log base 2
  int max_net_resamples = 10;
};

size_t kgon_net_size(int k, double eps, const KgonConfig& cfg);

struct ErmDiag {
  size_t net_size = 0;
  size_t net_distinct = 0;
  EnumStats enumeration;
};

// ERM over an explicitly supplied net (the tail of approximate_erm_kgon once
// the net is fixed; also lets callers run the learner with the net pinned to
// the sample itself).
ReferenceKGon erm_over_net(const LabeledPointSet& s, const NetSample& net, int k,
                           ErmDiag* diag = nullptr);

// Approximate empirical risk minimizer: samples a net, forms the induced
// halfplanes, registers their lines with a line-anchored index over S, and
// returns the reference k-gon of maximum discrepancy (ties broken by the
// lexicographically smallest defining tuple). Throws EmptySample (no data),
// TooFewPoints (net never saw 2 distinct points), or EmptyReferenceSet
// (no bounded candidate exists).
ReferenceKGon approximate_erm_kgon(const LabeledPointSet& s, double eps, int k,
                                   RngStream& rng, const KgonConfig& cfg = {},
                                   ErmDiag* diag = nullptr);

struct OracleResult {
  ConvexPolygon polygon;
  std::int64_t disc = 0;
};

// Independent brute-force ERM over the same candidate class, for k = 3 and
// |S| <= 25 only (InstanceTooLarge otherwise). Evaluates every sign
// combination of every line triple by direct clipping and per-point halfplane
// side tests; shares no code with the streaming enumeration or the counters.
OracleResult exact_erm_oracle(const LabeledPointSet& s, int k);

}  // namespace planar
