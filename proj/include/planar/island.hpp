#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "planar/disc.hpp"
#include "planar/rng.hpp"

namespace planar {

// Net of points drawn uniformly from the unit square.
std::vector<Point> sample_uniform_net(std::size_t n, RngStream& rng);

// Throws CollinearNet when the net holds a duplicate point or three collinear
// points; the island machinery assumes general position throughout.
void validate_net(std::span<const Point> net);

// Closed-region discrepancies for every triangle, segment, and point spanned
// by a net, precomputed so the island search never touches the counter.
//
// Direct fills the triangle store one counter query at a time; PairAggregate
// assembles each triangle from per-pair strip/on-line tables, turning
// O(n^3 log|S|) counter work into O(n^2 log|S|) plus O(n^3) table adds.
// Both produce identical values; Auto switches on instance size.
class TriangleDiscTable {
 public:
  enum class Build { Auto, Direct, PairAggregate };

  TriangleDiscTable(std::vector<Point> net, const DiscrepancyCounter& c,
                    Build mode = Build::Auto);

  const std::vector<Point>& net() const { return net_; }
  std::size_t size() const { return net_.size(); }

  // disc of the closed triangle / segment / point; indices in any order
  std::int64_t triangle(std::size_t i, std::size_t j, std::size_t k) const;
  std::int64_t segment(std::size_t i, std::size_t j) const;
  std::int64_t point(std::size_t i) const;

 private:
  std::size_t pair_index(std::size_t i, std::size_t j) const;
  std::size_t tri_index(std::size_t i, std::size_t j, std::size_t k) const;

  std::vector<Point> net_;
  std::vector<std::int32_t> tri_;
  std::vector<std::int32_t> strip_;   // strictly-below disc in the pair's x-strip
  std::vector<std::int32_t> online_;  // on-line disc over the closed pair range
  std::vector<std::int32_t> wpoint_;  // disc of the point itself
  std::vector<std::size_t> pair_base_;
  std::vector<std::size_t> tri_base_;
  std::vector<std::size_t> pair_prefix_;
};

// Maximum-discrepancy island: the best convex region whose vertices are net
// points, including the degenerate shapes (empty set, single net point, net
// segment). `polygon` is set for Polygon, `support` for Point/Segment.
struct IslandResult {
  enum class Shape { Empty, Point, Segment, Polygon };
  Shape shape = Shape::Empty;
  ConvexPolygon polygon;
  std::vector<Point> support;
  std::int64_t disc = 0;
};

struct IslandDiag {
  std::uint64_t dp_states = 0;
};

// O(n^3)-ish dynamic program over convex chains anchored at each bottom
// vertex. Ties keep the earliest candidate in the fixed scan order
// (empty, then points, then segments, then chains), so the result is
// deterministic for a given table.
IslandResult opt_island(const TriangleDiscTable& table, IslandDiag* diag = nullptr);

// Independent subset-enumeration optimum for nets of at most 14 points
// (InstanceTooLarge beyond that). Scores every island by direct exact side
// tests; shares nothing with the table or the dynamic program.
IslandResult island_oracle(std::span<const Point> net, const LabeledPointSet& s);

struct ConvexConfig {
  double sample_c = 4.0;  // examples per invocation ~ c * eps^-2.5 * ln(1/eps)
  double net_c = 8.0;     // net points ~ c * eps^-1.5
  int max_net_resamples = 3;
};

std::size_t convex_sample_size(double eps, const ConvexConfig& cfg = {});
std::size_t convex_net_size(double eps, const ConvexConfig& cfg = {});

struct ConvexDiag {
  std::size_t net_size = 0;
  std::uint64_t dp_states = 0;
};

// One run of the convex learner: draw a uniform net, precompute the triangle
// table against the sample, and return the maximum-discrepancy island.
// Assumes the sample's marginal is uniform on the unit square; the caller is
// responsible for that guarantee.
IslandResult learn_convex_once(const LabeledPointSet& s, double eps, RngStream& rng,
                               const ConvexConfig& cfg = {}, ConvexDiag* diag = nullptr);

}  // namespace planar
