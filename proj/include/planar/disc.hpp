#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "planar/geom.hpp"

namespace planar {

struct LabeledExample {
  Point p;
  int label = 0;  // 0 or 1
};

// Sample with cached positive count.
struct LabeledPointSet {
  std::vector<LabeledExample> examples;
  std::int64_t positives = 0;

  std::int64_t total() const { return std::int64_t(examples.size()); }

  static LabeledPointSet from(std::vector<LabeledExample> ex);
};

// Exact rational empirical error.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return double(num) / double(den); }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num * b.den == b.num * a.den;
  }
};

// Supporting line through two distinct points, canonicalized so a is
// lexicographically smaller. Registration and lookup are by exact point
// pair; two refs name the same registry entry iff their canonical pairs
// are bitwise equal.
struct LineRef {
  Point a, b;
  bool vertical() const { return a.x == b.x; }
};

LineRef make_line(const Point& p, const Point& q);

struct Weight {
  std::int64_t pos = 0;
  std::int64_t neg = 0;
  std::int64_t disc() const { return pos - neg; }
  Weight& operator+=(const Weight& o) {
    pos += o.pos;
    neg += o.neg;
    return *this;
  }
};

enum class CounterMode { Exhaustive, LineAnchoredIndex };

// Answers exact label-count queries against a fixed sample for a fixed set of
// registered lines. The three primitives below are everything the region
// formulas need:
//   below_in_strip: strictly below the line, x in the half-open strip (xlo, xhi]
//   on_line_range:  exactly on the line, x (or y when vertical) in [lo, hi]
//   weight_at:      exactly at one point
// The exhaustive backend scans the sample per query; the indexed backend
// partitions the sample per line (lazily, on first touch) and answers by
// binary search. Both give identical answers; exhaustive is the normative
// semantics.
class DiscrepancyCounter {
 public:
  virtual ~DiscrepancyCounter() = default;

  const LabeledPointSet& sample() const { return sample_; }
  size_t line_count() const { return lines_.size(); }
  const LineRef& line(size_t i) const { return lines_[i]; }

  virtual Weight below_in_strip(const LineRef& line, double xlo, double xhi) const = 0;
  virtual Weight on_line_range(const LineRef& line, double lo, double hi) const = 0;
  Weight weight_at(const Point& p) const;

  // Force any deferred per-line structures to exist (used by benchmarks).
  virtual void materialize_all() {}

 protected:
  DiscrepancyCounter(LabeledPointSet sample, std::span<const LineRef> lines);

  size_t line_index(const LineRef& line) const;  // throws UnregisteredLine

  LabeledPointSet sample_;
  std::vector<LineRef> lines_;
  std::unordered_multimap<std::uint64_t, std::uint32_t> line_lookup_;
  std::unordered_map<std::uint64_t, Weight> at_;
  std::unordered_map<std::uint64_t, Point> at_probe_;  // collision guard
};

std::unique_ptr<DiscrepancyCounter> build_counter(LabeledPointSet sample,
                                                  std::span<const LineRef> lines,
                                                  CounterMode mode);

// Discrepancy (positives minus negatives) of the closed triangle / polygon.
// Every supporting line of an edge must be registered with the counter; the
// overloads without explicit refs resolve each edge's line from its two
// vertices, which works when the vertices are exact (hulls of sample or net
// points). For polygons whose vertices are themselves computed intersections,
// pass the true supporting lines as edge_refs (edge i runs vertex i ->
// vertex i+1).
std::int64_t disc_triangle(const DiscrepancyCounter& c, const Triangle& t);
std::int64_t disc_polygon(const DiscrepancyCounter& c, const ConvexPolygon& poly);
std::int64_t disc_polygon(const DiscrepancyCounter& c, std::span<const Point> ccw_ring,
                          std::span<const LineRef> edge_refs);

// Empirical error of the indicator of a region with discrepancy d:
// (positives - d) / total, exact. Throws EmptySample when the sample is empty.
Rational err_from_disc(std::int64_t disc, const LabeledPointSet& sample);

}  // namespace planar
