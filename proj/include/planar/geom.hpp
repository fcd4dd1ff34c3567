#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "planar/error.hpp"

namespace planar {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point& a, const Point& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
};

// Lexicographic (x, then y).
inline bool lex_less(const Point& a, const Point& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

// Hash key that folds -0.0 into +0.0 so hashing agrees with operator==.
std::uint64_t point_key(const Point& p);

// Exact sign of the 2x2 orientation determinant: +1 if (p,q,r) is a strict
// left turn (counterclockwise), -1 for a right turn, 0 for collinear. Uses
// the Shewchuk stage-A floating-point filter; inconclusive cases fall back to
// an exact scaled-integer determinant, so the result is the true sign of the
// stored doubles.
int orientation(const Point& p, const Point& q, const Point& r);

// p lies on the closed segment [a, b] (a != b assumed).
bool on_segment(const Point& p, const Point& a, const Point& b);

// Closed halfplane a·x <= b.
struct Halfplane {
  double ax = 0.0;
  double ay = 0.0;
  double b = 0.0;

  // Points on or to the left of the directed line p -> q.
  static Halfplane left_of(const Point& p, const Point& q);
  // Points on or to the right of the directed line p -> q.
  static Halfplane right_of(const Point& p, const Point& q);

  bool contains(const Point& r) const { return ax * r.x + ay * r.y <= b; }
};

// Counterclockwise, strictly convex, at least 3 vertices, first vertex
// lexicographically smallest. Construct via convex_hull or from_ccw so the
// invariants hold.
struct ConvexPolygon {
  std::vector<Point> vertices;

  // Validates and canonicalizes an already-CCW strictly convex ring.
  static ConvexPolygon from_ccw(std::vector<Point> ring);

  double area() const;
  bool operator==(const ConvexPolygon& o) const { return vertices == o.vertices; }
};

struct Triangle {
  Point a, b, c;  // non-degenerate; any orientation
};

// Strict hull of the input (collinear boundary points dropped). Throws
// DegenerateHull if fewer than 3 distinct points remain or all are collinear.
ConvexPolygon convex_hull(std::span<const Point> pts);

enum class RegionKind { Bounded, Empty, Unbounded };

struct ClipResult {
  RegionKind kind = RegionKind::Empty;
  ConvexPolygon polygon;  // meaningful only when kind == Bounded
};

// Bounded result with provenance: edge i (ring[i] -> ring[i+1]) lies on the
// line of input halfplane edge_owner[i].
struct ClipDetail {
  RegionKind kind = RegionKind::Empty;
  std::vector<Point> ring;  // CCW, strictly convex, lex-min vertex first
  std::vector<int> edge_owner;
};

// Intersection of closed halfplanes by incremental clipping against the box
// [-1e6, 1e6]^2. A region still touching the box after all clips is reported
// Unbounded. Measure-zero intersections (a point or segment) are reported
// Empty: they cannot form a ConvexPolygon. Final vertices are recomputed as
// direct intersections of their two defining lines, so each satisfies its
// constraints to machine precision.
ClipResult halfplane_intersection(std::span<const Halfplane> hs);
ClipDetail halfplane_intersection_detailed(std::span<const Halfplane> hs);

// Triangles (v0, vi, vi+1) sharing the first vertex.
std::vector<Triangle> fan_triangulate(const ConvexPolygon& poly);

// Closed containment for each query point, O((v + q) log v) total: binary
// search over the fan wedges at the first vertex, then one edge test.
std::vector<char> batch_points_in_polygon(std::span<const Point> queries,
                                          const ConvexPolygon& poly);

// Closed containment by scanning all edges. Independent of the fan-wedge
// path; the oracles use this one.
bool point_in_polygon_scan(const Point& q, const ConvexPolygon& poly);

// Intersection point of lines (a,b) and (c,d); nullopt when the direction
// cross product vanishes in double arithmetic.
std::optional<Point> intersect_lines(const Point& a, const Point& b,
                                     const Point& c, const Point& d);

}  // namespace planar
