#include "planar/geom.hpp"

#include <algorithm>
#include <bit>
#include <cfloat>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

namespace planar {

namespace {

constexpr double kBox = 1e6;

// Shewchuk's epsilon is half an ulp of 1.0.
constexpr double kEps = DBL_EPSILON / 2.0;
constexpr double kCcwErrBoundA = (3.0 + 16.0 * kEps) * kEps;

inline int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// Exact determinant sign over scaled integers. Each coordinate is mantissa *
// 2^exp exactly; shifting to a common exponent keeps the subtraction and the
// products exact in arbitrary precision.
int orientation_exact(const Point& pa, const Point& pb, const Point& pc) {
  using boost::multiprecision::cpp_int;
  const double coord[6] = {pa.x, pa.y, pb.x, pb.y, pc.x, pc.y};
  std::int64_t mant[6];
  int expo[6];
  int emin = 0;
  bool any = false;
  for (int i = 0; i < 6; ++i) {
    int e;
    double m = std::frexp(coord[i], &e);
    mant[i] = std::llround(std::ldexp(m, 53));
    expo[i] = e - 53;
    if (mant[i] != 0 && (!any || expo[i] < emin)) {
      emin = expo[i];
      any = true;
    }
  }
  cpp_int v[6];
  for (int i = 0; i < 6; ++i) {
    v[i] = mant[i] == 0 ? cpp_int(0) : cpp_int(mant[i]) << (expo[i] - emin);
  }
  cpp_int det = (v[0] - v[4]) * (v[3] - v[5]) - (v[1] - v[5]) * (v[2] - v[4]);
  return det == 0 ? 0 : (det > 0 ? 1 : -1);
}

bool almost_same(const Point& a, const Point& b) {
  double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy < 1e-24;
}

}  // namespace

std::uint64_t point_key(const Point& p) {
  double x = p.x == 0.0 ? 0.0 : p.x;
  double y = p.y == 0.0 ? 0.0 : p.y;
  std::uint64_t h = std::bit_cast<std::uint64_t>(x) * 0x9E3779B97F4A7C15ull;
  h ^= std::bit_cast<std::uint64_t>(y) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  return h;
}

int orientation(const Point& pa, const Point& pb, const Point& pc) {
  double detleft = (pa.x - pc.x) * (pb.y - pc.y);
  double detright = (pa.y - pc.y) * (pb.x - pc.x);
  double det = detleft - detright;
  double detsum;

  if (detleft > 0.0) {
    if (detright <= 0.0) return sign_of(det);
    detsum = detleft + detright;
  } else if (detleft < 0.0) {
    if (detright >= 0.0) return sign_of(det);
    detsum = -detleft - detright;
  } else {
    // detleft == 0: det = -detright, a single product whose sign is exact.
    return sign_of(det);
  }

  double errbound = kCcwErrBoundA * detsum;
  if (det >= errbound || -det >= errbound) return sign_of(det);
  return orientation_exact(pa, pb, pc);
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
  if (orientation(a, b, p) != 0) return false;
  if (a.x != b.x) {
    return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x);
  }
  return p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y);
}

Halfplane Halfplane::left_of(const Point& p, const Point& q) {
  double dx = q.x - p.x, dy = q.y - p.y;
  return Halfplane{dy, -dx, dy * p.x - dx * p.y};
}

Halfplane Halfplane::right_of(const Point& p, const Point& q) {
  double dx = q.x - p.x, dy = q.y - p.y;
  return Halfplane{-dy, dx, dx * p.y - dy * p.x};
}

ConvexPolygon ConvexPolygon::from_ccw(std::vector<Point> ring) {
  size_t m = ring.size();
  if (m < 3) throw DegenerateHull("polygon needs at least 3 vertices");
  for (size_t i = 0; i < m; ++i) {
    if (orientation(ring[i], ring[(i + 1) % m], ring[(i + 2) % m]) <= 0) {
      throw DegenerateHull("ring is not strictly convex counterclockwise");
    }
  }
  size_t lo = 0;
  for (size_t i = 1; i < m; ++i) {
    if (lex_less(ring[i], ring[lo])) lo = i;
  }
  std::rotate(ring.begin(), ring.begin() + lo, ring.end());
  return ConvexPolygon{std::move(ring)};
}

double ConvexPolygon::area() const {
  double s = 0.0;
  size_t m = vertices.size();
  for (size_t i = 0; i < m; ++i) {
    const Point& p = vertices[i];
    const Point& q = vertices[(i + 1) % m];
    s += p.x * q.y - q.x * p.y;
  }
  return s / 2.0;
}

ConvexPolygon convex_hull(std::span<const Point> pts) {
  std::vector<Point> p(pts.begin(), pts.end());
  std::sort(p.begin(), p.end(), lex_less);
  p.erase(std::unique(p.begin(), p.end()), p.end());
  size_t n = p.size();
  if (n < 3) throw DegenerateHull("fewer than 3 distinct points");

  std::vector<Point> h(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && orientation(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {  // upper chain
    while (k >= lower && orientation(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);  // last point repeats the first
  if (h.size() < 3) throw DegenerateHull("all points collinear");
  return ConvexPolygon{std::move(h)};
}

ClipDetail halfplane_intersection_detailed(std::span<const Halfplane> hs) {
  // Each running vertex carries the index of the halfplane line that owns the
  // edge leaving it (negative ids = sides of the bounding box). Final vertex
  // positions are recomputed as one direct intersection of the two owning
  // lines, so constraint residuals stay at machine scale instead of
  // accumulating across clips.
  struct V {
    Point p;
    int owner;
  };
  auto line_of = [&](int id) -> Halfplane {
    switch (id) {
      case -1: return Halfplane{0, -1, kBox};   // bottom edge y = -kBox
      case -2: return Halfplane{1, 0, kBox};    // right edge x = kBox
      case -3: return Halfplane{0, 1, kBox};    // top edge y = kBox
      case -4: return Halfplane{-1, 0, kBox};   // left edge x = -kBox
      default: return hs[size_t(id)];
    }
  };
  std::vector<V> poly = {{{-kBox, -kBox}, -1},
                         {{kBox, -kBox}, -2},
                         {{kBox, kBox}, -3},
                         {{-kBox, kBox}, -4}};
  std::vector<V> next;
  for (size_t hi_ = 0; hi_ < hs.size(); ++hi_) {
    const Halfplane& h = hs[hi_];
    next.clear();
    size_t m = poly.size();
    for (size_t i = 0; i < m; ++i) {
      const V& s = poly[i];
      const V& t = poly[(i + 1) % m];
      double fs = h.ax * s.p.x + h.ay * s.p.y - h.b;
      double ft = h.ax * t.p.x + h.ay * t.p.y - h.b;
      if (fs <= 0.0) {
        // A vertex sitting exactly on the clip line whose successor is cut
        // away exits through the vertex itself: its outgoing edge continues
        // along the clip line, so the clip line takes over as owner.
        next.push_back(V{s.p, fs == 0.0 && ft > 0.0 ? int(hi_) : s.owner});
      }
      if ((fs < 0.0 && ft > 0.0) || (fs > 0.0 && ft < 0.0)) {
        double u = fs / (fs - ft);
        Point x{s.p.x + u * (t.p.x - s.p.x), s.p.y + u * (t.p.y - s.p.y)};
        next.push_back(V{x, fs < 0.0 ? int(hi_) : s.owner});
      }
    }
    poly.swap(next);
    if (poly.size() < 3) return ClipDetail{RegionKind::Empty, {}, {}};
  }

  for (const V& v : poly) {
    if (std::max(std::abs(v.p.x), std::abs(v.p.y)) >= kBox * (1.0 - 1e-9)) {
      return ClipDetail{RegionKind::Unbounded, {}, {}};
    }
  }

  // Snap each vertex to the intersection of its two owning lines.
  size_t m = poly.size();
  for (size_t i = 0; i < m; ++i) {
    const V& prev = poly[(i + m - 1) % m];
    V& cur = poly[i];
    if (prev.owner == cur.owner) continue;
    Halfplane la = line_of(prev.owner), lb = line_of(cur.owner);
    double den = la.ax * lb.ay - la.ay * lb.ax;
    if (den == 0.0) continue;
    Point x{(la.b * lb.ay - la.ay * lb.b) / den,
            (la.ax * lb.b - la.b * lb.ax) / den};
    if (std::isfinite(x.x) && std::isfinite(x.y)) cur.p = x;
  }

  // Drop zero-length edges; merging a duplicate keeps the later outgoing edge.
  std::vector<V> cleaned;
  for (const V& v : poly) {
    if (!cleaned.empty() && almost_same(cleaned.back().p, v.p)) {
      cleaned.back().owner = v.owner;
    } else {
      cleaned.push_back(v);
    }
  }
  while (cleaned.size() > 1 && almost_same(cleaned.front().p, cleaned.back().p)) {
    cleaned.pop_back();
  }

  // Drop collinear middle vertices (coincident or redundant clip lines).
  for (bool changed = true; changed && cleaned.size() >= 3;) {
    changed = false;
    for (size_t i = 0; i < cleaned.size() && cleaned.size() >= 3; ++i) {
      size_t n = cleaned.size();
      const Point& a = cleaned[(i + n - 1) % n].p;
      const Point& b = cleaned[i].p;
      const Point& c = cleaned[(i + 1) % n].p;
      if (orientation(a, b, c) == 0) {
        cleaned[(i + n - 1) % n].owner = cleaned[i].owner;
        cleaned.erase(cleaned.begin() + long(i));
        changed = true;
        break;
      }
    }
  }
  if (cleaned.size() < 3) return ClipDetail{RegionKind::Empty, {}, {}};

  m = cleaned.size();
  for (size_t i = 0; i < m; ++i) {
    if (orientation(cleaned[i].p, cleaned[(i + 1) % m].p, cleaned[(i + 2) % m].p) <= 0) {
      return ClipDetail{RegionKind::Empty, {}, {}};  // numeric sliver
    }
  }

  size_t lo = 0;
  for (size_t i = 1; i < m; ++i) {
    if (lex_less(cleaned[i].p, cleaned[lo].p)) lo = i;
  }
  std::rotate(cleaned.begin(), cleaned.begin() + long(lo), cleaned.end());

  ClipDetail out;
  out.kind = RegionKind::Bounded;
  out.ring.reserve(m);
  out.edge_owner.reserve(m);
  for (const V& v : cleaned) {
    out.ring.push_back(v.p);
    out.edge_owner.push_back(v.owner);
  }
  return out;
}

ClipResult halfplane_intersection(std::span<const Halfplane> hs) {
  ClipDetail d = halfplane_intersection_detailed(hs);
  if (d.kind != RegionKind::Bounded) return ClipResult{d.kind, {}};
  return ClipResult{RegionKind::Bounded, ConvexPolygon{std::move(d.ring)}};
}

std::vector<Triangle> fan_triangulate(const ConvexPolygon& poly) {
  const auto& v = poly.vertices;
  std::vector<Triangle> out;
  out.reserve(v.size() - 2);
  for (size_t i = 1; i + 1 < v.size(); ++i) {
    out.push_back(Triangle{v[0], v[i], v[i + 1]});
  }
  return out;
}

std::vector<char> batch_points_in_polygon(std::span<const Point> queries,
                                          const ConvexPolygon& poly) {
  const auto& v = poly.vertices;
  size_t m = v.size();
  std::vector<char> out(queries.size(), 0);
  for (size_t qi = 0; qi < queries.size(); ++qi) {
    const Point& q = queries[qi];
    if (orientation(v[0], v[1], q) < 0) continue;
    if (orientation(v[0], v[m - 1], q) > 0) continue;
    // Largest wedge ray v[i] with q on or to the right of (v[0], v[i]).
    size_t lo = 1, hi = m - 1;
    while (lo + 1 < hi) {
      size_t mid = (lo + hi) / 2;
      if (orientation(v[0], v[mid], q) >= 0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    out[qi] = orientation(v[lo], v[(lo + 1) % m], q) >= 0 ? 1 : 0;
  }
  return out;
}

bool point_in_polygon_scan(const Point& q, const ConvexPolygon& poly) {
  const auto& v = poly.vertices;
  size_t m = v.size();
  for (size_t i = 0; i < m; ++i) {
    if (orientation(v[i], v[(i + 1) % m], q) < 0) return false;
  }
  return true;
}

std::optional<Point> intersect_lines(const Point& a, const Point& b,
                                     const Point& c, const Point& d) {
  double d1x = b.x - a.x, d1y = b.y - a.y;
  double d2x = d.x - c.x, d2y = d.y - c.y;
  double den = d1x * d2y - d1y * d2x;
  if (den == 0.0) return std::nullopt;
  // Distinct non-parallel lines sharing a defining point meet exactly there;
  // returning it verbatim keeps downstream range bounds exact when that point
  // is also a data point.
  if (a == c || a == d) return a;
  if (b == c || b == d) return b;
  double t = ((c.x - a.x) * d2y - (c.y - a.y) * d2x) / den;
  return Point{a.x + t * d1x, a.y + t * d1y};
}

}  // namespace planar
