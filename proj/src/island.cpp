#include "planar/island.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "planar/error.hpp"

namespace planar {

namespace {

// Angular half of the direction origin -> p: 0 covers [0, pi) measured from
// +x, 1 covers [pi, 2pi). Sign tests on double differences are exact.
int half_of(const Point& origin, const Point& p) {
  if (p.y != origin.y) return p.y > origin.y ? 0 : 1;
  return p.x > origin.x ? 0 : 1;
}

}  // namespace

std::vector<Point> sample_uniform_net(std::size_t n, RngStream& rng) {
  std::vector<Point> net;
  net.reserve(n);
  for (std::size_t i = 0; i < n; ++i) net.push_back({rng.uniform01(), rng.uniform01()});
  return net;
}

void validate_net(std::span<const Point> net) {
  const std::size_t n = net.size();
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return lex_less(net[a], net[b]); });
  for (std::size_t i = 1; i < n; ++i)
    if (net[idx[i - 1]] == net[idx[i]])
      throw CollinearNet("net is degenerate: duplicate point at index " +
                         std::to_string(idx[i]));

  // Any collinear triple is seen from one of its endpoints as two other
  // points in the same direction, so sorting directions around every point
  // and comparing neighbours finds all of them.
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& o = net[i];
    others.clear();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) others.push_back(j);
    std::sort(others.begin(), others.end(), [&](std::size_t a, std::size_t b) {
      int ha = half_of(o, net[a]), hb = half_of(o, net[b]);
      if (ha != hb) return ha < hb;
      return orientation(o, net[a], net[b]) > 0;
    });
    for (std::size_t j = 1; j < others.size(); ++j) {
      const Point& p = net[others[j - 1]];
      const Point& q = net[others[j]];
      if (half_of(o, p) == half_of(o, q) && orientation(o, p, q) == 0)
        throw CollinearNet("net is degenerate: points " + std::to_string(i) + ", " +
                           std::to_string(others[j - 1]) + ", " + std::to_string(others[j]) +
                           " are collinear");
    }
  }
}

std::size_t TriangleDiscTable::pair_index(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  return pair_base_[i] + (j - i - 1);
}

std::size_t TriangleDiscTable::tri_index(std::size_t i, std::size_t j, std::size_t k) const {
  return tri_base_[i] + (pair_base_[j] - pair_base_[i + 1]) + (k - j - 1);
}

TriangleDiscTable::TriangleDiscTable(std::vector<Point> net, const DiscrepancyCounter& c,
                                     Build mode)
    : net_(std::move(net)) {
  const std::size_t n = net_.size();
  const std::uint64_t pairs = n < 2 ? 0 : std::uint64_t(n) * (n - 1) / 2;
  const std::uint64_t tris = n < 3 ? 0 : pairs * (n - 2) / 3;
  if (tris > 100'000'000)
    throw InstanceTooLarge("net of " + std::to_string(n) + " points spans " +
                           std::to_string(tris) + " triangles; the table caps at 1e8");
  validate_net(net_);

  pair_base_.assign(n + 1, 0);
  tri_base_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    pair_base_[i + 1] = pair_base_[i] + (n - 1 - i);
    std::size_t rest = n - 1 - i;
    tri_base_[i + 1] = tri_base_[i] + (rest < 2 ? 0 : rest * (rest - 1) / 2);
  }

  strip_.assign(pairs, 0);
  online_.assign(pairs, 0);
  wpoint_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    wpoint_[i] = std::int32_t(c.weight_at(net_[i]).disc());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      LineRef ln = make_line(net_[i], net_[j]);
      std::size_t pi = pair_index(i, j);
      if (net_[i].x != net_[j].x) {
        double lo = std::min(net_[i].x, net_[j].x);
        double hi = std::max(net_[i].x, net_[j].x);
        strip_[pi] = std::int32_t(c.below_in_strip(ln, lo, hi).disc());
        online_[pi] = std::int32_t(c.on_line_range(ln, lo, hi).disc());
      } else {
        double lo = std::min(net_[i].y, net_[j].y);
        double hi = std::max(net_[i].y, net_[j].y);
        online_[pi] = std::int32_t(c.on_line_range(ln, lo, hi).disc());
      }
    }
  }

  tri_.assign(tris, 0);
  if (mode == Build::Auto) mode = tris <= 200'000 ? Build::Direct : Build::PairAggregate;
  if (mode == Build::Direct) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k)
          tri_[tri_index(i, j, k)] =
              std::int32_t(disc_triangle(c, Triangle{net_[i], net_[j], net_[k]}));
    return;
  }

  // Assemble each triangle from the pair tables, mirroring the closed-region
  // decomposition: signed strips for non-vertical edges, plus the closed
  // upper-chain/left-vertical path with shared-vertex corrections.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        std::size_t r[3];
        if (orientation(net_[i], net_[j], net_[k]) > 0) {
          r[0] = i; r[1] = j; r[2] = k;
        } else {
          r[0] = i; r[1] = k; r[2] = j;
        }
        std::int64_t total = 0;
        bool on[3];
        for (int e = 0; e < 3; ++e) {
          std::size_t si = r[e], ti = r[(e + 1) % 3];
          const Point& ps = net_[si];
          const Point& pt = net_[ti];
          std::size_t pi = pair_index(si, ti);
          if (ps.x != pt.x) {
            total += pt.x < ps.x ? strip_[pi] : -std::int64_t(strip_[pi]);
            on[e] = pt.x < ps.x;
          } else {
            on[e] = pt.y < ps.y;
          }
          if (on[e]) total += online_[pi];
        }
        for (int e = 0; e < 3; ++e)
          if (on[e] && on[(e + 1) % 3]) total -= wpoint_[r[(e + 1) % 3]];
        tri_[tri_index(i, j, k)] = std::int32_t(total);
      }
    }
  }
}

std::int64_t TriangleDiscTable::triangle(std::size_t i, std::size_t j, std::size_t k) const {
  if (i > j) std::swap(i, j);
  if (j > k) std::swap(j, k);
  if (i > j) std::swap(i, j);
  return tri_[tri_index(i, j, k)];
}

std::int64_t TriangleDiscTable::segment(std::size_t i, std::size_t j) const {
  return online_[pair_index(i, j)];
}

std::int64_t TriangleDiscTable::point(std::size_t i) const { return wpoint_[i]; }

namespace {

// Predecessor states of one chain vertex, sorted by direction angle around
// it, with a sparse max table over the doubled circular order. A query for a
// successor direction selects the open half-circle that keeps the chain
// convex; that half-circle is one contiguous run of the sorted order.
struct WindowIndex {
  std::vector<std::size_t> ord;  // predecessor candidate positions, angle order
  std::vector<std::int64_t> val;
  std::vector<std::int32_t> arg;
  std::vector<std::int64_t> stv;
  std::vector<std::int32_t> sta;
  std::size_t m = 0;
  int levels = 0;

  void build(const std::vector<Point>& pts, const Point& origin,
             const std::vector<std::int64_t>& score) {
    m = ord.size();
    std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
      int ha = half_of(origin, pts[a]), hb = half_of(origin, pts[b]);
      if (ha != hb) return ha < hb;
      return orientation(origin, pts[a], pts[b]) > 0;
    });
    std::size_t mm = 2 * m;
    val.resize(mm);
    arg.resize(mm);
    for (std::size_t p = 0; p < mm; ++p) {
      val[p] = score[ord[p % m]];
      arg[p] = std::int32_t(ord[p % m]);
    }
    levels = 1;
    while ((std::size_t(1) << levels) <= mm) ++levels;
    stv.assign(std::size_t(levels) * mm, 0);
    sta.assign(std::size_t(levels) * mm, 0);
    std::copy(val.begin(), val.end(), stv.begin());
    std::copy(arg.begin(), arg.end(), sta.begin());
    for (int l = 1; l < levels; ++l) {
      std::size_t w = std::size_t(1) << l;
      for (std::size_t p = 0; p + w <= mm; ++p) {
        std::size_t a = (l - 1) * mm + p;
        std::size_t b = (l - 1) * mm + p + w / 2;
        std::size_t dst = std::size_t(l) * mm + p;
        if (stv[a] > stv[b] || (stv[a] == stv[b] && sta[a] <= sta[b])) {
          stv[dst] = stv[a];
          sta[dst] = sta[a];
        } else {
          stv[dst] = stv[b];
          sta[dst] = sta[b];
        }
      }
    }
  }

  // max over doubled positions [p0, p1); requires p1 > p0
  std::pair<std::int64_t, std::int32_t> range_max(std::size_t p0, std::size_t p1) const {
    std::size_t len = p1 - p0;
    int l = 0;
    while ((std::size_t(2) << l) <= len) ++l;
    std::size_t mm = 2 * m;
    std::size_t a = std::size_t(l) * mm + p0;
    std::size_t b = std::size_t(l) * mm + (p1 - (std::size_t(1) << l));
    if (stv[a] > stv[b] || (stv[a] == stv[b] && sta[a] <= sta[b]))
      return {stv[a], sta[a]};
    return {stv[b], sta[b]};
  }
};

}  // namespace

IslandResult opt_island(const TriangleDiscTable& tb, IslandDiag* diag) {
  const std::vector<Point>& net = tb.net();
  const std::size_t n = net.size();
  IslandResult best;  // empty island, disc 0
  std::uint64_t states = 0;

  for (std::size_t i = 0; i < n; ++i) {
    if (tb.point(i) > best.disc) {
      best.shape = IslandResult::Shape::Point;
      best.support = {net[i]};
      best.disc = tb.point(i);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (tb.segment(i, j) > best.disc) {
        best.shape = IslandResult::Shape::Segment;
        best.support = {net[i], net[j]};
        best.polygon = ConvexPolygon{};
        best.disc = tb.segment(i, j);
      }
    }
  }

  auto below_yx = [](const Point& p, const Point& q) {
    return p.y < q.y || (p.y == q.y && p.x < q.x);
  };

  std::vector<std::size_t> cand;
  std::vector<Point> cpts;
  std::vector<std::int64_t> f;
  std::vector<std::int32_t> parent;
  std::vector<std::int64_t> column;
  std::vector<WindowIndex> win(n);

  for (std::size_t b = 0; b < n; ++b) {
    const Point& pb = net[b];
    cand.clear();
    for (std::size_t q = 0; q < n; ++q)
      if (below_yx(pb, net[q])) cand.push_back(q);
    // angular order around the bottom vertex; every direction lies in the
    // upper half, so the orientation sign alone is a strict order
    std::sort(cand.begin(), cand.end(), [&](std::size_t u, std::size_t v) {
      return orientation(pb, net[u], net[v]) > 0;
    });
    const std::size_t t = cand.size();
    if (t < 2) continue;
    cpts.clear();
    for (std::size_t q : cand) cpts.push_back(net[q]);

    f.assign(t * t, 0);
    parent.assign(t * t, -1);

    for (std::size_t j = 1; j < t; ++j) {
      const Point& cj = cpts[j];
      for (std::size_t i = 0; i < j; ++i) {
        const Point& ci = cpts[i];
        std::int64_t value = tb.triangle(b, cand[i], cand[j]);
        std::int32_t par = -1;
        if (i >= 1 && win[i].m > 0) {
          const WindowIndex& w = win[i];
          int hq = half_of(ci, cj);
          auto angle_less_than_query = [&](std::size_t p, int target_half, int flip) {
            std::size_t h = w.ord[p];
            int hh = half_of(ci, cpts[h]);
            if (hh != target_half) return hh < target_half;
            int o = orientation(ci, cpts[h], cj);
            return flip ? o < 0 : o > 0;
          };
          // positions strictly before the query direction / its antipode
          std::size_t lo = 0, hi = w.m;
          while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (angle_less_than_query(mid, hq, 0)) lo = mid + 1; else hi = mid;
          }
          std::size_t p0 = lo;
          lo = 0; hi = w.m;
          int anti_half = 1 - hq;
          while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (angle_less_than_query(mid, anti_half, 1)) lo = mid + 1; else hi = mid;
          }
          std::size_t p1 = hq == 0 ? lo : lo + w.m;
          if (p1 > p0) {
            auto [wv, wa] = w.range_max(p0, p1);
            std::int64_t bonus = wv - tb.segment(b, cand[i]);
            if (bonus > 0) {
              value += bonus;
              par = wa;
            }
          }
        }
        f[i * t + j] = value;
        parent[i * t + j] = par;
        ++states;
        // closing edge back to the bottom must keep the polygon convex
        if (orientation(ci, cj, pb) > 0 && value > best.disc) {
          std::vector<std::size_t> rev = {j, i};
          std::size_t a = i, bb = j;
          for (;;) {
            std::int32_t p = parent[a * t + bb];
            if (p < 0) break;
            rev.push_back(std::size_t(p));
            bb = a;
            a = std::size_t(p);
          }
          std::vector<Point> ring;
          ring.reserve(rev.size() + 1);
          ring.push_back(pb);
          for (auto it = rev.rbegin(); it != rev.rend(); ++it) ring.push_back(cpts[*it]);
          best.shape = IslandResult::Shape::Polygon;
          best.polygon = ConvexPolygon::from_ccw(std::move(ring));
          best.support.clear();
          best.disc = value;
        }
      }
      // index the states ending at j for the windows of later vertices
      column.assign(t, std::numeric_limits<std::int64_t>::min());
      for (std::size_t h = 0; h < j; ++h) column[h] = f[h * t + j];
      win[j].ord.assign(j, 0);
      for (std::size_t h = 0; h < j; ++h) win[j].ord[h] = h;
      win[j].build(cpts, cpts[j], column);
    }
  }

  if (diag) diag->dp_states = states;
  return best;
}

IslandResult island_oracle(std::span<const Point> net, const LabeledPointSet& s) {
  const std::size_t n = net.size();
  if (n > 14)
    throw InstanceTooLarge("island oracle caps the net at 14 points, got " + std::to_string(n));
  validate_net(net);

  IslandResult best;  // empty island
  std::vector<std::size_t> best_members;
  std::vector<std::size_t> members;
  std::vector<Point> pts;

  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    members.clear();
    pts.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        members.push_back(i);
        pts.push_back(net[i]);
      }
    }

    std::int64_t d = 0;
    ConvexPolygon hull;
    if (pts.size() >= 3) {
      hull = convex_hull(pts);
      // island = the subset is exactly the net points in its hull
      bool island = true;
      for (std::size_t q = 0; q < n && island; ++q) {
        if (mask & (1u << q)) continue;
        bool inside = true;
        std::size_t m = hull.vertices.size();
        for (std::size_t e = 0; e < m && inside; ++e)
          if (orientation(hull.vertices[e], hull.vertices[(e + 1) % m], net[q]) < 0)
            inside = false;
        if (inside) island = false;
      }
      if (!island) continue;
      for (const LabeledExample& ex : s.examples) {
        bool inside = true;
        std::size_t m = hull.vertices.size();
        for (std::size_t e = 0; e < m && inside; ++e)
          if (orientation(hull.vertices[e], hull.vertices[(e + 1) % m], ex.p) < 0)
            inside = false;
        if (inside) d += ex.label ? 1 : -1;
      }
    } else if (pts.size() == 2) {
      for (const LabeledExample& ex : s.examples)
        if (on_segment(ex.p, pts[0], pts[1])) d += ex.label ? 1 : -1;
    } else {
      for (const LabeledExample& ex : s.examples)
        if (ex.p == pts[0]) d += ex.label ? 1 : -1;
    }

    bool better = d > best.disc;
    if (d == best.disc && !best_members.empty()) {
      better = members.size() < best_members.size() ||
               (members.size() == best_members.size() && members < best_members);
    }
    if (!better) continue;
    best.disc = d;
    best_members = members;
    best.support.clear();
    best.polygon = ConvexPolygon{};
    if (pts.size() >= 3) {
      best.shape = IslandResult::Shape::Polygon;
      best.polygon = hull;
    } else if (pts.size() == 2) {
      best.shape = IslandResult::Shape::Segment;
      best.support = pts;
    } else {
      best.shape = IslandResult::Shape::Point;
      best.support = pts;
    }
  }
  return best;
}

std::size_t convex_sample_size(double eps, const ConvexConfig& cfg) {
  if (!(eps > 0.0 && eps < 1.0)) throw UsageError("eps must lie in (0, 1)");
  return std::size_t(std::ceil(cfg.sample_c * std::pow(eps, -2.5) * std::log(1.0 / eps)));
}

std::size_t convex_net_size(double eps, const ConvexConfig& cfg) {
  if (!(eps > 0.0 && eps < 1.0)) throw UsageError("eps must lie in (0, 1)");
  return std::size_t(std::ceil(cfg.net_c * std::pow(eps, -1.5)));
}

IslandResult learn_convex_once(const LabeledPointSet& s, double eps, RngStream& rng,
                               const ConvexConfig& cfg, ConvexDiag* diag) {
  if (s.total() == 0) throw EmptySample("cannot run the convex learner on an empty sample");
  const std::size_t n = convex_net_size(eps, cfg);

  std::vector<Point> net;
  for (int attempt = 0;; ++attempt) {
    net = sample_uniform_net(n, rng);
    try {
      validate_net(net);
      break;
    } catch (const CollinearNet&) {
      if (attempt >= cfg.max_net_resamples) throw;
    }
  }

  std::vector<LineRef> lines;
  lines.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) lines.push_back(make_line(net[i], net[j]));
  auto counter = build_counter(s, lines, CounterMode::LineAnchoredIndex);
  TriangleDiscTable table(std::move(net), *counter, TriangleDiscTable::Build::Auto);
  counter.reset();  // the search runs off the table alone

  IslandDiag idiag;
  IslandResult res = opt_island(table, &idiag);
  if (diag) {
    diag->net_size = n;
    diag->dp_states = idiag.dp_states;
  }
  return res;
}

}  // namespace planar
