#include "planar/kgon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_set>
#include <utility>

#include "planar/error.hpp"

namespace planar {

namespace {

// Hash a canonical vertex ring at ~1e-9 resolution. Equal regions reached
// through different halfplane tuples snap to bit-identical vertices (the snap
// intersects the same two support lines), so rounding only guards the hash
// against the last ulp of the division.
std::uint64_t ring_hash(std::span<const Point> ring) {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ ring.size();
  for (const Point& v : ring) {
    auto mix = [&h](std::int64_t k) {
      std::uint64_t x = static_cast<std::uint64_t>(k) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      x *= 0xff51afd7ed558ccdull;
      x ^= x >> 33;
      h ^= x;
    };
    mix(std::llround(v.x * 1e9));
    mix(std::llround(v.y * 1e9));
  }
  return h;
}

// If two registered lines were induced by pairs sharing a defining point,
// that point is a common intersection candidate; used to detect concurrent
// line triples exactly instead of trusting a floating intersection.
bool shared_defining_point(const LineRef& u, const LineRef& v, Point* out) {
  if (u.a == v.a || u.a == v.b) {
    *out = u.a;
    return true;
  }
  if (u.b == v.a || u.b == v.b) {
    *out = u.b;
    return true;
  }
  return false;
}

struct K3Candidate {
  std::int64_t disc;
  std::uint32_t tuple[3];
  Point ring[3];
  std::uint32_t owner[3];  // line index owning edge ring[i] -> ring[i+1]
};

// Enumerate bounded nonempty intersections of three halfplanes with distinct
// support lines. For a non-concurrent triple the three lines bound exactly
// one triangle (the medial region); each line's halfplane must face the
// opposite vertex, so the eight sign patterns collapse to one direct
// construction. `candidates` still counts all eight patterns per triple.
template <typename Visit>
void enumerate_k3(const std::vector<LineRef>& lines, EnumStats& st, Visit&& visit) {
  const std::size_t L = lines.size();
  // Dense cache of pairwise intersections; pair (i, j) with i < j.
  auto pair_index = [L](std::size_t i, std::size_t j) {
    return i * (2 * L - i - 1) / 2 + (j - i - 1);
  };
  std::vector<Point> meet(L * (L - 1) / 2);
  std::vector<char> crosses(L * (L - 1) / 2, 0);
  for (std::size_t i = 0; i < L; ++i) {
    for (std::size_t j = i + 1; j < L; ++j) {
      auto p = intersect_lines(lines[i].a, lines[i].b, lines[j].a, lines[j].b);
      if (p) {
        meet[pair_index(i, j)] = *p;
        crosses[pair_index(i, j)] = 1;
      }
    }
  }

  K3Candidate cand;
  for (std::size_t a = 0; a < L; ++a) {
    for (std::size_t b = a + 1; b < L; ++b) {
      if (!crosses[pair_index(a, b)]) {
        st.candidates += 8 * (L - b - 1);
        continue;
      }
      const Point& vab = meet[pair_index(a, b)];
      for (std::size_t c = b + 1; c < L; ++c) {
        st.candidates += 8;
        if (!crosses[pair_index(a, c)] || !crosses[pair_index(b, c)]) continue;
        const Point& vac = meet[pair_index(a, c)];
        const Point& vbc = meet[pair_index(b, c)];
        // Concurrency through a shared defining point is decided exactly.
        Point sh;
        if (shared_defining_point(lines[a], lines[b], &sh) &&
            orientation(lines[c].a, lines[c].b, sh) == 0)
          continue;
        if (shared_defining_point(lines[a], lines[c], &sh) &&
            orientation(lines[b].a, lines[b].b, sh) == 0)
          continue;
        if (shared_defining_point(lines[b], lines[c], &sh) &&
            orientation(lines[a].a, lines[a].b, sh) == 0)
          continue;
        int turn = orientation(vab, vac, vbc);
        if (turn == 0) continue;
        int sa = orientation(lines[a].a, lines[a].b, vbc);
        int sb = orientation(lines[b].a, lines[b].b, vac);
        int sc = orientation(lines[c].a, lines[c].b, vab);
        if (sa == 0 || sb == 0 || sc == 0) continue;
        if (turn > 0) {
          cand.ring[0] = vab;
          cand.ring[1] = vac;
          cand.ring[2] = vbc;
          cand.owner[0] = static_cast<std::uint32_t>(a);
          cand.owner[1] = static_cast<std::uint32_t>(c);
          cand.owner[2] = static_cast<std::uint32_t>(b);
        } else {
          cand.ring[0] = vab;
          cand.ring[1] = vbc;
          cand.ring[2] = vac;
          cand.owner[0] = static_cast<std::uint32_t>(b);
          cand.owner[1] = static_cast<std::uint32_t>(c);
          cand.owner[2] = static_cast<std::uint32_t>(a);
        }
        cand.tuple[0] = static_cast<std::uint32_t>(2 * a + (sa > 0 ? 0 : 1));
        cand.tuple[1] = static_cast<std::uint32_t>(2 * b + (sb > 0 ? 0 : 1));
        cand.tuple[2] = static_cast<std::uint32_t>(2 * c + (sc > 0 ? 0 : 1));
        ++st.yielded;
        visit(cand);
      }
    }
  }
}

struct GeneralCandidate {
  std::int64_t disc = 0;
  std::vector<std::uint32_t> tuple;
  std::vector<Point> ring;
  std::vector<std::uint32_t> owner;
};

// General k: all C(L, k) line subsets times 2^k orientation patterns, clipped
// against the bounding box. Regions reachable through several halfplane
// tuples (redundant constraints) are emitted once for k >= 4; a triangle's
// three support lines are unique, so k = 3 cannot repeat a region.
template <typename Visit>
void enumerate_general(const std::vector<LineRef>& lines, int k, EnumStats& st, Visit&& visit) {
  const std::size_t L = lines.size();
  const std::size_t kk = static_cast<std::size_t>(k);
  if (L < kk) return;
  std::vector<std::size_t> combo(kk);
  for (std::size_t i = 0; i < kk; ++i) combo[i] = i;
  std::vector<Halfplane> hs(kk);
  std::unordered_set<std::uint64_t> seen;
  GeneralCandidate cand;
  const std::uint32_t patterns = 1u << k;
  for (;;) {
    for (std::uint32_t bits = 0; bits < patterns; ++bits) {
      ++st.candidates;
      for (std::size_t j = 0; j < kk; ++j) {
        const LineRef& ln = lines[combo[j]];
        hs[j] = (bits >> j) & 1u ? Halfplane::right_of(ln.a, ln.b) : Halfplane::left_of(ln.a, ln.b);
      }
      ClipDetail det = halfplane_intersection_detailed(hs);
      if (det.kind != RegionKind::Bounded) continue;
      // A vertex whose two support lines share a defining point sits exactly
      // there; pin it so range bounds stay exact when that point is also a
      // data point. Re-check convexity and the canonical rotation afterwards.
      const std::size_t m = det.ring.size();
      for (std::size_t i = 0; i < m; ++i) {
        int in = det.edge_owner[(i + m - 1) % m];
        int out = det.edge_owner[i];
        if (in < 0 || out < 0 || in == out) continue;
        Point sh;
        if (shared_defining_point(lines[combo[static_cast<std::size_t>(in)]],
                                  lines[combo[static_cast<std::size_t>(out)]], &sh))
          det.ring[i] = sh;
      }
      bool sliver = false;
      std::size_t lo = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (orientation(det.ring[i], det.ring[(i + 1) % m], det.ring[(i + 2) % m]) <= 0)
          sliver = true;
        if (lex_less(det.ring[i], det.ring[lo])) lo = i;
      }
      if (sliver) continue;
      std::rotate(det.ring.begin(), det.ring.begin() + static_cast<long>(lo), det.ring.end());
      std::rotate(det.edge_owner.begin(), det.edge_owner.begin() + static_cast<long>(lo),
                  det.edge_owner.end());
      if (k >= 4 && !seen.insert(ring_hash(det.ring)).second) continue;
      cand.ring = std::move(det.ring);
      cand.owner.clear();
      cand.tuple.clear();
      for (int o : det.edge_owner) {
        if (o < 0) continue;  // box side: cannot happen for a bounded region
        cand.owner.push_back(static_cast<std::uint32_t>(combo[static_cast<std::size_t>(o)]));
      }
      for (std::size_t j = 0; j < kk; ++j)
        cand.tuple.push_back(static_cast<std::uint32_t>(2 * combo[j] + ((bits >> j) & 1u)));
      std::sort(cand.tuple.begin(), cand.tuple.end());
      ++st.yielded;
      visit(cand);
    }
    // next combination in lexicographic order
    std::size_t i = kk;
    while (i > 0 && combo[i - 1] == L - kk + (i - 1)) --i;
    if (i == 0) break;
    ++combo[i - 1];
    for (std::size_t j = i; j < kk; ++j) combo[j] = combo[j - 1] + 1;
  }
}

}  // namespace

NetSample sample_net(const LabeledPointSet& s, std::size_t n, RngStream& rng) {
  if (s.total() == 0) throw EmptySample("cannot draw a net from an empty sample");
  NetSample net;
  net.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    net.points.push_back(s.examples[rng.below(s.total())].p);
  return net;
}

InducedHalfplanes induced_halfplanes(const NetSample& net) {
  std::vector<Point> d = net.points;
  std::sort(d.begin(), d.end(), lex_less);
  d.erase(std::unique(d.begin(), d.end()), d.end());
  if (d.size() < 2)
    throw TooFewPoints("need at least 2 distinct net points, have " + std::to_string(d.size()));
  InducedHalfplanes out;
  // One line per collinear class: pair (i, j) is kept iff no point with a
  // smaller index lies on the same line, i.e. i and j are the two
  // lexicographically smallest points of the class.
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      bool canonical = true;
      for (std::size_t t = 0; t < j && canonical; ++t) {
        if (t == i) continue;
        if (orientation(d[i], d[j], d[t]) == 0) canonical = false;
      }
      if (canonical) out.lines.push_back(make_line(d[i], d[j]));
    }
  }
  return out;
}

Halfplane InducedHalfplanes::materialize(std::size_t idx) const {
  const LineRef& ln = lines.at(idx / 2);
  return (idx & 1) ? Halfplane::right_of(ln.a, ln.b) : Halfplane::left_of(ln.a, ln.b);
}

void enumerate_reference_kgons(const InducedHalfplanes& ih, int k, const DiscrepancyCounter& c,
                               const std::function<void(const ReferenceKGon&)>& emit,
                               EnumStats* stats) {
  if (k < 3) throw UsageError("k must be at least 3");
  EnumStats local;
  EnumStats& st = stats ? *stats : local;
  if (k == 3) {
    enumerate_k3(ih.lines, st, [&](K3Candidate& cand) {
      const LineRef* refs[3] = {&ih.lines[cand.owner[0]], &ih.lines[cand.owner[1]],
                                &ih.lines[cand.owner[2]]};
      LineRef edge_refs[3] = {*refs[0], *refs[1], *refs[2]};
      ReferenceKGon g;
      g.disc = disc_polygon(c, std::span<const Point>(cand.ring, 3),
                            std::span<const LineRef>(edge_refs, 3));
      g.halfplanes.assign(cand.tuple, cand.tuple + 3);
      g.polygon = ConvexPolygon::from_ccw({cand.ring[0], cand.ring[1], cand.ring[2]});
      emit(g);
    });
    return;
  }
  enumerate_general(ih.lines, k, st, [&](GeneralCandidate& cand) {
    std::vector<LineRef> edge_refs;
    edge_refs.reserve(cand.owner.size());
    for (std::uint32_t o : cand.owner) edge_refs.push_back(ih.lines[o]);
    ReferenceKGon g;
    g.disc = disc_polygon(c, cand.ring, edge_refs);
    g.halfplanes.assign(cand.tuple.begin(), cand.tuple.end());
    g.polygon = ConvexPolygon::from_ccw(cand.ring);
    emit(g);
  });
}

std::size_t kgon_net_size(int k, double eps, const KgonConfig& cfg) {
  if (k < 3) throw UsageError("k must be at least 3");
  if (!(eps > 0.0 && eps < 1.0)) throw UsageError("eps must lie in (0, 1)");
  double c = cfg.net_c;
  double logk;
  if (c <= 0.0) {
    // theory default: n = 4 k ln(6k) / eps
    c = 4.0 * std::log(6.0 * k) / std::log(static_cast<double>(k));
    logk = std::log(static_cast<double>(k));
  } else if (cfg.log_base == 2) {
    logk = std::log2(static_cast<double>(k));
  } else {
    logk = std::log(static_cast<double>(k));
  }
  return static_cast<std::size_t>(std::ceil(c * k * logk / eps));
}

ReferenceKGon erm_over_net(const LabeledPointSet& s, const NetSample& net, int k, ErmDiag* diag) {
  InducedHalfplanes induced = induced_halfplanes(net);
  auto counter = build_counter(s, induced.lines, CounterMode::LineAnchoredIndex);
  bool have = false;
  ReferenceKGon best;
  EnumStats st;
  if (k == 3) {
    // Keep the scan allocation-free: remember the winning candidate's raw
    // fields and materialize the polygon once after the scan.
    K3Candidate best_raw{};
    enumerate_k3(induced.lines, st, [&](const K3Candidate& cand) {
      LineRef edge_refs[3] = {induced.lines[cand.owner[0]], induced.lines[cand.owner[1]],
                              induced.lines[cand.owner[2]]};
      std::int64_t d = disc_polygon(*counter, std::span<const Point>(cand.ring, 3),
                                    std::span<const LineRef>(edge_refs, 3));
      if (!have || d > best_raw.disc ||
          (d == best_raw.disc &&
           std::lexicographical_compare(cand.tuple, cand.tuple + 3, best_raw.tuple,
                                        best_raw.tuple + 3))) {
        best_raw = cand;
        best_raw.disc = d;
        have = true;
      }
    });
    if (have) {
      best.disc = best_raw.disc;
      best.halfplanes.assign(best_raw.tuple, best_raw.tuple + 3);
      best.polygon = ConvexPolygon::from_ccw({best_raw.ring[0], best_raw.ring[1], best_raw.ring[2]});
    }
  } else {
    std::vector<LineRef> edge_refs;
    enumerate_general(induced.lines, k, st, [&](GeneralCandidate& cand) {
      edge_refs.clear();
      for (std::uint32_t o : cand.owner) edge_refs.push_back(induced.lines[o]);
      std::int64_t d = disc_polygon(*counter, cand.ring, edge_refs);
      if (!have || d > best.disc || (d == best.disc && cand.tuple < best.halfplanes)) {
        best.disc = d;
        best.halfplanes = cand.tuple;
        best.polygon = ConvexPolygon::from_ccw(cand.ring);
        have = true;
      }
    });
  }
  if (diag) {
    diag->net_size = net.points.size();
    std::vector<Point> d = net.points;
    std::sort(d.begin(), d.end(), lex_less);
    d.erase(std::unique(d.begin(), d.end()), d.end());
    diag->net_distinct = d.size();
    diag->enumeration = st;
  }
  if (!have)
    throw EmptyReferenceSet("no bounded " + std::to_string(k) +
                            "-gon arises from the induced halfplanes");
  return best;
}

ReferenceKGon approximate_erm_kgon(const LabeledPointSet& s, double eps, int k, RngStream& rng,
                                   const KgonConfig& cfg, ErmDiag* diag) {
  if (s.total() == 0) throw EmptySample("cannot run ERM on an empty sample");
  const std::size_t n = kgon_net_size(k, eps, cfg);
  NetSample net;
  std::size_t distinct = 0;
  for (int attempt = 0; attempt <= cfg.max_net_resamples; ++attempt) {
    net = sample_net(s, n, rng);
    std::vector<Point> d = net.points;
    std::sort(d.begin(), d.end(), lex_less);
    d.erase(std::unique(d.begin(), d.end()), d.end());
    distinct = d.size();
    if (distinct >= 2) break;
  }
  if (distinct < 2)
    throw TooFewPoints("net kept collapsing to fewer than 2 distinct points after " +
                       std::to_string(cfg.max_net_resamples + 1) + " draws");
  return erm_over_net(s, net, k, diag);
}

namespace {

// The oracle deliberately avoids the owner-tracked clipper, the discrepancy
// counter and the canonical line dedup used elsewhere: lines come straight
// from sample point pairs, regions from a plain Sutherland-Hodgman pass, and
// weights from exact per-point side tests.
struct OracleLine {
  Point u, w;
};

constexpr double kOracleBox = 1e6;

std::vector<Point> oracle_clip(const std::vector<OracleLine>& lns, const int sides[3]) {
  std::vector<Point> poly = {{-kOracleBox, -kOracleBox},
                             {kOracleBox, -kOracleBox},
                             {kOracleBox, kOracleBox},
                             {-kOracleBox, kOracleBox}};
  std::vector<Point> next;
  for (int l = 0; l < 3; ++l) {
    const OracleLine& ln = lns[static_cast<std::size_t>(l)];
    double nx = -(ln.w.y - ln.u.y) * sides[l];
    double ny = (ln.w.x - ln.u.x) * sides[l];
    auto f = [&](const Point& p) { return nx * (p.x - ln.u.x) + ny * (p.y - ln.u.y); };
    next.clear();
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Point& a = poly[i];
      const Point& b = poly[(i + 1) % poly.size()];
      double fa = f(a), fb = f(b);
      if (fa >= 0) next.push_back(a);
      if ((fa > 0 && fb < 0) || (fa < 0 && fb > 0)) {
        double t = fa / (fa - fb);
        next.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
      }
    }
    poly = next;
    if (poly.size() < 3) return {};
  }
  return poly;
}

}  // namespace

OracleResult exact_erm_oracle(const LabeledPointSet& s, int k) {
  if (k != 3)
    throw InstanceTooLarge("oracle supports k = 3 only, got k = " + std::to_string(k));
  if (s.total() > 25)
    throw InstanceTooLarge("oracle caps the sample at 25 points, got " +
                           std::to_string(s.total()));
  if (s.total() == 0) throw EmptySample("cannot run the oracle on an empty sample");

  std::vector<OracleLine> lines;
  const std::size_t m = s.examples.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (s.examples[i].p != s.examples[j].p) lines.push_back({s.examples[i].p, s.examples[j].p});

  // side = +1 keeps the left halfplane of (u, w), -1 the right one;
  // membership of a sample point is decided by exact orientation signs.
  auto inside = [&](const OracleLine* tri[3], const int sides[3], const Point& p) {
    for (int l = 0; l < 3; ++l) {
      int o = orientation(tri[l]->u, tri[l]->w, p);
      if (o * sides[l] < 0) return false;
    }
    return true;
  };

  bool have = false;
  std::int64_t best_disc = 0;
  std::size_t best_tri[3] = {0, 0, 0};
  int best_sides[3] = {0, 0, 0};
  std::vector<OracleLine> tri_lines(3);
  const std::size_t L = lines.size();
  for (std::size_t a = 0; a < L; ++a) {
    for (std::size_t b = a + 1; b < L; ++b) {
      for (std::size_t c = b + 1; c < L; ++c) {
        tri_lines[0] = lines[a];
        tri_lines[1] = lines[b];
        tri_lines[2] = lines[c];
        const OracleLine* tri[3] = {&lines[a], &lines[b], &lines[c]};
        for (int bits = 0; bits < 8; ++bits) {
          int sides[3] = {bits & 1 ? -1 : 1, bits & 2 ? -1 : 1, bits & 4 ? -1 : 1};
          std::vector<Point> poly = oracle_clip(tri_lines, sides);
          if (poly.size() < 3) continue;
          bool unbounded = false;
          for (const Point& p : poly)
            if (std::abs(p.x) >= kOracleBox * (1 - 1e-9) || std::abs(p.y) >= kOracleBox * (1 - 1e-9))
              unbounded = true;
          if (unbounded) continue;
          double area2 = 0;
          for (std::size_t i = 0; i < poly.size(); ++i) {
            const Point& p = poly[i];
            const Point& q = poly[(i + 1) % poly.size()];
            area2 += p.x * q.y - q.x * p.y;
          }
          if (!(area2 > 1e-18)) continue;
          std::int64_t d = 0;
          for (const LabeledExample& e : s.examples)
            if (inside(tri, sides, e.p)) d += e.label ? 1 : -1;
          if (!have || d > best_disc) {
            have = true;
            best_disc = d;
            best_tri[0] = a;
            best_tri[1] = b;
            best_tri[2] = c;
            best_sides[0] = sides[0];
            best_sides[1] = sides[1];
            best_sides[2] = sides[2];
          }
        }
      }
    }
  }
  if (!have)
    throw EmptyReferenceSet("no bounded triangle arises from sample point pairs");

  tri_lines[0] = lines[best_tri[0]];
  tri_lines[1] = lines[best_tri[1]];
  tri_lines[2] = lines[best_tri[2]];
  std::vector<Point> poly = oracle_clip(tri_lines, best_sides);
  OracleResult res;
  res.polygon = convex_hull(poly);
  res.disc = best_disc;
  return res;
}

}  // namespace planar
