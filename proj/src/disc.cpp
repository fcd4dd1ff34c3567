#include "planar/disc.hpp"

#include <algorithm>
#include <cmath>

namespace planar {

namespace {

inline std::uint64_t mix_keys(std::uint64_t a, std::uint64_t b) {
  a ^= b + 0x9E3779B97F4A7C15ull + (a << 6) + (a >> 2);
  return a;
}

inline std::uint64_t line_key(const LineRef& l) {
  return mix_keys(point_key(l.a), point_key(l.b));
}

// Strictly below a non-vertical line (a lex-before b implies a.x < b.x).
inline bool strictly_below(const LineRef& l, const Point& p) {
  return orientation(l.a, l.b, p) < 0;
}

}  // namespace

LabeledPointSet LabeledPointSet::from(std::vector<LabeledExample> ex) {
  LabeledPointSet s;
  s.examples = std::move(ex);
  for (const LabeledExample& e : s.examples) s.positives += e.label ? 1 : 0;
  return s;
}

LineRef make_line(const Point& p, const Point& q) {
  if (p == q) throw Error(ErrorKind::Algorithmic, "line needs two distinct points");
  return lex_less(p, q) ? LineRef{p, q} : LineRef{q, p};
}

DiscrepancyCounter::DiscrepancyCounter(LabeledPointSet sample,
                                       std::span<const LineRef> lines)
    : sample_(std::move(sample)), lines_(lines.begin(), lines.end()) {
  line_lookup_.reserve(lines_.size());
  for (std::uint32_t i = 0; i < lines_.size(); ++i) {
    line_lookup_.emplace(line_key(lines_[i]), i);
  }
  at_.reserve(sample_.examples.size());
  for (const LabeledExample& e : sample_.examples) {
    std::uint64_t k = point_key(e.p);
    auto probe = at_probe_.emplace(k, e.p);
    if (!probe.second && !(probe.first->second == e.p)) {
      throw Error(ErrorKind::Algorithmic, "point hash collision in sample");
    }
    Weight& w = at_[k];
    (e.label ? w.pos : w.neg) += 1;
  }
}

size_t DiscrepancyCounter::line_index(const LineRef& line) const {
  auto [lo, hi] = line_lookup_.equal_range(line_key(line));
  for (auto it = lo; it != hi; ++it) {
    const LineRef& cand = lines_[it->second];
    if (cand.a == line.a && cand.b == line.b) return it->second;
  }
  throw UnregisteredLine("line through queried pair was never registered");
}

Weight DiscrepancyCounter::weight_at(const Point& p) const {
  auto it = at_.find(point_key(p));
  if (it == at_.end()) return {};
  auto probe = at_probe_.find(point_key(p));
  if (probe == at_probe_.end() || !(probe->second == p)) return {};
  return it->second;
}

namespace {

class ExhaustiveCounter final : public DiscrepancyCounter {
 public:
  ExhaustiveCounter(LabeledPointSet s, std::span<const LineRef> lines)
      : DiscrepancyCounter(std::move(s), lines) {}

  Weight below_in_strip(const LineRef& line, double xlo, double xhi) const override {
    line_index(line);
    if (line.vertical()) return {};  // "below" is defined for non-vertical lines
    Weight w;
    for (const LabeledExample& e : sample_.examples) {
      if (e.p.x <= xlo || e.p.x > xhi) continue;
      if (strictly_below(line, e.p)) (e.label ? w.pos : w.neg) += 1;
    }
    return w;
  }

  Weight on_line_range(const LineRef& line, double lo, double hi) const override {
    line_index(line);
    bool vertical = line.vertical();
    Weight w;
    for (const LabeledExample& e : sample_.examples) {
      double key = vertical ? e.p.y : e.p.x;
      if (key < lo || key > hi) continue;
      if (orientation(line.a, line.b, e.p) == 0) (e.label ? w.pos : w.neg) += 1;
    }
    return w;
  }
};

// Per-line partition of the sample: points strictly below (sorted by x) and
// points on the line (sorted by x, or by y for vertical lines), each with
// prefix label counts. Built on first touch; a FIFO cap bounds memory when a
// run registers far more lines than it ever revisits.
class IndexedCounter final : public DiscrepancyCounter {
 public:
  IndexedCounter(LabeledPointSet s, std::span<const LineRef> lines)
      : DiscrepancyCounter(std::move(s), lines), parts_(lines_.size()) {
    order_.resize(sample_.examples.size());
    for (std::uint32_t i = 0; i < order_.size(); ++i) order_[i] = i;
    std::sort(order_.begin(), order_.end(), [&](std::uint32_t i, std::uint32_t j) {
      return sample_.examples[i].p.x < sample_.examples[j].p.x;
    });
  }

  Weight below_in_strip(const LineRef& line, double xlo, double xhi) const override {
    const Part& part = ensure(line_index(line));
    return range_weight(part.below_x, part.below_pos, part.below_neg, xlo, xhi,
                        /*half_open=*/true);
  }

  Weight on_line_range(const LineRef& line, double lo, double hi) const override {
    const Part& part = ensure(line_index(line));
    return range_weight(part.on_key, part.on_pos, part.on_neg, lo, hi,
                        /*half_open=*/false);
  }

  void materialize_all() override {
    for (size_t i = 0; i < lines_.size(); ++i) ensure(i);
  }

 private:
  struct Part {
    bool built = false;
    std::vector<double> below_x, on_key;
    std::vector<std::int32_t> below_pos, below_neg, on_pos, on_neg;  // prefix sums
  };

  static Weight range_weight(const std::vector<double>& keys,
                             const std::vector<std::int32_t>& pos,
                             const std::vector<std::int32_t>& neg, double lo,
                             double hi, bool half_open) {
    auto begin = half_open ? std::upper_bound(keys.begin(), keys.end(), lo)
                           : std::lower_bound(keys.begin(), keys.end(), lo);
    auto end = std::upper_bound(keys.begin(), keys.end(), hi);
    if (begin >= end) return {};
    size_t b = size_t(begin - keys.begin());
    size_t e = size_t(end - keys.begin());
    return Weight{pos[e] - pos[b], neg[e] - neg[b]};
  }

  const Part& ensure(size_t idx) const {
    Part& part = parts_[idx];
    if (part.built) return part;
    const LineRef& line = lines_[idx];
    bool vertical = line.vertical();
    part.below_pos.push_back(0);
    part.below_neg.push_back(0);
    part.on_pos.push_back(0);
    part.on_neg.push_back(0);
    std::vector<std::pair<double, int>> on_tmp;
    for (std::uint32_t oi : order_) {
      const LabeledExample& e = sample_.examples[oi];
      int side = orientation(line.a, line.b, e.p);
      if (side < 0 && !vertical) {
        part.below_x.push_back(e.p.x);
        part.below_pos.push_back(part.below_pos.back() + (e.label ? 1 : 0));
        part.below_neg.push_back(part.below_neg.back() + (e.label ? 0 : 1));
      } else if (side == 0) {
        on_tmp.emplace_back(vertical ? e.p.y : e.p.x, e.label);
      }
    }
    if (vertical) std::sort(on_tmp.begin(), on_tmp.end());
    for (auto& [key, label] : on_tmp) {
      part.on_key.push_back(key);
      part.on_pos.push_back(part.on_pos.back() + (label ? 1 : 0));
      part.on_neg.push_back(part.on_neg.back() + (label ? 0 : 1));
    }
    part.built = true;
    entries_ += part.below_x.size() + part.on_key.size();
    built_order_.push_back(idx);
    while (entries_ > kEntryBudget && built_order_.size() > 1) {
      size_t victim = built_order_.front();
      if (victim == idx) break;
      built_order_.pop_front();
      entries_ -= parts_[victim].below_x.size() + parts_[victim].on_key.size();
      parts_[victim] = Part{};
    }
    return part;
  }

  static constexpr size_t kEntryBudget = size_t(48) * 1000 * 1000;

  std::vector<std::uint32_t> order_;  // sample indices by ascending x
  mutable std::vector<Part> parts_;
  mutable std::deque<size_t> built_order_;
  mutable size_t entries_ = 0;
};

}  // namespace

std::unique_ptr<DiscrepancyCounter> build_counter(LabeledPointSet sample,
                                                  std::span<const LineRef> lines,
                                                  CounterMode mode) {
  if (mode == CounterMode::Exhaustive) {
    return std::make_unique<ExhaustiveCounter>(std::move(sample), lines);
  }
  return std::make_unique<IndexedCounter>(std::move(sample), lines);
}

namespace {

// Closed-region discrepancy from the three primitives.
//
// Being exact about boundaries is the whole game, so the decomposition is
// spelled out: summing the signed strictly-below strip counts over all
// non-vertical edges counts every point with low(x) <= y < up(x) over the
// half-open column strip (the lower chain included, the upper excluded, and
// for a vertical right edge its half-open column [bottom, top)). What is
// missing is exactly the closed upper chain plus the closed left vertical
// edge. Those edges form one connected path, so adding their closed on-line
// counts and subtracting the points at interior path vertices (each shared by
// two path edges) yields the closed polygon count.
std::int64_t closed_region_disc(const DiscrepancyCounter& c,
                                std::span<const Point> ring,
                                std::span<const LineRef> refs) {
  size_t m = ring.size();
  std::int64_t total = 0;
  char path_buf[32];
  std::vector<char> path_dyn;
  char* on_path = path_buf;
  if (m > sizeof(path_buf)) {
    path_dyn.assign(m, 0);
    on_path = path_dyn.data();
  } else {
    std::fill(path_buf, path_buf + m, 0);
  }
  for (size_t i = 0; i < m; ++i) {
    const Point& s = ring[i];
    const Point& t = ring[(i + 1) % m];
    if (s.x != t.x) {
      Weight w = c.below_in_strip(refs[i], std::min(s.x, t.x), std::max(s.x, t.x));
      total += (t.x < s.x) ? w.disc() : -w.disc();
      if (t.x < s.x) on_path[i] = 1;  // upper-chain edge
    } else if (t.y < s.y) {
      on_path[i] = 1;  // left vertical edge
    }
  }
  for (size_t i = 0; i < m; ++i) {
    if (!on_path[i]) continue;
    const Point& s = ring[i];
    const Point& t = ring[(i + 1) % m];
    double lo, hi;
    if (s.x != t.x) {
      lo = std::min(s.x, t.x);
      hi = std::max(s.x, t.x);
    } else {
      lo = t.y;
      hi = s.y;
    }
    total += c.on_line_range(refs[i], lo, hi).disc();
    // Head vertex shared with the next path edge: counted by both, drop one.
    if (on_path[(i + 1) % m]) total -= c.weight_at(t).disc();
  }
  return total;
}

}  // namespace

std::int64_t disc_triangle(const DiscrepancyCounter& c, const Triangle& t) {
  Point ring[3] = {t.a, t.b, t.c};
  int o = orientation(t.a, t.b, t.c);
  if (o == 0) throw Error(ErrorKind::Algorithmic, "degenerate triangle");
  if (o < 0) std::swap(ring[1], ring[2]);
  LineRef refs[3] = {make_line(ring[0], ring[1]), make_line(ring[1], ring[2]),
                     make_line(ring[2], ring[0])};
  return closed_region_disc(c, ring, refs);
}

std::int64_t disc_polygon(const DiscrepancyCounter& c, const ConvexPolygon& poly) {
  size_t m = poly.vertices.size();
  std::vector<LineRef> refs;
  refs.reserve(m);
  for (size_t i = 0; i < m; ++i) {
    refs.push_back(make_line(poly.vertices[i], poly.vertices[(i + 1) % m]));
  }
  return closed_region_disc(c, poly.vertices, refs);
}

std::int64_t disc_polygon(const DiscrepancyCounter& c, std::span<const Point> ccw_ring,
                          std::span<const LineRef> edge_refs) {
  if (ccw_ring.size() != edge_refs.size() || ccw_ring.size() < 3) {
    throw Error(ErrorKind::Algorithmic, "ring and edge refs must align");
  }
  return closed_region_disc(c, ccw_ring, edge_refs);
}

Rational err_from_disc(std::int64_t disc, const LabeledPointSet& sample) {
  if (sample.total() == 0) throw EmptySample("error undefined on empty sample");
  return Rational{sample.positives - disc, sample.total()};
}

}  // namespace planar
