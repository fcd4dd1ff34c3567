#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "planar/error.hpp"
#include "planar/island.hpp"

using namespace planar;

namespace {

LabeledPointSet make_set(const std::vector<std::pair<Point, int>>& rows) {
  std::vector<LabeledExample> ex;
  for (const auto& [p, l] : rows) ex.push_back({p, l});
  return LabeledPointSet::from(std::move(ex));
}

// Closed-triangle disc by direct exact side tests; independent of both table
// builds and of the counter decomposition.
std::int64_t side_test_disc(const LabeledPointSet& s, const Point& a, const Point& b,
                            const Point& c) {
  Point u = a, v = b, w = c;
  if (orientation(u, v, w) < 0) std::swap(v, w);
  std::int64_t d = 0;
  for (const LabeledExample& e : s.examples) {
    if (orientation(u, v, e.p) >= 0 && orientation(v, w, e.p) >= 0 &&
        orientation(w, u, e.p) >= 0)
      d += e.label ? 1 : -1;
  }
  return d;
}

// Net with dyadic coordinates: exact arithmetic in doubles, so data points
// placed at midpoints and at net points exercise the boundary bookkeeping
// without rounding noise.
std::vector<Point> dyadic_net(RngStream& rng, std::size_t n) {
  std::vector<Point> net;
  while (net.size() < n) {
    Point p{double(rng.below(6)) + double(rng.below(64)) / 64.0,
            double(rng.below(6)) + double(rng.below(64)) / 64.0};
    net.push_back(p);
    try {
      validate_net(net);
    } catch (const CollinearNet&) {
      net.pop_back();
    }
  }
  return net;
}

LabeledPointSet adversarial_data(RngStream& rng, const std::vector<Point>& net, std::size_t m) {
  std::vector<std::pair<Point, int>> rows;
  for (std::size_t t = 0; t < m; ++t) {
    int kind = int(rng.below(4));
    Point p;
    if (kind == 0 && !net.empty()) {
      p = net[rng.below(net.size())];  // exactly at a net point
    } else if (kind == 1 && net.size() >= 2) {
      std::size_t i = rng.below(net.size());
      std::size_t j = rng.below(net.size());
      if (i == j) j = (j + 1) % net.size();
      // dyadic midpoint: exactly on the segment
      p = {(net[i].x + net[j].x) / 2, (net[i].y + net[j].y) / 2};
    } else {
      p = {rng.uniform(-0.5, 6.5), rng.uniform(-0.5, 6.5)};
    }
    rows.push_back({p, int(rng.below(2))});
  }
  return make_set(rows);
}

}  // namespace

TEST_CASE("validate_net rejects degenerate nets") {
  CHECK_THROWS_AS(validate_net(std::vector<Point>{{0, 0}, {1, 1}, {0, 0}}), CollinearNet);
  CHECK_THROWS_AS(validate_net(std::vector<Point>{{0, 0}, {1, 1}, {2, 2}}), CollinearNet);
  CHECK_THROWS_AS(validate_net(std::vector<Point>{{0, 0}, {0, 1}, {0, 2}, {5, 5}}),
                  CollinearNet);
  CHECK_THROWS_AS(validate_net(std::vector<Point>{{0, 0}, {1, 0}, {3, 0}}), CollinearNet);
  // middle point of the collinear run listed first
  CHECK_THROWS_AS(validate_net(std::vector<Point>{{1, 1}, {0, 0}, {2, 2}, {4, 1}}),
                  CollinearNet);
  CHECK_NOTHROW(validate_net(std::vector<Point>{{0, 0}, {1, 0}, {0, 1}, {2, 3}}));
  CHECK_NOTHROW(validate_net(std::vector<Point>{}));
  CHECK_NOTHROW(validate_net(std::vector<Point>{{1, 2}}));
}

TEST_CASE("sample_uniform_net lands in the unit square") {
  RngStream rng(11, 0);
  auto net = sample_uniform_net(200, rng);
  REQUIRE(net.size() == 200);
  for (const Point& p : net) {
    CHECK(p.x >= 0.0);
    CHECK(p.x < 1.0);
    CHECK(p.y >= 0.0);
    CHECK(p.y < 1.0);
  }
  RngStream rng2(11, 0);
  auto net2 = sample_uniform_net(200, rng2);
  CHECK(net == net2);
}

TEST_CASE("table: hand fixture with boundary data") {
  std::vector<Point> net = {{0, 0}, {4, 0}, {0, 4}};
  auto s = make_set({{{0, 0}, 1},   // at a net point
                     {{2, 0}, 1},   // on the bottom segment
                     {{1, 1}, 0},   // interior
                     {{5, 5}, 1}}); // outside everything
  std::vector<LineRef> lines;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) lines.push_back(make_line(net[i], net[j]));
  auto counter = build_counter(s, lines, CounterMode::Exhaustive);
  TriangleDiscTable tb(net, *counter, TriangleDiscTable::Build::Direct);

  CHECK(tb.point(0) == 1);
  CHECK(tb.point(1) == 0);
  CHECK(tb.segment(0, 1) == 2);  // (0,0) and (2,0) both on the closed segment
  CHECK(tb.segment(0, 2) == 1);
  CHECK(tb.triangle(0, 1, 2) == 1);  // +1 +1 -1, the far point excluded
}

TEST_CASE("table: direct and pair-aggregate builds are identical") {
  RngStream rng(314, 2);
  for (int trial = 0; trial < 8; ++trial) {
    RngStream tr = rng.split(std::uint64_t(trial));
    std::size_t n = 6 + tr.below(5);
    auto net = dyadic_net(tr, n);
    auto s = adversarial_data(tr, net, 40 + tr.below(30));

    std::vector<LineRef> lines;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) lines.push_back(make_line(net[i], net[j]));
    auto counter = build_counter(s, lines, CounterMode::LineAnchoredIndex);
    TriangleDiscTable direct(net, *counter, TriangleDiscTable::Build::Direct);
    TriangleDiscTable agg(net, *counter, TriangleDiscTable::Build::PairAggregate);

    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          CAPTURE(trial);
          CAPTURE(i);
          CAPTURE(j);
          CAPTURE(k);
          std::int64_t want = side_test_disc(s, net[i], net[j], net[k]);
          CHECK(direct.triangle(i, j, k) == want);
          CHECK(agg.triangle(i, j, k) == want);
        }
  }
}

TEST_CASE("table rejects oversized nets before building") {
  std::vector<Point> big(900);
  RngStream rng(5, 5);
  for (auto& p : big) p = {rng.uniform01(), rng.uniform01()};
  LabeledPointSet s = make_set({{{0.5, 0.5}, 1}});
  auto counter = build_counter(s, std::vector<LineRef>{}, CounterMode::Exhaustive);
  CHECK_THROWS_AS(TriangleDiscTable(big, *counter, TriangleDiscTable::Build::Direct),
                  InstanceTooLarge);
}

TEST_CASE("opt_island matches the subset oracle") {
  RngStream rng(777, 9);
  for (int trial = 0; trial < 14; ++trial) {
    RngStream tr = rng.split(std::uint64_t(trial));
    std::size_t n = 5 + tr.below(5);
    auto net = dyadic_net(tr, n);
    auto s = adversarial_data(tr, net, 25 + tr.below(25));

    std::vector<LineRef> lines;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) lines.push_back(make_line(net[i], net[j]));
    auto counter = build_counter(s, lines, CounterMode::LineAnchoredIndex);
    TriangleDiscTable tb(net, *counter, TriangleDiscTable::Build::Auto);

    IslandResult dp = opt_island(tb);
    IslandResult oracle = island_oracle(net, s);
    CAPTURE(trial);
    CAPTURE(n);
    CHECK(dp.disc == oracle.disc);
  }
}

TEST_CASE("opt_island shape fixtures") {
  // all-negative data: the empty island wins
  {
    std::vector<Point> net = {{0, 0}, {4, 0}, {0, 4}, {3, 3}};
    auto s = make_set({{{1, 1}, 0}, {{2, 1}, 0}});
    std::vector<LineRef> lines;
    for (std::size_t i = 0; i < net.size(); ++i)
      for (std::size_t j = i + 1; j < net.size(); ++j)
        lines.push_back(make_line(net[i], net[j]));
    auto counter = build_counter(s, lines, CounterMode::Exhaustive);
    TriangleDiscTable tb(net, *counter, TriangleDiscTable::Build::Direct);
    IslandResult r = opt_island(tb);
    CHECK(r.shape == IslandResult::Shape::Empty);
    CHECK(r.disc == 0);
  }
  // positives exactly at one net point
  {
    std::vector<Point> net = {{0, 0}, {4, 0}, {0, 4}, {3, 3}};
    auto s = make_set({{{3, 3}, 1}, {{3, 3}, 1}, {{1, 1}, 0}, {{2, 1}, 0}, {{1, 2}, 0}});
    std::vector<LineRef> lines;
    for (std::size_t i = 0; i < net.size(); ++i)
      for (std::size_t j = i + 1; j < net.size(); ++j)
        lines.push_back(make_line(net[i], net[j]));
    auto counter = build_counter(s, lines, CounterMode::Exhaustive);
    TriangleDiscTable tb(net, *counter, TriangleDiscTable::Build::Direct);
    IslandResult r = opt_island(tb);
    CHECK(r.shape == IslandResult::Shape::Point);
    REQUIRE(r.support.size() == 1);
    CHECK(r.support[0] == Point{3, 3});
    CHECK(r.disc == 2);
  }
  // positives on one net segment, negatives spread inside every triangle
  {
    std::vector<Point> net = {{0, 0}, {4, 0}, {1, 3}, {3, 59.0 / 16}};
    auto s = make_set({{{1, 0}, 1}, {{2, 0}, 1}, {{3, 0}, 1},
                       {{1.5, 1}, 0}, {{2, 2}, 0}, {{2.5, 1}, 0}, {{1, 1}, 0}});
    std::vector<LineRef> lines;
    for (std::size_t i = 0; i < net.size(); ++i)
      for (std::size_t j = i + 1; j < net.size(); ++j)
        lines.push_back(make_line(net[i], net[j]));
    auto counter = build_counter(s, lines, CounterMode::Exhaustive);
    TriangleDiscTable tb(net, *counter, TriangleDiscTable::Build::Direct);
    IslandResult r = opt_island(tb);
    CHECK(r.shape == IslandResult::Shape::Segment);
    CHECK(r.disc == 3);
  }
  // positives filling a convex pocket of the net
  {
    std::vector<Point> net = {{0, 0}, {4, 0.125}, {4.25, 4}, {0.125, 4.125}, {-2, 2},
                              {6, 2.0625}, {2, -1.5}};
    std::vector<std::pair<Point, int>> rows;
    RngStream rng(99, 4);
    for (int i = 0; i < 12; ++i)
      rows.push_back({{rng.uniform(0.7, 3.4), rng.uniform(0.8, 3.3)}, 1});
    rows.push_back({{-1.0, 2.0}, 0});
    rows.push_back({{5.0, 2.0}, 0});
    rows.push_back({{2.0, -1.0}, 0});
    auto s = make_set(rows);
    std::vector<LineRef> lines;
    for (std::size_t i = 0; i < net.size(); ++i)
      for (std::size_t j = i + 1; j < net.size(); ++j)
        lines.push_back(make_line(net[i], net[j]));
    auto counter = build_counter(s, lines, CounterMode::Exhaustive);
    TriangleDiscTable tb(net, *counter, TriangleDiscTable::Build::Direct);
    IslandResult r = opt_island(tb);
    CHECK(r.shape == IslandResult::Shape::Polygon);
    CHECK(r.disc == 12);
    IslandResult oracle = island_oracle(net, s);
    CHECK(oracle.disc == 12);
  }
}

TEST_CASE("island_oracle guards") {
  std::vector<Point> net(15);
  RngStream rng(3, 3);
  for (auto& p : net) p = {rng.uniform01(), rng.uniform01()};
  CHECK_THROWS_AS(island_oracle(net, LabeledPointSet{}), InstanceTooLarge);
}

TEST_CASE("size formulas") {
  CHECK(convex_sample_size(0.5) == 16);  // ceil(4 * 2^2.5 * ln 2)
  CHECK(convex_net_size(0.5) == 23);     // ceil(8 * 2^1.5)
  CHECK_THROWS_AS(convex_sample_size(0.0, ConvexConfig{}), UsageError);
  CHECK_THROWS_AS(convex_net_size(1.0, ConvexConfig{}), UsageError);
}

TEST_CASE("learn_convex_once recovers a planted disk") {
  RngStream data_rng(2026, 7);
  std::vector<std::pair<Point, int>> rows;
  for (int i = 0; i < 900; ++i) {
    Point p{data_rng.uniform01(), data_rng.uniform01()};
    double dx = p.x - 0.5, dy = p.y - 0.5;
    rows.push_back({p, dx * dx + dy * dy <= 0.35 * 0.35 ? 1 : 0});
  }
  auto s = make_set(rows);

  RngStream rng(2026, 8);
  ConvexDiag diag;
  IslandResult r = learn_convex_once(s, 0.35, rng, ConvexConfig{}, &diag);
  CHECK(diag.net_size == convex_net_size(0.35));
  CHECK(diag.dp_states > 0);
  REQUIRE(r.shape == IslandResult::Shape::Polygon);
  CHECK(r.disc > 0);

  // empirical error of the learned region against the planted labels
  std::int64_t wrong = 0;
  auto flags = batch_points_in_polygon(
      [&] {
        std::vector<Point> ps;
        for (const auto& e : s.examples) ps.push_back(e.p);
        return ps;
      }(),
      r.polygon);
  for (std::size_t i = 0; i < s.examples.size(); ++i)
    if ((flags[i] != 0) != (s.examples[i].label != 0)) ++wrong;
  CHECK(double(wrong) / double(s.total()) < 0.2);

  RngStream rng2(1, 1);
  CHECK_THROWS_AS(learn_convex_once(LabeledPointSet{}, 0.35, rng2, ConvexConfig{}),
                  EmptySample);
}
