#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "planar/error.hpp"
#include "planar/meta.hpp"

using namespace planar;

namespace {

LabeledPointSet make_set(const std::vector<std::pair<Point, int>>& rows) {
  std::vector<LabeledExample> ex;
  for (const auto& [p, l] : rows) ex.push_back({p, l});
  return LabeledPointSet::from(std::move(ex));
}

Hypothesis perfect_triangle() {
  Hypothesis h;
  h.kind = Hypothesis::Kind::Polygon;
  h.polygon = parse_concept("triangle").polygon;
  return h;
}

// True-error estimate against fresh draws from an identically seeded concept.
double measured_error(const Hypothesis& h, const PlantedConcept& target,
                      std::uint64_t seed, int m = 20000) {
  auto src = ExampleSource::planted(target, 0.0, RngStream(seed, 900));
  return h.empirical_error(LabeledPointSet::from(src.draw(m))).value();
}

}  // namespace

TEST_CASE("amplification plan arithmetic") {
  {
    auto p = AmplificationPlan::make(0.3, 0.01);
    CHECK(p.t == 6);
    CHECK(p.q == 461);
    CHECK(p.base_eps == doctest::Approx(0.1));
  }
  {
    auto p = AmplificationPlan::make(0.5, 0.49);
    CHECK(p.t == 2);
    CHECK(p.q == 26);
  }
  // t and q are the minimal integers at or above the real-valued budgets
  RngStream rng(17, 0);
  for (int i = 0; i < 100; ++i) {
    double eps = rng.uniform(0.05, 0.95);
    double delta = rng.uniform(0.001, 0.499);
    auto p = AmplificationPlan::make(eps, delta);
    CHECK(p.t >= 1);
    CHECK(p.q >= 1);
    CHECK(double(p.t) >= std::log(2.0 / delta));
    CHECK(double(p.t) - 1.0 < std::log(2.0 / delta));
    CHECK(double(p.q) >= 9.0 / (eps * eps) * std::log(1.0 / delta));
    CHECK(double(p.q) - 1.0 < 9.0 / (eps * eps) * std::log(1.0 / delta));
  }
  CHECK_THROWS_AS(AmplificationPlan::make(0.3, 0.5), UsageError);
  CHECK_THROWS_AS(AmplificationPlan::make(0.3, 0.0), UsageError);
  CHECK_THROWS_AS(AmplificationPlan::make(0.0, 0.1), UsageError);
  CHECK_THROWS_AS(AmplificationPlan::make(1.0, 0.1), UsageError);
}

TEST_CASE("hypothesis evaluation and exact empirical error") {
  auto s = make_set({{{0.1, 0.1}, 1},
                     {{0.25, 0.25}, 1},
                     {{0.9, 0.9}, 0},
                     {{0.5, 0.5}, 1},   // on the triangle's hypotenuse
                     {{0.8, 0.4}, 0}});

  Hypothesis tri = perfect_triangle();
  Rational err = tri.empirical_error(s);
  CHECK(err.num == 0);  // hypotenuse point is inside the closed triangle
  CHECK(err.den == 5);

  std::int64_t wrong = 0;
  for (const auto& e : s.examples) wrong += int(tri.evaluate(e.p) != (e.label != 0));
  CHECK(wrong == err.num);  // batch and per-point evaluation agree

  Hypothesis zero;  // Constant0
  CHECK(zero.empirical_error(s).num == 3);  // misses every positive
  CHECK(!zero.evaluate({0.1, 0.1}));

  Hypothesis pt;
  pt.kind = Hypothesis::Kind::Point;
  pt.support = {{0.25, 0.25}};
  CHECK(pt.evaluate({0.25, 0.25}));
  CHECK(!pt.evaluate({0.25, 0.26}));
  CHECK(pt.empirical_error(s).num == 2);  // misses the other two positives

  Hypothesis seg;
  seg.kind = Hypothesis::Kind::Segment;
  seg.support = {{0.0, 0.0}, {0.5, 0.5}};
  CHECK(seg.evaluate({0.25, 0.25}));
  CHECK(seg.evaluate({0.5, 0.5}));
  CHECK(!seg.evaluate({0.6, 0.6}));
  CHECK(!seg.evaluate({0.25, 0.3}));

  CHECK_THROWS_AS(tri.empirical_error(LabeledPointSet{}), EmptySample);
}

TEST_CASE("amplify keeps the best validated candidate") {
  auto target = parse_concept("triangle");

  // base returns a terrible hypothesis with probability 1/3
  BaseLearner stub = [&](ExampleSource&, RngStream inner) {
    if (inner.below(3) == 0) return Hypothesis{};  // Constant0, err ~ 1/2
    return perfect_triangle();
  };

  int good = 0;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    auto src = ExampleSource::planted(target, 0.0, RngStream(500 + trial, 0));
    AmplifyDiag diag;
    Hypothesis h = amplify(stub, 0.3, 0.05, src, RngStream(900 + trial, 1), &diag);
    CHECK(diag.plan.t == 4);   // ceil(ln 40)
    CHECK(diag.plan.q == 300); // ceil(100 ln 20)
    CHECK(src.drawn() == 300); // stub draws nothing; validation draws q
    if (h.kind == Hypothesis::Kind::Polygon) ++good;
  }
  CHECK(good >= 190);  // amplified failure rate well under the 5% target
}

TEST_CASE("amplify failure accounting") {
  auto target = parse_concept("triangle");

  int calls = 0;
  BaseLearner flaky = [&](ExampleSource&, RngStream) -> Hypothesis {
    if (++calls < 4) throw EmptyReferenceSet("no candidate");
    return perfect_triangle();
  };
  auto src = ExampleSource::planted(target, 0.0, RngStream(1, 0));
  AmplifyDiag diag;
  Hypothesis h = amplify(flaky, 0.3, 0.05, src, RngStream(2, 0), &diag);
  CHECK(h.kind == Hypothesis::Kind::Polygon);
  CHECK(diag.failures == 3);
  CHECK(diag.chosen == 3);

  BaseLearner broken = [](ExampleSource&, RngStream) -> Hypothesis {
    throw EmptyReferenceSet("no candidate");
  };
  auto src2 = ExampleSource::planted(target, 0.0, RngStream(1, 1));
  CHECK_THROWS_AS(amplify(broken, 0.3, 0.05, src2, RngStream(2, 1)),
                  AllInvocationsFailed);

  // configuration problems are not failure-budget events
  BaseLearner misused = [](ExampleSource&, RngStream) -> Hypothesis {
    throw UsageError("bad flag");
  };
  auto src3 = ExampleSource::planted(target, 0.0, RngStream(1, 2));
  CHECK_THROWS_AS(amplify(misused, 0.3, 0.05, src3, RngStream(2, 2)), UsageError);
}

TEST_CASE("learn_kgon: properness, budget, planted recovery") {
  auto target = parse_concept("triangle");
  MetaConfig cfg;
  cfg.kgon.net_c = 0.6;
  cfg.kgon.log_base = 2;

  auto src = ExampleSource::planted(target, 0.0, RngStream(42, 0));
  AmplifyDiag diag;
  Hypothesis h = learn_kgon(0.6, 0.3, 3, src, RngStream(42, 1), cfg, &diag);

  REQUIRE(h.kind == Hypothesis::Kind::Polygon);
  CHECK(h.provenance == Hypothesis::Provenance::KGon);
  CHECK(h.k == 3);
  CHECK(h.polygon.vertices.size() <= 3);

  // every invocation draws ceil(c/(eps/3)^2), validation draws q
  CHECK(diag.failures == 0);
  double be = 0.6 / 3.0;
  std::int64_t m = std::int64_t(std::ceil(cfg.sample_c / (be * be)));
  CHECK(src.drawn() == diag.plan.t * m + diag.plan.q);

  CHECK(measured_error(h, target, 42) <= 0.3);

  CHECK_THROWS_AS(learn_kgon(0.6, 0.3, 2, src, RngStream(1, 1), cfg), UsageError);
}

TEST_CASE("learn_kgon under label noise") {
  auto target = parse_concept("triangle");
  MetaConfig cfg;
  cfg.kgon.net_c = 0.6;
  cfg.kgon.log_base = 2;

  auto src = ExampleSource::planted(target, 0.2, RngStream(77, 0));
  Hypothesis h = learn_kgon(0.6, 0.3, 3, src, RngStream(77, 1), cfg);
  REQUIRE(h.kind == Hypothesis::Kind::Polygon);
  // true error against clean labels <= OPT + eps with OPT = eta
  CHECK(measured_error(h, target, 77) <= 0.2 + 0.6);
}

TEST_CASE("learn_convex: properness, budget, planted disk") {
  auto target = parse_concept("disk");
  MetaConfig cfg;

  auto src = ExampleSource::planted(target, 0.0, RngStream(11, 0));
  AmplifyDiag diag;
  Hypothesis h = learn_convex(0.75, 0.3, src, RngStream(11, 1), cfg, &diag);

  CHECK(h.provenance == Hypothesis::Provenance::Island);
  REQUIRE(h.kind == Hypothesis::Kind::Polygon);
  std::size_t n = convex_net_size(0.25, cfg.convex);
  CHECK(double(h.polygon.vertices.size()) <= cfg.hull_vertex_c * std::cbrt(double(n)));

  std::int64_t m = std::int64_t(convex_sample_size(0.25, cfg.convex));
  CHECK(src.drawn() == diag.plan.t * m + diag.plan.q);

  CHECK(measured_error(h, target, 11) <= 0.35);
}

TEST_CASE("learn_convex on an all-negative source") {
  auto src = ExampleSource::constant(0, RngStream(5, 0));
  Hypothesis h = learn_convex(0.75, 0.3, src, RngStream(5, 1));
  CHECK(h.kind == Hypothesis::Kind::Constant0);

  auto fresh = ExampleSource::constant(0, RngStream(6, 0));
  CHECK(h.empirical_error(LabeledPointSet::from(fresh.draw(1000))).num == 0);
}

TEST_CASE("estimate_distance brackets the true distance") {
  MetaConfig cfg;
  cfg.kgon.net_c = 0.3;
  cfg.kgon.log_base = 2;
  ClassSpec kgon3{ClassSpec::Family::KGon, 3};

  // realizable source: distance 0, so the estimate stays below eps
  {
    auto src = ExampleSource::planted(parse_concept("triangle"), 0.0, RngStream(21, 0));
    Rational d = estimate_distance(kgon3, 0.5, 0.3, src, RngStream(21, 1), cfg);
    CHECK(d.den == 83);  // ceil((8/eps^2) ln(4/delta))
    CHECK(d.value() <= 0.5);
  }
  // noisy source: distance = eta = 0.2, estimate within eps
  {
    auto src = ExampleSource::planted(parse_concept("triangle"), 0.2, RngStream(22, 0));
    Rational d = estimate_distance(kgon3, 0.5, 0.3, src, RngStream(22, 1), cfg);
    CHECK(d.value() >= 0.2 - 0.5);
    CHECK(d.value() <= 0.2 + 0.5);
  }
  CHECK_THROWS_AS(
      [&] {
        auto src = ExampleSource::constant(0, RngStream(1, 0));
        estimate_distance(kgon3, 0.0, 0.3, src, RngStream(1, 1), cfg);
      }(),
      UsageError);
}
