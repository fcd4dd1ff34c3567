#include "planar/meta.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "planar/error.hpp"

namespace planar {

bool Hypothesis::evaluate(const Point& p) const {
  switch (kind) {
    case Kind::Constant0:
      return false;
    case Kind::Polygon:
      return point_in_polygon_scan(p, polygon);
    case Kind::Point:
      return p == support[0];
    case Kind::Segment:
      return on_segment(p, support[0], support[1]);
  }
  return false;
}

Rational Hypothesis::empirical_error(const LabeledPointSet& s) const {
  if (s.examples.empty()) throw EmptySample("empirical error of an empty sample");
  std::int64_t wrong = 0;
  if (kind == Kind::Polygon) {
    std::vector<Point> pts;
    pts.reserve(s.examples.size());
    for (const LabeledExample& e : s.examples) pts.push_back(e.p);
    std::vector<char> in = batch_points_in_polygon(pts, polygon);
    for (std::size_t i = 0; i < s.examples.size(); ++i)
      wrong += int(bool(in[i]) != (s.examples[i].label != 0));
  } else {
    for (const LabeledExample& e : s.examples)
      wrong += int(evaluate(e.p) != (e.label != 0));
  }
  return {wrong, s.total()};
}

Hypothesis Hypothesis::from_kgon(const ReferenceKGon& g, int k) {
  Hypothesis h;
  h.kind = Kind::Polygon;
  h.provenance = Provenance::KGon;
  h.polygon = g.polygon;
  h.k = k;
  return h;
}

Hypothesis Hypothesis::from_island(const IslandResult& r) {
  Hypothesis h;
  h.provenance = Provenance::Island;
  switch (r.shape) {
    case IslandResult::Shape::Empty:
      h.kind = Kind::Constant0;
      break;
    case IslandResult::Shape::Point:
      h.kind = Kind::Point;
      h.support = r.support;
      break;
    case IslandResult::Shape::Segment:
      h.kind = Kind::Segment;
      h.support = r.support;
      break;
    case IslandResult::Shape::Polygon:
      h.kind = Kind::Polygon;
      h.polygon = r.polygon;
      break;
  }
  return h;
}

AmplificationPlan AmplificationPlan::make(double eps, double delta) {
  if (!(eps > 0.0 && eps < 1.0))
    throw UsageError("loss must be in (0, 1), got " + std::to_string(eps));
  if (!(delta > 0.0 && delta < 0.5))
    throw UsageError("failure probability must be in (0, 1/2), got " +
                     std::to_string(delta));
  AmplificationPlan plan;
  plan.t = int(std::ceil(std::log(2.0 / delta)));
  plan.q = std::int64_t(std::ceil(9.0 / (eps * eps) * std::log(1.0 / delta)));
  plan.base_eps = eps / 3.0;
  return plan;
}

Hypothesis amplify(const BaseLearner& base, double eps, double delta,
                   ExampleSource& source, RngStream rng, AmplifyDiag* diag) {
  AmplificationPlan plan = AmplificationPlan::make(eps, delta);

  std::vector<std::pair<int, Hypothesis>> candidates;
  int failures = 0;
  for (int i = 0; i < plan.t; ++i) {
    try {
      candidates.emplace_back(i, base(source, rng.split(std::uint64_t(i))));
    } catch (const Error& e) {
      if (e.kind != ErrorKind::Algorithmic) throw;
      ++failures;
    }
  }
  if (candidates.empty())
    throw AllInvocationsFailed("all " + std::to_string(plan.t) +
                               " base invocations failed");

  LabeledPointSet validation = LabeledPointSet::from(source.draw(plan.q));
  int chosen = -1;
  Rational best_err{0, 1};
  std::optional<Hypothesis> best;
  for (auto& [idx, h] : candidates) {
    Rational err = h.empirical_error(validation);
    if (!best || err.num * best_err.den < best_err.num * err.den) {
      best = std::move(h);
      best_err = err;
      chosen = idx;
    }
  }
  if (diag) {
    diag->plan = plan;
    diag->failures = failures;
    diag->chosen = chosen;
    diag->validation_err = best_err;
  }
  return *best;
}

namespace {

std::int64_t base_sample_size(double base_eps, const MetaConfig& cfg) {
  return std::int64_t(std::ceil(cfg.sample_c / (base_eps * base_eps)));
}

}  // namespace

Hypothesis learn_kgon(double eps, double delta, int k, ExampleSource& source,
                      RngStream rng, const MetaConfig& cfg, AmplifyDiag* diag) {
  if (k < 3) throw UsageError("k must be at least 3, got " + std::to_string(k));
  double base_eps = eps / 3.0;
  std::int64_t m = base_sample_size(base_eps, cfg);
  BaseLearner base = [&, base_eps, m](ExampleSource& src, RngStream inner) {
    LabeledPointSet s = LabeledPointSet::from(src.draw(m));
    ReferenceKGon g = approximate_erm_kgon(s, base_eps, k, inner, cfg.kgon);
    return Hypothesis::from_kgon(g, k);
  };
  return amplify(base, eps, delta, source, rng, diag);
}

Hypothesis learn_convex(double eps, double delta, ExampleSource& source,
                        RngStream rng, const MetaConfig& cfg, AmplifyDiag* diag) {
  BaseLearner base = [&](ExampleSource& src, RngStream inner) {
    double base_eps = eps / 3.0;
    std::int64_t m = std::int64_t(convex_sample_size(base_eps, cfg.convex));
    LabeledPointSet s = LabeledPointSet::from(src.draw(m));
    ConvexDiag cd;
    IslandResult r = learn_convex_once(s, base_eps, inner, cfg.convex, &cd);
    // a hull with too many vertices means the net was unlucky; the proper
    // class only admits O(n^(1/3))-vertex islands
    double bound = cfg.hull_vertex_c * std::cbrt(double(cd.net_size));
    if (r.shape == IslandResult::Shape::Polygon &&
        double(r.polygon.vertices.size()) > bound)
      throw Error(ErrorKind::Algorithmic,
                  "island hull has " + std::to_string(r.polygon.vertices.size()) +
                      " vertices, above the bound " + std::to_string(bound));
    return Hypothesis::from_island(r);
  };
  return amplify(base, eps, delta, source, rng, diag);
}

Rational estimate_distance(const ClassSpec& cls, double eps, double delta,
                           ExampleSource& source, RngStream rng,
                           const MetaConfig& cfg, AmplifyDiag* diag) {
  if (!(eps > 0.0 && eps < 1.0))
    throw UsageError("accuracy must be in (0, 1), got " + std::to_string(eps));
  if (!(delta > 0.0 && delta < 0.5))
    throw UsageError("failure probability must be in (0, 1/2), got " +
                     std::to_string(delta));
  Hypothesis h = cls.family == ClassSpec::Family::KGon
                     ? learn_kgon(eps / 2.0, delta / 2.0, cls.k, source,
                                  rng.split(0), cfg, diag)
                     : learn_convex(eps / 2.0, delta / 2.0, source, rng.split(0),
                                    cfg, diag);
  std::int64_t m =
      std::int64_t(std::ceil(8.0 / (eps * eps) * std::log(4.0 / delta)));
  LabeledPointSet estimation = LabeledPointSet::from(source.draw(m));
  return h.empirical_error(estimation);
}

}  // namespace planar
