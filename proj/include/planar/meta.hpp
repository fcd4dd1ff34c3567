#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "planar/data.hpp"
#include "planar/disc.hpp"
#include "planar/geom.hpp"
#include "planar/island.hpp"
#include "planar/kgon.hpp"
#include "planar/rng.hpp"

namespace planar {

// Classifier produced by the learners: a convex region (possibly degenerate)
// or the all-zeros function. Evaluation is boundary-inclusive, matching the
// closed regions the ERM routines score.
struct Hypothesis {
  enum class Kind { Constant0, Polygon, Point, Segment };
  enum class Provenance { KGon, Island };

  Kind kind = Kind::Constant0;
  Provenance provenance = Provenance::KGon;
  ConvexPolygon polygon;       // Kind::Polygon
  std::vector<Point> support;  // Kind::Point (1) or Kind::Segment (2)
  int k = 0;                   // halfplane budget, KGon provenance

  bool evaluate(const Point& p) const;
  // Exact fraction of s misclassified; polygons go through the batch
  // membership routine.
  Rational empirical_error(const LabeledPointSet& s) const;

  static Hypothesis from_kgon(const ReferenceKGon& g, int k);
  static Hypothesis from_island(const IslandResult& r);
};

// Invocation and validation budget for success amplification: run the base
// learner t times at loss eps/3, then keep the candidate with the smallest
// error on a fresh validation sample of size q.
struct AmplificationPlan {
  int t = 0;
  std::int64_t q = 0;
  double base_eps = 0.0;

  static AmplificationPlan make(double eps, double delta);
};

struct AmplifyDiag {
  AmplificationPlan plan;
  int failures = 0;       // base invocations that threw
  int chosen = -1;        // invocation index of the winner
  Rational validation_err;
};

// Base learner: draws whatever it needs from the source using the supplied
// stream. Algorithmic errors consume the invocation slot; usage and data
// errors propagate.
using BaseLearner = std::function<Hypothesis(ExampleSource&, RngStream)>;

Hypothesis amplify(const BaseLearner& base, double eps, double delta,
                   ExampleSource& source, RngStream rng, AmplifyDiag* diag = nullptr);

struct MetaConfig {
  double sample_c = 4.0;      // base ERM sample size ~ c / eps'^2
  KgonConfig kgon;
  ConvexConfig convex;
  double hull_vertex_c = 7.0; // convex-mode rejection threshold c * n^(1/3)
};

// Amplified proper learner for k-gons: with probability >= 1 - delta the
// output's true error is within eps of the best k-gon.
Hypothesis learn_kgon(double eps, double delta, int k, ExampleSource& source,
                      RngStream rng, const MetaConfig& cfg = {},
                      AmplifyDiag* diag = nullptr);

// Amplified proper learner for convex sets under a uniform marginal. Base
// invocations whose island hull exceeds hull_vertex_c * n^(1/3) vertices are
// discarded as failures.
Hypothesis learn_convex(double eps, double delta, ExampleSource& source,
                        RngStream rng, const MetaConfig& cfg = {},
                        AmplifyDiag* diag = nullptr);

struct ClassSpec {
  enum class Family { KGon, Convex };
  Family family = Family::KGon;
  int k = 3;
};

// Distance from the source's labeling to the class: learn at loss eps/2 and
// confidence delta/2, then estimate the winner's true error on a fresh sample
// of ceil((8/eps^2) ln(4/delta)) examples. The estimate is within eps of the
// true distance with probability >= 1 - delta.
Rational estimate_distance(const ClassSpec& cls, double eps, double delta,
                           ExampleSource& source, RngStream rng,
                           const MetaConfig& cfg = {}, AmplifyDiag* diag = nullptr);

}  // namespace planar
