#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "planar/disc.hpp"
#include "planar/geom.hpp"
#include "planar/rng.hpp"

namespace planar {

// Target concept for synthetic data. Membership is boundary-inclusive; disks
// compare squared radius exactly so the labels are reproducible bit for bit.
struct PlantedConcept {
  enum class Shape { Polygon, Disk };

  Shape shape = Shape::Polygon;
  ConvexPolygon polygon;  // Shape::Polygon
  Point center;           // Shape::Disk
  double radius = 0.0;

  // Vertices must be in convex position and inside the unit square.
  static PlantedConcept triangle(const Point& a, const Point& b, const Point& c);
  static PlantedConcept kgon(std::vector<Point> vertices);
  // Disk must fit inside the unit square.
  static PlantedConcept disk(const Point& center, double radius);

  bool contains(const Point& p) const;
  std::string describe() const;
};

// Named concepts accepted by the command line: "triangle" (the right triangle
// (0,0) (1,0) (0,1)), "square" (axis-aligned, corners 0.2 and 0.8), "disk"
// (radius 0.3 at the center).
PlantedConcept parse_concept(const std::string& name);

// Pull-based stream of labeled examples. Planted and constant sources draw
// positions uniformly from the unit square; planted labels are
// concept(x) XOR Bernoulli(eta). File sources replay rows in order and throw
// FileExhausted when asked for more than remains, unless resampling was
// requested. Single consumer; for parallel use, split the seed upstream.
class ExampleSource {
 public:
  static ExampleSource planted(PlantedConcept target, double eta, RngStream rng);
  static ExampleSource constant(int bit, RngStream rng);
  static ExampleSource file(const std::string& path, bool with_replacement = false,
                            RngStream rng = RngStream(0, 0));

  std::vector<LabeledExample> draw(std::int64_t m);

  // Total examples handed out so far; the sample-budget checks audit this.
  std::int64_t drawn() const { return drawn_; }

  const std::string& kind() const { return kind_; }

 private:
  ExampleSource() = default;

  std::string kind_;
  PlantedConcept concept_;
  double eta_ = 0.0;
  int bit_ = 0;
  RngStream rng_{0, 0};
  std::vector<LabeledExample> rows_;  // file sources
  std::size_t cursor_ = 0;
  bool with_replacement_ = false;
  std::int64_t drawn_ = 0;
};

// General-position findings from load_dataset. Loading never fails on these;
// callers decide whether repeated or collinear points matter for their
// algorithm. Lists are capped at 10 entries; file line numbers, 1-based.
struct DatasetAudit {
  std::vector<std::pair<int, int>> duplicates;
  std::size_t duplicate_total = 0;
  std::vector<std::array<int, 3>> collinear;
  bool collinear_scanned = false;  // scan runs only for <= 200 rows
};

// CSV rows `x,y,label`, `#` comments and blank lines skipped. Malformed rows
// throw ParseError with the line number; rows that parse but carry a label
// outside {0,1} or a nonfinite coordinate are collected into one
// ValidationError.
LabeledPointSet load_dataset(const std::string& path, DatasetAudit* audit = nullptr);

// Shortest-round-trip decimal coordinates: load(save(S)) == S exactly.
void save_dataset(const LabeledPointSet& s, const std::string& path);

// Provenance sidecar written next to a dataset as <dataset_path>.json.
struct SourceMeta {
  std::string kind;  // planted | constant | file
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  double eta = 0.0;
  std::string concept_desc;
};

void save_sidecar(const SourceMeta& meta, const std::string& dataset_path);

}  // namespace planar
