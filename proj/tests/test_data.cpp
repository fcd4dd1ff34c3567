#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "planar/data.hpp"
#include "planar/error.hpp"

using namespace planar;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content = "")
      : path("/tmp/planar_data_test_" + name) {
    if (!content.empty()) {
      std::ofstream out(path);
      out << content;
    }
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("planted triangle: marginal, determinism, exact labels") {
  auto target = parse_concept("triangle");
  auto src = ExampleSource::planted(target, 0.0, RngStream(42, 0));
  auto ex = src.draw(100000);
  REQUIRE(ex.size() == 100000);
  CHECK(src.drawn() == 100000);

  std::int64_t pos = 0;
  for (const auto& e : ex) {
    CHECK(e.p.x >= 0.0);
    CHECK(e.p.x < 1.0);
    CHECK(e.p.y >= 0.0);
    CHECK(e.p.y < 1.0);
    CHECK(e.label == int(target.contains(e.p)));  // zero noise: labels exact
    pos += e.label;
  }
  double frac = double(pos) / double(ex.size());
  CHECK(frac == doctest::Approx(0.5).epsilon(0.02));

  auto src2 = ExampleSource::planted(target, 0.0, RngStream(42, 0));
  auto ex2 = src2.draw(100000);
  CHECK(ex.size() == ex2.size());
  bool same = true;
  for (std::size_t i = 0; i < ex.size(); ++i)
    same = same && ex[i].p == ex2[i].p && ex[i].label == ex2[i].label;
  CHECK(same);

  auto src3 = ExampleSource::planted(target, 0.0, RngStream(43, 0));
  auto ex3 = src3.draw(100);
  bool differ = false;
  for (std::size_t i = 0; i < 100; ++i) differ = differ || !(ex3[i].p == ex[i].p);
  CHECK(differ);
}

TEST_CASE("planted noise rates") {
  auto target = parse_concept("triangle");
  // pure noise: labels are fair coins
  {
    auto src = ExampleSource::planted(target, 0.5, RngStream(7, 1));
    auto ex = src.draw(100000);
    std::int64_t pos = 0;
    for (const auto& e : ex) pos += e.label;
    CHECK(double(pos) / 100000.0 == doctest::Approx(0.5).epsilon(0.02));
  }
  // realized flip rate tracks eta
  {
    auto src = ExampleSource::planted(target, 0.2, RngStream(7, 2));
    auto ex = src.draw(100000);
    std::int64_t flips = 0;
    for (const auto& e : ex) flips += int(e.label != int(target.contains(e.p)));
    CHECK(double(flips) / 100000.0 == doctest::Approx(0.2).epsilon(0.05));
  }
  CHECK_THROWS_AS(ExampleSource::planted(target, 0.6, RngStream(1, 1)), UsageError);
  CHECK_THROWS_AS(ExampleSource::planted(target, -0.1, RngStream(1, 1)), UsageError);
}

TEST_CASE("constant source") {
  auto src = ExampleSource::constant(1, RngStream(3, 0));
  auto ex = src.draw(500);
  for (const auto& e : ex) {
    CHECK(e.label == 1);
    CHECK(e.p.x >= 0.0);
    CHECK(e.p.x < 1.0);
  }
  CHECK(src.kind() == "constant");
  CHECK_THROWS_AS(ExampleSource::constant(2, RngStream(3, 0)), UsageError);
}

TEST_CASE("concepts: shapes, containment, guards") {
  auto sq = parse_concept("square");
  CHECK(sq.contains({0.5, 0.5}));
  CHECK(sq.contains({0.2, 0.2}));   // corner, boundary-inclusive
  CHECK(sq.contains({0.5, 0.8}));   // edge
  CHECK(!sq.contains({0.1, 0.5}));

  auto dk = PlantedConcept::disk({0.5, 0.5}, 0.25);
  CHECK(dk.contains({0.5, 0.5}));
  CHECK(dk.contains({0.75, 0.5}));  // exactly at the radius
  CHECK(!dk.contains({0.76, 0.5}));

  CHECK_THROWS_AS(parse_concept("pentagon"), UsageError);
  CHECK_THROWS_AS(PlantedConcept::triangle({0, 0}, {2, 0}, {0, 1}), UsageError);
  CHECK_THROWS_AS(PlantedConcept::disk({0.5, 0.5}, 0.6), UsageError);
  CHECK_THROWS_AS(PlantedConcept::disk({0.5, 0.5}, 0.0), UsageError);
  // square midpoint breaks convex position
  CHECK_THROWS_AS(
      PlantedConcept::kgon({{0.2, 0.2}, {0.5, 0.2}, {0.8, 0.2}, {0.8, 0.8}, {0.2, 0.8}}),
      UsageError);
  CHECK(parse_concept("disk").describe().find("disk center (0.5, 0.5) radius 0.3") == 0);
}

TEST_CASE("load_dataset: format, errors, audit") {
  {
    TempFile f("ok.csv", "# header comment\n0.25,0.75,1\n\n0.5,0.5,0\n");
    auto s = load_dataset(f.path);
    REQUIRE(s.total() == 2);
    CHECK(s.positives == 1);
    CHECK(s.examples[0].p == Point{0.25, 0.75});
  }
  {
    TempFile f("badnum.csv", "0.1,abc,1\n");
    CHECK_THROWS_WITH_AS(load_dataset(f.path), "line 1: bad y coordinate", ParseError);
  }
  {
    TempFile f("fields.csv", "0.1,0.2\n");
    CHECK_THROWS_AS(load_dataset(f.path), ParseError);
  }
  {
    TempFile f("fields4.csv", "0.1,0.2,1,9\n");
    CHECK_THROWS_AS(load_dataset(f.path), ParseError);
  }
  {
    TempFile f("badlabel.csv", "0.1,0.2,1\n0.3,0.4,2\ninf,0.1,0\n");
    try {
      load_dataset(f.path);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      std::string msg = e.what();
      CHECK(msg.find("line 2") != std::string::npos);
      CHECK(msg.find("line 3") != std::string::npos);
    }
  }
  CHECK_THROWS_AS(load_dataset("/tmp/planar_data_test_nonexistent.csv"), ParseError);
  {
    TempFile f("audit.csv",
               "0.5,0.5,1\n0.1,0.1,0\n0.5,0.5,0\n0.2,0.2,1\n0.3,0.3,1\n0.9,0.4,1\n");
    DatasetAudit audit;
    auto s = load_dataset(f.path, &audit);
    CHECK(s.total() == 6);
    REQUIRE(audit.duplicate_total == 1);
    CHECK(audit.duplicates[0] == std::pair<int, int>{1, 3});
    CHECK(audit.collinear_scanned);
    // (0.1,0.1), (0.2,0.2), (0.3,0.3) are collinear; so is that diagonal
    // with either copy of (0.5,0.5)
    CHECK(!audit.collinear.empty());
  }
  {
    std::string big;
    for (int i = 0; i < 201; ++i)
      big += std::to_string(i) + ".25,0.5,1\n";  // x varies, y fixed: collinear but unscanned
    TempFile f("big.csv", big);
    DatasetAudit audit;
    load_dataset(f.path, &audit);
    CHECK(!audit.collinear_scanned);
    CHECK(audit.collinear.empty());
  }
}

TEST_CASE("save/load round trip") {
  RngStream rng(99, 0);
  std::vector<LabeledExample> rows;
  for (int i = 0; i < 1000; ++i)
    rows.push_back({{rng.uniform(-5, 5), rng.uniform(-5, 5)}, int(rng.below(2))});
  auto s = LabeledPointSet::from(rows);

  TempFile f("roundtrip.csv");
  save_dataset(s, f.path);
  auto back = load_dataset(f.path);
  REQUIRE(back.total() == s.total());
  CHECK(back.positives == s.positives);
  bool same = true;
  for (std::size_t i = 0; i < rows.size(); ++i)
    same = same && back.examples[i].p == rows[i].p &&
           back.examples[i].label == rows[i].label;
  CHECK(same);
}

TEST_CASE("file source: order, exhaustion, replacement") {
  TempFile f("src.csv", "0,0,1\n0.1,0,0\n0.2,0,1\n0.3,0,0\n0.4,0,1\n");
  auto src = ExampleSource::file(f.path);
  auto a = src.draw(2);
  REQUIRE(a.size() == 2);
  CHECK(a[0].p == Point{0.0, 0.0});
  CHECK(a[1].p == Point{0.1, 0.0});
  auto b = src.draw(3);
  CHECK(b[2].p == Point{0.4, 0.0});
  CHECK(src.drawn() == 5);
  CHECK_THROWS_AS(src.draw(1), FileExhausted);

  auto rs = ExampleSource::file(f.path, true, RngStream(5, 0));
  auto c = rs.draw(100);
  REQUIRE(c.size() == 100);
  for (const auto& e : c) CHECK(e.p.y == 0.0);
  CHECK(rs.drawn() == 100);
}

TEST_CASE("sidecar metadata") {
  TempFile csv("side.csv", "0,0,1\n");
  TempFile side("side.csv.json");
  SourceMeta meta;
  meta.kind = "planted";
  meta.seed = 42;
  meta.stream = 3;
  meta.eta = 0.125;
  meta.concept_desc = parse_concept("triangle").describe();
  save_sidecar(meta, csv.path);

  std::ifstream in(side.path);
  REQUIRE(in.good());
  nlohmann::json j = nlohmann::json::parse(in);
  CHECK(j["kind"] == "planted");
  CHECK(j["seed"] == 42);
  CHECK(j["stream"] == 3);
  CHECK(j["eta"] == 0.125);
  CHECK(j["rng"] == "philox4x32-10");
  CHECK(j["concept"].get<std::string>().find("polygon") == 0);
}
