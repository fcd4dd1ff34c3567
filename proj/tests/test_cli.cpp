#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../src/cli/run.hpp"

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"planar"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = planar::cli::run_cli(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempFile {
  std::string path;
  explicit TempFile(std::string p) : path(std::move(p)) {}
  ~TempFile() {
    std::remove(path.c_str());
    std::remove((path + ".json").c_str());
  }
};

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int count_of(const std::string& text, const std::string& needle) {
  int n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("gen writes dataset plus sidecar, byte-identical across reruns") {
  TempFile a("/tmp/planar_cli_gen_a.csv");
  TempFile b("/tmp/planar_cli_gen_b.csv");
  std::vector<std::string> flags = {"gen",    "--shape", "triangle", "--noise", "0.1",
                                    "-m",     "150",     "--seed",   "7"};
  auto fa = flags;
  fa.insert(fa.end(), {"-o", a.path});
  auto fb = flags;
  fb.insert(fb.end(), {"-o", b.path});

  CliResult ra = run(fa);
  REQUIRE(ra.code == 0);
  CHECK(ra.out.find("150 examples") != std::string::npos);
  CliResult rb = run(fb);
  REQUIRE(rb.code == 0);

  CHECK(slurp(a.path) == slurp(b.path));
  CHECK(slurp(a.path + ".json") == slurp(b.path + ".json"));
  auto sidecar = nlohmann::json::parse(slurp(a.path + ".json"));
  CHECK(sidecar["rng"] == "philox4x32-10");
  CHECK(sidecar["seed"] == 7);
  CHECK(sidecar["eta"] == 0.1);
}

TEST_CASE("gen respects the PLANAR_SEED environment default") {
  TempFile env_file("/tmp/planar_cli_gen_env.csv");
  TempFile flag_file("/tmp/planar_cli_gen_flag.csv");
  setenv("PLANAR_SEED", "77", 1);
  CliResult re = run({"gen", "--shape", "disk", "-m", "40", "-o", env_file.path});
  unsetenv("PLANAR_SEED");
  REQUIRE(re.code == 0);
  CliResult rf = run({"gen", "--shape", "disk", "-m", "40", "--seed", "77", "-o",
                      flag_file.path});
  REQUIRE(rf.code == 0);
  CHECK(slurp(env_file.path) == slurp(flag_file.path));
}

TEST_CASE("gen rejects noise above one half") {
  CliResult r = run({"gen", "--shape", "triangle", "--noise", "0.6", "-m", "10",
                     "-o", "/tmp/planar_cli_never.csv"});
  CHECK(r.code == 1);
  CHECK(r.err.find("noise") != std::string::npos);
}

TEST_CASE("learn on a planted triangle reports a deterministic hypothesis") {
  std::vector<std::string> flags = {
      "learn",   "--class", "kgon", "-k",        "3",   "--eps",      "0.3",
      "--delta", "0.2",     "--planted", "triangle", "--noise", "0.1", "--seed",
      "1",       "--net-c", "0.25", "--log-base", "2"};
  CliResult r1 = run(flags);
  REQUIRE(r1.code == 0);
  auto rep = nlohmann::json::parse(r1.out);
  CHECK(rep["schema"] == "planar-report/1");
  CHECK(rep["rng"] == "philox4x32-10");
  CHECK(rep["command"] == "learn");
  CHECK(rep["hypothesis"]["kind"] == "polygon");
  CHECK(rep["hypothesis"]["vertices"].size() == 3);
  CHECK(rep["parameters"]["k"] == 3);
  double mc = rep["errors"]["monte_carlo"]["value"].get<double>();
  CHECK(mc <= 0.4);  // noise 0.1 + eps 0.3
  CHECK(rep["drawn"].get<std::int64_t>() > 0);
  CHECK(rep["amplification"]["t"] == 3);

  CliResult r2 = run(flags);
  REQUIRE(r2.code == 0);
  auto rep2 = nlohmann::json::parse(r2.out);
  CHECK(rep2["hypothesis"] == rep["hypothesis"]);
  CHECK(rep2["errors"] == rep["errors"]);
  CHECK(rep2["drawn"] == rep["drawn"]);
}

TEST_CASE("learn renders one polygon and the requested points") {
  TempFile svg("/tmp/planar_cli_render.svg");
  CliResult r = run({"learn", "--class", "kgon", "--eps", "0.35", "--delta", "0.25",
                     "--planted", "square", "--seed", "4", "--net-c", "0.25",
                     "--log-base", "2", "--render", svg.path, "--render-points",
                     "120", "-o", "/dev/null"});
  REQUIRE(r.code == 0);
  std::string body = slurp(svg.path);
  CHECK(count_of(body, "<polygon") == 1);
  CHECK(count_of(body, "<circle") == 120);
  CHECK(count_of(body, "<svg") == 1);
  CHECK(count_of(body, "</svg>") == 1);
  CHECK(body.find("<?xml version=\"1.0\"") == 0);
}

TEST_CASE("convex learning from a file demands the uniformity assertion") {
  TempFile data("/tmp/planar_cli_file.csv");
  REQUIRE(run({"gen", "--shape", "disk", "-m", "200", "--seed", "11", "-o",
               data.path})
              .code == 0);

  CliResult refused = run({"learn", "--class", "convex", "--eps", "0.75", "--delta",
                           "0.4", "--input", data.path, "--seed", "2"});
  CHECK(refused.code == 1);
  CHECK(refused.err.find("--assert-uniform") != std::string::npos);

  // Asserted but too few rows for two invocations plus validation.
  CliResult exhausted =
      run({"learn", "--class", "convex", "--eps", "0.75", "--delta", "0.4",
           "--input", data.path, "--assert-uniform", "--seed", "2"});
  CHECK(exhausted.code == 2);
  CHECK(exhausted.err.find("file source has") != std::string::npos);

  CliResult ok = run({"learn", "--class", "convex", "--eps", "0.75", "--delta",
                      "0.4", "--input", data.path, "--assert-uniform",
                      "--with-replacement", "--seed", "2"});
  REQUIRE(ok.code == 0);
  auto rep = nlohmann::json::parse(ok.out);
  CHECK(rep["errors"].contains("validation"));
  CHECK_FALSE(rep["errors"].contains("monte_carlo"));  // no planted truth
  CHECK(rep["parameters"]["source"]["kind"] == "file");
}

TEST_CASE("learn requires exactly one source") {
  CliResult neither = run({"learn", "--class", "kgon", "--eps", "0.3", "--delta",
                           "0.2", "--seed", "1"});
  CHECK(neither.code == 1);
  CliResult both = run({"learn", "--class", "kgon", "--eps", "0.3", "--delta",
                        "0.2", "--planted", "triangle", "--input", "/tmp/x.csv",
                        "--seed", "1"});
  CHECK(both.code == 1);
}

TEST_CASE("dist reports a rational distance with amplification details") {
  CliResult r = run({"dist", "--class", "kgon", "-k", "3", "--eps", "0.3",
                     "--delta", "0.3", "--planted", "triangle", "--noise", "0.15",
                     "--seed", "9", "--net-c", "0.1", "--log-base", "2"});
  REQUIRE(r.code == 0);
  auto rep = nlohmann::json::parse(r.out);
  CHECK(rep["command"] == "dist");
  double v = rep["errors"]["distance"]["value"].get<double>();
  CHECK(v >= 0.0);
  CHECK(v <= 0.45);  // eta 0.15 + eps 0.3
  CHECK(rep["errors"]["distance"]["den"].get<std::int64_t>() > 0);
  CHECK(rep["amplification"]["t"].get<int>() >= 1);
}

TEST_CASE("verify runs suites and rejects unknown ones") {
  CliResult ok = run({"verify", "--suite", "refset", "--trials", "5", "--seed", "3"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("PASS halfplane-reference-set") == 0);
  CHECK(ok.out.find("5/5") != std::string::npos);

  CliResult island = run({"verify", "--suite", "island-oracle", "--trials", "4"});
  CHECK(island.code == 0);
  CHECK(island.out.find("4/4") != std::string::npos);

  CliResult unknown = run({"verify", "--suite", "nope"});
  CHECK(unknown.code == 1);
}

TEST_CASE("stats emits deterministic CSV with exponent footer") {
  std::vector<std::string> valtr = {"stats", "--check", "valtr", "-n", "40",
                                    "--trials", "3", "--seed", "2"};
  CliResult r1 = run(valtr);
  REQUIRE(r1.code == 0);
  CHECK(r1.out.find("n,trial,largest_convex_subset\n") == 0);
  CHECK(count_of(r1.out, "\n40,") == 3);  // one row per trial
  CHECK(r1.out.find("7*n^(1/3)") != std::string::npos);
  CliResult r2 = run(valtr);
  CHECK(r2.out == r1.out);

  CliResult ma = run({"stats", "--check", "missing-area", "--shape", "disk",
                      "--ell", "100", "--ell", "400", "--trials", "5", "--seed",
                      "2"});
  REQUIRE(ma.code == 0);
  CHECK(ma.out.find("ell,median_missing_area\n") == 0);
  CHECK(ma.out.find("# fitted exponent: -") != std::string::npos);

  CHECK(run({"stats", "--check", "valtr", "--trials", "0"}).code == 1);
  CHECK(run({"stats", "--check", "missing-area", "--shape", "square"}).code == 1);
}

TEST_CASE("bench validates sizes and emits the fitted exponent") {
  CliResult kgon = run({"bench", "--target", "kgon", "--sizes", "8", "--seed", "5"});
  REQUIRE(kgon.code == 0);
  CHECK(kgon.out.find("n,candidates,bound,seconds\n") == 0);
  CHECK(kgon.out.find("8,") != std::string::npos);
  CHECK(kgon.out.find("# fitted exponent:") != std::string::npos);

  CHECK(run({"bench", "--target", "island", "--sizes", "3"}).code == 1);
  CHECK(run({"bench", "--target", "index-build", "--sizes"}).code == 1);
  CHECK(run({"bench", "--target", "warp"}).code == 1);
}

TEST_CASE("top level demands a subcommand and offers help") {
  CHECK(run({}).code == 1);
  CliResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("gen") != std::string::npos);
  CHECK(help.out.find("bench") != std::string::npos);
}
