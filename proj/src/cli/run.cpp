#include "run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "planar/data.hpp"
#include "planar/error.hpp"
#include "planar/harness.hpp"
#include "planar/meta.hpp"
#include "report.hpp"
#include "svg.hpp"

namespace planar::cli {
namespace {

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return 1;
    case ErrorKind::Data: return 2;
    case ErrorKind::Algorithmic: return 3;
  }
  return 3;
}

void emit_text(const std::string& path, const std::string& text, std::ostream& out,
               const char* what) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::Data, std::string("cannot open ") + path + " for writing");
  f << text;
  out << "wrote " << what << " to " << path << "\n";
}

struct GenFlags {
  std::string shape;
  double noise = 0.0;
  std::int64_t m = 0;
  std::string out_path;
  std::uint64_t seed = 0;
};

struct LearnFlags {
  std::string cls;
  int k = 3;
  double eps = 0.0;
  double delta = 0.0;
  std::string planted;
  double noise = 0.0;
  std::string input;
  bool with_replacement = false;
  bool assert_uniform = false;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string render;
  std::int64_t render_points = 500;
  std::int64_t holdout = 20000;
  double sample_c = 4.0;
  double net_c = 0.0;
  int log_base = 0;
  double convex_sample_c = 4.0;
  double convex_net_c = 8.0;
  double hull_vertex_c = 7.0;
};

struct VerifyFlags {
  std::string suite;
  int trials = 0;  // 0 = suite default
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
};

struct StatsFlags {
  std::string check;
  std::vector<int> ns;
  std::vector<int> ells;
  int trials = 0;  // 0 = check default
  std::string shape = "disk";
  std::uint64_t seed = 0;
  std::string out_path;
};

struct BenchFlags {
  std::string target;
  std::vector<int> sizes;
  std::uint64_t seed = 0;
  std::string out_path;
};

void add_learner_flags(CLI::App* cmd, LearnFlags& f, bool for_distance) {
  cmd->add_option("--class", f.cls, "concept class: kgon or convex")
      ->required()
      ->check(CLI::IsMember({"kgon", "convex"}));
  cmd->add_option("-k", f.k, "vertex budget for the kgon class (>= 3)");
  cmd->add_option("--eps", f.eps, "target accuracy")->required();
  cmd->add_option("--delta", f.delta, "failure probability")->required();
  cmd->add_option("--planted", f.planted,
                  "synthetic source concept: triangle, square, or disk");
  cmd->add_option("--noise", f.noise, "label flip probability for --planted");
  cmd->add_option("--input", f.input, "CSV dataset to learn from");
  cmd->add_flag("--with-replacement", f.with_replacement,
                "resample file rows instead of exhausting them");
  cmd->add_flag("--assert-uniform", f.assert_uniform,
                "assert that a file source has a uniform marginal over the "
                "unit square (required by the convex class)");
  cmd->add_option("--seed", f.seed, "root seed")->envname("PLANAR_SEED");
  cmd->add_option("-o,--out", f.out_path, "report path (default: stdout)");
  if (!for_distance) {
    cmd->add_option("--render", f.render, "write an SVG of sample and hypothesis");
    cmd->add_option("--render-points", f.render_points,
                    "points drawn for the SVG when the source is planted")
        ->check(CLI::PositiveNumber);
  }
  cmd->add_option("--holdout", f.holdout,
                  "fresh examples for the Monte-Carlo error (planted sources)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--sample-c", f.sample_c, "base ERM sample constant");
  cmd->add_option("--net-c", f.net_c, "kgon net constant (0 = theory default)");
  cmd->add_option("--log-base", f.log_base, "kgon net log base (0 = natural)");
  cmd->add_option("--convex-sample-c", f.convex_sample_c, "convex sample constant");
  cmd->add_option("--convex-net-c", f.convex_net_c, "convex net constant");
  cmd->add_option("--hull-vertex-c", f.hull_vertex_c,
                  "island hull rejection threshold, times n^(1/3)");
}

void check_source_flags(const LearnFlags& f) {
  if (f.planted.empty() == f.input.empty())
    throw UsageError("exactly one of --planted and --input is required");
  if (f.cls == "convex" && !f.input.empty() && !f.assert_uniform)
    throw UsageError(
        "the convex-class guarantee assumes a uniform marginal; pass "
        "--assert-uniform to vouch for the file");
}

ExampleSource open_source(const LearnFlags& f) {
  if (!f.planted.empty())
    return ExampleSource::planted(parse_concept(f.planted), f.noise,
                                  RngStream(f.seed, 0));
  return ExampleSource::file(f.input, f.with_replacement, RngStream(f.seed, 0));
}

MetaConfig config_from(const LearnFlags& f) {
  MetaConfig cfg;
  cfg.sample_c = f.sample_c;
  cfg.kgon.net_c = f.net_c;
  cfg.kgon.log_base = f.log_base;
  cfg.convex.sample_c = f.convex_sample_c;
  cfg.convex.net_c = f.convex_net_c;
  cfg.hull_vertex_c = f.hull_vertex_c;
  return cfg;
}

nlohmann::json source_json(const LearnFlags& f) {
  if (!f.planted.empty())
    return {{"kind", "planted"},
            {"concept", parse_concept(f.planted).describe()},
            {"noise", f.noise}};
  return {{"kind", "file"},
          {"path", f.input},
          {"with_replacement", f.with_replacement}};
}

nlohmann::json constants_json(const LearnFlags& f) {
  return {{"sample_c", f.sample_c},       {"net_c", f.net_c},
          {"log_base", f.log_base},       {"convex_sample_c", f.convex_sample_c},
          {"convex_net_c", f.convex_net_c}, {"hull_vertex_c", f.hull_vertex_c}};
}

int run_gen(const GenFlags& f, std::ostream& out) {
  PlantedConcept target = parse_concept(f.shape);
  ExampleSource src = ExampleSource::planted(target, f.noise, RngStream(f.seed, 0));
  LabeledPointSet s = LabeledPointSet::from(src.draw(f.m));
  save_dataset(s, f.out_path);

  SourceMeta meta;
  meta.kind = "planted";
  meta.seed = f.seed;
  meta.stream = 0;
  meta.eta = f.noise;
  meta.concept_desc = target.describe();
  save_sidecar(meta, f.out_path);

  out << "wrote " << s.total() << " examples to " << f.out_path << " and sidecar "
      << f.out_path << ".json\n";
  return 0;
}

int run_learn(const LearnFlags& f, std::ostream& out) {
  check_source_flags(f);
  ExampleSource source = open_source(f);
  MetaConfig cfg = config_from(f);

  AmplifyDiag diag;
  double t0 = now_s();
  Hypothesis h = f.cls == "kgon"
                     ? learn_kgon(f.eps, f.delta, f.k, source, RngStream(f.seed, 1),
                                  cfg, &diag)
                     : learn_convex(f.eps, f.delta, source, RngStream(f.seed, 1),
                                    cfg, &diag);
  double learn_secs = now_s() - t0;

  RunReport rep;
  rep.command = "learn";
  rep.parameters = {{"class", f.cls},
                    {"eps", f.eps},
                    {"delta", f.delta},
                    {"seed", f.seed},
                    {"source", source_json(f)},
                    {"constants", constants_json(f)}};
  if (f.cls == "kgon") rep.parameters["k"] = f.k;
  rep.drawn = source.drawn();
  rep.hypothesis = h;
  rep.validation_error = diag.validation_err;
  rep.amplification = diag;
  rep.timings.emplace_back("learn", learn_secs);

  if (!f.planted.empty()) {
    t0 = now_s();
    ExampleSource eval = ExampleSource::planted(parse_concept(f.planted), f.noise,
                                                RngStream(f.seed, 2));
    LabeledPointSet holdout = LabeledPointSet::from(eval.draw(f.holdout));
    rep.monte_carlo_error = h.empirical_error(holdout).value();
    rep.monte_carlo_examples = f.holdout;
    rep.timings.emplace_back("evaluate", now_s() - t0);
  }

  emit_text(f.out_path, rep.to_json().dump(2) + "\n", out, "report");

  if (!f.render.empty()) {
    std::vector<LabeledExample> rows;
    if (!f.planted.empty()) {
      ExampleSource art = ExampleSource::planted(parse_concept(f.planted), f.noise,
                                                 RngStream(f.seed, 3));
      rows = art.draw(f.render_points);
    } else {
      rows = load_dataset(f.input).examples;
    }
    write_svg_file(f.render, rows, h);
    out << "wrote render to " << f.render << "\n";
  }
  return 0;
}

int run_dist(const LearnFlags& f, std::ostream& out) {
  check_source_flags(f);
  ExampleSource source = open_source(f);
  MetaConfig cfg = config_from(f);
  ClassSpec cls;
  cls.family = f.cls == "kgon" ? ClassSpec::Family::KGon : ClassSpec::Family::Convex;
  cls.k = f.k;

  AmplifyDiag diag;
  double t0 = now_s();
  Rational d = estimate_distance(cls, f.eps, f.delta, source, RngStream(f.seed, 1),
                                 cfg, &diag);
  double secs = now_s() - t0;

  RunReport rep;
  rep.command = "dist";
  rep.parameters = {{"class", f.cls},
                    {"eps", f.eps},
                    {"delta", f.delta},
                    {"seed", f.seed},
                    {"source", source_json(f)},
                    {"constants", constants_json(f)}};
  if (f.cls == "kgon") rep.parameters["k"] = f.k;
  rep.drawn = source.drawn();
  rep.distance = d;
  rep.amplification = diag;
  rep.timings.emplace_back("estimate", secs);

  emit_text(f.out_path, rep.to_json().dump(2) + "\n", out, "report");
  return 0;
}

int run_verify(const VerifyFlags& f, std::ostream& out) {
  bool seeded = f.seed_opt && f.seed_opt->count() > 0;
  auto pick = [&](int fallback_trials, std::uint64_t fallback_seed,
                  auto&& fn) -> harness::CheckResult {
    int trials = f.trials > 0 ? f.trials : fallback_trials;
    std::uint64_t seed = seeded ? f.seed : fallback_seed;
    return fn(trials, seed);
  };

  harness::CheckResult res;
  if (f.suite == "disc") {
    res = pick(10, 101, harness::check_counter_equivalence);
  } else if (f.suite == "kgon-oracle") {
    res = pick(30, 103, harness::check_kgon_argmax_oracle);
  } else if (f.suite == "island-oracle") {
    res = pick(50, 104, harness::check_island_dp);
  } else if (f.suite == "refset") {
    res = pick(200, 111, harness::check_reference_set);
  } else {
    res = pick(200, 107, harness::check_amplification);
  }
  out << (res.pass ? "PASS " : "FAIL ") << res.name << " - " << res.detail << "\n";
  return res.pass ? 0 : 3;
}

int run_stats(const StatsFlags& f, std::ostream& out) {
  std::ostringstream csv;
  if (f.check == "valtr") {
    std::vector<int> ns = f.ns.empty() ? std::vector<int>{1000} : f.ns;
    for (int n : ns)
      if (n < 3) throw UsageError("-n must be at least 3");
    int trials = f.trials > 0 ? f.trials : 50;
    auto rows = harness::valtr_sweep(ns, trials, f.seed);

    csv << "n,trial,largest_convex_subset\n";
    for (const auto& row : rows)
      for (std::size_t t = 0; t < row.subset_sizes.size(); ++t)
        csv << row.n << ',' << t << ',' << row.subset_sizes[t] << '\n';
    std::vector<harness::SweepRow> medians;
    for (const auto& row : rows) {
      double bound = 7.0 * std::cbrt(double(row.n));
      int within = 0;
      for (int v : row.subset_sizes)
        if (double(v) <= bound) ++within;
      char line[160];
      std::snprintf(line, sizeof line,
                    "# n=%d: %d/%d trials with largest convex subset <= %.1f "
                    "(7*n^(1/3)); median %.1f\n",
                    row.n, within, trials, bound, row.median);
      csv << line;
      medians.push_back({double(row.n), row.median});
    }
    if (medians.size() >= 2) {
      char line[80];
      std::snprintf(line, sizeof line, "# fitted exponent: %.3f\n",
                    harness::fit_exponent(medians));
      csv << line;
    }
  } else {
    if (f.shape != "disk")
      throw UsageError("--check missing-area supports --shape disk only");
    std::vector<int> ells = f.ells.empty() ? std::vector<int>{100, 1000, 10000} : f.ells;
    for (int ell : ells)
      if (ell < 1) throw UsageError("--ell must be positive");
    int trials = f.trials > 0 ? f.trials : 30;
    auto rows = harness::missing_area_sweep(ells, trials, f.seed);

    csv << "ell,median_missing_area\n";
    for (const auto& row : rows) {
      char line[80];
      std::snprintf(line, sizeof line, "%d,%.8g\n", int(row.size), row.value);
      csv << line;
    }
    char line[80];
    std::snprintf(line, sizeof line, "# fitted exponent: %.3f\n",
                  harness::fit_exponent(rows));
    csv << line;
  }
  emit_text(f.out_path, csv.str(), out, "stats CSV");
  return 0;
}

int run_bench(const BenchFlags& f, std::ostream& out) {
  std::vector<int> sizes = f.sizes;
  std::ostringstream csv;

  if (f.target == "kgon") {
    if (sizes.empty()) sizes = {8, 10, 12};
    for (int n : sizes)
      if (n < 4) throw UsageError("--sizes for the kgon target must be >= 4");
    auto rows = harness::bench_kgon_enum(sizes, f.seed);
    csv << "n,candidates,bound,seconds\n";
    std::vector<harness::SweepRow> times;
    for (const auto& row : rows) {
      char line[160];
      std::snprintf(line, sizeof line, "%d,%llu,%.0f,%.6f\n", row.n,
                    static_cast<unsigned long long>(row.candidates), row.bound,
                    row.seconds);
      csv << line;
      times.push_back({double(row.n), row.seconds});
    }
    char line[80];
    std::snprintf(line, sizeof line, "# fitted exponent: %.3f\n",
                  harness::fit_exponent(times));
    csv << line;
  } else {
    std::vector<harness::SweepRow> rows;
    if (f.target == "island") {
      if (sizes.empty()) sizes = {50, 100, 200};
      for (int n : sizes)
        if (n < 5) throw UsageError("--sizes for the island target must be >= 5");
      rows = harness::bench_island(sizes, f.seed);
    } else {
      if (sizes.empty()) sizes = {1000, 2000, 4000, 8000};
      for (int n : sizes)
        if (n < 10) throw UsageError("--sizes for the index targets must be >= 10");
      rows = f.target == "index-build" ? harness::bench_index_build(sizes, f.seed)
                                       : harness::bench_index_query(sizes, f.seed);
    }
    csv << "size,seconds\n";
    for (const auto& row : rows) {
      char line[80];
      std::snprintf(line, sizeof line, "%d,%.6f\n", int(row.size), row.value);
      csv << line;
    }
    char line[80];
    std::snprintf(line, sizeof line, "# fitted exponent: %.3f\n",
                  harness::fit_exponent(rows));
    csv << line;
  }
  emit_text(f.out_path, csv.str(), out, "bench CSV");
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"planar agnostic learning toolkit"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads,
                 "worker cap; the current algorithms are single-threaded")
      ->check(CLI::PositiveNumber);

  GenFlags gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a planted labeled dataset");
  gen_cmd->fallthrough();
  gen_cmd->add_option("--shape", gen.shape, "triangle, square, or disk")->required();
  gen_cmd->add_option("--noise", gen.noise, "label flip probability (<= 0.5)");
  gen_cmd->add_option("-m,--examples", gen.m, "number of examples")
      ->required()
      ->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("-o,--out", gen.out_path, "output CSV path")->required();
  gen_cmd->add_option("--seed", gen.seed, "root seed")->envname("PLANAR_SEED");

  LearnFlags learn;
  CLI::App* learn_cmd =
      app.add_subcommand("learn", "learn a hypothesis from a planted or file source");
  learn_cmd->fallthrough();
  add_learner_flags(learn_cmd, learn, false);

  LearnFlags dist;
  CLI::App* dist_cmd =
      app.add_subcommand("dist", "estimate the source's distance to a class");
  dist_cmd->fallthrough();
  add_learner_flags(dist_cmd, dist, true);

  VerifyFlags verify;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run an oracle-equivalence or property suite");
  verify_cmd->fallthrough();
  verify_cmd
      ->add_option("--suite", verify.suite,
                   "disc, kgon-oracle, island-oracle, refset, or amplify")
      ->required()
      ->check(CLI::IsMember({"disc", "kgon-oracle", "island-oracle", "refset",
                             "amplify"}));
  verify_cmd->add_option("--trials", verify.trials, "trial count (default per suite)")
      ->check(CLI::PositiveNumber);
  verify.seed_opt =
      verify_cmd->add_option("--seed", verify.seed, "root seed (default per suite)");

  StatsFlags stats;
  CLI::App* stats_cmd =
      app.add_subcommand("stats", "measure a statistical law and fit its exponent");
  stats_cmd->fallthrough();
  stats_cmd->add_option("--check", stats.check, "valtr or missing-area")
      ->required()
      ->check(CLI::IsMember({"valtr", "missing-area"}));
  stats_cmd->add_option("-n", stats.ns, "point counts for the valtr check");
  stats_cmd->add_option("--ell", stats.ells, "net sizes for the missing-area check");
  stats_cmd->add_option("--trials", stats.trials, "trial count (default per check)")
      ->check(CLI::PositiveNumber);
  stats_cmd->add_option("--shape", stats.shape, "planted shape (disk only)");
  stats_cmd->add_option("--seed", stats.seed, "root seed")->envname("PLANAR_SEED");
  stats_cmd->add_option("-o,--out", stats.out_path, "CSV path (default: stdout)");

  BenchFlags bench;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "time a pipeline phase across input sizes");
  bench_cmd->fallthrough();
  bench_cmd
      ->add_option("--target", bench.target,
                   "index-build, index-query, kgon, or island")
      ->required()
      ->check(CLI::IsMember({"index-build", "index-query", "kgon", "island"}));
  bench_cmd->add_option("--sizes", bench.sizes, "input sizes (default per target)");
  bench_cmd->add_option("--seed", bench.seed, "root seed")->envname("PLANAR_SEED");
  bench_cmd->add_option("-o,--out", bench.out_path, "CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen, out);
    if (learn_cmd->parsed()) return run_learn(learn, out);
    if (dist_cmd->parsed()) return run_dist(dist, out);
    if (verify_cmd->parsed()) return run_verify(verify, out);
    if (stats_cmd->parsed()) return run_stats(stats, out);
    return run_bench(bench, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind);
  }
}

}  // namespace planar::cli
