// Command-line front end: generate -> screen -> filter -> solve -> evaluate,
// plus verify. Talks to the library only through the C API.
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <map>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "aab/aab.h"

namespace {

struct Failure {
  aab_status status;
};

void Check(aab_status status) {
  if (status != AAB_OK) throw Failure{status};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Graph = std::unique_ptr<aab_graph, Deleter<aab_graph, aab_graph_free>>;
using Truth = std::unique_ptr<aab_ground_truth,
                              Deleter<aab_ground_truth, aab_ground_truth_free>>;
using Stats = std::unique_ptr<aab_statistics,
                              Deleter<aab_statistics, aab_statistics_free>>;
using Labels =
    std::unique_ptr<aab_labels, Deleter<aab_labels, aab_labels_free>>;
using Locations = std::unique_ptr<aab_locations,
                                  Deleter<aab_locations, aab_locations_free>>;

std::string Num(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

Graph ReadGraph(const std::string& path) {
  aab_graph* graph = nullptr;
  Check(aab_graph_read(path.c_str(), &graph));
  return Graph(graph);
}

Stats ReadStats(const aab_graph* graph, const std::string& path) {
  aab_statistics* stats = nullptr;
  Check(aab_statistics_read(graph, path.c_str(), &stats));
  return Stats(stats);
}

Locations ReadLocations(const std::string& path) {
  aab_locations* locations = nullptr;
  Check(aab_locations_read(path.c_str(), &locations));
  return Locations(locations);
}

struct GenerateArgs {
  aab_uc_params params{200, 0.5, 0.2, 0.0, 0};
  std::string out_edges, out_locations, out_labels;
};

void RunGenerate(const GenerateArgs& args) {
  aab_graph* raw_graph = nullptr;
  aab_ground_truth* raw_truth = nullptr;
  Check(aab_generate_uc(&args.params, &raw_graph, &raw_truth));
  Graph graph(raw_graph);
  Truth truth(raw_truth);

  const aab_uc_params& p = args.params;
  const std::string provenance =
      "generate model=UC n=" + std::to_string(p.n) + " p=" + Num(p.p) +
      " q=" + Num(p.q) + " sigma=" + Num(p.sigma) +
      " seed=" + std::to_string(p.seed);

  Check(aab_graph_write(graph.get(), args.out_edges.c_str(),
                        provenance.c_str()));
  if (!args.out_locations.empty()) {
    aab_locations* raw = nullptr;
    Check(aab_ground_truth_locations(truth.get(), &raw));
    Locations locations(raw);
    Check(aab_locations_write(locations.get(), args.out_locations.c_str(),
                              provenance.c_str()));
  }
  if (!args.out_labels.empty()) {
    aab_labels* raw = nullptr;
    Check(aab_label_edges(graph.get(), truth.get(), p.sigma, &raw));
    Labels labels(raw);
    Check(aab_labels_write(graph.get(), labels.get(), args.out_labels.c_str(),
                           provenance.c_str()));
  }
}

struct ScreenArgs {
  std::string edges, stat = "ir", out, per_iteration;
  int s = 50;
  int T = 10;
  uint64_t seed = 0;
};

void RunScreen(const ScreenArgs& args) {
  Graph graph = ReadGraph(args.edges);
  aab_statistics_options options;
  aab_statistics_options_default(&options);
  options.kind = args.stat == "naive" ? AAB_STATISTIC_NAIVE : AAB_STATISTIC_IR;
  options.samples_per_edge = args.s;
  options.iterations = args.T;
  options.seed = args.seed;
  options.keep_per_iteration = args.per_iteration.empty() ? 0 : 1;

  aab_statistics* raw = nullptr;
  Check(aab_compute_statistics(graph.get(), &options, &raw));
  Stats stats(raw);

  std::string provenance = "screen stat=" + args.stat +
                           " s=" + std::to_string(args.s) +
                           " seed=" + std::to_string(args.seed);
  if (options.kind == AAB_STATISTIC_IR) {
    provenance += " T=" + std::to_string(args.T);
  }
  Check(aab_statistics_write(graph.get(), stats.get(), args.out.c_str(),
                             provenance.c_str()));
  if (!args.per_iteration.empty()) {
    Check(aab_statistics_write_per_iteration(graph.get(), stats.get(),
                                             args.per_iteration.c_str(),
                                             provenance.c_str()));
  }
}

struct FilterArgs {
  std::string edges, stats, out;
  double keep_fraction = 0.5;
  double threshold = 0.0;
  bool use_threshold = false;
  int min_degree = 2;
  bool drop_unsupported = false;
};

void RunFilter(const FilterArgs& args) {
  Graph graph = ReadGraph(args.edges);
  Stats stats = ReadStats(graph.get(), args.stats);
  aab_screening_options options;
  aab_screening_options_default(&options);
  options.min_degree = args.min_degree;
  options.drop_unsupported = args.drop_unsupported ? 1 : 0;
  std::string provenance = "filter";
  if (args.use_threshold) {
    options.mode = AAB_SCREEN_THRESHOLD;
    options.threshold = args.threshold;
    provenance += " threshold=" + Num(args.threshold);
  } else {
    options.mode = AAB_SCREEN_KEEP_FRACTION;
    options.keep_fraction = args.keep_fraction;
    provenance += " keep_fraction=" + Num(args.keep_fraction);
  }
  provenance += " min_degree=" + std::to_string(args.min_degree);
  if (args.drop_unsupported) provenance += " drop_unsupported=1";

  aab_graph* raw = nullptr;
  Check(aab_screen_graph(graph.get(), stats.get(), &options, &raw));
  Graph screened(raw);
  Check(aab_graph_write(screened.get(), args.out.c_str(), provenance.c_str()));
}

struct SolveArgs {
  std::string edges, solver = "ls", out;
  int max_iters = 100;
  double delta = 1e-8;
};

void RunSolve(const SolveArgs& args) {
  Graph graph = ReadGraph(args.edges);
  aab_solver_options options;
  aab_solver_options_default(&options);
  options.kind = args.solver == "irls" ? AAB_SOLVER_IRLS : AAB_SOLVER_LS;
  options.max_iters = args.max_iters;
  options.delta = args.delta;
  std::string provenance = "solve solver=" + args.solver;
  if (options.kind == AAB_SOLVER_IRLS) {
    provenance += " max_iters=" + std::to_string(args.max_iters) +
                  " delta=" + Num(args.delta);
  }

  aab_locations* raw = nullptr;
  Check(aab_solve(graph.get(), &options, &raw));
  Locations locations(raw);
  Check(aab_locations_write(locations.get(), args.out.c_str(),
                            provenance.c_str()));
}

struct EvaluateArgs {
  std::string edges, stats, labels, estimate, ground_truth, out_dir;
  double baseline_error = 0.0;
  bool baseline_median = false;
  int bins = 50;
  double epsilon = 0.2;
};

void RunEvaluate(const EvaluateArgs& args, bool has_baseline) {
  Graph graph = ReadGraph(args.edges);
  Stats stats = ReadStats(graph.get(), args.stats);
  aab_labels* raw_labels = nullptr;
  Check(aab_labels_read(graph.get(), args.labels.c_str(), &raw_labels));
  Labels labels(raw_labels);

  Locations estimate, truth;
  if (!args.estimate.empty()) {
    estimate = ReadLocations(args.estimate);
    truth = ReadLocations(args.ground_truth);
  }

  aab_evaluation_options options;
  aab_evaluation_options_default(&options);
  options.bins = args.bins;
  options.epsilon = args.epsilon;
  options.has_baseline = has_baseline ? 1 : 0;
  options.baseline_error = args.baseline_error;
  options.baseline_is_median = args.baseline_median ? 1 : 0;

  std::string provenance = "evaluate bins=" + std::to_string(args.bins) +
                           " epsilon=" + Num(args.epsilon);
  if (has_baseline) {
    provenance += " baseline_error=" + Num(args.baseline_error) +
                  (args.baseline_median ? " baseline=median" : " baseline=mean");
  }
  Check(aab_evaluate(graph.get(), stats.get(), labels.get(), estimate.get(),
                     truth.get(), &options, provenance.c_str(),
                     args.out_dir.c_str()));
}

struct VerifyArgs {
  std::string mode, out;
  int64_t samples = 100000;
  uint64_t seed = 0;
  int oracle_steps = 1000000;
};

void RunVerify(const VerifyArgs& args) {
  static const std::map<std::string, aab_verify_mode> kModes = {
      {"lemma", AAB_VERIFY_LEMMA},
      {"z", AAB_VERIFY_Z},
      {"formula", AAB_VERIFY_FORMULA}};
  Check(aab_verify(kModes.at(args.mode), args.samples, args.seed,
                   args.oracle_steps, args.out.c_str()));
}

std::string FractionInRange(const std::string& text) {
  try {
    size_t used = 0;
    const double value = std::stod(text, &used);
    if (used == text.size() && value > 0.0 && value <= 1.0) return {};
  } catch (const std::exception&) {
  }
  return "keep fraction must be in (0, 1], got " + text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AAB edge screening for camera location estimation", "aab"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads,
                 "Worker threads (default: AAB_THREADS, else all cores)")
      ->check(CLI::NonNegativeNumber);

  GenerateArgs gen;
  CLI::App* generate =
      app.add_subcommand("generate", "Sample a UC(n, p, q, sigma) instance");
  generate->add_option("--n", gen.params.n, "Number of cameras")
      ->capture_default_str();
  generate->add_option("--p", gen.params.p, "Edge probability")
      ->capture_default_str();
  generate->add_option("--q", gen.params.q, "Corruption probability")
      ->capture_default_str();
  generate->add_option("--sigma", gen.params.sigma, "Noise level")
      ->capture_default_str();
  generate->add_option("--seed", gen.params.seed)->capture_default_str();
  generate->add_option("--out-edges", gen.out_edges, "Edge list output")
      ->required();
  generate->add_option("--out-locations", gen.out_locations,
                       "Ground-truth location output");
  generate->add_option("--out-labels", gen.out_labels,
                       "Corruption label CSV output");

  ScreenArgs scr;
  CLI::App* screen =
      app.add_subcommand("screen", "Compute per-edge AAB statistics");
  screen->add_option("--edges", scr.edges)->required();
  screen->add_option("--stat", scr.stat)
      ->check(CLI::IsMember({"naive", "ir"}))
      ->capture_default_str();
  screen->add_option("--s", scr.s, "Triangles sampled per edge")
      ->capture_default_str();
  screen->add_option("--T", scr.T, "Reweighting iterations")
      ->capture_default_str();
  screen->add_option("--seed", scr.seed)->capture_default_str();
  screen->add_option("--out", scr.out)->required();
  screen->add_option("--per-iteration", scr.per_iteration,
                     "Also dump S^(t) for every iteration");

  FilterArgs flt;
  CLI::App* filter = app.add_subcommand(
      "filter", "Drop high-statistic edges and keep the solvable component");
  filter->add_option("--edges", flt.edges)->required();
  filter->add_option("--stats", flt.stats)->required();
  CLI::Option* keep =
      filter->add_option("--keep-fraction", flt.keep_fraction)
          ->check(CLI::Validator(FractionInRange, "(0,1]"))
          ->capture_default_str();
  CLI::Option* threshold =
      filter->add_option("--threshold", flt.threshold, "Radians");
  keep->excludes(threshold);
  filter->add_option("--min-degree", flt.min_degree)
      ->check(CLI::Range(2, 1 << 30))
      ->capture_default_str();
  filter->add_flag("--drop-unsupported", flt.drop_unsupported);
  filter->add_option("--out", flt.out)->required();

  SolveArgs slv;
  CLI::App* solve = app.add_subcommand("solve", "Estimate camera locations");
  solve->add_option("--edges", slv.edges)->required();
  solve->add_option("--solver", slv.solver)
      ->check(CLI::IsMember({"ls", "irls"}))
      ->capture_default_str();
  solve->add_option("--max-iters", slv.max_iters)->capture_default_str();
  solve->add_option("--delta", slv.delta)->capture_default_str();
  solve->add_option("--out", slv.out)->required();

  EvaluateArgs ev;
  CLI::App* evaluate =
      app.add_subcommand("evaluate", "ROC, histogram and location errors");
  evaluate->add_option("--edges", ev.edges)->required();
  evaluate->add_option("--stats", ev.stats)->required();
  evaluate->add_option("--labels", ev.labels)->required();
  CLI::Option* estimate = evaluate->add_option("--estimate", ev.estimate);
  CLI::Option* ground_truth =
      evaluate->add_option("--ground-truth", ev.ground_truth);
  estimate->needs(ground_truth);
  ground_truth->needs(estimate);
  CLI::Option* baseline =
      evaluate->add_option("--baseline-error", ev.baseline_error);
  evaluate->add_flag("--baseline-median", ev.baseline_median,
                     "Compare the baseline against the median error");
  evaluate->add_option("--bins", ev.bins)->capture_default_str();
  evaluate->add_option("--epsilon", ev.epsilon)->capture_default_str();
  evaluate->add_option("--out-dir", ev.out_dir)->required();

  VerifyArgs ver;
  CLI::App* verify =
      app.add_subcommand("verify", "Monte Carlo and oracle checks");
  verify->add_option("--mode", ver.mode)
      ->required()
      ->check(CLI::IsMember({"lemma", "z", "formula"}));
  verify->add_option("--samples", ver.samples)->capture_default_str();
  verify->add_option("--seed", ver.seed)->capture_default_str();
  verify->add_option("--oracle-steps", ver.oracle_steps)
      ->capture_default_str();
  verify->add_option("--out", ver.out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (threads > 0) aab_set_num_threads(threads);
    if (*generate) RunGenerate(gen);
    if (*screen) RunScreen(scr);
    if (*filter) {
      flt.use_threshold = threshold->count() > 0;
      RunFilter(flt);
    }
    if (*solve) RunSolve(slv);
    if (*evaluate) RunEvaluate(ev, baseline->count() > 0);
    if (*verify) RunVerify(ver);
  } catch (const Failure& failure) {
    std::fprintf(stderr, "aab: %s: %s\n", aab_status_string(failure.status),
                 aab_last_error_message());
    return 1;
  }
  return 0;
}
