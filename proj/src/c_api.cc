#include "aab/aab.h"

#include <cmath>
#include <limits>
#include <new>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "aab/aab_stats.h"
#include "aab/error.h"
#include "aab/evaluation.h"
#include "aab/io.h"
#include "aab/parallel.h"
#include "aab/screening.h"
#include "aab/solvers.h"
#include "aab/sphere_geometry.h"
#include "aab/synthetic.h"
#include "aab/verify.h"

struct aab_graph {
  aab::ViewGraph graph;
};

struct aab_ground_truth {
  aab::GroundTruth truth;
  int num_vertices = 0;
};

struct aab_statistics {
  aab::EdgeStatistics stats;
};

struct aab_labels {
  aab::EdgeLabels labels;
};

struct aab_locations {
  aab::LocationFile file;
};

namespace {

thread_local std::string last_error;

template <typename Fn>
aab_status Guard(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return AAB_OK;
  } catch (const aab::Error& e) {
    last_error = e.what();
    return static_cast<aab_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return AAB_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return AAB_ERROR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return AAB_ERROR_INTERNAL;
  }
}

void Require(bool condition, const char* message) {
  if (!condition) throw aab::InvalidArgumentError(message);
}

std::string RequirePath(const char* path) {
  Require(path != nullptr && path[0] != '\0', "path must not be empty");
  return path;
}

std::vector<std::string> SplitComment(const char* comment) {
  std::vector<std::string> lines;
  if (comment == nullptr) return lines;
  std::istringstream in(comment);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

aab::UnitVector3 UnitFromArray(const double v[3]) {
  return aab::UnitVector3::FromUnit(Eigen::Vector3d(v[0], v[1], v[2]));
}

}  // namespace

extern "C" {

const char* aab_version(void) { return "1.0.0"; }

const char* aab_status_string(aab_status status) {
  switch (status) {
    case AAB_OK:
      return "ok";
    case AAB_ERROR_INVALID_ARGUMENT:
      return "invalid argument";
    case AAB_ERROR_IO:
      return "i/o error";
    case AAB_ERROR_PARSE:
      return "parse error";
    case AAB_ERROR_DEGENERATE:
      return "degenerate input";
    case AAB_ERROR_EMPTY_RESULT:
      return "empty result";
    case AAB_ERROR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* aab_last_error_message(void) { return last_error.c_str(); }

void aab_set_num_threads(int num_threads) { aab::SetNumThreads(num_threads); }

int aab_num_threads(void) { return aab::NumThreads(); }

aab_status aab_great_circle_distance(const double u[3], const double v[3],
                                     double* out) {
  return Guard([&] {
    Require(u && v && out, "null argument");
    *out = aab::GreatCircleDistance(UnitFromArray(u), UnitFromArray(v));
  });
}

aab_status aab_inconsistency(const double g3[3], const double g1[3],
                             const double g2[3], double* out) {
  return Guard([&] {
    Require(g3 && g1 && g2 && out, "null argument");
    *out = aab::AabInconsistency(UnitFromArray(g3), UnitFromArray(g1),
                                 UnitFromArray(g2));
  });
}

aab_status aab_graph_create(int num_vertices, size_t num_edges, const int* i,
                            const int* j, const double* directions,
                            aab_graph** out) {
  return Guard([&] {
    Require(out != nullptr, "null output");
    Require(num_edges == 0 || (i && j && directions), "null edge arrays");
    std::vector<aab::Edge> edges(num_edges);
    for (size_t e = 0; e < num_edges; ++e) {
      edges[e].i = i[e];
      edges[e].j = j[e];
      edges[e].direction = UnitFromArray(directions + 3 * e);
    }
    *out = new aab_graph{aab::ViewGraph(num_vertices, std::move(edges))};
  });
}

aab_status aab_graph_read(const char* path, aab_graph** out) {
  return Guard([&] {
    Require(out != nullptr, "null output");
    *out = new aab_graph{aab::ReadEdgeList(RequirePath(path))};
  });
}

aab_status aab_graph_write(const aab_graph* graph, const char* path,
                           const char* comment) {
  return Guard([&] {
    Require(graph != nullptr, "null graph");
    aab::WriteEdgeList(graph->graph, RequirePath(path), SplitComment(comment));
  });
}

void aab_graph_free(aab_graph* graph) { delete graph; }

int aab_graph_num_vertices(const aab_graph* graph) {
  return graph ? graph->graph.num_vertices() : 0;
}

size_t aab_graph_num_edges(const aab_graph* graph) {
  return graph ? graph->graph.num_edges() : 0;
}

aab_status aab_graph_edge(const aab_graph* graph, size_t index, int* i, int* j,
                          double direction[3]) {
  return Guard([&] {
    Require(graph != nullptr, "null graph");
    Require(index < graph->graph.num_edges(), "edge index out of range");
    const aab::Edge& edge = graph->graph.edge(index);
    if (i) *i = edge.i;
    if (j) *j = edge.j;
    if (direction) {
      direction[0] = edge.direction.x();
      direction[1] = edge.direction.y();
      direction[2] = edge.direction.z();
    }
  });
}

aab_status aab_generate_uc(const aab_uc_params* params, aab_graph** graph,
                           aab_ground_truth** truth) {
  return Guard([&] {
    Require(params != nullptr && graph != nullptr, "null argument");
    aab::UCParams p;
    p.n = params->n;
    p.p = params->p;
    p.q = params->q;
    p.sigma = params->sigma;
    p.seed = params->seed;
    aab::SyntheticInstance instance = aab::GenerateUC(p);
    auto* g = new aab_graph{std::move(instance.graph)};
    if (truth) {
      try {
        *truth = new aab_ground_truth{std::move(instance.truth), p.n};
      } catch (...) {
        delete g;
        throw;
      }
    }
    *graph = g;
  });
}

void aab_ground_truth_free(aab_ground_truth* truth) { delete truth; }

aab_status aab_ground_truth_locations(const aab_ground_truth* truth,
                                      aab_locations** out) {
  return Guard([&] {
    Require(truth != nullptr && out != nullptr, "null argument");
    auto* locations = new aab_locations;
    locations->file.num_vertices = truth->num_vertices;
    for (size_t v = 0; v < truth->truth.locations.size(); ++v) {
      locations->file.locations[static_cast<int>(v)] =
          truth->truth.locations[v];
    }
    *out = locations;
  });
}

aab_status aab_label_edges(const aab_graph* graph,
                           const aab_ground_truth* truth, double sigma,
                           aab_labels** out) {
  return Guard([&] {
    Require(graph && truth && out, "null argument");
    *out = new aab_labels{aab::LabelEdges(graph->graph, truth->truth, sigma)};
  });
}

aab_status aab_labels_read(const aab_graph* graph, const char* path,
                           aab_labels** out) {
  return Guard([&] {
    Require(graph && out, "null argument");
    *out = new aab_labels{aab::ReadLabels(graph->graph, RequirePath(path))};
  });
}

aab_status aab_labels_write(const aab_graph* graph, const aab_labels* labels,
                            const char* path, const char* comment) {
  return Guard([&] {
    Require(graph && labels, "null argument");
    aab::WriteLabels(graph->graph, labels->labels, RequirePath(path),
                     SplitComment(comment));
  });
}

aab_status aab_labels_get(const aab_labels* labels, size_t index,
                          double* angle, int* corrupted) {
  return Guard([&] {
    Require(labels != nullptr, "null labels");
    Require(index < labels->labels.size(), "edge index out of range");
    if (angle) *angle = labels->labels.angle[index];
    if (corrupted) *corrupted = labels->labels.corrupted[index] ? 1 : 0;
  });
}

void aab_labels_free(aab_labels* labels) { delete labels; }

void aab_statistics_options_default(aab_statistics_options* options) {
  if (options == nullptr) return;
  const aab::AabConfig config;
  options->kind = AAB_STATISTIC_IR;
  options->samples_per_edge = config.samples_per_edge;
  options->iterations = config.iterations;
  options->seed = config.seed;
  options->keep_per_iteration = 0;
}

aab_status aab_compute_statistics(const aab_graph* graph,
                                  const aab_statistics_options* options,
                                  aab_statistics** out) {
  return Guard([&] {
    Require(graph && options && out, "null argument");
    aab::AabConfig config;
    config.samples_per_edge = options->samples_per_edge;
    config.iterations = options->iterations;
    config.seed = options->seed;
    config.keep_per_iteration = options->keep_per_iteration != 0;
    switch (options->kind) {
      case AAB_STATISTIC_NAIVE:
        *out = new aab_statistics{aab::NaiveAab(graph->graph, config)};
        return;
      case AAB_STATISTIC_IR:
        *out = new aab_statistics{aab::IrAab(graph->graph, config)};
        return;
    }
    throw aab::InvalidArgumentError("unknown statistic kind");
  });
}

aab_status aab_statistics_read(const aab_graph* graph, const char* path,
                               aab_statistics** out) {
  return Guard([&] {
    Require(graph && out, "null argument");
    *out = new aab_statistics{
        aab::ReadStatistics(graph->graph, RequirePath(path))};
  });
}

aab_status aab_statistics_write(const aab_graph* graph,
                                const aab_statistics* stats, const char* path,
                                const char* comment) {
  return Guard([&] {
    Require(graph && stats, "null argument");
    aab::WriteStatistics(graph->graph, stats->stats, RequirePath(path),
                         SplitComment(comment));
  });
}

aab_status aab_statistics_write_per_iteration(const aab_graph* graph,
                                              const aab_statistics* stats,
                                              const char* path,
                                              const char* comment) {
  return Guard([&] {
    Require(graph && stats, "null argument");
    aab::WritePerIteration(graph->graph, stats->stats, RequirePath(path),
                           SplitComment(comment));
  });
}

aab_status aab_statistics_get(const aab_statistics* stats, size_t index,
                              double* value, int* unsupported) {
  return Guard([&] {
    Require(stats != nullptr, "null statistics");
    Require(index < stats->stats.size(), "edge index out of range");
    if (value) *value = stats->stats.values[index];
    if (unsupported) *unsupported = stats->stats.unsupported[index] ? 1 : 0;
  });
}

void aab_statistics_free(aab_statistics* stats) { delete stats; }

void aab_screening_options_default(aab_screening_options* options) {
  if (options == nullptr) return;
  const aab::ScreeningPolicy policy;
  options->mode = AAB_SCREEN_KEEP_FRACTION;
  options->keep_fraction = policy.keep_fraction;
  options->threshold = policy.threshold;
  options->min_degree = policy.min_degree;
  options->drop_unsupported = policy.drop_unsupported ? 1 : 0;
}

aab_status aab_screen_graph(const aab_graph* graph,
                            const aab_statistics* stats,
                            const aab_screening_options* options,
                            aab_graph** out) {
  return Guard([&] {
    Require(graph && stats && options && out, "null argument");
    aab::ScreeningPolicy policy;
    switch (options->mode) {
      case AAB_SCREEN_KEEP_FRACTION:
        policy.mode = aab::ScreeningPolicy::Mode::kKeepFraction;
        break;
      case AAB_SCREEN_THRESHOLD:
        policy.mode = aab::ScreeningPolicy::Mode::kThreshold;
        break;
      default:
        throw aab::InvalidArgumentError("unknown screening mode");
    }
    policy.keep_fraction = options->keep_fraction;
    policy.threshold = options->threshold;
    policy.min_degree = options->min_degree;
    policy.drop_unsupported = options->drop_unsupported != 0;
    policy.Validate();
    aab::ViewGraph filtered =
        aab::FilterEdges(graph->graph, stats->stats, policy);
    *out = new aab_graph{aab::SolvableComponent(filtered, policy.min_degree)};
  });
}

void aab_solver_options_default(aab_solver_options* options) {
  if (options == nullptr) return;
  const aab::IrlsOptions irls;
  options->kind = AAB_SOLVER_LS;
  options->max_iters = irls.max_iters;
  options->delta = irls.delta;
}

aab_status aab_solve(const aab_graph* graph, const aab_solver_options* options,
                     aab_locations** out) {
  return Guard([&] {
    Require(graph && options && out, "null argument");
    aab::LocationEstimate estimate;
    switch (options->kind) {
      case AAB_SOLVER_LS:
        estimate = aab::SolveLsSpectral(graph->graph);
        break;
      case AAB_SOLVER_IRLS: {
        aab::IrlsOptions irls;
        irls.max_iters = options->max_iters;
        irls.delta = options->delta;
        estimate = aab::SolveIrlsLud(graph->graph, irls);
        break;
      }
      default:
        throw aab::InvalidArgumentError("unknown solver kind");
    }
    auto* locations = new aab_locations;
    locations->file.num_vertices = graph->graph.num_vertices();
    locations->file.locations = std::move(estimate.locations);
    *out = locations;
  });
}

aab_status aab_locations_read(const char* path, aab_locations** out) {
  return Guard([&] {
    Require(out != nullptr, "null output");
    *out = new aab_locations{aab::ReadLocations(RequirePath(path))};
  });
}

aab_status aab_locations_write(const aab_locations* locations,
                               const char* path, const char* comment) {
  return Guard([&] {
    Require(locations != nullptr, "null locations");
    aab::WriteLocations(locations->file.locations,
                        locations->file.num_vertices, RequirePath(path),
                        SplitComment(comment));
  });
}

size_t aab_locations_count(const aab_locations* locations) {
  return locations ? locations->file.locations.size() : 0;
}

aab_status aab_locations_get(const aab_locations* locations, int vertex,
                             double out[3]) {
  return Guard([&] {
    Require(locations && out, "null argument");
    auto it = locations->file.locations.find(vertex);
    Require(it != locations->file.locations.end(), "vertex has no location");
    out[0] = it->second.x();
    out[1] = it->second.y();
    out[2] = it->second.z();
  });
}

void aab_locations_free(aab_locations* locations) { delete locations; }

void aab_evaluation_options_default(aab_evaluation_options* options) {
  if (options == nullptr) return;
  const aab::EvaluationOptions defaults;
  options->bins = defaults.bins;
  options->epsilon = defaults.epsilon;
  options->has_baseline = 0;
  options->baseline_error = 0.0;
  options->baseline_is_median = 0;
}

aab_status aab_evaluate(const aab_graph* graph, const aab_statistics* stats,
                        const aab_labels* labels,
                        const aab_locations* estimate,
                        const aab_locations* truth,
                        const aab_evaluation_options* options,
                        const char* comment, const char* out_dir) {
  return Guard([&] {
    Require(graph && stats && labels && options, "null argument");
    Require((estimate == nullptr) == (truth == nullptr),
            "estimate and ground truth must be given together");
    aab::EvaluationOptions eval;
    eval.bins = options->bins;
    eval.epsilon = options->epsilon;
    if (options->has_baseline) eval.baseline_error = options->baseline_error;
    eval.baseline_is_median = options->baseline_is_median != 0;
    eval.provenance = SplitComment(comment);
    aab::WriteEvaluation(RequirePath(out_dir), graph->graph, stats->stats,
                         labels->labels, estimate ? &estimate->file : nullptr,
                         truth ? &truth->file : nullptr, eval);
  });
}

aab_status aab_roc_auc(const aab_statistics* stats, const aab_labels* labels,
                       double* auc, int* defined) {
  return Guard([&] {
    Require(stats && labels && auc, "null argument");
    const aab::RocCurve curve = aab::ComputeRoc(stats->stats, labels->labels);
    *auc = curve.auc.value_or(std::numeric_limits<double>::quiet_NaN());
    if (defined) *defined = curve.auc.has_value() ? 1 : 0;
  });
}

aab_status aab_location_errors(const aab_locations* estimate,
                               const aab_locations* truth, double* mean,
                               double* median) {
  return Guard([&] {
    Require(estimate && truth, "null argument");
    const aab::SimilarityAlignment alignment =
        aab::AlignSimilarity(estimate->file.locations, truth->file.locations);
    const aab::ErrorSummary summary =
        aab::LocationErrors(alignment.aligned, truth->file.locations);
    if (mean) *mean = summary.mean;
    if (median) *median = summary.median;
  });
}

aab_status aab_improvement(double error_before, double error_after,
                           double* percent) {
  return Guard([&] {
    Require(percent != nullptr, "null output");
    *percent = aab::Improvement(error_before, error_after);
  });
}

aab_status aab_verify(aab_verify_mode mode, int64_t samples, uint64_t seed,
                      int oracle_steps, const char* path) {
  return Guard([&] {
    const std::string out = RequirePath(path);
    std::string name;
    switch (mode) {
      case AAB_VERIFY_LEMMA:
        name = "lemma";
        break;
      case AAB_VERIFY_Z:
        name = "z";
        break;
      case AAB_VERIFY_FORMULA:
        name = "formula";
        break;
      default:
        throw aab::InvalidArgumentError("unknown verify mode");
    }
    aab::WriteFileAtomic(
        out, aab::VerifyReportJson(name, samples, seed, oracle_steps));
  });
}

}  // extern "C"
