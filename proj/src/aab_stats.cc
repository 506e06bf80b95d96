#include "aab/aab_stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "aab/error.h"
#include "aab/parallel.h"
#include "aab/random.h"

namespace aab {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Draws the triangles of edge e. Degenerate bases are redrawn from the same
// stream; without degeneracy the draws coincide with SampleTriples().
std::vector<TriangleSample> SampleEdgeTriangles(const ViewGraph& graph,
                                                const Edge& e,
                                                const AabConfig& config,
                                                size_t* evaluations) {
  std::vector<TriangleSample> triangles;
  const std::vector<int> common = graph.CommonNeighbors(e.i, e.j);
  if (common.empty()) return triangles;

  RandomStream stream =
      EdgeStream(config.seed, StreamDomain::kTriangleSampling, e.i, e.j);
  std::uniform_int_distribution<size_t> pick(0, common.size() - 1);
  const UnitVector3& gamma_ij = e.direction;
  triangles.reserve(config.samples_per_edge);
  for (int n = 0; n < config.samples_per_edge; ++n) {
    for (int attempt = 0; attempt <= kMaxDegenerateRetries; ++attempt) {
      const int k = common[pick(stream)];
      const UnitVector3 gamma_jk = graph.Direction(e.j, k);
      const UnitVector3 gamma_ki = graph.Direction(k, e.i);
      ++*evaluations;
      if (auto value = TryAabInconsistency(gamma_ij, gamma_jk, gamma_ki)) {
        triangles.push_back({k, *value});
        break;
      }
    }
  }
  return triangles;
}

double Median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lower + upper);
}

}  // namespace

void AabConfig::Validate() const {
  if (samples_per_edge < 1) {
    throw InvalidArgumentError("samples per edge s must be >= 1");
  }
  if (iterations < 1) {
    throw InvalidArgumentError("iteration count T must be >= 1");
  }
}

size_t EdgeStatistics::NumSupported() const {
  return static_cast<size_t>(
      std::count(unsupported.begin(), unsupported.end(), false));
}

EdgeStatistics NaiveAab(const ViewGraph& graph, const AabConfig& config) {
  config.Validate();
  const size_t num_edges = graph.num_edges();
  EdgeStatistics stats;
  stats.values.assign(num_edges, kNaN);
  stats.unsupported.assign(num_edges, false);
  stats.samples.resize(num_edges);

  std::vector<size_t> evaluations(num_edges, 0);
  std::vector<char> unsupported(num_edges, 0);
  ParallelFor(num_edges, [&](size_t begin, size_t end) {
    for (size_t idx = begin; idx < end; ++idx) {
      auto& triangles = stats.samples[idx];
      triangles = SampleEdgeTriangles(graph, graph.edge(idx), config,
                                      &evaluations[idx]);
      if (triangles.empty()) {
        unsupported[idx] = 1;
        continue;
      }
      double sum = 0.0;
      for (const auto& t : triangles) sum += t.inconsistency;
      stats.values[idx] = sum / static_cast<double>(triangles.size());
    }
  });

  for (size_t idx = 0; idx < num_edges; ++idx) {
    stats.unsupported[idx] = unsupported[idx] != 0;
    stats.num_inconsistency_evaluations += evaluations[idx];
  }
  if (config.keep_per_iteration) stats.per_iteration.push_back(stats.values);
  return stats;
}

std::vector<double> ReweightingWeights(const std::vector<double>& neighbor_max,
                                       double tau) {
  std::vector<double> weights(neighbor_max.size(), 0.0);
  if (neighbor_max.empty()) return weights;
  // Shifting by the smallest argument cancels in the normalization and keeps
  // the largest weight at exactly 1.
  const double shift =
      *std::min_element(neighbor_max.begin(), neighbor_max.end());
  double total = 0.0;
  for (size_t n = 0; n < neighbor_max.size(); ++n) {
    weights[n] = std::exp(-tau * (neighbor_max[n] - shift));
    total += weights[n];
  }
  for (double& w : weights) w /= total;
  return weights;
}

EdgeStatistics IrAab(const ViewGraph& graph, const AabConfig& config) {
  EdgeStatistics stats = NaiveAab(graph, config);
  const size_t num_edges = graph.num_edges();

  double max_value = 0.0;
  double min_value = std::numeric_limits<double>::infinity();
  for (const auto& triangles : stats.samples) {
    for (const auto& t : triangles) {
      max_value = std::max(max_value, t.inconsistency);
      min_value = std::min(min_value, t.inconsistency);
    }
  }

  ReweightingDiagnostics diagnostics;
  diagnostics.max_inconsistency = max_value;
  diagnostics.min_inconsistency = std::isfinite(min_value) ? min_value : 0.0;
  if (max_value <= 0.0) {
    // Every cached inconsistency is zero; τ = π / M is undefined and all
    // reweightings would reproduce S^(0).
    if (config.keep_per_iteration) {
      stats.per_iteration.assign(config.iterations + 1, stats.values);
    }
    stats.diagnostics = diagnostics;
    return stats;
  }

  const int rounds = config.iterations;
  diagnostics.step =
      (max_value - diagnostics.min_inconsistency) / static_cast<double>(rounds);

  std::vector<double> previous = stats.values;
  std::vector<double> current(num_edges, kNaN);
  double current_max = max_value;
  for (int t = 1; t <= rounds; ++t) {
    const double tau = std::numbers::pi / current_max;
    current_max -= diagnostics.step;
    diagnostics.taus.push_back(tau);

    std::vector<double> supported_values;
    supported_values.reserve(num_edges);
    for (size_t idx = 0; idx < num_edges; ++idx) {
      if (!stats.unsupported[idx]) supported_values.push_back(previous[idx]);
    }
    const double fallback = Median(std::move(supported_values));
    auto lookup = [&](int a, int b) {
      const size_t idx = graph.EdgeIndex(a, b);
      return stats.unsupported[idx] ? fallback : previous[idx];
    };

    ParallelFor(num_edges, [&](size_t begin, size_t end) {
      std::vector<double> neighbor_max;
      for (size_t idx = begin; idx < end; ++idx) {
        if (stats.unsupported[idx]) continue;
        const Edge& e = graph.edge(idx);
        const auto& triangles = stats.samples[idx];
        neighbor_max.resize(triangles.size());
        for (size_t n = 0; n < triangles.size(); ++n) {
          const int k = triangles[n].k;
          neighbor_max[n] = std::max(lookup(k, e.i), lookup(e.j, k));
        }
        const std::vector<double> weights = ReweightingWeights(neighbor_max, tau);
        double value = 0.0;
        for (size_t n = 0; n < triangles.size(); ++n) {
          value += weights[n] * triangles[n].inconsistency;
        }
        current[idx] = value;
      }
    });

    std::swap(previous, current);
    if (config.keep_per_iteration) stats.per_iteration.push_back(previous);
  }

  stats.values = std::move(previous);
  stats.diagnostics = std::move(diagnostics);
  return stats;
}

}  // namespace aab
