#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "aab/view_graph.h"

namespace aab {

struct AabConfig {
  int samples_per_edge = 50;  // s
  int iterations = 10;        // T, reweighting rounds of IR-AAB
  uint64_t seed = 0;
  // Retain S^(t) for every t (memory T·|E|).
  bool keep_per_iteration = false;

  void Validate() const;
};

// One sampled triangle of an edge ij: the third vertex k and the cached
// inconsistency I_AAB(γ_ij; γ_jk, γ_ki).
struct TriangleSample {
  int k = 0;
  double inconsistency = 0.0;
};

// Quantities of the reweighting schedule. `taus[t-1]` is τ^(t).
struct ReweightingDiagnostics {
  double max_inconsistency = 0.0;  // M
  double min_inconsistency = 0.0;  // m
  double step = 0.0;               // L = (M - m) / T
  std::vector<double> taus;
};

// Per-edge statistics, indexed like the graph's edges. Values of unsupported
// edges are NaN.
struct EdgeStatistics {
  std::vector<double> values;
  std::vector<bool> unsupported;
  // per_iteration[t] = S^(t); filled only when requested.
  std::vector<std::vector<double>> per_iteration;
  // Triangles used by the statistic (empty when loaded from a file).
  std::vector<std::vector<TriangleSample>> samples;
  std::optional<ReweightingDiagnostics> diagnostics;
  size_t num_inconsistency_evaluations = 0;

  size_t size() const { return values.size(); }
  size_t NumSupported() const;
};

// Naive AAB: S^(0)(ij) is the mean inconsistency over s triangles drawn with
// replacement from C_ij. A triangle whose base (γ_jk, γ_ki) is degenerate is
// redrawn up to kMaxDegenerateRetries times, then dropped from the mean.
// Edges with empty C_ij (or no usable triangle) are flagged unsupported.
EdgeStatistics NaiveAab(const ViewGraph& graph, const AabConfig& config);

// IR-AAB: reuses the naive stage's triangles and iteratively reweights them
// by exp(-τ^(t) max(S^(t-1)(ki), S^(t-1)(jk))) with τ^(t) = π / M_t, where M_t
// decreases linearly from the largest cached inconsistency M towards the
// smallest m over T rounds.
EdgeStatistics IrAab(const ViewGraph& graph, const AabConfig& config);

inline constexpr int kMaxDegenerateRetries = 8;

// Normalized reweighting weights of one edge for neighbor statistics
// `neighbor_max` (the max of S(ki), S(jk) per sample) at rate `tau`.
std::vector<double> ReweightingWeights(const std::vector<double>& neighbor_max,
                                       double tau);

}  // namespace aab
