#include "aab/screening.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "aab/error.h"

namespace aab {

ScreeningPolicy ScreeningPolicy::KeepFraction(double fraction) {
  ScreeningPolicy policy;
  policy.mode = Mode::kKeepFraction;
  policy.keep_fraction = fraction;
  return policy;
}

ScreeningPolicy ScreeningPolicy::Threshold(double threshold) {
  ScreeningPolicy policy;
  policy.mode = Mode::kThreshold;
  policy.threshold = threshold;
  return policy;
}

void ScreeningPolicy::Validate() const {
  if (mode == Mode::kKeepFraction &&
      !(keep_fraction > 0.0 && keep_fraction <= 1.0)) {
    throw InvalidArgumentError("keep fraction must lie in (0, 1]");
  }
  if (mode == Mode::kThreshold && std::isnan(threshold)) {
    throw InvalidArgumentError("threshold must be a number");
  }
  if (min_degree < 2) throw InvalidArgumentError("min degree must be >= 2");
}

ViewGraph FilterEdges(const ViewGraph& graph, const EdgeStatistics& stats,
                      const ScreeningPolicy& policy) {
  policy.Validate();
  const size_t num_edges = graph.num_edges();
  if (stats.size() != num_edges || stats.unsupported.size() != num_edges) {
    throw InvalidArgumentError("statistics do not cover the graph's edges");
  }

  std::vector<bool> keep(num_edges, false);
  std::vector<size_t> supported;
  for (size_t idx = 0; idx < num_edges; ++idx) {
    if (stats.unsupported[idx]) {
      keep[idx] = !policy.drop_unsupported;
    } else {
      supported.push_back(idx);
    }
  }

  if (policy.mode == ScreeningPolicy::Mode::kKeepFraction) {
    // Edge indices already follow canonical (i, j) order.
    std::stable_sort(supported.begin(), supported.end(),
                     [&](size_t a, size_t b) {
                       return stats.values[a] < stats.values[b];
                     });
    const double target =
        policy.keep_fraction * static_cast<double>(supported.size());
    const size_t count = std::min(
        supported.size(), static_cast<size_t>(std::ceil(target - 1e-9)));
    for (size_t n = 0; n < count; ++n) keep[supported[n]] = true;
  } else {
    for (const size_t idx : supported) {
      if (stats.values[idx] <= policy.threshold) keep[idx] = true;
    }
  }

  if (std::none_of(keep.begin(), keep.end(), [](bool k) { return k; })) {
    throw EmptyResultError("screening removed every edge");
  }
  return graph.SubgraphByEdges(keep);
}

ViewGraph SolvableComponent(const ViewGraph& graph, int min_degree) {
  if (graph.num_edges() == 0) throw EmptyResultError("graph has no edges");
  const int n = graph.num_vertices();

  std::vector<int> degree(n);
  std::vector<bool> removed(n, false);
  std::vector<int> queue;
  for (int v = 0; v < n; ++v) {
    degree[v] = graph.Degree(v);
    if (degree[v] < min_degree) {
      removed[v] = true;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const int v = queue.back();
    queue.pop_back();
    for (const int u : graph.Neighbors(v)) {
      if (removed[u]) continue;
      if (--degree[u] < min_degree) {
        removed[u] = true;
        queue.push_back(u);
      }
    }
  }

  // Connected components of the surviving core.
  std::vector<int> component(n, -1);
  int best = -1;
  size_t best_size = 0;
  for (int root = 0; root < n; ++root) {
    if (removed[root] || component[root] >= 0) continue;
    size_t size = 0;
    std::vector<int> stack = {root};
    component[root] = root;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      ++size;
      for (const int u : graph.Neighbors(v)) {
        if (!removed[u] && component[u] < 0) {
          component[u] = root;
          stack.push_back(u);
        }
      }
    }
    if (size > best_size) {
      best_size = size;
      best = root;
    }
  }

  std::vector<bool> keep(graph.num_edges(), false);
  bool any = false;
  for (size_t idx = 0; idx < graph.num_edges(); ++idx) {
    const Edge& e = graph.edge(idx);
    if (best >= 0 && !removed[e.i] && !removed[e.j] &&
        component[e.i] == best) {
      keep[idx] = true;
      any = true;
    }
  }
  if (!any) {
    throw EmptyResultError("no component with minimum degree " +
                           std::to_string(min_degree) + " remains");
  }
  return graph.SubgraphByEdges(keep);
}

}  // namespace aab
