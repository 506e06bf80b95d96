#pragma once

#include "aab/aab_stats.h"
#include "aab/view_graph.h"

namespace aab {

struct ScreeningPolicy {
  enum class Mode { kKeepFraction, kThreshold };

  Mode mode = Mode::kKeepFraction;
  double keep_fraction = 0.5;  // in (0, 1]
  double threshold = 0.0;      // radians, threshold mode only
  int min_degree = 2;          // used by SolvableComponent
  // Unsupported edges carry no evidence and are kept unless this is set.
  bool drop_unsupported = false;

  static ScreeningPolicy KeepFraction(double fraction);
  static ScreeningPolicy Threshold(double threshold);

  void Validate() const;
};

// Keeps the ⌈keep_fraction·|supported|⌉ supported edges with the lowest
// statistic (ties broken by lower (i, j)) or, in threshold mode, the
// supported edges with statistic <= threshold. Throws EmptyResultError when
// nothing survives.
ViewGraph FilterEdges(const ViewGraph& graph, const EdgeStatistics& stats,
                      const ScreeningPolicy& policy);

// Surrogate for a rigid component: peels vertices of degree < min_degree
// until none remain, then keeps the largest connected component (lowest
// vertex id on ties). Vertex ids are preserved; removed vertices become
// isolated. Idempotent. Throws EmptyResultError if no edge remains.
ViewGraph SolvableComponent(const ViewGraph& graph, int min_degree);

}  // namespace aab
