#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "aab/view_graph.h"

namespace aab {

// Parameters of the uniform corruption model UC(n, p, q, σ).
struct UCParams {
  int n = 200;
  double p = 0.5;      // Erdős–Rényi edge probability.
  double q = 0.2;      // Corruption probability.
  double sigma = 0.0;  // Noise level.
  uint64_t seed = 0;

  void Validate() const;
};

// Ground truth for a graph. `clean_directions` and `generator_corrupted` are
// indexed like the graph's edges; `generator_corrupted` is empty when the
// truth was loaded from a location file rather than generated.
struct GroundTruth {
  std::vector<Eigen::Vector3d> locations;
  std::vector<UnitVector3> clean_directions;
  std::vector<bool> generator_corrupted;

  // Derives clean directions for every edge of `graph` from `locations`.
  static GroundTruth FromLocations(const ViewGraph& graph,
                                   std::vector<Eigen::Vector3d> locations);
};

// (t_i - t_j) / ‖t_i - t_j‖.
UnitVector3 CleanDirection(const Eigen::Vector3d& ti, const Eigen::Vector3d& tj);

struct SyntheticInstance {
  ViewGraph graph;
  GroundTruth truth;
};

// Locations are i.i.d. N(0, I₃) drawn from one stream; pair inclusion uses a
// second stream with one uniform per pair in lexicographic order; each
// edge's corruption draws come from that edge's own stream. Changing p
// therefore leaves the corruption outcome of a surviving edge unchanged.
SyntheticInstance GenerateUC(const UCParams& params);

}  // namespace aab
