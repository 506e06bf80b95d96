#pragma once

#include <map>
#include <vector>

#include <Eigen/Core>

#include "aab/view_graph.h"

namespace aab {

using LocationMap = std::map<int, Eigen::Vector3d>;

// Camera locations fixed to the gauge Σ t_i = 0, Σ ‖t_i‖² = 1 over the
// graph's active vertices (those with at least one edge). The reflection
// t → -t is fixed by requiring Σ_ij γ_ij·(t_i - t_j) >= 0.
struct LocationEstimate {
  LocationMap locations;
  // r_ij = ‖P_{γ_ij⊥}(t_i - t_j)‖, indexed like the graph's edges.
  std::vector<double> residuals;
  bool converged = true;
  int iterations = 1;
  // Σ r_ij after each IRLS iterate (one entry for the spectral solver).
  std::vector<double> objective_history;
};

// Minimizes Σ w_ij ‖P_{γ_ij⊥}(t_i - t_j)‖² over the gauge. `weights` may be
// empty (all ones). Throws DegenerateError when the graph is disconnected or
// the two smallest eigenvalues on the zero-centroid subspace are within 1e-10
// (the direction data does not pin down the shape).
LocationEstimate SolveLsSpectral(const ViewGraph& graph,
                                 const std::vector<double>& weights = {});

struct IrlsOptions {
  int max_iters = 100;
  double delta = 1e-8;       // residual floor in the weights 1 / max(r, δ)
  double tolerance = 1e-10;  // iterate change after aligning consecutive iterates
};

// Robust (least unsquared deviations) estimate: repeated weighted spectral
// solves with weights 1 / max(r_ij, δ) from the previous iterate.
LocationEstimate SolveIrlsLud(const ViewGraph& graph,
                              const IrlsOptions& options = {});

// Dense 3n×3n matrix of the quadratic form Σ w_ij ‖P_{γ_ij⊥}(t_i - t_j)‖²,
// with vertex `active[a]` occupying rows 3a..3a+2.
Eigen::MatrixXd AssembleDirectionSystem(const ViewGraph& graph,
                                        const std::vector<int>& active,
                                        const std::vector<double>& weights);

// Per-edge residuals r_ij of `locations` (which must cover every endpoint).
std::vector<double> DirectionResiduals(const ViewGraph& graph,
                                       const LocationMap& locations);

struct SimilarityAlignment {
  double scale = 1.0;  // sign unconstrained
  Eigen::Vector3d shift = Eigen::Vector3d::Zero();
  LocationMap aligned;
};

// Least-squares scale s and shift b minimizing Σ ‖s·t̂_i + b - t*_i‖² over
// the estimated vertices. Every estimated vertex must have a ground-truth
// location; otherwise InvalidArgumentError.
SimilarityAlignment AlignSimilarity(const LocationMap& estimate,
                                    const LocationMap& truth);
SimilarityAlignment AlignSimilarity(
    const LocationMap& estimate, const std::vector<Eigen::Vector3d>& truth);

}  // namespace aab
