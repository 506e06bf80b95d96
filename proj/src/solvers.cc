#include "aab/solvers.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "aab/error.h"

namespace aab {
namespace {

constexpr double kSpectralGap = 1e-10;

bool IsConnected(const ViewGraph& graph, const std::vector<int>& active) {
  if (active.empty()) return false;
  std::vector<bool> seen(graph.num_vertices(), false);
  std::vector<int> stack = {active.front()};
  seen[active.front()] = true;
  size_t visited = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    ++visited;
    for (const int u : graph.Neighbors(v)) {
      if (!seen[u]) {
        seen[u] = true;
        stack.push_back(u);
      }
    }
  }
  return visited == active.size();
}

double Objective(const std::vector<double>& residuals) {
  return std::accumulate(residuals.begin(), residuals.end(), 0.0);
}

// Orientation score Σ γ_ij·(t_i - t_j).
double OrientationScore(const ViewGraph& graph, const LocationMap& locations) {
  double score = 0.0;
  for (const Edge& e : graph.edges()) {
    score += e.direction.vec().dot(locations.at(e.i) - locations.at(e.j));
  }
  return score;
}

}  // namespace

Eigen::MatrixXd AssembleDirectionSystem(const ViewGraph& graph,
                                        const std::vector<int>& active,
                                        const std::vector<double>& weights) {
  const int size = static_cast<int>(active.size());
  std::vector<int> slot(graph.num_vertices(), -1);
  for (int a = 0; a < size; ++a) slot[active[a]] = a;

  Eigen::MatrixXd system = Eigen::MatrixXd::Zero(3 * size, 3 * size);
  for (size_t idx = 0; idx < graph.num_edges(); ++idx) {
    const Edge& e = graph.edge(idx);
    const int a = slot[e.i];
    const int b = slot[e.j];
    if (a < 0 || b < 0) {
      throw InvalidArgumentError("edge endpoint missing from active set");
    }
    const double w = weights.empty() ? 1.0 : weights[idx];
    const Eigen::Vector3d& g = e.direction.vec();
    const Eigen::Matrix3d block =
        w * (Eigen::Matrix3d::Identity() - g * g.transpose());
    system.block<3, 3>(3 * a, 3 * a) += block;
    system.block<3, 3>(3 * b, 3 * b) += block;
    system.block<3, 3>(3 * a, 3 * b) -= block;
    system.block<3, 3>(3 * b, 3 * a) -= block;
  }
  return system;
}

std::vector<double> DirectionResiduals(const ViewGraph& graph,
                                       const LocationMap& locations) {
  std::vector<double> residuals(graph.num_edges());
  for (size_t idx = 0; idx < graph.num_edges(); ++idx) {
    const Edge& e = graph.edge(idx);
    const Eigen::Vector3d d = locations.at(e.i) - locations.at(e.j);
    const Eigen::Vector3d& g = e.direction.vec();
    residuals[idx] = (d - g * g.dot(d)).norm();
  }
  return residuals;
}

LocationEstimate SolveLsSpectral(const ViewGraph& graph,
                                 const std::vector<double>& weights) {
  if (!weights.empty() && weights.size() != graph.num_edges()) {
    throw InvalidArgumentError("weight count does not match edge count");
  }
  const std::vector<int> active = graph.ActiveVertices();
  if (active.size() < 2) {
    throw InvalidArgumentError("solver needs at least two connected vertices");
  }
  if (!IsConnected(graph, active)) {
    throw DegenerateError("view graph is not connected");
  }

  const int size = static_cast<int>(active.size());
  Eigen::MatrixXd system = AssembleDirectionSystem(graph, active, weights);

  // Translations span the null space t_i = c. Restrict the form to the
  // zero-centroid subspace through a Householder basis of 1⊥.
  Eigen::VectorXd v = Eigen::VectorXd::Constant(size, -1.0 / std::sqrt(size));
  v(0) += 1.0;
  Eigen::MatrixXd householder = Eigen::MatrixXd::Identity(size, size) -
                                2.0 * v * v.transpose() / v.squaredNorm();
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(3 * size, 3 * (size - 1));
  for (int a = 0; a < size; ++a) {
    for (int b = 1; b < size; ++b) {
      basis.block<3, 3>(3 * a, 3 * (b - 1)).diagonal().setConstant(
          householder(a, b));
    }
  }
  const Eigen::MatrixXd reduced = basis.transpose() * system * basis;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen(reduced);
  if (eigen.info() != Eigen::Success) {
    throw Error(ErrorCode::kInternal, "eigen decomposition failed");
  }
  const Eigen::VectorXd& values = eigen.eigenvalues();
  if (values.size() < 2 || values(1) - values(0) < kSpectralGap) {
    throw DegenerateError(
        "spectral gap below 1e-10: directions do not determine the "
        "locations (non-rigid or collinear configuration)");
  }

  Eigen::VectorXd x = basis * eigen.eigenvectors().col(0);
  // Remove the round-off component along translations and renormalize.
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (int a = 0; a < size; ++a) centroid += x.segment<3>(3 * a);
  centroid /= static_cast<double>(size);
  for (int a = 0; a < size; ++a) x.segment<3>(3 * a) -= centroid;
  x.normalize();

  LocationEstimate estimate;
  for (int a = 0; a < size; ++a) {
    estimate.locations[active[a]] = x.segment<3>(3 * a);
  }
  if (OrientationScore(graph, estimate.locations) < 0.0) {
    for (auto& [vertex, t] : estimate.locations) t = -t;
  }
  estimate.residuals = DirectionResiduals(graph, estimate.locations);
  estimate.objective_history.push_back(Objective(estimate.residuals));
  return estimate;
}

LocationEstimate SolveIrlsLud(const ViewGraph& graph,
                              const IrlsOptions& options) {
  if (options.max_iters < 1) {
    throw InvalidArgumentError("IRLS needs max_iters >= 1");
  }
  if (!(options.delta > 0.0)) {
    throw InvalidArgumentError("IRLS delta must be positive");
  }

  LocationEstimate current = SolveLsSpectral(graph);
  current.converged = false;
  std::vector<double> history = current.objective_history;
  int iteration = 1;
  std::vector<double> weights(graph.num_edges());
  while (iteration < options.max_iters) {
    for (size_t idx = 0; idx < weights.size(); ++idx) {
      weights[idx] = 1.0 / std::max(current.residuals[idx], options.delta);
    }
    // Rescale to unit mean: same minimizer, comparable eigenvalue scale.
    const double mean = std::accumulate(weights.begin(), weights.end(), 0.0) /
                        static_cast<double>(weights.size());
    for (double& w : weights) w /= mean;

    LocationEstimate next = SolveLsSpectral(graph, weights);
    ++iteration;

    // Both iterates are centered with unit norm, so aligning them reduces to
    // the least-squares scale <next, current>.
    double inner = 0.0;
    for (const auto& [vertex, t] : next.locations) {
      inner += t.dot(current.locations.at(vertex));
    }
    double change_sq = 0.0;
    for (const auto& [vertex, t] : next.locations) {
      change_sq += (inner * t - current.locations.at(vertex)).squaredNorm();
    }
    history.push_back(next.objective_history.front());
    current = std::move(next);
    if (std::sqrt(change_sq) <= options.tolerance) {
      current.converged = true;
      break;
    }
  }
  current.iterations = iteration;
  current.objective_history = std::move(history);
  return current;
}

SimilarityAlignment AlignSimilarity(const LocationMap& estimate,
                                    const LocationMap& truth) {
  if (estimate.empty()) throw InvalidArgumentError("empty estimate");
  for (const auto& [vertex, t] : estimate) {
    if (!truth.contains(vertex)) {
      throw InvalidArgumentError("vertex " + std::to_string(vertex) +
                                 " has no ground-truth location");
    }
  }

  const double count = static_cast<double>(estimate.size());
  Eigen::Vector3d mean_est = Eigen::Vector3d::Zero();
  Eigen::Vector3d mean_true = Eigen::Vector3d::Zero();
  for (const auto& [vertex, t] : estimate) {
    mean_est += t;
    mean_true += truth.at(vertex);
  }
  mean_est /= count;
  mean_true /= count;

  double numerator = 0.0;
  double denominator = 0.0;
  for (const auto& [vertex, t] : estimate) {
    const Eigen::Vector3d de = t - mean_est;
    numerator += de.dot(truth.at(vertex) - mean_true);
    denominator += de.squaredNorm();
  }
  if (denominator < 1e-15) {
    throw DegenerateError("estimated locations are coincident");
  }

  SimilarityAlignment result;
  result.scale = numerator / denominator;
  result.shift = mean_true - result.scale * mean_est;
  for (const auto& [vertex, t] : estimate) {
    result.aligned[vertex] = result.scale * t + result.shift;
  }
  return result;
}

SimilarityAlignment AlignSimilarity(
    const LocationMap& estimate, const std::vector<Eigen::Vector3d>& truth) {
  LocationMap truth_map;
  for (size_t v = 0; v < truth.size(); ++v) {
    truth_map[static_cast<int>(v)] = truth[v];
  }
  return AlignSimilarity(estimate, truth_map);
}

}  // namespace aab
