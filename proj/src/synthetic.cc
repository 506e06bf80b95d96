#include "aab/synthetic.h"

#include <cmath>
#include <string>

#include "aab/error.h"
#include "aab/random.h"

namespace aab {
namespace {

constexpr double kCoincident = 1e-12;

std::vector<Eigen::Vector3d> DrawLocations(int n, uint64_t seed) {
  RandomStream stream = DeriveStream(seed, StreamDomain::kLocations);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Eigen::Vector3d> locations;
  locations.reserve(n);
  while (static_cast<int>(locations.size()) < n) {
    const Eigen::Vector3d t(normal(stream), normal(stream), normal(stream));
    bool coincident = false;
    for (const auto& other : locations) {
      if ((t - other).norm() < kCoincident) {
        coincident = true;
        break;
      }
    }
    if (!coincident) locations.push_back(t);
  }
  return locations;
}

}  // namespace

void UCParams::Validate() const {
  if (n < 2) throw InvalidArgumentError("UC model needs n >= 2");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgumentError("edge probability p must lie in [0, 1]");
  }
  if (!(q >= 0.0 && q <= 1.0)) {
    throw InvalidArgumentError("corruption probability q must lie in [0, 1]");
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgumentError("noise level sigma must be >= 0");
  }
}

UnitVector3 CleanDirection(const Eigen::Vector3d& ti,
                           const Eigen::Vector3d& tj) {
  return UnitVector3::Normalize(ti - tj);
}

GroundTruth GroundTruth::FromLocations(const ViewGraph& graph,
                                       std::vector<Eigen::Vector3d> locations) {
  if (static_cast<int>(locations.size()) < graph.num_vertices()) {
    throw InvalidArgumentError("ground truth has " +
                               std::to_string(locations.size()) +
                               " locations for " +
                               std::to_string(graph.num_vertices()) +
                               " vertices");
  }
  GroundTruth truth;
  truth.locations = std::move(locations);
  truth.clean_directions.reserve(graph.num_edges());
  for (const Edge& e : graph.edges()) {
    truth.clean_directions.push_back(
        CleanDirection(truth.locations[e.i], truth.locations[e.j]));
  }
  return truth;
}

SyntheticInstance GenerateUC(const UCParams& params) {
  params.Validate();

  std::vector<Eigen::Vector3d> locations = DrawLocations(params.n, params.seed);

  RandomStream inclusion = DeriveStream(params.seed, StreamDomain::kEdgeInclusion);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<Edge> edges;
  std::vector<bool> corrupted;
  for (int i = 0; i < params.n; ++i) {
    for (int j = i + 1; j < params.n; ++j) {
      if (!(uniform(inclusion) < params.p)) continue;

      RandomStream stream =
          EdgeStream(params.seed, StreamDomain::kCorruption, i, j);
      const bool is_corrupted = uniform(stream) < params.q;
      // Both vectors are always drawn so the stream layout is fixed.
      const UnitVector3 v = SampleUniformSphere(stream);
      const UnitVector3 eps = SampleUniformSphere(stream);
      const UnitVector3 clean = CleanDirection(locations[i], locations[j]);

      Edge e{.i = i, .j = j, .direction = v};
      if (!is_corrupted && params.sigma == 0.0) {
        e.direction = clean;
      } else if (!is_corrupted) {
        const Eigen::Vector3d noisy = clean.vec() + params.sigma * eps.vec();
        // σ = 1 with ε = -γ* cancels exactly (probability zero).
        e.direction = noisy.norm() > 0.0 ? UnitVector3::Normalize(noisy) : v;
      }
      edges.push_back(e);
      corrupted.push_back(is_corrupted);
    }
  }

  SyntheticInstance instance{ViewGraph(params.n, std::move(edges)), {}};
  instance.truth =
      GroundTruth::FromLocations(instance.graph, std::move(locations));
  instance.truth.generator_corrupted = std::move(corrupted);
  return instance;
}

}  // namespace aab
