#include "aab/view_graph.h"

#include <algorithm>
#include <iterator>
#include <string>

#include "aab/error.h"
#include "aab/random.h"

namespace aab {

ViewGraph::ViewGraph(int num_vertices, std::vector<Edge> edges)
    : num_vertices_(num_vertices), edges_(std::move(edges)) {
  if (num_vertices_ < 0) {
    throw InvalidArgumentError("negative vertex count");
  }
  for (Edge& e : edges_) {
    CheckVertex(e.i);
    CheckVertex(e.j);
    if (e.i == e.j) {
      throw InvalidArgumentError("self-loop at vertex " + std::to_string(e.i));
    }
    if (e.i > e.j) {
      std::swap(e.i, e.j);
      e.direction = -e.direction;
    }
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });

  adjacency_.assign(num_vertices_, {});
  index_.reserve(edges_.size());
  for (size_t k = 0; k < edges_.size(); ++k) {
    const Edge& e = edges_[k];
    if (!index_.emplace(Key(e.i, e.j), k).second) {
      throw InvalidArgumentError("duplicate edge " + std::to_string(e.i) +
                                 " " + std::to_string(e.j));
    }
    adjacency_[e.i].push_back(e.j);
    adjacency_[e.j].push_back(e.i);
  }
  for (auto& neighbors : adjacency_) {
    std::sort(neighbors.begin(), neighbors.end());
  }
}

uint64_t ViewGraph::Key(int i, int j) const {
  if (i > j) std::swap(i, j);
  return static_cast<uint64_t>(i) * static_cast<uint64_t>(num_vertices_) +
         static_cast<uint64_t>(j);
}

void ViewGraph::CheckVertex(int v) const {
  if (v < 0 || v >= num_vertices_) {
    throw InvalidArgumentError("vertex " + std::to_string(v) +
                               " out of range [0, " +
                               std::to_string(num_vertices_) + ")");
  }
}

std::optional<size_t> ViewGraph::FindEdge(int i, int j) const {
  if (i < 0 || j < 0 || i >= num_vertices_ || j >= num_vertices_ || i == j) {
    return std::nullopt;
  }
  const auto it = index_.find(Key(i, j));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

size_t ViewGraph::EdgeIndex(int i, int j) const {
  if (auto index = FindEdge(i, j)) return *index;
  throw InvalidArgumentError("no edge " + std::to_string(i) + " " +
                             std::to_string(j));
}

UnitVector3 ViewGraph::Direction(int i, int j) const {
  const Edge& e = edges_[EdgeIndex(i, j)];
  return i < j ? e.direction : -e.direction;
}

std::vector<int> ViewGraph::CommonNeighbors(int i, int j) const {
  EdgeIndex(i, j);
  std::vector<int> common;
  const auto& a = adjacency_[i];
  const auto& b = adjacency_[j];
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(common));
  return common;
}

ViewGraph ViewGraph::SubgraphByEdges(const std::vector<bool>& keep) const {
  if (keep.size() != edges_.size()) {
    throw InvalidArgumentError("edge mask size does not match edge count");
  }
  std::vector<Edge> kept;
  for (size_t k = 0; k < edges_.size(); ++k) {
    if (keep[k]) kept.push_back(edges_[k]);
  }
  return ViewGraph(num_vertices_, std::move(kept));
}

std::vector<int> ViewGraph::ActiveVertices() const {
  std::vector<int> active;
  for (int v = 0; v < num_vertices_; ++v) {
    if (!adjacency_[v].empty()) active.push_back(v);
  }
  return active;
}

TripleSample SampleTriples(const ViewGraph& graph, int i, int j,
                           int samples_per_edge, uint64_t seed) {
  if (samples_per_edge < 1) {
    throw InvalidArgumentError("samples per edge must be positive");
  }
  TripleSample sample;
  sample.i = std::min(i, j);
  sample.j = std::max(i, j);
  const std::vector<int> common = graph.CommonNeighbors(i, j);
  if (common.empty()) {
    sample.unsupported = true;
    return sample;
  }
  RandomStream stream =
      EdgeStream(seed, StreamDomain::kTriangleSampling, i, j);
  std::uniform_int_distribution<size_t> pick(0, common.size() - 1);
  sample.neighbors.reserve(samples_per_edge);
  for (int n = 0; n < samples_per_edge; ++n) {
    sample.neighbors.push_back(common[pick(stream)]);
  }
  return sample;
}

}  // namespace aab
