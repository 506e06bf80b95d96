#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "aab/sphere_geometry.h"

namespace aab {

// An undirected measurement {i, j} with i < j. `direction` is γ_ij, pointing
// from camera j towards camera i.
struct Edge {
  int i = 0;
  int j = 0;
  UnitVector3 direction = UnitVector3::FromUnit(0.0, 0.0, 1.0);
};

// Immutable view graph over vertices [0, n). Edges are stored in
// lexicographic (i, j) order; that order defines edge indices everywhere
// else in the library.
class ViewGraph {
 public:
  ViewGraph() = default;

  // Edges may be given with i > j; they are flipped (direction negated).
  // Throws InvalidArgumentError on self-loops, out-of-range vertices or
  // duplicate pairs.
  ViewGraph(int num_vertices, std::vector<Edge> edges);

  int num_vertices() const { return num_vertices_; }
  size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(size_t index) const { return edges_[index]; }

  std::optional<size_t> FindEdge(int i, int j) const;
  bool HasEdge(int i, int j) const { return FindEdge(i, j).has_value(); }
  // Throws InvalidArgumentError if {i, j} is not an edge.
  size_t EdgeIndex(int i, int j) const;

  // γ_ij; Direction(j, i) == -Direction(i, j).
  UnitVector3 Direction(int i, int j) const;

  // Sorted neighbor list.
  const std::vector<int>& Neighbors(int v) const { return adjacency_[v]; }
  int Degree(int v) const { return static_cast<int>(adjacency_[v].size()); }

  // C_ij: vertices adjacent to both i and j. Requires {i, j} ∈ E.
  std::vector<int> CommonNeighbors(int i, int j) const;

  // Same vertex set, edges where keep[index] is true.
  ViewGraph SubgraphByEdges(const std::vector<bool>& keep) const;

  // Vertices with at least one incident edge, ascending.
  std::vector<int> ActiveVertices() const;

 private:
  uint64_t Key(int i, int j) const;
  void CheckVertex(int v) const;

  int num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::unordered_map<uint64_t, size_t> index_;
};

// S_ij: `neighbors` holds s draws with replacement from C_ij, or is empty
// with `unsupported` set when C_ij is empty.
struct TripleSample {
  int i = 0;
  int j = 0;
  std::vector<int> neighbors;
  bool unsupported = false;
};

// Draws from the stream owned by the unordered edge {i, j} under `seed`, so
// the result does not depend on edge processing order.
TripleSample SampleTriples(const ViewGraph& graph, int i, int j,
                           int samples_per_edge, uint64_t seed);

}  // namespace aab
