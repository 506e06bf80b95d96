#include "aab/view_graph.h"

#include <set>

#include <gtest/gtest.h>

#include "aab/error.h"
#include "test_util.h"

namespace aab {
namespace {

using testing::GraphFromPairs;
using testing::V;

TEST(ViewGraph, ConstructionCanonicalizesEdges) {
  const ViewGraph graph(3, {{2, 0, V(0, 0, 1)}, {0, 1, V(1, 0, 0)}});
  ASSERT_EQ(graph.num_edges(), 2u);
  EXPECT_EQ(graph.edge(0).i, 0);
  EXPECT_EQ(graph.edge(0).j, 1);
  EXPECT_EQ(graph.edge(1).i, 0);
  EXPECT_EQ(graph.edge(1).j, 2);
  EXPECT_EQ(graph.edge(1).direction, V(0, 0, -1));
  EXPECT_EQ(graph.EdgeIndex(2, 0), 1u);
}

TEST(ViewGraph, RejectsInvalidEdges) {
  EXPECT_THROW(ViewGraph(3, {{1, 1, V(1, 0, 0)}}), InvalidArgumentError);
  EXPECT_THROW(ViewGraph(3, {{0, 3, V(1, 0, 0)}}), InvalidArgumentError);
  EXPECT_THROW(ViewGraph(3, {{-1, 0, V(1, 0, 0)}}), InvalidArgumentError);
  EXPECT_THROW(ViewGraph(3, {{0, 1, V(1, 0, 0)}, {1, 0, V(1, 0, 0)}}),
               InvalidArgumentError);
}

TEST(CommonNeighbors, Examples) {
  const ViewGraph triangle = GraphFromPairs(3, {{0, 1}, {0, 2}, {1, 2}});
  EXPECT_EQ(triangle.CommonNeighbors(0, 1), std::vector<int>({2}));

  const ViewGraph path = GraphFromPairs(3, {{0, 1}, {1, 2}});
  EXPECT_TRUE(path.CommonNeighbors(0, 1).empty());

  const ViewGraph k4 =
      GraphFromPairs(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  EXPECT_EQ(k4.CommonNeighbors(0, 1), std::vector<int>({2, 3}));
  EXPECT_EQ(k4.CommonNeighbors(1, 0), k4.CommonNeighbors(0, 1));
}

TEST(CommonNeighbors, RequiresEdge) {
  const ViewGraph path = GraphFromPairs(3, {{0, 1}, {1, 2}});
  EXPECT_THROW(path.CommonNeighbors(0, 2), InvalidArgumentError);
}

TEST(Direction, Antisymmetry) {
  const ViewGraph graph(3, {{0, 1, V(0, 0, 1)}, {1, 2, V(1, 0, 0)}});
  EXPECT_EQ(graph.Direction(0, 1), V(0, 0, 1));
  EXPECT_EQ(graph.Direction(1, 0), V(0, 0, -1));
  EXPECT_THROW(graph.Direction(0, 2), InvalidArgumentError);
  for (const Edge& e : graph.edges()) {
    EXPECT_NEAR(graph.Direction(e.i, e.j).vec().norm(), 1.0, 1e-12);
  }
}

TEST(SampleTriples, SingleNeighbor) {
  const ViewGraph triangle = GraphFromPairs(3, {{0, 1}, {0, 2}, {1, 2}});
  const TripleSample sample = SampleTriples(triangle, 0, 1, 50, 3);
  EXPECT_FALSE(sample.unsupported);
  EXPECT_EQ(sample.neighbors, std::vector<int>(50, 2));
}

TEST(SampleTriples, EmptyCommonNeighborhood) {
  const ViewGraph path = GraphFromPairs(3, {{0, 1}, {1, 2}});
  const TripleSample sample = SampleTriples(path, 0, 1, 50, 3);
  EXPECT_TRUE(sample.unsupported);
  EXPECT_TRUE(sample.neighbors.empty());
}

TEST(SampleTriples, DeterministicAndOrderIndependent) {
  RandomStream stream = testing::TestStream(1);
  const ViewGraph graph = testing::CompleteGraph(testing::RandomLocations(12, stream));
  const TripleSample a = SampleTriples(graph, 3, 7, 50, 42);
  const TripleSample b = SampleTriples(graph, 3, 7, 50, 42);
  const TripleSample c = SampleTriples(graph, 7, 3, 50, 42);
  EXPECT_EQ(a.neighbors, b.neighbors);
  EXPECT_EQ(a.neighbors, c.neighbors);
  EXPECT_NE(a.neighbors, SampleTriples(graph, 3, 7, 50, 43).neighbors);
  ASSERT_EQ(a.neighbors.size(), 50u);
  std::set<int> distinct;
  for (const int k : a.neighbors) {
    EXPECT_TRUE(graph.HasEdge(3, k));
    EXPECT_TRUE(graph.HasEdge(7, k));
    distinct.insert(k);
  }
  EXPECT_GT(distinct.size(), 1u);
}

TEST(ViewGraph, SubgraphAndActiveVertices) {
  const ViewGraph graph = GraphFromPairs(5, {{0, 1}, {1, 2}, {3, 4}});
  const ViewGraph sub = graph.SubgraphByEdges({true, true, false});
  EXPECT_EQ(sub.num_vertices(), 5);
  EXPECT_EQ(sub.num_edges(), 2u);
  EXPECT_EQ(sub.ActiveVertices(), std::vector<int>({0, 1, 2}));
  EXPECT_EQ(sub.Degree(1), 2);
  EXPECT_EQ(sub.Degree(4), 0);
}

}  // namespace
}  // namespace aab
