#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "test_util.hpp"
#include "twsplit/error.hpp"
#include "twsplit/graph.hpp"
#include "twsplit/random_models.hpp"

using namespace twsplit;
using twsplit::testing::complete_graph;
using twsplit::testing::cycle_graph;
using twsplit::testing::make_graph;
using twsplit::testing::random_graph;

TEST_SUITE("graph") {
  TEST_CASE("build_graph merges both orientations of a pair") {
    BuildDiagnostics diag;
    const std::vector<Edge> edges{{0, 1}, {1, 0}, {1, 2}};
    const Graph g = build_graph(3, edges, {}, &diag);
    CHECK(g.num_nodes() == 3);
    CHECK(g.num_edges() == 2);
    CHECK(diag.duplicate_edges == 1);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));
    CHECK(g.has_edge(2, 1));
    CHECK_FALSE(g.has_edge(0, 2));
  }

  TEST_CASE("build_graph with no edges") {
    const Graph g = build_graph(2, {});
    CHECK(g.num_nodes() == 2);
    CHECK(g.num_edges() == 0);
    CHECK(g.degree(0) == 0);
  }

  TEST_CASE("build_graph rejects self loops and out-of-range endpoints") {
    const std::vector<Edge> loop{{0, 0}};
    CHECK_THROWS_WITH_AS(build_graph(3, loop), doctest::Contains("self loop"), InputError);
    const std::vector<Edge> far{{0, 1}, {2, 7}};
    CHECK_THROWS_WITH_AS(build_graph(3, far), doctest::Contains("(2, 7)"), InputError);
  }

  TEST_CASE("neighbors are sorted and symmetric") {
    const Graph g = random_graph(40, 0.2, 5);
    for (NodeIndex i = 0; i < g.num_nodes(); ++i) {
      const auto nb = g.neighbors(i);
      CHECK(std::is_sorted(nb.begin(), nb.end()));
      for (NodeIndex j : nb) CHECK(g.has_edge(j, i));
    }
  }

  TEST_CASE("build_graph is idempotent on its own edge list") {
    const Graph g = random_graph(30, 0.3, 11);
    const auto edges = g.edges();
    const Graph h = build_graph(g.num_nodes(), edges);
    CHECK(h.edges() == edges);
    const Graph k = build_graph_from_sorted(g.num_nodes(), edges);
    CHECK(k.edges() == edges);
  }

  TEST_CASE("edge density examples") {
    CHECK(estimate_edge_density(complete_graph(4)) == 1.0);
    CHECK(estimate_edge_density(build_graph(5, {})) == 0.0);
    CHECK(estimate_edge_density(make_graph(3, {{0, 1}, {1, 2}})) == doctest::Approx(2.0 / 3.0));
    CHECK_THROWS_AS(estimate_edge_density(build_graph(1, {})), DegenerateError);
  }

  TEST_CASE("edge density is monotone in the edge count") {
    std::vector<Edge> edges;
    double last = 0.0;
    for (NodeIndex i = 0; i < 8; ++i) {
      for (NodeIndex j = i + 1; j < 8; ++j) {
        edges.push_back({i, j});
        const double d = estimate_edge_density(build_graph(8, edges));
        CHECK(d > last);
        last = d;
      }
    }
    CHECK(last == 1.0);
  }

  TEST_CASE("induced subgraph examples") {
    const Graph triangle = complete_graph(3);
    const Graph pair = induced_subgraph(triangle, NodeSubset(triangle, {0, 2}));
    CHECK(pair.num_nodes() == 2);
    CHECK(pair.num_edges() == 1);

    const Graph g = random_graph(25, 0.3, 3);
    const Graph same = induced_subgraph(g, all_nodes(g));
    CHECK(same.num_edges() == g.num_edges());
    CHECK(same.edges() == g.edges());

    // 5-cycle 0-1-2-3-4-0 restricted to {0,1,2} keeps 0-1 and 1-2.
    const Graph cycle = cycle_graph(5);
    const Graph path = induced_subgraph(cycle, NodeSubset(cycle, {2, 0, 1}));
    CHECK(path.num_edges() == 2);
    CHECK(path.has_edge(0, 1));
    CHECK(path.has_edge(1, 2));
    CHECK_FALSE(path.has_edge(0, 2));
  }

  TEST_CASE("induced subgraph carries labels in member order") {
    const std::vector<Edge> edges{{0, 1}, {1, 2}};
    const Graph g = build_graph(3, edges, {"a", "b", "c"});
    const Graph s = induced_subgraph(g, NodeSubset(g, {1, 2}));
    CHECK(s.label(0) == "b");
    CHECK(s.label(1) == "c");
    CHECK(s.has_edge(0, 1));
  }

  TEST_CASE("induced subgraph edge count is bounded by the pair count") {
    const Graph g = random_graph(60, 0.5, 17);
    SplitMix64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<NodeIndex> members;
      for (NodeIndex i = 0; i < 60; ++i) {
        if (rng.uniform() < 0.4) members.push_back(i);
      }
      const Graph s = induced_subgraph(g, NodeSubset(g, members));
      const std::size_t k = members.size();
      CHECK(s.num_edges() <= k * (k - (k > 0)) / 2);
      std::size_t expected = 0;
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) expected += g.has_edge(members[a], members[b]);
      }
      CHECK(s.num_edges() == expected);
    }
  }

  TEST_CASE("NodeSubset validates members") {
    const Graph g = complete_graph(4);
    CHECK_THROWS_AS(NodeSubset(g, {0, 4}), InputError);
    CHECK_THROWS_AS(NodeSubset(g, {1, 1}), InputError);
    const NodeSubset s(g, {3, 0});
    CHECK(s.members() == std::vector<NodeIndex>{0, 3});
  }

  TEST_CASE("remove_isolated_nodes examples") {
    const Graph one_isolated = make_graph(4, {{0, 1}, {1, 3}});
    const IsolatedRemoval r = remove_isolated_nodes(one_isolated);
    CHECK(r.graph.num_nodes() == 3);
    CHECK(r.removed == std::vector<NodeIndex>{2});
    CHECK(r.new_to_old == std::vector<NodeIndex>{0, 1, 3});

    const Graph connected = cycle_graph(6);
    const IsolatedRemoval same = remove_isolated_nodes(connected);
    CHECK(same.graph.edges() == connected.edges());
    CHECK(same.removed.empty());

    // star K_{1,3} on {0; 1,2,3} plus isolates 4 and 5
    const Graph star = make_graph(6, {{0, 1}, {0, 2}, {0, 3}});
    const IsolatedRemoval s = remove_isolated_nodes(star);
    CHECK(s.graph.num_nodes() == 4);
    CHECK(s.graph.num_edges() == 3);
    CHECK(s.graph.degree(0) == 3);

    const IsolatedRemoval none = remove_isolated_nodes(build_graph(3, {}));
    CHECK(none.graph.num_nodes() == 0);
    CHECK(none.removed.size() == 3);
  }

  TEST_CASE("remove_isolated_nodes leaves minimum degree one") {
    const Graph g = random_graph(80, 0.02, 23);
    const IsolatedRemoval r = remove_isolated_nodes(g);
    for (NodeIndex i = 0; i < r.graph.num_nodes(); ++i) CHECK(r.graph.degree(i) >= 1);
    CHECK(r.graph.num_edges() == g.num_edges());
    CHECK(r.graph.num_nodes() + r.removed.size() == g.num_nodes());
  }
}
