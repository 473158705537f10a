#include <catch2/catch_amalgamated.hpp>

#include "palette/graph.hpp"
#include "palette/graph_enum.hpp"

using namespace palette;

TEST_CASE("graph construction normalizes and validates") {
  const Graph g(3, {{2, 1}, {0, 2}});
  CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 2}, {1, 2}});
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(0, {}), std::invalid_argument);
}

TEST_CASE("bipartition must cover the graph and cut every edge") {
  CHECK_NOTHROW(Graph(4, {{0, 2}, {1, 3}}, std::make_pair(std::vector<int>{0, 1}, std::vector<int>{2, 3})));
  CHECK_THROWS_AS(Graph(4, {{0, 1}}, std::make_pair(std::vector<int>{0, 1}, std::vector<int>{2, 3})),
                  std::invalid_argument);
  CHECK_THROWS_AS(Graph(4, {}, std::make_pair(std::vector<int>{0, 1}, std::vector<int>{2})),
                  std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {}, std::make_pair(std::vector<int>{0, 1}, std::vector<int>{1, 2})),
                  std::invalid_argument);
}

TEST_CASE("complete bipartite helper") {
  const Graph g = complete_bipartite(2, 3);
  CHECK(g.n == 5);
  CHECK(g.edges.size() == 6);
  REQUIRE(g.bipartition);
  CHECK(g.bipartition->first == std::vector<int>{0, 1});
  CHECK(g.bipartition->second == std::vector<int>{2, 3, 4});
}

TEST_CASE("list assignments validate size and palette") {
  const GroundParams p(2, 3);
  CHECK_NOTHROW(ListAssignment(p, {{1, 2}, {2, 3}}));
  CHECK_THROWS_AS(ListAssignment(p, {{1, 2, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(ListAssignment(p, {{1, 4}}), std::invalid_argument);
}

TEST_CASE("proper colouring verifier") {
  const Graph g = complete_bipartite(1, 1);
  const ListAssignment l(GroundParams(1, 1), {{1}, {1}});
  CHECK_FALSE(is_proper_l_colouring(g, l, Colouring{{1, 1}}));
  const Graph path(3, {{0, 1}, {1, 2}});
  const ListAssignment l2(GroundParams(2, 3), {{1, 2}, {1, 2}, {1, 2}});
  CHECK(is_proper_l_colouring(path, l2, Colouring{{1, 2, 1}}));
  CHECK_FALSE(is_proper_l_colouring(path, l2, Colouring{{1, 3, 1}}));  // off-list
  CHECK_FALSE(is_proper_l_colouring(path, l2, Colouring{{1, 1, 2}}));  // conflict
}

TEST_CASE("isomorph-free enumeration matches the known counts") {
  CHECK(all_graphs_up_to_iso(1).size() == 1);
  CHECK(all_graphs_up_to_iso(2).size() == 2);
  CHECK(all_graphs_up_to_iso(3).size() == 4);
  CHECK(all_graphs_up_to_iso(4).size() == 11);
  CHECK(all_graphs_up_to_iso(5).size() == 34);
  CHECK(all_graphs_up_to_iso(6).size() == 156);
  CHECK_THROWS_AS(all_graphs_up_to_iso(8), UnsupportedParameters);
}
