#include <doctest.h>

#include <random>

#include "gcg/error.hpp"
#include "gcg/graph.hpp"
#include "gcg/graph_io.hpp"
#include "gcg/symmetry.hpp"
#include "oracles.hpp"

using namespace gcg;

TEST_CASE("basic builders") {
  CHECK(complete_graph(4).edge_count() == 6);
  CHECK(edgeless_graph(5).edge_count() == 0);
  auto c5 = cycle_graph(5);
  CHECK(regular_degree(c5) == 2);
  CHECK(is_connected(c5));
  CHECK_FALSE(is_bipartite(c5));
  auto p = petersen_graph();
  CHECK(p.order() == 10);
  CHECK(p.edge_count() == 15);
  CHECK(regular_degree(p) == 3);
  Graph g(3);
  CHECK_THROWS_AS(g.add_edge(1, 1), InvalidInput);
  CHECK_THROWS_AS(g.add_edge(0, 3), InvalidInput);
}

TEST_CASE("direct products and double covers") {
  auto b3 = bipartite_double_cover(cycle_graph(3));
  CHECK(b3.order() == 6);
  CHECK(is_isomorphic(b3, cycle_graph(6)).has_value());

  auto b4 = bipartite_double_cover(cycle_graph(4));
  CHECK(component_count(b4) == 2);
  CHECK(is_isomorphic(b4, disjoint_union(cycle_graph(4), cycle_graph(4))).has_value());

  CHECK(is_edgeless(direct_product(edgeless_graph(3), complete_graph(4))));
  CHECK(is_edgeless(bipartite_double_cover(edgeless_graph(4))));
  CHECK(bipartite_double_cover(edgeless_graph(4)).order() == 8);

  // (x1,y1) ~ (x2,y2) iff x1 ~ x2 and y1 ~ y2, row-major
  auto x = cycle_graph(5), y = complete_graph(3);
  auto p = direct_product(x, y);
  for (int a = 0; a < 15; ++a)
    for (int b = 0; b < 15; ++b)
      CHECK(p.adjacent(a, b) == (x.adjacent(a / 3, b / 3) && y.adjacent(a % 3, b % 3)));
}

TEST_CASE("lexicographic products") {
  auto k22 = lexicographic_product(complete_graph(2), edgeless_graph(2));
  CHECK(is_isomorphic(k22, cycle_graph(4)).has_value());
  auto c5 = cycle_graph(5);
  CHECK(lexicographic_product(c5, complete_graph(1)) == c5);
  // complete multipartite K_{2,2}: every vertex adjacent to exactly the other part
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(k22.adjacent(a, b) == (a / 2 != b / 2));
  auto x = cycle_graph(4), y = cycle_graph(3);
  auto l = lexicographic_product(x, y);
  for (int a = 0; a < 12; ++a)
    for (int b = 0; b < 12; ++b)
      CHECK(l.adjacent(a, b) == (x.adjacent(a / 3, b / 3) || (a / 3 == b / 3 && y.adjacent(a % 3, b % 3))));
}

TEST_CASE("triangle profile") {
  for (int t : triangle_profile(cycle_graph(4))) CHECK(t == 0);
  for (int t : triangle_profile(complete_graph(4))) CHECK(t == 3);
  for (int t : triangle_profile(petersen_graph())) CHECK(t == 0);
}

TEST_CASE("graph6 matches an independent encoder") {
  CHECK(to_graph6(edgeless_graph(1)) == "@");
  CHECK(to_graph6(Graph(0)) == "?");
  CHECK(to_graph6(cycle_graph(4)) == "Cl");
  std::mt19937_64 rng(7);
  for (int n : {1, 2, 5, 6, 7, 12, 62, 63, 64, 100}) {
    Graph g(n);
    std::bernoulli_distribution coin(0.3);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (coin(rng)) g.add_edge(u, v);
    const auto s = to_graph6(g);
    CHECK(s == oracle::graph6(g));
    CHECK(from_graph6(s) == g);
    CHECK(from_graph6(">>graph6<<" + s + "\n") == g);
    CHECK(from_json(to_json(g)) == g);
  }
  CHECK_THROWS_AS(from_graph6("C"), InvalidInput);
  CHECK_THROWS_AS(from_graph6(""), InvalidInput);
}

TEST_CASE("json and dot exports") {
  auto g = cycle_graph(4);
  CHECK(to_json(g) == R"({"edges":[[0,1],[0,3],[1,2],[2,3]],"n":4})");
  g.set_labels({"a", "b", "c", "d"});
  auto dot = to_dot(g);
  CHECK(dot.find("graph G {") == 0);
  CHECK(dot.find("label=\"c\"") != std::string::npos);
  CHECK(dot.find("0 -- 3") != std::string::npos);
  CHECK_THROWS_AS(from_json(R"({"n":2,"edges":[[0,0]]})"), InvalidInput);
}
