#include <catch2/catch_amalgamated.hpp>

#include "dgm/matroid_ops.hpp"

using namespace dgm;

TEST_CASE("cycle matroids of small graphs") {
  REQUIRE(matroids_equal(cycle_matroid(complete_graph(3)),
                         catalog("U(2,3)").with_labels({"e1", "e2", "e3"})));
  REQUIRE(matroids_equal(cycle_matroid(cycle_graph(4)),
                         catalog("U(3,4)").with_labels({"e1", "e2", "e3", "e4"})));
  auto w3 = cycle_matroid(wheel(3));
  REQUIRE(w3.bases()->size() == 16);
  REQUIRE(is_isomorphic(w3, cycle_matroid(complete_graph(4))));
}

TEST_CASE("contraction merges ends and keeps parallel edges") {
  auto k3 = complete_graph(3);
  auto g = contract_edge(k3, "e1");
  REQUIRE(g.n_vertices() == 2);
  REQUIRE(g.n_edges() == 2);
  REQUIRE_FALSE(g.is_simple());
  // contracting a loop deletes it
  MultiGraph h({"a"}, {{"l", "a", "a"}});
  REQUIRE(contract_edge(h, "l").n_edges() == 0);
}

TEST_CASE("graph minors") {
  REQUIRE(graph_minor_search(complete_graph(5), complete_graph(4)));
  REQUIRE(graph_minor_search(k33_prime(), complete_bipartite(3, 3)));
  REQUIRE_FALSE(graph_minor_search(complete_graph(4), complete_graph(5)));
  auto w = graph_minor_search(complete_graph(5), complete_graph(4));
  auto g = apply_graph_ops(complete_graph(5), *w);
  REQUIRE(graph_isomorphism(g, complete_graph(4)));
}

TEST_CASE("wheel and pi construction") {
  auto w3 = wheel(3);
  REQUIRE(w3.n_vertices() == 4);
  REQUIRE(w3.n_edges() == 6);
  REQUIRE(graph_isomorphism(w3, complete_graph(4)));
  auto p2 = cycle_matroid(pi_graph(2));
  REQUIRE(p2.size() == 2);
  REQUIRE(p2.rank() == 1);
  auto p3 = cycle_matroid(pi_graph(3));
  REQUIRE(p3.size() == 3);
  REQUIRE(p3.rank() == 1);
  // pi keeps the surviving wheel labels e1..ek
  auto labels = sorted_labels(pi_graph(4).edge_labels());
  REQUIRE(labels == std::vector<std::string>{"e1", "e2", "e3", "e4"});
}

TEST_CASE("k-connectivity") {
  REQUIRE(is_k_connected(complete_graph(4), 3));
  MultiGraph path({"a", "b", "c"}, {{"e1", "a", "b"}, {"e2", "b", "c"}});
  REQUIRE_FALSE(is_k_connected(path, 2));
  REQUIRE(is_k_connected(path, 1));
  REQUIRE(is_k_connected(wheel(5), 3));
  REQUIRE_FALSE(is_k_connected(wheel(5), 4));
}

TEST_CASE("internally disjoint paths in a wheel") {
  auto w4 = wheel(4);
  auto p = internally_disjoint_paths(w4, "s", {"t1", "t2", "t3"});
  REQUIRE(p);
  // pairwise disjoint except the source
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      std::set<std::string> a((*p)[i].begin() + 1, (*p)[i].end());
      for (size_t t = 1; t < (*p)[j].size(); ++t) REQUIRE_FALSE(a.count((*p)[j][t]));
    }
  // a path graph has no three disjoint paths from an end
  MultiGraph path({"a", "b", "c", "d"},
                  {{"e1", "a", "b"}, {"e2", "b", "c"}, {"e3", "c", "d"}});
  REQUIRE_FALSE(internally_disjoint_paths(path, "a", {"b", "c", "d"}));
}

TEST_CASE("cycle matroid commutes with graph minors") {
  auto g = wheel(4);
  for (auto& e : std::vector<std::string>{"e1", "e2", "e7"}) {
    auto gc = contract_edge(g, e);
    auto mc = cycle_matroid(g).contract_elements(bit(cycle_matroid(g).elems.at(e)));
    REQUIRE(matroids_equal(cycle_matroid(gc), mc));
    auto gd = delete_edge(g, e);
    auto md = cycle_matroid(g).delete_elements(bit(cycle_matroid(g).elems.at(e)));
    REQUIRE(matroids_equal(cycle_matroid(gd), md));
  }
}

TEST_CASE("Whitney: 3-connected graphs with the same cycle matroid are isomorphic") {
  auto g = wheel(4);
  // relabel vertices, shuffle edge list order
  MultiGraph h;
  h.vertices = {"p", "q", "r", "u", "w"};
  std::map<std::string, std::string> vm{{"s", "p"}, {"t1", "q"}, {"t2", "r"}, {"t3", "u"}, {"t4", "w"}};
  for (auto e : g.edges) h.edges.push_back({e.label, vm[e.u], vm[e.v]});
  std::reverse(h.edges.begin(), h.edges.end());
  REQUIRE(matroids_equal(cycle_matroid(g), cycle_matroid(h)));
  REQUIRE(graph_isomorphism(g, h));
}
