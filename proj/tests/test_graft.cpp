#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "dgm/graft.hpp"

using namespace dgm;

namespace {

Graft random_graft(std::mt19937_64& rng, int max_edges, bool connected_graph = false) {
  for (int attempt = 0;; ++attempt) {
    int nv = 2 + (int)(rng() % 5);
    int ne = 1 + (int)(rng() % max_edges);
    std::vector<std::string> vs;
    for (int i = 1; i <= nv; ++i) vs.push_back("v" + std::to_string(i));
    std::vector<GraphEdge> es;
    for (int i = 1; i <= ne; ++i) {
      std::string u = vs[rng() % nv], v = vs[rng() % nv];
      es.push_back({"e" + std::to_string(i), u, v});
    }
    MultiGraph g(vs, es);
    std::set<std::string> t;
    for (auto& v : vs)
      if (rng() % 2) t.insert(v);
    Graft gr(g, t);
    if (gr.graph.n_edges() == 0) continue;
    if (connected_graph && !gr.graph.is_connected()) continue;
    return gr;
  }
}

SetSystem brute_feasible(const Graft& g) {
  // raw subset scan oracle
  int ne = g.graph.n_edges();
  int nv = g.graph.n_vertices();
  auto gcomp = g.graph.vertex_components();
  std::vector<int> gsz(nv, 0);
  for (int v = 0; v < nv; ++v) ++gsz[gcomp[v]];
  std::vector<Mask> fam;
  for (Mask f = 0; f < (Mask{1} << ne); ++f) {
    detail::Dsu dsu(nv);
    bool forest = true;
    for (int e = 0; e < ne && forest; ++e) {
      if (!has_bit(f, e)) continue;
      auto& ed = g.graph.edges[e];
      int a = g.graph.vertex_index(ed.u), b = g.graph.vertex_index(ed.v);
      if (a == b || !dsu.unite(a, b)) forest = false;
    }
    if (!forest) continue;
    std::map<int, std::pair<int, int>> stat;
    for (int v = 0; v < nv; ++v) {
      auto& s = stat[dsu.find(v)];
      ++s.second;
      if (g.is_terminal(g.graph.vertices[v])) ++s.first;
    }
    bool ok = true;
    for (auto& [root, s] : stat) {
      if (s.first % 2 == 1) continue;
      if (s.first == 0 && s.second == gsz[gcomp[root]]) continue;
      ok = false;
    }
    if (ok) fam.push_back(f);
  }
  return SetSystem(g.graph.edge_labels(), fam);
}

}  // namespace

TEST_CASE("feasible sets of the Delta grafts") {
  auto f1 = feasible_sets(delta1());
  REQUIRE(f1.feasible == std::vector<Mask>{0, 0b011, 0b101, 0b110});
  auto f3 = feasible_sets(delta3());
  REQUIRE(f3.feasible == std::vector<Mask>{0b001, 0b010, 0b100, 0b111});
  // T = empty: exactly the maximal spanning forests
  MultiGraph k3 = complete_graph(3);
  Graft g(k3, {});
  auto f = feasible_sets(g);
  REQUIRE(f.feasible.size() == 3);
  for (Mask m : f.feasible) REQUIRE(popcount(m) == 2);
}

TEST_CASE("feasible family matches the brute-force oracle and is even") {
  std::mt19937_64 rng(500);
  for (int it = 0; it < 60; ++it) {
    auto g = random_graft(rng, 7);
    auto fast = feasible_sets(g);
    auto brute = brute_feasible(g);
    REQUIRE(fast.feasible == brute.feasible);
    REQUIRE(is_even(fast));
    REQUIRE(is_delta_matroid(fast));
  }
}

TEST_CASE("collapse for |T| <= 2") {
  MultiGraph path({"a", "b", "c"}, {{"e1", "a", "b"}, {"e2", "b", "c"}});
  Graft g(path, {"a", "c"});
  auto m = collapse_small_T(g);
  REQUIRE(m.size() == 2);
  auto fam = feasible_sets(g);
  REQUIRE(*m.bases() == fam.feasible);
  REQUIRE(fam.feasible.size() == 2);  // the two spanning trees of the triangle
  // |T| <= 1 is the plain cycle matroid
  Graft g0(path, {});
  REQUIRE(matroids_equal(collapse_small_T(g0), cycle_matroid(path)));
  Graft g1(path, {"b"});
  REQUIRE(matroids_equal(collapse_small_T(g1), cycle_matroid(path)));
  Graft g3(path, {"a", "b", "c"});
  REQUIRE_THROWS_AS(collapse_small_T(g3), PreconditionError);
}

TEST_CASE("T-bridges and T-tunnels") {
  // bridge of a T-free component is a T-bridge
  MultiGraph two({"a", "b", "c", "d"}, {{"e1", "a", "b"}, {"e2", "c", "d"}});
  Graft g(two, {"a"});
  REQUIRE(is_T_bridge(g, "e2"));
  // e1 is also a T-bridge: deleting it strands b in a T-free non-component
  REQUIRE(is_T_bridge(g, "e1"));
  MultiGraph tri = complete_graph(3);
  REQUIRE_FALSE(is_T_bridge(Graft(tri, {"v1"}), "e1"));
  // single edge between two terminals is a T-tunnel
  MultiGraph one({"u", "v"}, {{"e", "u", "v"}});
  Graft t(one, {"u", "v"});
  REQUIRE(is_T_tunnel(t, "e"));
  REQUIRE(feasible_sets(t).feasible == std::vector<Mask>{0});
  // cross-check the feasible-set characterizations on random grafts
  std::mt19937_64 rng(321);
  for (int it = 0; it < 40; ++it) {
    auto gr = random_graft(rng, 6);
    auto fam = feasible_sets(gr);
    for (auto& e : gr.graph.edge_labels()) {
      int idx = fam.ground.at(e);
      bool in_all = true, in_none = true;
      for (Mask f : fam.feasible) {
        if (has_bit(f, idx)) in_none = false;
        else in_all = false;
      }
      REQUIRE(in_all == is_T_bridge(gr, e));
      bool loop = gr.graph.edge(e).is_loop();
      REQUIRE(in_none == (loop || is_T_tunnel(gr, e)));
    }
  }
}

TEST_CASE("graft contraction updates terminals by parity") {
  MultiGraph p({"u", "v", "w"}, {{"e", "u", "v"}, {"f", "v", "w"}});
  Graft g(p, {"u"});
  auto c = graft_contract(g, "e");  // |T cap {u,v}| = 1: merged vertex terminal
  REQUIRE(c.terminals.count("u*v") == 1);
  Graft g2(p, {"u", "v"});
  auto c2 = graft_contract(g2, "e");  // both ends terminal: merged vertex not
  REQUIRE(c2.terminals.empty());
  Graft g3(p, {"w"});
  auto c3 = graft_contract(g3, "e");  // neither end terminal
  REQUIRE(c3.terminals == std::set<std::string>{"w"});
}

TEST_CASE("graft deletion and contraction identities") {
  std::mt19937_64 rng(1234);
  for (int it = 0; it < 60; ++it) {
    auto g = random_graft(rng, 6);
    auto fam = feasible_sets(g);
    for (auto& e : g.graph.edge_labels()) {
      int idx = fam.ground.at(e);
      // deletion identity
      {
        auto lhs = feasible_sets(graft_delete(g, e));
        SetSystem rhs = is_T_bridge(g, e) ? dm_minor(fam, bit(idx), bit(idx))
                                          : delete_set(fam, bit(idx));
        // reconcile label orders
        REQUIRE(sorted_labels(lhs.ground.labels) == sorted_labels(rhs.ground.labels));
        REQUIRE(lhs.feasible == rhs.feasible);
      }
      // contraction identity
      {
        auto lhs = feasible_sets(graft_contract(g, e));
        bool tunnel_or_loop = g.graph.edge(e).is_loop() || is_T_tunnel(g, e);
        SetSystem rhs = tunnel_or_loop ? delete_set(fam, bit(idx))
                                       : dm_minor(fam, bit(idx), bit(idx));
        REQUIRE(lhs.feasible == rhs.feasible);
      }
    }
  }
}

TEST_CASE("graft connectedness") {
  REQUIRE(is_connected_graft(delta1()).connected);
  REQUIRE(is_connected_graft(delta2()).connected);
  // loop makes it disconnected
  MultiGraph lg({"a", "b"}, {{"l", "a", "a"}, {"e", "a", "b"}});
  REQUIRE_FALSE(is_connected_graft(Graft(lg, {"a"})).connected);
  // two blocks sharing exactly T
  MultiGraph blocks({"u", "v", "x", "y"},
                    {{"e1", "u", "x"}, {"e2", "x", "v"}, {"e3", "u", "y"}, {"e4", "y", "v"}});
  auto res = is_connected_graft(Graft(blocks, {"u", "v"}));
  REQUIRE_FALSE(res.connected);
  REQUIRE(res.witness == "T-separation");
  // cross-validation against delta-matroid connectivity
  std::mt19937_64 rng(777);
  int done = 0;
  while (done < 40) {
    auto g = random_graft(rng, 6);
    if (g.graph.n_edges() < 2) continue;
    ++done;
    bool dm_conn = is_connected_dm(feasible_sets(g));
    REQUIRE(is_connected_graft(g).connected == dm_conn);
  }
}

TEST_CASE("delta minors") {
  // the Delta grafts are their own witnesses
  auto w2 = find_delta_minor(delta2());
  REQUIRE(w2);
  REQUIRE(w2->target == "Delta2");
  // 3-connected G with |T| >= 3 always has one
  Graft k4(complete_graph(4), {"v1", "v2", "v3"});
  auto wk4 = find_delta_minor(k4);
  REQUIRE(wk4);
  REQUIRE(graft_witness_valid(k4, *wk4));
  // grafts with a valid cyclic decomposition have none
  MultiGraph c4 = cycle_graph(4);
  Graft gc4(c4, {"v1", "v2", "v3", "v4"});
  REQUIRE_FALSE(find_delta_minor(gc4));
  // agreement with the exhaustive oracle
  std::mt19937_64 rng(31337);
  for (int it = 0; it < 60; ++it) {
    auto g = random_graft(rng, 6);
    auto fast = find_delta_minor(g);
    auto slow = exhaustive_delta_minor(g);
    REQUIRE(fast.has_value() == slow.has_value());
    if (fast) REQUIRE(graft_witness_valid(g, *fast));
  }
}

TEST_CASE("validate_cyclic") {
  // single-bag decomposition of a |T| <= 2 graft
  MultiGraph p({"a", "b", "c"}, {{"e1", "a", "b"}, {"e2", "b", "c"}});
  Graft g(p, {"a", "c"});
  CyclicDecomposition d;
  d.host.vertices = {"x"};
  d.bags["x"] = {"a", "b", "c"};
  REQUIRE(validate_cyclic(g, d, true).ok);
  // any single-host-vertex proposal for Delta1 fails C4
  CyclicDecomposition bad;
  bad.host.vertices = {"x"};
  bad.bags["x"] = {"u", "v", "w"};
  REQUIRE_FALSE(validate_cyclic(delta1(), bad, false).ok);
}

TEST_CASE("build_cyclic constructions") {
  // 4-cycle with all vertices terminal: host C4, bags are the edges
  Graft gc4(cycle_graph(4), {"v1", "v2", "v3", "v4"});
  auto d = build_cyclic(gc4);
  REQUIRE(d);
  REQUIRE(d->host.n_vertices() == 4);
  REQUIRE(d->host.n_edges() == 4);
  REQUIRE(validate_cyclic(gc4, *d, true).ok);
  // path with all vertices terminal and no cycle: path host
  MultiGraph p4({"v1", "v2", "v3", "v4"},
                {{"e1", "v1", "v2"}, {"e2", "v2", "v3"}, {"e3", "v3", "v4"}});
  Graft gp(p4, {"v1", "v2", "v3", "v4"});
  auto dp = build_cyclic(gp);
  REQUIRE(dp);
  REQUIRE(dp->host.n_vertices() == 3);
  REQUIRE(dp->host.n_edges() == 2);
  REQUIRE(validate_cyclic(gp, *dp, true).ok);
  // Delta2 has none
  REQUIRE_FALSE(build_cyclic(delta2()));
  // off-path components get assigned to segments
  MultiGraph withcomp({"v1", "v2", "v3", "w"},
                      {{"e1", "v1", "v2"}, {"e2", "v2", "v3"}, {"f", "v2", "w"}});
  Graft gw(withcomp, {"v1", "v2", "v3"});
  auto dw = build_cyclic(gw);
  REQUIRE(dw);
  REQUIRE(validate_cyclic(gw, *dw, true).ok);
}

TEST_CASE("build_cyclic matches absence of delta minors") {
  std::mt19937_64 rng(909090);
  int done = 0;
  while (done < 50) {
    auto g = random_graft(rng, 6, true);
    if (g.terminals.size() < 3 || !g.graph.is_connected()) continue;
    ++done;
    auto d = build_cyclic(g);
    auto w = exhaustive_delta_minor(g);
    REQUIRE(d.has_value() == !w.has_value());
    if (d) REQUIRE(validate_cyclic(g, *d, true).ok);
  }
}

TEST_CASE("cyclic transfer across minors") {
  std::mt19937_64 rng(606);
  int done = 0;
  while (done < 40) {
    auto g = random_graft(rng, 6, true);
    if (g.terminals.size() < 3 || !g.graph.is_connected()) continue;
    auto d = build_cyclic(g);
    if (!d) continue;
    ++done;
    for (auto& e : g.graph.edge_labels()) {
      // deletion keeps the decomposition
      {
        auto nd = cyclic_minor_transfer(g, *d, {'d', e});
        auto minor = graft_delete(g, e);
        REQUIRE(validate_cyclic(minor, nd, false).ok);
      }
      // contraction transfers across the case analysis
      {
        auto nd = cyclic_minor_transfer(g, *d, {'c', e});
        auto minor = graft_contract(g, e);
        REQUIRE(validate_cyclic(minor, nd, false).ok);
      }
    }
  }
}
