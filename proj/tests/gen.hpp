// Shared instance generators for tests and the acceptance suite.
#pragma once

#include <random>

#include "dgm/delta_graphic.hpp"

namespace gen {

using namespace dgm;

inline BinaryMatroid prefixed(const BinaryMatroid& m, const std::string& p) {
  std::map<std::string, std::string> r;
  for (auto& l : m.elems.labels) r[l] = p + l;
  return m.relabel(r);
}

// Small graphic pool for generalized-wheel parts; duals give the cographic pool.
inline BinaryMatroid random_graphic_piece(std::mt19937_64& rng) {
  switch (rng() % 5) {
    case 0: return catalog("U(2,3)");
    case 1: return catalog("U(1,3)");
    case 2: return catalog("M(K4)");
    case 3: return catalog("U(3,4)");
    default: return catalog("M(W_3)");
  }
}

// Random generalized wheel: full W_k base, parts attached at a random set of
// basepoints with the class dictated by rim/spoke.
inline GeneralizedWheelSpec random_generalized_wheel(std::mt19937_64& rng, int max_elems = 20) {
  GeneralizedWheelSpec spec;
  spec.k = 3 + (int)(rng() % 4);
  int budget = max_elems - 2 * spec.k;
  int serial = 0;
  for (int i = 1; i <= 2 * spec.k && budget > 0; ++i) {
    if (rng() % 3) continue;
    std::string bp = "e" + std::to_string(i);
    bool rim = (i % 2 == 1);
    auto piece = random_graphic_piece(rng);
    if (!rim) piece = piece.dual();
    if ((int)piece.size() - 1 > budget) continue;
    budget -= (int)piece.size() - 1;
    auto part = prefixed(piece, "p" + std::to_string(++serial) + ".");
    part = part.relabel({{part.elems.labels[0], bp}});
    GWAttachment a;
    a.basepoint = bp;
    a.part = part;
    a.cographic = !rim;
    spec.attachments.push_back(a);
  }
  return spec;
}

// A fan-shaped delta-graphic matroid: spine U(1,3)-U(2,3)-U(1,3) with
// graphic-only and cographic-only leaves placed per the fan conditions.
inline BinaryMatroid fan_instance() {
  auto v1 = catalog("U(1,3)").with_labels({"#s1", "#e1", "#e2"});
  auto v2 = catalog("U(2,3)").with_labels({"#s1", "#s2", "#ew"});
  auto v3 = catalog("U(1,3)").with_labels({"#s2", "#e3", "#e4"});
  auto x1 = prefixed(catalog("M(K33)"), "x1.").relabel({{"x1.e1", "#e1"}});
  auto y1 = prefixed(catalog("M*(K33)"), "y1.").relabel({{"y1.e1", "#e2"}});
  auto w = prefixed(catalog("M(K33)"), "w.").relabel({{"w.e1", "#ew"}});
  auto x3 = prefixed(catalog("M(K33)"), "x3.").relabel({{"x3.e1", "#e3"}});
  auto y3 = prefixed(catalog("M*(K33)"), "y3.").relabel({{"y3.e1", "#e4"}});
  auto acc = two_sum(v1, v2, "#s1");
  acc = two_sum(acc, v3, "#s2");
  acc = two_sum(acc, x1, "#e1");
  acc = two_sum(acc, y1, "#e2");
  acc = two_sum(acc, w, "#ew");
  acc = two_sum(acc, x3, "#e3");
  acc = two_sum(acc, y3, "#e4");
  return acc;
}

// Connected two-terminal bag graphs used to assemble decomposed grafts.
// Vertices: "i" (in-terminal), "o" (out-terminal), extras "a","b",...
inline MultiGraph random_bag(std::mt19937_64& rng, int max_edges) {
  while (true) {
    int extra = (int)(rng() % 3);
    std::vector<std::string> vs{"i", "o"};
    for (int i = 0; i < extra; ++i) vs.push_back(std::string(1, (char)('a' + i)));
    int ne = 1 + (int)(rng() % max_edges);
    std::vector<GraphEdge> es;
    for (int i = 0; i < ne; ++i) {
      std::string u = vs[rng() % vs.size()], v = vs[rng() % vs.size()];
      if (u == v) continue;  // loopless bags
      es.push_back({"t" + std::to_string(i), u, v});
    }
    if (es.empty()) continue;
    MultiGraph g(vs, es);
    // prune isolated extras, keep terminals
    std::set<std::string> touched{"i", "o"};
    for (auto& e : es) {
      touched.insert(e.u);
      touched.insert(e.v);
    }
    MultiGraph h;
    for (auto& v : g.vertices)
      if (touched.count(v)) h.vertices.push_back(v);
    h.edges = es;
    if (!h.is_connected()) continue;
    return h;
  }
}

// Glues bags around a cycle (host C_{2k}) or path; returns the graft and its
// decomposition. Bag i contributes vertices "b<i>.<name>"; consecutive bags
// share a terminal.
inline std::pair<Graft, CyclicDecomposition> glue_bags(const std::vector<MultiGraph>& bags,
                                                       bool cyclic) {
  int n = (int)bags.size();
  // shared vertex between bag i and i+1: bag i's "o" = bag i+1's "i"
  auto shared_name = [&](int i) { return "u" + std::to_string(i); };
  auto vertex_name = [&](int i, const std::string& v) -> std::string {
    if (v == "o") {
      if (cyclic || i + 1 < n) return shared_name((i + 1) % n);
      return "u" + std::to_string(n);  // path tail terminal
    }
    if (v == "i") {
      if (cyclic || i > 0) return shared_name(i);
      return "u0";  // path head terminal
    }
    return "b" + std::to_string(i) + "." + v;
  };
  MultiGraph g;
  std::set<std::string> vseen;
  std::set<std::string> terms;
  CyclicDecomposition d;
  for (int i = 0; i < n; ++i) {
    std::string host = (cyclic ? "x" : "z") + std::to_string(i + 1);
    d.host.vertices.push_back(host);
    std::vector<std::string> bagv;
    for (auto& v : bags[i].vertices) {
      auto nm = vertex_name(i, v);
      bagv.push_back(nm);
      if (vseen.insert(nm).second) g.vertices.push_back(nm);
    }
    d.bags[host] = bagv;
    for (auto& e : bags[i].edges)
      g.edges.push_back({"g" + std::to_string(i) + "." + e.label, vertex_name(i, e.u),
                         vertex_name(i, e.v)});
    terms.insert(vertex_name(i, "i"));
    terms.insert(vertex_name(i, "o"));
  }
  for (int i = 0; i + (cyclic ? 0 : 1) < n; ++i)
    d.host.edges.push_back({"h" + std::to_string(i + 1), d.host.vertices[i],
                            d.host.vertices[(i + 1) % n]});
  return {Graft(g, terms), d};
}

}  // namespace gen
