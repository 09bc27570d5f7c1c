#pragma once

#include <array>
#include <deque>
#include <set>

#include "dgm/core.hpp"

namespace dgm {

// Multigraph with loops and parallel edges. Edge labels are unique; vertex
// identification under contraction concatenates the end labels so callers
// (grafts in particular) can locate the merged vertex.
struct GraphEdge {
  std::string label;
  std::string u, v;
  bool is_loop() const { return u == v; }
};

struct MultiGraph {
  std::vector<std::string> vertices;
  std::vector<GraphEdge> edges;

  MultiGraph() = default;
  MultiGraph(std::vector<std::string> vs, std::vector<GraphEdge> es)
      : vertices(std::move(vs)), edges(std::move(es)) {
    std::set<std::string> vseen(vertices.begin(), vertices.end());
    if (vseen.size() != vertices.size()) throw LabelError("duplicate vertex label");
    std::set<std::string> eseen;
    for (auto& e : edges) {
      if (!eseen.insert(e.label).second) throw LabelError("duplicate edge label: " + e.label);
      if (!vseen.count(e.u) || !vseen.count(e.v))
        throw LabelError("edge " + e.label + " has an unknown end");
    }
  }

  int n_vertices() const { return (int)vertices.size(); }
  int n_edges() const { return (int)edges.size(); }

  int vertex_index(const std::string& v) const {
    for (int i = 0; i < n_vertices(); ++i)
      if (vertices[i] == v) return i;
    throw LabelError("unknown vertex: " + v);
  }

  const GraphEdge& edge(const std::string& label) const {
    for (auto& e : edges)
      if (e.label == label) return e;
    throw LabelError("unknown edge: " + label);
  }

  bool has_vertex(const std::string& v) const {
    for (auto& w : vertices)
      if (w == v) return true;
    return false;
  }

  std::vector<std::string> edge_labels() const {
    std::vector<std::string> out;
    out.reserve(edges.size());
    for (auto& e : edges) out.push_back(e.label);
    return out;
  }

  bool is_simple() const {
    std::set<std::pair<std::string, std::string>> seen;
    for (auto& e : edges) {
      if (e.is_loop()) return false;
      auto key = std::minmax(e.u, e.v);
      if (!seen.insert({key.first, key.second}).second) return false;
    }
    return true;
  }

  // Components as vertex index -> component id.
  std::vector<int> vertex_components() const {
    std::vector<int> comp(n_vertices(), -1);
    int c = 0;
    for (int s = 0; s < n_vertices(); ++s) {
      if (comp[s] >= 0) continue;
      comp[s] = c;
      std::deque<int> q{s};
      while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (auto& e : edges) {
          if (e.is_loop()) continue;
          int a = vertex_index(e.u), b = vertex_index(e.v);
          int other = -1;
          if (a == x) other = b;
          else if (b == x) other = a;
          if (other >= 0 && comp[other] < 0) {
            comp[other] = c;
            q.push_back(other);
          }
        }
      }
      ++c;
    }
    return comp;
  }

  int n_components() const {
    auto c = vertex_components();
    return c.empty() ? 0 : 1 + *std::max_element(c.begin(), c.end());
  }

  bool is_connected() const { return n_vertices() <= 1 || n_components() == 1; }
};

inline MultiGraph delete_edge(const MultiGraph& g, const std::string& label) {
  g.edge(label);
  auto out = g;
  out.edges.erase(std::remove_if(out.edges.begin(), out.edges.end(),
                                 [&](const GraphEdge& e) { return e.label == label; }),
                  out.edges.end());
  return out;
}

inline MultiGraph delete_vertex(const MultiGraph& g, const std::string& v) {
  g.vertex_index(v);
  MultiGraph out;
  for (auto& w : g.vertices)
    if (w != v) out.vertices.push_back(w);
  for (auto& e : g.edges)
    if (e.u != v && e.v != v) out.edges.push_back(e);
  return out;
}

// Contracting a loop deletes it. The merged vertex is named "u*v".
inline MultiGraph contract_edge(const MultiGraph& g, const std::string& label) {
  const auto& e = g.edge(label);
  if (e.is_loop()) return delete_edge(g, label);
  std::string merged = e.u + "*" + e.v;
  MultiGraph out;
  for (auto& w : g.vertices) {
    if (w == e.u || w == e.v) continue;
    out.vertices.push_back(w);
  }
  out.vertices.push_back(merged);
  for (auto& f : g.edges) {
    if (f.label == label) continue;
    GraphEdge h = f;
    if (h.u == e.u || h.u == e.v) h.u = merged;
    if (h.v == e.u || h.v == e.v) h.v = merged;
    out.edges.push_back(h);
  }
  return out;
}

// --- named graphs ---------------------------------------------------------

// Wheel W_k on {s, t1..tk}: e_{2i-1} = t_i t_{i+1} (rim), e_{2i} = s t_{i+1}
// (spoke), indices cyclic with t_{k+1} = t_1.
inline MultiGraph wheel(int k) {
  if (k < 2) throw ArgumentError("wheel needs k >= 2");
  std::vector<std::string> vs{"s"};
  for (int i = 1; i <= k; ++i) vs.push_back("t" + std::to_string(i));
  std::vector<GraphEdge> es;
  auto t = [&](int i) { return "t" + std::to_string((i - 1) % k + 1); };
  for (int i = 1; i <= k; ++i) {
    es.push_back({"e" + std::to_string(2 * i - 1), t(i), t(i + 1)});
    es.push_back({"e" + std::to_string(2 * i), "s", t(i + 1)});
  }
  return MultiGraph(vs, es);
}

inline bool is_rim_label(const std::string& l) {
  if (l.size() < 2 || l[0] != 'e') return false;
  long v = std::stol(l.substr(1));
  return v % 2 == 1;
}

// Pi_k = W_{floor(k/2)+1} / e_{k+1} for odd k, W_{floor(k/2)+1} \ e_{k+1} / e_{k+2}
// for even k; edge labels e_1..e_k survive.
inline MultiGraph pi_graph(int k) {
  if (k < 2) throw ArgumentError("pi needs k >= 2");
  MultiGraph w = wheel(k / 2 + 1);
  if (k % 2 == 1) return contract_edge(w, "e" + std::to_string(k + 1));
  return contract_edge(delete_edge(w, "e" + std::to_string(k + 1)), "e" + std::to_string(k + 2));
}

inline MultiGraph complete_graph(int n) {
  std::vector<std::string> vs;
  for (int i = 1; i <= n; ++i) vs.push_back("v" + std::to_string(i));
  std::vector<GraphEdge> es;
  int id = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      es.push_back({"e" + std::to_string(id++), vs[i], vs[j]});
  return MultiGraph(vs, es);
}

inline MultiGraph complete_bipartite(int a, int b) {
  std::vector<std::string> vs;
  for (int i = 1; i <= a; ++i) vs.push_back("a" + std::to_string(i));
  for (int i = 1; i <= b; ++i) vs.push_back("b" + std::to_string(i));
  std::vector<GraphEdge> es;
  int id = 1;
  for (int i = 1; i <= a; ++i)
    for (int j = 1; j <= b; ++j)
      es.push_back({"e" + std::to_string(id++), "a" + std::to_string(i), "b" + std::to_string(j)});
  return MultiGraph(vs, es);
}

// K33 plus one edge inside a part; deleting it gives back K33.
inline MultiGraph k33_prime() {
  MultiGraph g = complete_bipartite(3, 3);
  g.edges.push_back({"e10", "a1", "a2"});
  return g;
}

inline MultiGraph cycle_graph(int n) {
  std::vector<std::string> vs;
  for (int i = 1; i <= n; ++i) vs.push_back("v" + std::to_string(i));
  std::vector<GraphEdge> es;
  for (int i = 1; i <= n; ++i)
    es.push_back({"e" + std::to_string(i), vs[i - 1], vs[i % n]});
  return MultiGraph(vs, es);
}

// --- connectivity ---------------------------------------------------------

// k-connected: more than k vertices and no cutset of size < k.
inline bool is_k_connected(const MultiGraph& g, int k) {
  int n = g.n_vertices();
  if (n <= k) return false;
  if (!g.is_connected()) return k <= 0;
  // scan all vertex subsets of size < k
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int sz = 1; sz < k; ++sz) {
    std::vector<int> pick(sz);
    std::function<bool(int, int)> rec = [&](int pos, int start) -> bool {
      if (pos == sz) {
        MultiGraph h = g;
        // delete in descending index order
        std::vector<std::string> names;
        for (int i : pick) names.push_back(g.vertices[i]);
        for (auto& nm : names) h = delete_vertex(h, nm);
        return !h.is_connected();
      }
      for (int i = start; i < n; ++i) {
        pick[pos] = i;
        if (rec(pos + 1, i + 1)) return true;
      }
      return false;
    };
    if (rec(0, 0)) return false;
  }
  return true;
}

// Three internally disjoint paths from src to the three given targets, one
// each, sharing no vertex besides src. Unit-capacity vertex-split max-flow.
inline std::optional<std::array<std::vector<std::string>, 3>> internally_disjoint_paths(
    const MultiGraph& g, const std::string& src, const std::array<std::string, 3>& targets) {
  int n = g.n_vertices();
  int s = g.vertex_index(src);
  std::array<int, 3> t{};
  for (int i = 0; i < 3; ++i) {
    t[i] = g.vertex_index(targets[i]);
    if (t[i] == s) return std::nullopt;
  }
  if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]) return std::nullopt;

  // nodes: 2*i = v_in, 2*i+1 = v_out, plus super sink 2n
  int N = 2 * n + 1, SINK = 2 * n;
  std::vector<std::map<int, int>> cap(N);
  auto add = [&](int a, int b, int c) { cap[a][b] += c; cap[b]; };
  for (int i = 0; i < n; ++i) add(2 * i, 2 * i + 1, i == s ? 3 : 1);
  for (auto& e : g.edges) {
    if (e.is_loop()) continue;
    int a = g.vertex_index(e.u), b = g.vertex_index(e.v);
    add(2 * a + 1, 2 * b, 3);
    add(2 * b + 1, 2 * a, 3);
  }
  for (int i = 0; i < 3; ++i) add(2 * t[i] + 1, SINK, 1);

  std::vector<std::map<int, int>> flow(N);
  int total = 0;
  while (total < 3) {
    std::vector<int> prev(N, -1);
    std::deque<int> q{2 * s};
    prev[2 * s] = 2 * s;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (auto& [y, c] : cap[x])
        if (prev[y] < 0 && c - flow[x][y] > 0) {
          prev[y] = x;
          q.push_back(y);
        }
      // residual reverse edges
      for (int y = 0; y < N; ++y) {
        if (prev[y] >= 0) continue;
        auto it = flow[y].find(x);
        if (it != flow[y].end() && it->second > 0) {
          prev[y] = x;
          q.push_back(y);
        }
      }
    }
    if (prev[SINK] < 0) return std::nullopt;
    int x = SINK;
    while (x != 2 * s) {
      int p = prev[x];
      auto it = flow[x].find(p);
      if (it != flow[x].end() && it->second > 0)
        it->second -= 1;
      else
        flow[p][x] += 1;
      x = p;
    }
    ++total;
  }

  // decompose into three vertex paths
  std::array<std::vector<std::string>, 3> paths;
  for (int i = 0; i < 3; ++i) {
    std::vector<std::string> path{src};
    int x = 2 * s;
    while (x != SINK) {
      int next = -1;
      for (auto& [y, f] : flow[x])
        if (f > 0) {
          next = y;
          break;
        }
      if (next < 0) return std::nullopt;  // should not happen
      flow[x][next] -= 1;
      x = next;
      if (x != SINK && x % 2 == 0) path.push_back(g.vertices[x / 2]);
    }
    paths[i] = path;
  }
  // order paths by their target
  std::array<std::vector<std::string>, 3> ordered;
  for (auto& p : paths) {
    for (int i = 0; i < 3; ++i)
      if (p.back() == targets[i]) ordered[i] = p;
  }
  for (auto& p : ordered)
    if (p.empty()) return std::nullopt;
  return ordered;
}

// --- isomorphism and minors (small graphs) --------------------------------

namespace detail {

// Degree/loop/parallel signature per vertex, used to prune the permutation
// search.
inline std::vector<std::string> vertex_signatures(const MultiGraph& g) {
  std::vector<std::string> sig(g.n_vertices());
  for (int i = 0; i < g.n_vertices(); ++i) {
    int deg = 0, loops = 0;
    std::map<int, int> mult;
    for (auto& e : g.edges) {
      int a = g.vertex_index(e.u), b = g.vertex_index(e.v);
      if (e.is_loop()) {
        if (a == i) ++loops;
        continue;
      }
      if (a == i) { ++deg; ++mult[b]; }
      if (b == i) { ++deg; ++mult[a]; }
    }
    std::vector<int> ms;
    for (auto& [_, c] : mult) ms.push_back(c);
    std::sort(ms.begin(), ms.end());
    std::string s = "d" + std::to_string(deg) + "l" + std::to_string(loops) + "m";
    for (int c : ms) s += std::to_string(c) + ",";
    sig[i] = s;
  }
  return sig;
}

}  // namespace detail

// Vertex bijection carrying edges to edges with multiplicity, if one exists.
inline std::optional<std::vector<int>> graph_isomorphism(const MultiGraph& g, const MultiGraph& h) {
  if (g.n_vertices() != h.n_vertices() || g.n_edges() != h.n_edges()) return std::nullopt;
  int n = g.n_vertices();
  auto adj = [](const MultiGraph& x) {
    std::map<std::pair<int, int>, int> m;
    for (auto& e : x.edges) {
      int a = x.vertex_index(e.u), b = x.vertex_index(e.v);
      if (a > b) std::swap(a, b);
      ++m[{a, b}];
    }
    return m;
  };
  auto ga = adj(g), ha = adj(h);
  auto gs = detail::vertex_signatures(g), hs = detail::vertex_signatures(h);
  {
    auto a = gs, b = hs;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  std::vector<int> map(n, -1), used(n, 0);
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == n) return true;
    for (int j = 0; j < n; ++j) {
      if (used[j] || gs[i] != hs[j]) continue;
      bool ok = true;
      for (int p = 0; p <= i && ok; ++p) {
        if (map[p] < 0 && p != i) continue;
        int q = (p == i) ? j : map[p];
        auto key = std::minmax(p, i);
        auto hkey = std::minmax(q, j);
        int cg = 0, ch = 0;
        auto it = ga.find({key.first, key.second});
        if (it != ga.end()) cg = it->second;
        auto jt = ha.find({hkey.first, hkey.second});
        if (jt != ha.end()) ch = jt->second;
        if (cg != ch) ok = false;
      }
      if (!ok) continue;
      map[i] = j;
      used[j] = 1;
      if (rec(i + 1)) return true;
      map[i] = -1;
      used[j] = 0;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return map;
}

struct GraphMinorWitness {
  // ops in order: ("d", edge) deletions, ("c", edge) contractions,
  // ("v", vertex) isolated-vertex deletions
  std::vector<std::pair<char, std::string>> ops;
};

inline MultiGraph apply_graph_ops(MultiGraph g, const GraphMinorWitness& w) {
  for (auto& [op, l] : w.ops) {
    if (op == 'd') g = delete_edge(g, l);
    else if (op == 'c') g = contract_edge(g, l);
    else g = delete_vertex(g, l);
  }
  return g;
}

// Exhaustive minor search over small graphs; exact-state memoization.
inline std::optional<GraphMinorWitness> graph_minor_search(const MultiGraph& g, const MultiGraph& h) {
  if (g.n_edges() > 14) throw ResourceError("graph minor search beyond 14 edges");
  auto serialize = [](const MultiGraph& x) {
    std::vector<std::string> es;
    for (auto& e : x.edges) {
      auto k = std::minmax(e.u, e.v);
      es.push_back(k.first + "|" + k.second);
    }
    std::sort(es.begin(), es.end());
    std::string s;
    auto vs = x.vertices;
    std::sort(vs.begin(), vs.end());
    for (auto& v : vs) s += v + ";";
    s += "/";
    for (auto& e : es) s += e + ";";
    return s;
  };
  std::set<std::string> seen;
  struct State {
    MultiGraph g;
    GraphMinorWitness w;
  };
  std::deque<State> q;
  q.push_back({g, {}});
  seen.insert(serialize(g));
  while (!q.empty()) {
    State st = q.front();
    q.pop_front();
    // drop isolated vertices first (canonical)
    bool dropped = false;
    for (auto& v : st.g.vertices) {
      bool isolated = true;
      for (auto& e : st.g.edges)
        if (e.u == v || e.v == v) isolated = false;
      if (isolated && st.g.n_vertices() > h.n_vertices()) {
        auto nw = st.w;
        nw.ops.push_back({'v', v});
        State ns{delete_vertex(st.g, v), nw};
        auto key = serialize(ns.g);
        if (seen.insert(key).second) q.push_back(ns);
        dropped = true;
        break;
      }
    }
    if (dropped) continue;
    if (st.g.n_edges() == h.n_edges() && st.g.n_vertices() == h.n_vertices() &&
        graph_isomorphism(st.g, h))
      return st.w;
    if (st.g.n_edges() <= h.n_edges()) continue;
    for (auto& e : st.g.edges) {
      for (char op : {'d', 'c'}) {
        MultiGraph next = (op == 'd') ? delete_edge(st.g, e.label) : contract_edge(st.g, e.label);
        auto key = serialize(next);
        if (!seen.insert(key).second) continue;
        auto nw = st.w;
        nw.ops.push_back({op, e.label});
        q.push_back({next, nw});
      }
    }
  }
  return std::nullopt;
}

}  // namespace dgm
