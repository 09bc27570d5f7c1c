#pragma once

#include "dgm/gf2.hpp"
#include "dgm/graph.hpp"
#include "dgm/matroid.hpp"

namespace dgm {

// Set system (V, F); tagged a delta-matroid when the symmetric exchange
// axiom holds. Feasible sets are sorted bitset vectors; equality is
// structural.
struct SetSystem {
  LabelIndex ground;
  std::vector<Mask> feasible;

  SetSystem() : ground(std::vector<std::string>{}) { feasible = {0}; }
  SetSystem(std::vector<std::string> labels, std::vector<Mask> fam)
      : ground(std::move(labels)), feasible(std::move(fam)) {
    if (feasible.empty()) throw ArgumentError("feasible family must be nonempty");
    std::sort(feasible.begin(), feasible.end());
    feasible.erase(std::unique(feasible.begin(), feasible.end()), feasible.end());
    Mask allowed = full_mask(ground.size());
    for (Mask f : feasible)
      if (f & ~allowed) throw ArgumentError("feasible set outside the ground set");
  }

  int size() const { return ground.size(); }
  bool is_feasible(Mask f) const {
    return std::binary_search(feasible.begin(), feasible.end(), f);
  }
};

inline SetSystem bases_system(const BinaryMatroid& m) {
  auto bs = m.bases();
  return SetSystem(m.elems.labels, *bs);
}

// Symmetric exchange: for feasible X, Y and x in X^Y there is y in X^Y with
// X^{x,y} feasible (y = x allowed).
inline bool is_delta_matroid(const SetSystem& s) {
  for (Mask x : s.feasible)
    for (Mask y : s.feasible) {
      Mask d = x ^ y;
      if (!d) continue;
      for (int e = 0; e < s.size(); ++e) {
        if (!has_bit(d, e)) continue;
        bool ok = s.is_feasible(x ^ bit(e));  // y = x case
        for (int f = 0; f < s.size() && !ok; ++f) {
          if (f == e || !has_bit(d, f)) continue;
          if (s.is_feasible(x ^ bit(e) ^ bit(f))) ok = true;
        }
        if (!ok) return false;
      }
    }
  return true;
}

inline SetSystem twist(const SetSystem& s, Mask x) {
  std::vector<Mask> fam;
  fam.reserve(s.feasible.size());
  for (Mask f : s.feasible) fam.push_back(f ^ x);
  return SetSystem(s.ground.labels, std::move(fam));
}

inline SetSystem delete_set(const SetSystem& s, Mask x) {
  std::vector<std::string> labels;
  std::vector<int> keep;
  for (int e = 0; e < s.size(); ++e)
    if (!has_bit(x, e)) {
      labels.push_back(s.ground.labels[e]);
      keep.push_back(e);
    }
  std::vector<Mask> fam;
  for (Mask f : s.feasible) {
    if (f & x) continue;
    Mask nf = 0;
    for (int i = 0; i < (int)keep.size(); ++i)
      if (has_bit(f, keep[i])) nf |= bit(i);
    fam.push_back(nf);
  }
  if (fam.empty()) throw ArgumentError("deletion leaves no feasible set");
  return SetSystem(std::move(labels), std::move(fam));
}

inline SetSystem dm_minor(const SetSystem& s, Mask twistset, Mask delset) {
  return delete_set(twist(s, twistset), delset);
}

inline bool is_even(const SetSystem& s) {
  int parity = popcount(s.feasible.front()) & 1;
  for (Mask f : s.feasible)
    if ((popcount(f) & 1) != parity) return false;
  return true;
}

// Fundamental graph G_{M,F}: u ~ v iff F^{u,v} feasible; loop at u iff
// F^{u} feasible.
struct FundamentalGraph {
  LabelIndex verts;
  std::vector<Mask> adj;
  Mask loops = 0;

  bool is_bipartite(std::vector<int>* coloring = nullptr) const {
    if (loops) return false;
    int n = verts.size();
    std::vector<int> color(n, -1);
    for (int s = 0; s < n; ++s) {
      if (color[s] >= 0) continue;
      color[s] = 0;
      std::deque<int> q{s};
      while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (int y = 0; y < n; ++y) {
          if (!has_bit(adj[x], y)) continue;
          if (color[y] < 0) {
            color[y] = 1 - color[x];
            q.push_back(y);
          } else if (color[y] == color[x]) {
            return false;
          }
        }
      }
    }
    if (coloring) *coloring = color;
    return true;
  }

  std::vector<Mask> components() const {
    int n = verts.size();
    std::vector<int> comp(n, -1);
    int c = 0;
    for (int s = 0; s < n; ++s) {
      if (comp[s] >= 0) continue;
      comp[s] = c;
      std::deque<int> q{s};
      while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (int y = 0; y < n; ++y)
          if (has_bit(adj[x], y) && comp[y] < 0) {
            comp[y] = c;
            q.push_back(y);
          }
      }
      ++c;
    }
    std::vector<Mask> out(c, 0);
    for (int e = 0; e < n; ++e) out[comp[e]] |= bit(e);
    return out;
  }
};

inline FundamentalGraph fundamental_graph(const SetSystem& s, Mask f) {
  if (!s.is_feasible(f)) throw ArgumentError("fundamental graph needs a feasible set");
  FundamentalGraph g;
  g.verts = s.ground;
  g.adj.assign(s.size(), 0);
  for (int u = 0; u < s.size(); ++u) {
    if (s.is_feasible(f ^ bit(u))) g.loops |= bit(u);
    for (int v = u + 1; v < s.size(); ++v)
      if (s.is_feasible(f ^ bit(u) ^ bit(v))) {
        g.adj[u] |= bit(v);
        g.adj[v] |= bit(u);
      }
  }
  return g;
}

// Separation test for even delta-matroids: a separation exists iff the
// fundamental graph at any one feasible set is disconnected.
inline std::optional<std::pair<Mask, Mask>> find_separation(const SetSystem& s) {
  if (!is_even(s)) throw PreconditionError("separation test expects an even delta-matroid");
  if (s.size() == 0) return std::nullopt;
  auto g = fundamental_graph(s, s.feasible.front());
  auto comps = g.components();
  if (comps.size() < 2) return std::nullopt;
  Mask x = comps[0];
  return std::make_pair(x, full_mask(s.size()) & ~x);
}

inline bool is_connected_dm(const SetSystem& s) { return !find_separation(s).has_value(); }

// Twisted-matroid recognition: bipartite loop-free fundamental graph, with
// the twist set recovered per component (minimum size, lexicographic ties).
// The secondary view is the dual matroid with the complementary twist.
struct TwistedView {
  BinaryMatroid matroid;
  Mask twist = 0;
  BinaryMatroid dual_matroid;
  Mask dual_twist = 0;
};

inline std::optional<TwistedView> is_twisted_matroid(const SetSystem& s) {
  if (s.size() == 0) {
    TwistedView v{BinaryMatroid(), 0, BinaryMatroid(), 0};
    return v;
  }
  Mask f0 = s.feasible.front();
  auto g = fundamental_graph(s, f0);
  std::vector<int> color;
  if (!g.is_bipartite(&color)) return std::nullopt;
  // choose, per component, the side minimizing the twist
  Mask b0 = 0;
  for (Mask comp : g.components()) {
    Mask side0 = 0, side1 = 0;
    for (int e = 0; e < s.size(); ++e) {
      if (!has_bit(comp, e)) continue;
      (color[e] == 0 ? side0 : side1) |= bit(e);
    }
    Mask t0 = (f0 & comp) ^ side0;  // twist contribution if base side = side0
    Mask t1 = (f0 & comp) ^ side1;
    if (popcount(t0) < popcount(t1) || (popcount(t0) == popcount(t1) && t0 <= t1))
      b0 |= side0;
    else
      b0 |= side1;
  }
  Mask x = f0 ^ b0;
  std::vector<Mask> fam;
  for (Mask f : s.feasible) fam.push_back(f ^ x);
  int sz = popcount(fam.front());
  for (Mask b : fam)
    if (popcount(b) != sz) return std::nullopt;
  BinaryMatroid m = BinaryMatroid::from_bases(s.ground.labels, fam);
  TwistedView view;
  view.matroid = m;
  view.twist = x;
  view.dual_matroid = m.dual();
  view.dual_twist = x ^ full_mask(s.size());
  return view;
}

// Witness that the system has a D1 or MK3 minor; present exactly when the
// system is not a twisted matroid.
struct DeltaObstruction {
  std::string kind;  // "D1" or "MK3"
  Mask twistset = 0;
  Mask delset = 0;
};

inline bool obstruction_matches(const SetSystem& s, const DeltaObstruction& w) {
  SetSystem minor = dm_minor(s, w.twistset, w.delset);
  if (w.kind == "D1") return minor.size() == 1 && minor.feasible == std::vector<Mask>{0, 1};
  if (w.kind != "MK3" || minor.size() != 3) return false;
  std::vector<Mask> expect{0, 0b011, 0b101, 0b110};
  return minor.feasible == expect;
}

inline std::optional<DeltaObstruction> find_D1_or_MK3_minor(const SetSystem& s) {
  bool even = is_even(s);
  // odd pair of minimal symmetric difference gives D1
  if (!even) {
    for (Mask f1 : s.feasible)
      for (Mask f2 : s.feasible)
        if (popcount(f1 ^ f2) == 1) {
          int e = lowest_bit(f1 ^ f2);
          DeltaObstruction w{"D1", f2, full_mask(s.size()) & ~bit(e)};
          if (obstruction_matches(s, w)) return w;
          w.twistset = f1;
          if (obstruction_matches(s, w)) return w;
        }
    // a delta-matroid with odd pairs always has a distance-1 pair
  }
  // even: look for a triangle in some fundamental graph
  for (Mask f : even ? s.feasible : std::vector<Mask>{}) {
    auto g = fundamental_graph(s, f);
    int n = s.size();
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        if (!has_bit(g.adj[a], b)) continue;
        for (int c = b + 1; c < n; ++c) {
          if (!has_bit(g.adj[a], c) || !has_bit(g.adj[b], c)) continue;
          DeltaObstruction w{"MK3", f, full_mask(n) & ~(bit(a) | bit(b) | bit(c))};
          if (obstruction_matches(s, w)) return w;
        }
      }
  }
  // exhaustive fallback (small systems only)
  if (s.size() <= 10) {
    for (Mask t = 0; t < (Mask{1} << s.size()); ++t)
      for (Mask d = 0; d < (Mask{1} << s.size()); ++d) {
        int left = s.size() - popcount(d);
        if (left != 1 && left != 3) continue;
        DeltaObstruction w1{"D1", t, d}, w2{"MK3", t, d};
        try {
          if (left == 1 && obstruction_matches(s, w1)) return w1;
          if (left == 3 && obstruction_matches(s, w2)) return w2;
        } catch (const ArgumentError&) {
        }
      }
  }
  return std::nullopt;
}

// --- graph pivoting and pivot-minors ---------------------------------------

// Simple graphs on labelled vertices as adjacency bitmasks.
struct SimpleGraph {
  LabelIndex verts;
  std::vector<Mask> adj;

  SimpleGraph() : verts(std::vector<std::string>{}) {}
  SimpleGraph(std::vector<std::string> labels, std::vector<Mask> a)
      : verts(std::move(labels)), adj(std::move(a)) {}

  int size() const { return verts.size(); }
  bool edge(int u, int v) const { return has_bit(adj[u], v); }
};

inline SimpleGraph fundamental_simple_graph(const SetSystem& s, Mask f) {
  auto g = fundamental_graph(s, f);
  if (g.loops) throw ArgumentError("fundamental graph has loops");
  return SimpleGraph(g.verts.labels, g.adj);
}

// G ^ uv via the principal pivot transform of the adjacency matrix.
inline SimpleGraph pivot_graph(const SimpleGraph& g, int u, int v) {
  if (!g.edge(u, v)) throw ArgumentError("pivot needs an edge");
  Gf2Matrix a(g.verts.labels, g.verts.labels, g.adj);
  auto b = pivot(a, bit(u) | bit(v));
  std::vector<Mask> adj = b.rows;
  for (int i = 0; i < g.size(); ++i) adj[i] &= ~bit(i);  // pivoting keeps the diagonal zero here
  return SimpleGraph(g.verts.labels, adj);
}

inline SimpleGraph delete_vertex(const SimpleGraph& g, int v) {
  std::vector<std::string> labels;
  std::vector<int> keep;
  for (int i = 0; i < g.size(); ++i)
    if (i != v) {
      labels.push_back(g.verts.labels[i]);
      keep.push_back(i);
    }
  std::vector<Mask> adj(keep.size(), 0);
  for (int i = 0; i < (int)keep.size(); ++i)
    for (int j = 0; j < (int)keep.size(); ++j)
      if (g.edge(keep[i], keep[j])) adj[i] |= bit(j);
  return SimpleGraph(std::move(labels), std::move(adj));
}

namespace detail {

inline std::string graph_key(const SimpleGraph& g) {
  std::string s = std::to_string(g.size()) + ":";
  for (auto& l : g.verts.labels) s += l + ",";
  s += "/";
  for (auto m : g.adj) s += std::to_string(m) + ",";
  return s;
}

inline bool simple_graphs_isomorphic(const SimpleGraph& g, const SimpleGraph& h) {
  if (g.size() != h.size()) return false;
  int n = g.size();
  std::vector<int> dg(n), dh(n);
  for (int i = 0; i < n; ++i) {
    dg[i] = popcount(g.adj[i]);
    dh[i] = popcount(h.adj[i]);
  }
  {
    auto a = dg, b = dh;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
  }
  std::vector<int> map(n, -1), used(n, 0);
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == n) return true;
    for (int j = 0; j < n; ++j) {
      if (used[j] || dg[i] != dh[j]) continue;
      bool ok = true;
      for (int p = 0; p < i && ok; ++p)
        if (g.edge(p, i) != h.edge(map[p], j)) ok = false;
      if (!ok) continue;
      map[i] = j;
      used[j] = 1;
      if (rec(i + 1)) return true;
      used[j] = 0;
    }
    return false;
  };
  return rec(0);
}

}  // namespace detail

struct PivotMinorWitness {
  // ops: ('p', u, v) pivots by vertex label; ('d', v, "") deletions
  std::vector<std::tuple<char, std::string, std::string>> ops;
};

// BFS over pivot/delete sequences with a seen-set; answers whether h is a
// pivot-minor of g.
inline std::optional<PivotMinorWitness> is_pivot_minor(const SimpleGraph& g, const SimpleGraph& h) {
  if (g.size() > caps().pivot_minor) throw ResourceError("pivot-minor search beyond vertex cap");
  if (h.size() > g.size()) return std::nullopt;
  std::set<std::string> seen;
  struct State {
    SimpleGraph g;
    PivotMinorWitness w;
  };
  std::deque<State> q;
  q.push_back({g, {}});
  seen.insert(detail::graph_key(g));
  while (!q.empty()) {
    auto st = q.front();
    q.pop_front();
    if (st.g.size() == h.size() && detail::simple_graphs_isomorphic(st.g, h)) return st.w;
    // pivots keep the size; deletions shrink
    for (int u = 0; u < st.g.size(); ++u)
      for (int v = u + 1; v < st.g.size(); ++v) {
        if (!st.g.edge(u, v)) continue;
        auto next = pivot_graph(st.g, u, v);
        auto key = detail::graph_key(next);
        if (!seen.insert(key).second) continue;
        auto w = st.w;
        w.ops.push_back({'p', st.g.verts.labels[u], st.g.verts.labels[v]});
        q.push_back({next, w});
      }
    if (st.g.size() > h.size()) {
      for (int v = 0; v < st.g.size(); ++v) {
        auto next = delete_vertex(st.g, v);
        auto key = detail::graph_key(next);
        if (!seen.insert(key).second) continue;
        auto w = st.w;
        w.ops.push_back({'d', st.g.verts.labels[v], ""});
        q.push_back({next, w});
      }
    }
  }
  return std::nullopt;
}

// Binary line graph: non-loop edges adjacent iff they share exactly one end.
inline SimpleGraph binary_line_graph(const MultiGraph& g) {
  std::vector<std::string> labels = g.edge_labels();
  int n = (int)labels.size();
  std::vector<Mask> adj(n, 0);
  for (int i = 0; i < n; ++i) {
    if (g.edges[i].is_loop()) continue;
    for (int j = i + 1; j < n; ++j) {
      if (g.edges[j].is_loop()) continue;
      std::set<std::string> ends{g.edges[i].u, g.edges[i].v};
      int shared = (int)ends.count(g.edges[j].u) + (int)ends.count(g.edges[j].v);
      if (shared == 1) {
        adj[i] |= bit(j);
        adj[j] |= bit(i);
      }
    }
  }
  return SimpleGraph(std::move(labels), std::move(adj));
}

}  // namespace dgm
