#pragma once

#include "dgm/matroid_ops.hpp"

namespace dgm {

namespace detail {

inline void check_marker(const BinaryMatroid& m, const std::string& marker) {
  int e = m.elems.at(marker);
  Mask em = bit(e);
  if (m.rank_of(em) == 0) throw ArgumentError("marker " + marker + " is a loop");
  if (m.rank() - m.rank_of(m.ground_mask() & ~em) > 0)
    throw ArgumentError("marker " + marker + " is a coloop");
}

}  // namespace detail

// 2-sum along a shared marker element. Representation-level: both sides are
// put in coordinates where the marker column is a unit vector, then stacked
// sharing that one row.
inline BinaryMatroid two_sum(const BinaryMatroid& m1, const BinaryMatroid& m2,
                             const std::string& marker) {
  std::set<std::string> s1(m1.elems.labels.begin(), m1.elems.labels.end());
  std::set<std::string> s2(m2.elems.labels.begin(), m2.elems.labels.end());
  std::vector<std::string> inter;
  std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(inter));
  if (inter != std::vector<std::string>{marker})
    throw ArgumentError("ground sets must share exactly the marker");
  detail::check_marker(m1, marker);
  detail::check_marker(m2, marker);

  auto r1 = m1.binary_rep(), r2 = m2.binary_rep();
  if (r1 && r2) {
    // move the marker column of each side onto a dedicated coordinate
    auto reduce_side = [&](const BinaryMatroid& m, const Rep& rep) {
      // coordinates over a greedy base starting with the marker
      int n = m.size();
      int me = m.elems.at(marker);
      std::vector<int> order{me};
      for (int e = 0; e < n; ++e)
        if (e != me) order.push_back(e);
      // coordinates over the greedily inserted original columns; the marker
      // is inserted first, so its coordinate is the unit at position 0
      std::vector<Mask> bvec, bprov;
      std::vector<int> bpiv;
      std::vector<Mask> coords(n, 0);
      for (int e : order) {
        Mask v = rep.cols[e], prov = 0;
        for (size_t i = 0; i < bvec.size(); ++i)
          if (has_bit(v, bpiv[i])) {
            v ^= bvec[i];
            prov ^= bprov[i];
          }
        if (v == 0) {
          coords[e] = prov;
        } else {
          int pos = (int)bvec.size();
          bvec.push_back(v);
          bprov.push_back(prov | bit(pos));
          bpiv.push_back(lowest_bit(v));
          coords[e] = bit(pos);
        }
      }
      // marker sits at coordinate 0
      return std::pair<std::vector<Mask>, int>(coords, (int)bvec.size());
    };
    auto [c1, rank1] = reduce_side(m1, *r1);
    auto [c2, rank2] = reduce_side(m2, *r2);
    int shared = rank1 - 1;  // marker row index in the stacked space
    Rep out;
    out.rows = rank1 + rank2 - 1;
    std::vector<std::string> labels;
    auto push_side = [&](const BinaryMatroid& m, const std::vector<Mask>& coords, bool first) {
      for (int e = 0; e < m.size(); ++e) {
        if (m.elems.labels[e] == marker) continue;
        labels.push_back(m.elems.labels[e]);
        Mask col = 0, c = coords[e];
        for (int i = 0; i < 64; ++i) {
          if (!has_bit(c, i)) continue;
          int row;
          if (i == 0) row = shared;
          else if (first) row = i - 1;
          else row = rank1 - 1 + i;
          col |= bit(row);
        }
        out.cols.push_back(col);
      }
    };
    push_side(m1, c1, true);
    push_side(m2, c2, false);
    return BinaryMatroid::from_rep(std::move(labels), std::move(out));
  }

  // base-family fallback per the base formula
  std::vector<std::string> labels;
  for (auto& l : m1.elems.labels)
    if (l != marker) labels.push_back(l);
  for (auto& l : m2.elems.labels)
    if (l != marker) labels.push_back(l);
  LabelIndex out(labels);
  int e1 = m1.elems.at(marker), e2 = m2.elems.at(marker);
  std::set<Mask> res;
  auto b1s = m1.bases();
  auto b2s = m2.bases();
  for (Mask b1 : *b1s)
    for (Mask b2 : *b2s) {
      if (has_bit(b1, e1) == has_bit(b2, e2)) continue;
      Mask b = 0;
      for (int x = 0; x < m1.size(); ++x)
        if (has_bit(b1, x) && x != e1) b |= bit(out.at(m1.elems.labels[x]));
      for (int x = 0; x < m2.size(); ++x)
        if (has_bit(b2, x) && x != e2) b |= bit(out.at(m2.elems.labels[x]));
      res.insert(b);
    }
  return BinaryMatroid::from_bases(labels, {res.begin(), res.end()});
}

// --- matroid-labelled trees --------------------------------------------------

struct MatroidLabelledTree {
  struct Node {
    std::string name;
    BinaryMatroid matroid;
  };
  struct Edge {
    int a = 0, b = 0;
    std::string marker;
  };
  std::vector<Node> nodes;
  std::vector<Edge> edges;

  int find_node_with(const std::string& label) const {
    for (int i = 0; i < (int)nodes.size(); ++i)
      if (nodes[i].matroid.elems.contains(label)) return i;
    return -1;
  }

  std::vector<std::vector<std::pair<int, std::string>>> adjacency() const {
    std::vector<std::vector<std::pair<int, std::string>>> adj(nodes.size());
    for (auto& e : edges) {
      adj[e.a].push_back({e.b, e.marker});
      adj[e.b].push_back({e.a, e.marker});
    }
    return adj;
  }

  void validate() const {
    if (nodes.empty()) throw ArgumentError("empty matroid-labelled tree");
    if (edges.size() != nodes.size() - 1) throw ArgumentError("not a tree");
    for (auto& e : edges)
      if (e.a < 0 || e.b < 0 || e.a >= (int)nodes.size() || e.b >= (int)nodes.size() ||
          e.a == e.b)
        throw ArgumentError("tree edge endpoints out of range");
    // connectivity
    std::vector<int> seen(nodes.size(), 0);
    std::deque<int> q{0};
    seen[0] = 1;
    auto adj = adjacency();
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (auto& [y, _] : adj[x])
        if (!seen[y]) {
          seen[y] = 1;
          q.push_back(y);
        }
    }
    for (int s : seen)
      if (!s) throw ArgumentError("tree is disconnected");
    // shared-element structure
    for (int i = 0; i < (int)nodes.size(); ++i)
      for (int j = i + 1; j < (int)nodes.size(); ++j) {
        std::vector<std::string> inter;
        for (auto& l : nodes[i].matroid.elems.labels)
          if (nodes[j].matroid.elems.contains(l)) inter.push_back(l);
        std::optional<std::string> edge_marker;
        for (auto& e : edges)
          if ((e.a == i && e.b == j) || (e.a == j && e.b == i)) edge_marker = e.marker;
        if (edge_marker) {
          if (inter != std::vector<std::string>{*edge_marker})
            throw ArgumentError("adjacent nodes must share exactly their marker");
        } else if (!inter.empty()) {
          throw ArgumentError("non-adjacent nodes share elements");
        }
      }
    for (auto& e : edges) {
      detail::check_marker(nodes[e.a].matroid, e.marker);
      detail::check_marker(nodes[e.b].matroid, e.marker);
    }
  }
};

// rho(T): fold of 2-sums over any traversal; traversal order does not
// change the result.
inline BinaryMatroid compose(const MatroidLabelledTree& t) {
  if (t.nodes.empty()) throw ArgumentError("empty tree");
  auto adj = t.adjacency();
  std::vector<int> seen(t.nodes.size(), 0);
  BinaryMatroid acc = t.nodes[0].matroid;
  seen[0] = 1;
  std::deque<int> q{0};
  std::vector<std::pair<int, std::string>> order;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (auto& [y, marker] : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        order.push_back({y, marker});
        q.push_back(y);
      }
  }
  if ((int)order.size() != (int)t.nodes.size() - 1) throw ArgumentError("tree is disconnected");
  for (auto& [y, marker] : order) acc = two_sum(acc, t.nodes[y].matroid, marker);
  return acc;
}

// Node taxonomy used by canonical trees.
inline bool is_uniform_rank1(const BinaryMatroid& m) {
  if (m.size() < 2 || m.rank() != 1) return false;
  for (int e = 0; e < m.size(); ++e)
    if (m.rank_of(bit(e)) == 0) return false;  // loop
  return true;
}

inline bool is_uniform_corank1(const BinaryMatroid& m) { return is_uniform_rank1(m.dual()); }

// Canonical tree decomposition. Splits along 2-separations until every part
// is 3-connected or uniform of rank/corank 1, then merges bad pairs.
inline MatroidLabelledTree canonical_decomposition(const BinaryMatroid& m) {
  if (!m.is_connected()) throw PreconditionError("canonical decomposition needs a connected matroid");
  MarkerSource markers;
  MatroidLabelledTree tree;
  int node_id = 0;

  std::function<void(const BinaryMatroid&)> split = [&](const BinaryMatroid& part) {
    bool terminal = part.size() < 4 || part.rank() <= 1 || part.size() - part.rank() <= 1;
    std::optional<Separation> sep;
    if (!terminal) sep = find_2separation_connected(part);
    if (!sep) {
      tree.nodes.push_back({"n" + std::to_string(++node_id), part});
      return;
    }
    auto rep = part.binary_rep();
    if (!rep) throw ResourceError("cannot split a matroid without a binary representation");
    Mask x = sep->side_x;
    Mask v = detail::span_intersection_vector(*rep, part.size(), x);
    std::string mk = markers.next();
    auto make_part = [&](Mask side) {
      Rep r;
      r.rows = rep->rows;
      std::vector<std::string> labels;
      for (int e = 0; e < part.size(); ++e) {
        if (!has_bit(side, e)) continue;
        labels.push_back(part.elems.labels[e]);
        r.cols.push_back(rep->cols[e]);
      }
      labels.push_back(mk);
      r.cols.push_back(v);
      return BinaryMatroid::from_rep(std::move(labels), std::move(r));
    };
    int before = (int)tree.nodes.size();
    split(make_part(x));
    split(make_part(part.ground_mask() & ~x));
    // connect the two freshly built subtrees at the marker
    int a = -1, b = -1;
    for (int i = before; i < (int)tree.nodes.size(); ++i)
      if (tree.nodes[i].matroid.elems.contains(mk)) (a < 0 ? a : b) = i;
    tree.edges.push_back({a, b, mk});
  };
  split(m);

  // merge bad pairs: adjacent circuits merge, adjacent cocircuits merge
  bool merged = true;
  while (merged) {
    merged = false;
    for (size_t ei = 0; ei < tree.edges.size() && !merged; ++ei) {
      auto& e = tree.edges[ei];
      const auto& ma = tree.nodes[e.a].matroid;
      const auto& mb = tree.nodes[e.b].matroid;
      bool bad = (is_uniform_rank1(ma) && is_uniform_rank1(mb)) ||
                 (is_uniform_corank1(ma) && is_uniform_corank1(mb));
      if (!bad) continue;
      int a = e.a, b = e.b;
      BinaryMatroid fused = two_sum(ma, mb, e.marker);
      tree.nodes[a].matroid = fused;
      for (auto& f : tree.edges) {
        if (f.a == b) f.a = a;
        if (f.b == b) f.b = a;
      }
      tree.edges.erase(tree.edges.begin() + ei);
      // drop node b, remap indices
      tree.nodes.erase(tree.nodes.begin() + b);
      for (auto& f : tree.edges) {
        if (f.a > b) --f.a;
        if (f.b > b) --f.b;
      }
      merged = true;
    }
  }
  return tree;
}

inline MatroidLabelledTree dualize_tree(const MatroidLabelledTree& t) {
  MatroidLabelledTree out = t;
  for (auto& n : out.nodes) n.matroid = n.matroid.dual();
  return out;
}

// rho(S) for a subtree spanned by the given node set.
inline BinaryMatroid subtree_matroid(const MatroidLabelledTree& t, const std::vector<int>& nodeset) {
  if (nodeset.empty()) throw ArgumentError("subtree needs at least one node");
  std::set<int> in(nodeset.begin(), nodeset.end());
  MatroidLabelledTree sub;
  std::map<int, int> remap;
  for (int i : nodeset) {
    remap[i] = (int)sub.nodes.size();
    sub.nodes.push_back(t.nodes[i]);
  }
  for (auto& e : t.edges)
    if (in.count(e.a) && in.count(e.b)) sub.edges.push_back({remap[e.a], remap[e.b], e.marker});
  if (sub.edges.size() != sub.nodes.size() - 1) throw ArgumentError("node set is not a subtree");
  return compose(sub);
}

// Path contraction: replaces an internal degree-2 path from u to v by a
// single edge, relabelling the v-side marker. Merges the ends if they
// become a bad pair.
inline MatroidLabelledTree path_contract(const MatroidLabelledTree& t,
                                         const std::vector<int>& path) {
  if (path.size() < 3) throw ArgumentError("path must have length at least 2");
  auto adj = t.adjacency();
  for (size_t i = 1; i + 1 < path.size(); ++i)
    if (adj[path[i]].size() != 2)
      throw ArgumentError("internal path vertices must have degree 2");
  auto marker_between = [&](int a, int b) -> std::string {
    for (auto& e : t.edges)
      if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) return e.marker;
    throw ArgumentError("path vertices are not adjacent");
  };
  std::string e_u = marker_between(path[0], path[1]);
  std::string e_v = marker_between(path[path.size() - 2], path.back());
  std::set<int> internal(path.begin() + 1, path.end() - 1);

  MatroidLabelledTree out;
  std::map<int, int> remap;
  for (int i = 0; i < (int)t.nodes.size(); ++i) {
    if (internal.count(i)) continue;
    remap[i] = (int)out.nodes.size();
    out.nodes.push_back(t.nodes[i]);
  }
  int v_new = remap[path.back()];
  out.nodes[v_new].matroid = out.nodes[v_new].matroid.relabel({{e_v, e_u}});
  for (auto& e : t.edges) {
    if (internal.count(e.a) || internal.count(e.b)) continue;
    out.edges.push_back({remap[e.a], remap[e.b], e.marker});
  }
  out.edges.push_back({remap[path[0]], v_new, e_u});

  const auto& ma = out.nodes[remap[path[0]]].matroid;
  const auto& mb = out.nodes[v_new].matroid;
  bool bad = (is_uniform_rank1(ma) && is_uniform_rank1(mb)) ||
             (is_uniform_corank1(ma) && is_uniform_corank1(mb));
  if (bad) {
    int a = remap[path[0]], b = v_new;
    BinaryMatroid fused = two_sum(ma, mb, e_u);
    out.nodes[a].matroid = fused;
    out.edges.pop_back();
    for (auto& f : out.edges) {
      if (f.a == b) f.a = a;
      if (f.b == b) f.b = a;
    }
    out.nodes.erase(out.nodes.begin() + b);
    for (auto& f : out.edges) {
      if (f.a > b) --f.a;
      if (f.b > b) --f.b;
    }
  }
  return out;
}

// Canonical-form invariants: every node 3-connected or uniform of rank or
// corank 1 with >= 3 elements, and no bad pair.
inline bool is_canonical_tree(const MatroidLabelledTree& t) {
  if (t.nodes.size() == 1) return true;
  for (auto& n : t.nodes) {
    const auto& m = n.matroid;
    if (m.size() < 3) return false;
    if (!(is_3_connected(m) || is_uniform_rank1(m) || is_uniform_corank1(m))) return false;
  }
  for (auto& e : t.edges) {
    const auto& ma = t.nodes[e.a].matroid;
    const auto& mb = t.nodes[e.b].matroid;
    if (is_uniform_rank1(ma) && is_uniform_rank1(mb)) return false;
    if (is_uniform_corank1(ma) && is_uniform_corank1(mb)) return false;
  }
  return true;
}

}  // namespace dgm
