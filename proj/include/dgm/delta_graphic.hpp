#pragma once

#include <variant>

#include "dgm/graft.hpp"
#include "dgm/tree_decomp.hpp"

namespace dgm {

// --- M^{H,B} constructions ---------------------------------------------------

struct MhbBuild {
  BinaryMatroid matroid;
  std::vector<std::string> even_edges;  // union of E(G_{2i}), the twist set
  int k = 0;                            // wheel order / path length
};

namespace detail {

struct BagData {
  std::vector<std::string> order;                              // host vertices in walk order
  std::vector<std::set<std::string>> bag;                      // bag vertex sets
  std::vector<std::vector<int>> bag_edges;                     // edge indices per bag
  std::vector<std::string> shared;                             // u_i = B_i cap B_{i+1}
};

inline BagData order_cycle_host(const CyclicDecomposition& d) {
  // host must be a single cycle
  std::map<std::string, std::vector<std::string>> adj;
  for (auto& e : d.host.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& v : d.host.vertices)
    if (adj[v].size() != 2) throw PreconditionError("host is not a cycle");
  std::string start = *std::min_element(d.host.vertices.begin(), d.host.vertices.end());
  std::string next = std::min(adj[start][0], adj[start][1]);
  BagData out;
  std::string prev = start, cur = next;
  out.order.push_back(start);
  while (cur != start) {
    out.order.push_back(cur);
    auto& nb = adj[cur];
    std::string follow = (nb[0] == prev) ? nb[1] : nb[0];
    prev = cur;
    cur = follow;
  }
  if ((int)out.order.size() != d.host.n_vertices() || out.order.size() % 2 != 0 ||
      out.order.size() < 4)
    throw PreconditionError("host must be an even cycle of length >= 4");
  return out;
}

inline BagData order_path_host(const CyclicDecomposition& d) {
  std::map<std::string, std::vector<std::string>> adj;
  for (auto& e : d.host.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<std::string> ends;
  for (auto& v : d.host.vertices)
    if (adj[v].size() == 1) ends.push_back(v);
    else if (adj[v].size() != 2) throw PreconditionError("host is not a path");
  if (ends.size() != 2 || (int)d.host.edges.size() != d.host.n_vertices() - 1)
    throw PreconditionError("host is not a path");
  BagData out;
  std::string cur = std::min(ends[0], ends[1]), prev = "";
  out.order.push_back(cur);
  while ((int)out.order.size() < d.host.n_vertices()) {
    std::string follow;
    for (auto& x : adj[cur])
      if (x != prev) follow = x;
    prev = cur;
    cur = follow;
    out.order.push_back(cur);
  }
  return out;
}

inline void fill_bags(const Graft& g, const CyclicDecomposition& d, BagData& bd, bool cyclic) {
  int n = (int)bd.order.size();
  bd.bag.resize(n);
  for (int i = 0; i < n; ++i) {
    auto& vs = d.bags.at(bd.order[i]);
    bd.bag[i] = std::set<std::string>(vs.begin(), vs.end());
  }
  bd.bag_edges.assign(n, {});
  for (int ei = 0; ei < g.graph.n_edges(); ++ei) {
    auto& e = g.graph.edges[ei];
    if (e.is_loop()) throw PreconditionError("loops are not allowed here");
    int home = -1;
    for (int i = 0; i < n; ++i)
      if (bd.bag[i].count(e.u) && bd.bag[i].count(e.v)) {
        if (home >= 0) throw PreconditionError("edge inside two bags");
        home = i;
      }
    if (home < 0) throw PreconditionError("edge not inside any bag");
    bd.bag_edges[home].push_back(ei);
  }
  int links = cyclic ? n : n - 1;
  bd.shared.resize(links);
  for (int i = 0; i < links; ++i) {
    std::vector<std::string> inter;
    for (auto& v : bd.bag[i])
      if (bd.bag[(i + 1) % n].count(v)) inter.push_back(v);
    if (inter.size() != 1) throw PreconditionError("consecutive bags must share one vertex");
    bd.shared[i] = inter[0];
  }
}

inline MultiGraph bag_graph(const Graft& g, const BagData& bd, int i, const std::string& extra_label,
                            const std::string& eu, const std::string& ev) {
  MultiGraph out;
  for (auto& v : bd.bag[i]) out.vertices.push_back(v);
  for (int ei : bd.bag_edges[i]) out.edges.push_back(g.graph.edges[ei]);
  out.edges.push_back({extra_label, eu, ev});
  return out;
}

}  // namespace detail

// M^{H,B} over an even-cycle host: the wheel W_k two-summed with the bag
// matroids, alternating between graphic and cographic sides.
inline MhbBuild build_mhb_cycle(const Graft& g, const CyclicDecomposition& d) {
  auto rep = validate_cyclic(g, d, true);
  if (!rep.ok) throw PreconditionError("decomposition is not valid and nice");
  auto bd = detail::order_cycle_host(d);
  detail::fill_bags(g, d, bd, true);
  int n2k = (int)bd.order.size();
  int k = n2k / 2;

  // wheel on marker labels
  std::map<std::string, std::string> wren;
  for (int i = 1; i <= n2k; ++i) wren["e" + std::to_string(i)] = "#w" + std::to_string(i);
  BinaryMatroid acc = cycle_matroid(wheel(k)).relabel(wren);
  std::vector<std::string> even_edges;
  for (int i = 1; i <= n2k; ++i) {
    std::string mk = "#w" + std::to_string(i);
    // e_i joins u_{i-1} and u_i (indices cyclic, u_0 = u_{2k})
    std::string eu = bd.shared[(i - 2 + n2k) % n2k];
    std::string ev = bd.shared[i - 1];
    auto part_graph = detail::bag_graph(g, bd, i - 1, mk, eu, ev);
    BinaryMatroid part = cycle_matroid(part_graph);
    if (i % 2 == 0) {
      part = part.dual();
      for (int ei : bd.bag_edges[i - 1]) even_edges.push_back(g.graph.edges[ei].label);
    }
    acc = two_sum(acc, part, mk);
  }
  return MhbBuild{acc, even_edges, k};
}

// M^{H,B} over a path host: the base matroid is M(Pi_l).
inline MhbBuild build_mhb_path(const Graft& g, const CyclicDecomposition& d) {
  auto rep = validate_cyclic(g, d, true);
  if (!rep.ok) throw PreconditionError("decomposition is not valid and nice");
  auto bd = detail::order_path_host(d);
  detail::fill_bags(g, d, bd, false);
  int l = (int)bd.order.size();
  if (l < 2) throw PreconditionError("path host needs length >= 1");

  // endpoint terminals u_0 and u_l
  auto end_terminal = [&](int i, int neighbor) -> std::string {
    std::vector<std::string> cand;
    for (auto& v : bd.bag[i])
      if (g.is_terminal(v) && !bd.bag[neighbor].count(v)) cand.push_back(v);
    if (cand.size() != 1) throw PreconditionError("endpoint bag needs a unique private terminal");
    return cand[0];
  };
  std::string u0 = end_terminal(0, 1);
  std::string ul = end_terminal(l - 1, l - 2);

  std::map<std::string, std::string> wren;
  for (int i = 1; i <= l; ++i) wren["e" + std::to_string(i)] = "#w" + std::to_string(i);
  BinaryMatroid acc = cycle_matroid(pi_graph(l)).relabel(wren);
  std::vector<std::string> even_edges;
  for (int i = 1; i <= l; ++i) {
    std::string mk = "#w" + std::to_string(i);
    std::string eu = (i == 1) ? u0 : bd.shared[i - 2];
    std::string ev = (i == l) ? ul : bd.shared[i - 1];
    auto part_graph = detail::bag_graph(g, bd, i - 1, mk, eu, ev);
    BinaryMatroid part = cycle_matroid(part_graph);
    if (i % 2 == 0) {
      part = part.dual();
      for (int ei : bd.bag_edges[i - 1]) even_edges.push_back(g.graph.edges[ei].label);
    }
    acc = two_sum(acc, part, mk);
  }
  return MhbBuild{acc, even_edges, l};
}

// --- certificates -------------------------------------------------------------

struct GraphicCert {
  MultiGraph graph;
};
struct CographicCert {
  MultiGraph graph;  // realizes dual(m)
};
struct TwoSumCert {
  std::string marker;
  MultiGraph graphic_part;         // cycle matroid = graphic side
  MultiGraph cographic_part_dual;  // cycle matroid = dual of cographic side
};
struct PartWitness {
  std::string marker;
  bool cographic = false;
  MultiGraph graph;  // realizes the part, or the part's dual when cographic
};
struct WheelCert {
  int k = 0;
  std::vector<std::pair<std::string, std::string>> hub_iso;  // hub element -> wheel label
  std::vector<std::string> circuit_hyperplane;
  std::vector<PartWitness> parts;
};
struct FanCert {
  struct SpineNode {
    std::vector<std::string> elements;
    bool corank1 = false;  // otherwise rank 1
  };
  std::vector<SpineNode> spine;
  std::vector<std::string> spine_markers;  // between consecutive spine nodes
  std::vector<std::pair<int, PartWitness>> parts;  // attached at spine index
};

struct SerializedTree {
  struct SNode {
    std::string name;
    std::vector<std::string> labels;
    std::vector<std::string> rows;  // standard GF(2) matrix rows as 0/1 text
  };
  std::vector<SNode> nodes;
  std::vector<std::tuple<int, int, std::string>> edges;
};

struct Certificate;

struct ComponentsCert {
  std::vector<std::pair<std::vector<std::string>, std::shared_ptr<Certificate>>> parts;
};

struct NegativeCert {
  std::string reason;  // "excluded-minor" | "tree-audit" | "component"
  // excluded-minor
  std::string minor_name;
  std::vector<std::string> del, con;
  std::vector<std::pair<std::string, std::string>> iso;  // minor element -> catalog element
  // tree-audit
  std::optional<SerializedTree> tree;
  std::vector<std::string> audit;
  // component
  std::vector<std::string> component_elements;
  std::shared_ptr<Certificate> component_cert;
};

struct Certificate {
  std::variant<GraphicCert, CographicCert, TwoSumCert, WheelCert, FanCert, ComponentsCert,
               NegativeCert>
      v;

  bool positive() const { return !std::holds_alternative<NegativeCert>(v); }
  std::string kind() const {
    if (std::holds_alternative<GraphicCert>(v)) return "graphic";
    if (std::holds_alternative<CographicCert>(v)) return "cographic";
    if (std::holds_alternative<TwoSumCert>(v)) return "twosum";
    if (std::holds_alternative<WheelCert>(v)) return "wheel";
    if (std::holds_alternative<FanCert>(v)) return "fan";
    if (std::holds_alternative<ComponentsCert>(v)) return "components";
    return "not-delta-graphic";
  }
};

inline SerializedTree serialize_tree(const MatroidLabelledTree& t) {
  SerializedTree out;
  for (auto& n : t.nodes) {
    auto rep = n.matroid.binary_rep();
    if (!rep) throw ArgumentError("tree node without a binary representation");
    auto sf = detail::std_form(*rep, n.matroid.size());
    SerializedTree::SNode sn;
    sn.name = n.name;
    sn.labels = n.matroid.elems.labels;
    for (int i = 0; i < (int)sf.base_order.size(); ++i) {
      std::string row(n.matroid.size(), '0');
      for (int e = 0; e < n.matroid.size(); ++e) {
        bool one = has_bit(sf.base, e) ? (e == sf.base_order[i]) : has_bit(sf.fund[e], sf.base_order[i]);
        if (one) row[e] = '1';
      }
      sn.rows.push_back(row);
    }
    out.nodes.push_back(sn);
  }
  for (auto& e : t.edges) out.edges.push_back({e.a, e.b, e.marker});
  return out;
}

inline MatroidLabelledTree deserialize_tree(const SerializedTree& st) {
  MatroidLabelledTree t;
  for (auto& sn : st.nodes) {
    std::vector<Mask> rows;
    for (auto& r : sn.rows) {
      Mask m = 0;
      for (int j = 0; j < (int)r.size(); ++j)
        if (r[j] == '1') m |= bit(j);
      rows.push_back(m);
    }
    t.nodes.push_back({sn.name, BinaryMatroid::from_matrix_rows(sn.labels, rows)});
  }
  for (auto& [a, b, mk] : st.edges) t.edges.push_back({a, b, mk});
  return t;
}

// --- tree classification -------------------------------------------------------

struct NodeInfo {
  std::optional<MultiGraph> graphic;    // witness for the node
  std::optional<MultiGraph> cographic;  // witness for the node's dual
  bool rank1 = false, corank1 = false;
};

inline std::vector<NodeInfo> classify_nodes(const MatroidLabelledTree& t) {
  std::vector<NodeInfo> out(t.nodes.size());
  for (size_t i = 0; i < t.nodes.size(); ++i) {
    const auto& m = t.nodes[i].matroid;
    out[i].graphic = is_graphic(m, "g" + std::to_string(i) + "_");
    out[i].cographic = is_graphic(m.dual(), "h" + std::to_string(i) + "_");
    out[i].rank1 = is_uniform_rank1(m);
    out[i].corank1 = is_uniform_corank1(m);
  }
  return out;
}

namespace detail {

// Subtrees hanging at each node: comp[i][j] = nodes of the component of
// T - i containing neighbor j.
inline std::vector<int> subtree_nodes(const MatroidLabelledTree& t, int without, int from) {
  auto adj = t.adjacency();
  std::vector<int> seen(t.nodes.size(), 0);
  seen[without] = 1;
  std::vector<int> out;
  std::deque<int> q{from};
  seen[from] = 1;
  out.push_back(from);
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (auto& [y, _] : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
        q.push_back(y);
      }
  }
  return out;
}

inline bool all_graphic(const std::vector<NodeInfo>& info, const std::vector<int>& nodes) {
  for (int i : nodes)
    if (!info[i].graphic) return false;
  return true;
}
inline bool all_cographic(const std::vector<NodeInfo>& info, const std::vector<int>& nodes) {
  for (int i : nodes)
    if (!info[i].cographic) return false;
  return true;
}

// Glues per-node witness graphs of a subtree along its internal markers;
// realizes the composed subtree matroid (or its dual with use_dual).
inline MultiGraph glue_witnesses(const MatroidLabelledTree& t, const std::vector<NodeInfo>& info,
                                 const std::vector<int>& nodes, bool use_dual) {
  std::set<int> in(nodes.begin(), nodes.end());
  auto witness = [&](int i) -> const MultiGraph& {
    return use_dual ? *info[i].cographic : *info[i].graphic;
  };
  MultiGraph acc = witness(nodes[0]);
  std::set<int> placed{nodes[0]};
  bool progress = true;
  while (placed.size() < in.size() && progress) {
    progress = false;
    for (auto& e : t.edges) {
      int b = -1;
      if (placed.count(e.a) && in.count(e.b) && !placed.count(e.b)) b = e.b;
      else if (placed.count(e.b) && in.count(e.a) && !placed.count(e.a)) b = e.a;
      else continue;
      acc = glue_graphs(acc, witness(b), e.marker);
      placed.insert(b);
      progress = true;
    }
  }
  if (placed.size() != in.size()) throw ArgumentError("subtree is not connected");
  return acc;
}

inline std::vector<Mask> circuit_hyperplanes(const BinaryMatroid& m) {
  std::vector<Mask> out;
  auto circs = m.circuits();
  auto cocircs = m.dual().circuits();
  std::set<Mask> coc(cocircs->begin(), cocircs->end());
  for (Mask c : *circs)
    if (coc.count(m.ground_mask() & ~c)) out.push_back(c);
  return out;
}

}  // namespace detail

// --- wheel and fan detection ----------------------------------------------------

struct WheelDetect {
  int hub = 0;
  int k = 0;
  Mask circuit_hyperplane = 0;                              // over hub elements
  std::map<std::string, std::string> iso;                   // hub element -> wheel label
  std::vector<std::tuple<std::string, int, bool>> hangings;  // marker, neighbor, cographic?
};

inline std::optional<WheelDetect> detect_wheel_decomposition(const MatroidLabelledTree& t,
                                                             const std::vector<NodeInfo>* info_in =
                                                                 nullptr) {
  std::vector<NodeInfo> local;
  const std::vector<NodeInfo>* info = info_in;
  if (!info) {
    local = classify_nodes(t);
    info = &local;
  }
  auto adj = t.adjacency();
  for (int v = 0; v < (int)t.nodes.size(); ++v) {
    const auto& hub = t.nodes[v].matroid;
    int r = hub.rank();
    if (r < 3 || hub.size() != 2 * r) continue;
    auto wk = catalog("M(W_" + std::to_string(r) + ")");
    if (!is_isomorphic(hub, wk, std::max(caps().iso, hub.size()))) continue;
    // hanging subtree classes
    std::vector<std::tuple<std::string, int, bool, bool>> hang;  // marker, nb, graphic, cographic
    for (auto& [nb, mk] : adj[v]) {
      auto nodes = detail::subtree_nodes(t, v, nb);
      hang.push_back({mk, nb, detail::all_graphic(*info, nodes), detail::all_cographic(*info, nodes)});
    }
    for (Mask ch : detail::circuit_hyperplanes(hub)) {
      bool ok = true;
      for (auto& [mk, nb, gph, cgph] : hang) {
        bool in_ch = has_bit(ch, hub.elems.at(mk));
        if (in_ch && !gph) ok = false;
        if (!in_ch && !cgph) ok = false;
      }
      if (!ok) continue;
      // isomorphism mapping the circuit-hyperplane onto the rim set
      std::vector<std::string> ch_elems = hub.elems.labels_of(ch);
      Mask rim = 0;
      for (int i = 1; i <= r; ++i) rim |= bit(wk.elems.at("e" + std::to_string(2 * i - 1)));
      auto iso = find_isomorphism_constrained(hub, wk, ch, rim, std::max(caps().iso, hub.size()));
      if (!iso) continue;
      WheelDetect out;
      out.hub = v;
      out.k = r;
      out.circuit_hyperplane = ch;
      out.iso = *iso;
      for (auto& [mk, nb, gph, cgph] : hang)
        out.hangings.push_back({mk, nb, !has_bit(ch, hub.elems.at(mk))});
      return out;
    }
  }
  return std::nullopt;
}

struct FanDetect {
  std::vector<int> spine;                                    // node ids along the path
  std::vector<std::tuple<std::string, int, int, bool>> hangings;  // marker, neighbor, at, cographic
};

inline std::optional<FanDetect> detect_fan_decomposition(const MatroidLabelledTree& t,
                                                         const std::vector<NodeInfo>* info_in =
                                                             nullptr) {
  std::vector<NodeInfo> local;
  const std::vector<NodeInfo>* info = info_in;
  if (!info) {
    local = classify_nodes(t);
    info = &local;
  }
  int n = (int)t.nodes.size();
  auto adj = t.adjacency();
  // unique tree path between node pairs
  auto tree_path = [&](int a, int b) {
    std::vector<int> prev(n, -1);
    std::deque<int> q{a};
    prev[a] = a;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (auto& [y, _] : adj[x])
        if (prev[y] < 0) {
          prev[y] = x;
          q.push_back(y);
        }
    }
    std::vector<int> path{b};
    while (path.back() != a) path.push_back(prev[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
  };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      auto path = tree_path(a, b);
      if (path.size() < 2) continue;
      bool f1 = true;
      for (int v : path)
        if (!(*info)[v].rank1 && !(*info)[v].corank1) f1 = false;
      if (!f1) continue;
      std::set<int> on_path(path.begin(), path.end());
      FanDetect cand;
      cand.spine = path;
      bool ok = true;
      for (size_t pi = 0; pi < path.size() && ok; ++pi) {
        int v = path[pi];
        bool internal = pi > 0 && pi + 1 < path.size();
        for (auto& [nb, mk] : adj[v]) {
          if (on_path.count(nb) &&
              ((pi > 0 && nb == path[pi - 1]) || (pi + 1 < path.size() && nb == path[pi + 1])))
            continue;
          auto nodes = detail::subtree_nodes(t, v, nb);
          bool g = detail::all_graphic(*info, nodes);
          bool cg = detail::all_cographic(*info, nodes);
          if (!g && !cg) ok = false;                          // (F2c)
          if (internal && (*info)[v].corank1 && !g) ok = false;  // (F2a)
          if (internal && (*info)[v].rank1 && !cg) ok = false;   // (F2b)
          if (!ok) break;
          cand.hangings.push_back({mk, nb, (int)pi, !g});
        }
      }
      if (!ok) continue;
      // end condition (F3): both classes reachable at each end, counting
      // free elements as flexible
      for (int end : {0, (int)path.size() - 1}) {
        int v = path[end];
        const auto& m = t.nodes[v].matroid;
        std::string spine_marker;
        {
          int nbr = path[end == 0 ? 1 : (int)path.size() - 2];
          for (auto& [y, mk] : adj[v])
            if (y == nbr) spine_marker = mk;
        }
        bool any_g = false, any_cg = false;
        for (auto& l : m.elems.labels) {
          if (l == spine_marker) continue;
          bool is_marker = false, g = true, cg = true;
          for (auto& [nb, mk] : adj[v])
            if (mk == l) {
              is_marker = true;
              auto nodes = detail::subtree_nodes(t, v, nb);
              g = detail::all_graphic(*info, nodes);
              cg = detail::all_cographic(*info, nodes);
            }
          (void)is_marker;
          if (g) any_g = true;
          if (cg) any_cg = true;
        }
        if (!any_g || !any_cg) ok = false;
      }
      if (ok) return cand;
    }
  return std::nullopt;
}

// --- recognition ----------------------------------------------------------------

namespace detail {

inline Certificate make_negative_tree_audit(const MatroidLabelledTree& t,
                                            std::vector<std::string> audit) {
  NegativeCert neg;
  neg.reason = "tree-audit";
  neg.tree = serialize_tree(t);
  neg.audit = std::move(audit);
  return Certificate{neg};
}

inline std::optional<Certificate> excluded_minor_witness(const BinaryMatroid& m) {
  if (m.size() > caps().minor_scan) return std::nullopt;
  std::vector<std::string> names;
  if (!m.is_binary()) names.push_back("U(2,4)");  // the one non-binary obstruction
  names.insert(names.end(), {"F7", "F7*", "R10", "R12"});
  for (auto& name : names) {
    BinaryMatroid target = catalog(name);
    if (target.size() > m.size()) continue;
    std::optional<MinorWitness> w;
    try {
      w = has_minor(m, target);
    } catch (const ResourceError&) {
      continue;
    }
    if (w) {
      NegativeCert neg;
      neg.reason = "excluded-minor";
      neg.minor_name = name;
      neg.del = w->deleted;
      neg.con = w->contracted;
      for (auto& [a, b] : w->iso) neg.iso.push_back({a, b});
      return Certificate{neg};
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline Certificate recognize(const BinaryMatroid& m);

namespace detail {

inline Certificate recognize_connected(const BinaryMatroid& m) {
  if (auto g = is_graphic(m)) return Certificate{GraphicCert{*g}};
  if (auto g = is_graphic(m.dual(), "h")) return Certificate{CographicCert{*g}};
  if (!m.is_binary()) {
    // delta-graphic matroids are binary; exhibit the U(2,4) minor
    if (auto w = excluded_minor_witness(m)) return *w;
    throw ResourceError("non-binary input beyond the excluded-minor scan cap");
  }

  auto tree = canonical_decomposition(m);
  auto info = classify_nodes(tree);
  auto adj = tree.adjacency();
  std::vector<std::string> audit;

  // single 3-connected node, neither graphic nor cographic: not delta-graphic
  if (tree.nodes.size() == 1) {
    if (auto w = excluded_minor_witness(m)) return *w;
    audit.push_back("3-connected, neither graphic nor cographic");
    return make_negative_tree_audit(tree, audit);
  }

  // (T1): an edge splitting into a graphic side and a cographic side
  for (auto& e : tree.edges) {
    auto side1 = subtree_nodes(tree, e.b, e.a);
    auto side2 = subtree_nodes(tree, e.a, e.b);
    for (int flip = 0; flip < 2; ++flip) {
      auto& gs = flip ? side2 : side1;
      auto& cs = flip ? side1 : side2;
      if (all_graphic(info, gs) && all_cographic(info, cs)) {
        TwoSumCert cert;
        cert.marker = e.marker;
        cert.graphic_part = glue_witnesses(tree, info, gs, false);
        cert.cographic_part_dual = glue_witnesses(tree, info, cs, true);
        return Certificate{cert};
      }
    }
  }
  audit.push_back("T1: no edge splits into a graphic and a cographic side");

  // (T2): uniform hub with mixed graphic/cographic components
  for (int v = 0; v < (int)tree.nodes.size(); ++v) {
    const auto& hub = tree.nodes[v].matroid;
    if (!info[v].rank1 && !info[v].corank1) continue;
    if (hub.size() < 3) continue;
    bool all_in = true;
    std::vector<std::string> xside, yside;  // hub elements split
    std::set<std::string> markers_here;
    for (auto& [nb, mk] : adj[v]) {
      markers_here.insert(mk);
      auto nodes = subtree_nodes(tree, v, nb);
      bool g = all_graphic(info, nodes), cg = all_cographic(info, nodes);
      if (!g && !cg) {
        all_in = false;
        break;
      }
      if (g) xside.push_back(mk);
      else yside.push_back(mk);
    }
    if (!all_in) continue;
    for (auto& l : hub.elems.labels)
      if (!markers_here.count(l)) xside.push_back(l);  // free elements
    if (xside.empty() || yside.empty()) continue;
    // split the hub into two uniform pieces along a fresh marker
    std::string g = "#s1";
    auto mk_uniform = [&](const std::vector<std::string>& els, bool corank1) {
      std::vector<std::string> labels = els;
      labels.push_back(g);
      int nn = (int)labels.size();
      auto u = corank1 ? catalog("U(" + std::to_string(nn - 1) + "," + std::to_string(nn) + ")")
                       : catalog("U(1," + std::to_string(nn) + ")");
      return u.with_labels(labels);
    };
    bool corank1 = info[v].corank1;
    BinaryMatroid n1 = mk_uniform(xside, corank1);
    BinaryMatroid n2 = mk_uniform(yside, corank1);
    // graphic side: n1 plus every subtree hanging at an X marker
    MatroidLabelledTree gside, cside;
    gside.nodes.push_back({"hub", n1});
    cside.nodes.push_back({"hub", n2});
    auto attach = [&](MatroidLabelledTree& side, const std::vector<std::string>& els) {
      for (auto& mk : els) {
        for (auto& [nb, emk] : adj[v]) {
          if (emk != mk) continue;
          auto nodes = subtree_nodes(tree, v, nb);
          std::map<int, int> remap;
          for (int x : nodes) {
            remap[x] = (int)side.nodes.size();
            side.nodes.push_back(tree.nodes[x]);
          }
          for (auto& te : tree.edges) {
            if (remap.count(te.a) && remap.count(te.b))
              side.edges.push_back({remap[te.a], remap[te.b], te.marker});
          }
          side.edges.push_back({0, remap[nb], mk});
        }
      }
    };
    attach(gside, xside);
    attach(cside, yside);
    // witnesses: every node on the graphic side is graphic (n1 is uniform)
    auto ginfo = classify_nodes(gside);
    auto cinfo = classify_nodes(cside);
    std::vector<int> gnodes(gside.nodes.size()), cnodes(cside.nodes.size());
    std::iota(gnodes.begin(), gnodes.end(), 0);
    std::iota(cnodes.begin(), cnodes.end(), 0);
    TwoSumCert cert;
    cert.marker = g;
    cert.graphic_part = glue_witnesses(gside, ginfo, gnodes, false);
    cert.cographic_part_dual = glue_witnesses(cside, cinfo, cnodes, true);
    return Certificate{cert};
  }
  audit.push_back("T2: no uniform hub with mixed graphic/cographic components");

  // (T3): wheel decomposition
  if (auto wd = detect_wheel_decomposition(tree, &info)) {
    WheelCert cert;
    cert.k = wd->k;
    for (auto& [a, b] : wd->iso) cert.hub_iso.push_back({a, b});
    for (auto& l : tree.nodes[wd->hub].matroid.elems.labels_of(wd->circuit_hyperplane))
      cert.circuit_hyperplane.push_back(l);
    for (auto& [mk, nb, cographic] : wd->hangings) {
      auto nodes = subtree_nodes(tree, wd->hub, nb);
      PartWitness pw;
      pw.marker = mk;
      pw.cographic = cographic;
      pw.graph = glue_witnesses(tree, info, nodes, cographic);
      cert.parts.push_back(pw);
    }
    return Certificate{cert};
  }
  audit.push_back("T3: no wheel decomposition");

  // (T4): fan decomposition
  if (auto fd = detect_fan_decomposition(tree, &info)) {
    FanCert cert;
    int L = (int)fd->spine.size();
    for (int i = 0; i < L; ++i) {
      int v = fd->spine[i];
      FanCert::SpineNode sn;
      sn.elements = tree.nodes[v].matroid.elems.labels;
      sn.corank1 = info[v].corank1;
      cert.spine.push_back(sn);
      if (i + 1 < L)
        for (auto& [nb, mk] : adj[v])
          if (nb == fd->spine[i + 1]) cert.spine_markers.push_back(mk);
    }
    // choose part classes; end parts in both classes are flexible and get
    // balanced so each end shows a graphic and a cographic side
    struct Hang {
      std::string mk;
      int nb, at;
      bool g, cg, cographic;
    };
    std::vector<Hang> hangs;
    for (auto& [mk, nb, at, cographic] : fd->hangings) {
      auto nodes = subtree_nodes(tree, fd->spine[at], nb);
      Hang h{mk, nb, at, all_graphic(info, nodes), all_cographic(info, nodes), false};
      bool internal = at > 0 && at < L - 1;
      if (internal) h.cographic = !info[fd->spine[at]].corank1;
      else h.cographic = !h.g;
      hangs.push_back(h);
    }
    for (int end : {0, L - 1}) {
      int v = fd->spine[end];
      int markers_here = 0;
      bool any_g = false, any_cg = false;
      for (auto& h : hangs)
        if (h.at == end) {
          ++markers_here;
          (h.cographic ? any_cg : any_g) = true;
        }
      bool has_free = (int)tree.nodes[v].matroid.size() > markers_here + 1;
      if (has_free) continue;
      if (!any_cg)
        for (auto& h : hangs)
          if (h.at == end && h.cg && !h.cographic) {
            h.cographic = true;
            break;
          }
      if (!any_g)
        for (auto& h : hangs)
          if (h.at == end && h.g && h.cographic) {
            h.cographic = false;
            break;
          }
    }
    for (auto& h : hangs) {
      auto nodes = subtree_nodes(tree, fd->spine[h.at], h.nb);
      PartWitness pw;
      pw.marker = h.mk;
      pw.cographic = h.cographic;
      pw.graph = glue_witnesses(tree, info, nodes, h.cographic);
      cert.parts.push_back({h.at, pw});
    }
    return Certificate{cert};
  }
  audit.push_back("T4: no fan decomposition");

  return make_negative_tree_audit(tree, audit);
}

}  // namespace detail

// Recognition: disconnected inputs recurse on components; connected inputs
// run the graphic / cographic fast paths, then the canonical-tree tests.
inline Certificate recognize(const BinaryMatroid& m) {
  if (m.size() == 0) return Certificate{GraphicCert{MultiGraph{}}};
  auto comps = m.components();
  if (comps.size() > 1) {
    ComponentsCert cc;
    for (Mask k : comps) {
      BinaryMatroid piece = m.delete_elements(m.ground_mask() & ~k);
      auto sub = recognize(piece);
      if (!sub.positive()) {
        NegativeCert neg;
        neg.reason = "component";
        neg.component_elements = m.elems.labels_of(k);
        neg.component_cert = std::make_shared<Certificate>(sub);
        return Certificate{neg};
      }
      cc.parts.push_back({m.elems.labels_of(k), std::make_shared<Certificate>(sub)});
    }
    return Certificate{cc};
  }
  return detail::recognize_connected(m);
}

inline bool is_delta_graphic(const BinaryMatroid& m) { return recognize(m).positive(); }

// --- verification ----------------------------------------------------------------

namespace detail {

inline bool labels_match(const MultiGraph& g, const std::vector<std::string>& expect) {
  return sorted_labels(g.edge_labels()) == sorted_labels(expect);
}

inline BinaryMatroid part_matroid(const PartWitness& pw) {
  auto m = cycle_matroid(pw.graph);
  return pw.cographic ? m.dual() : m;
}

// Folds a base matroid with attached parts by their shared markers.
inline std::optional<BinaryMatroid> fold_parts(BinaryMatroid acc,
                                               const std::vector<PartWitness>& parts) {
  for (auto& pw : parts) {
    try {
      acc = two_sum(acc, part_matroid(pw), pw.marker);
    } catch (const ArgumentError&) {
      return std::nullopt;
    }
  }
  return acc;
}

}  // namespace detail

// Re-derives a certificate's claim from the certificate alone. Never runs
// recognition; false on any mismatch.
inline bool verify_certificate(const BinaryMatroid& m, const Certificate& cert) {
  try {
    if (auto* c = std::get_if<GraphicCert>(&cert.v)) {
      if (m.size() == 0) return c->graph.n_edges() == 0;
      if (!detail::labels_match(c->graph, m.elems.labels)) return false;
      return matroids_equal(cycle_matroid(c->graph), m);
    }
    if (auto* c = std::get_if<CographicCert>(&cert.v)) {
      if (!detail::labels_match(c->graph, m.elems.labels)) return false;
      return matroids_equal(cycle_matroid(c->graph), m.dual());
    }
    if (auto* c = std::get_if<TwoSumCert>(&cert.v)) {
      auto g1 = cycle_matroid(c->graphic_part);
      auto g2 = cycle_matroid(c->cographic_part_dual).dual();
      if (!g1.elems.contains(c->marker) || !g2.elems.contains(c->marker)) return false;
      BinaryMatroid sum = two_sum(g1, g2, c->marker);
      if (!matroids_equal(sum, m)) return false;
      return m.is_connected();
    }
    if (auto* c = std::get_if<WheelCert>(&cert.v)) {
      if (c->k < 3) return false;
      auto wk = catalog("M(W_" + std::to_string(c->k) + ")");
      if ((int)c->hub_iso.size() != wk.size()) return false;
      // rebuild the hub from the wheel via the inverse of the stored iso
      std::map<std::string, std::string> inv;
      std::set<std::string> ch(c->circuit_hyperplane.begin(), c->circuit_hyperplane.end());
      for (auto& [hubel, wlbl] : c->hub_iso) {
        if (inv.count(wlbl)) return false;
        inv[wlbl] = hubel;
        // the stored circuit-hyperplane must map exactly onto the rim set
        if (ch.count(hubel) != (is_rim_label(wlbl) ? 1u : 0u)) return false;
      }
      if ((int)inv.size() != wk.size()) return false;
      BinaryMatroid hub = wk.relabel(inv);
      // parts attach at distinct hub elements with the advertised classes
      std::set<std::string> seen_markers;
      for (auto& pw : c->parts) {
        if (!hub.elems.contains(pw.marker)) return false;
        if (!seen_markers.insert(pw.marker).second) return false;
        bool on_ch = ch.count(pw.marker) > 0;
        if (on_ch == pw.cographic) return false;  // rim -> graphic, spoke -> cographic
      }
      auto sum = detail::fold_parts(hub, c->parts);
      if (!sum) return false;
      if (!matroids_equal(*sum, m)) return false;
      return m.is_connected();
    }
    if (auto* c = std::get_if<FanCert>(&cert.v)) {
      int L = (int)c->spine.size();
      if (L < 2 || (int)c->spine_markers.size() != L - 1) return false;
      // spine nodes: uniform, >= 3 elements, alternating type
      std::vector<BinaryMatroid> spine;
      for (int i = 0; i < L; ++i) {
        auto& sn = c->spine[i];
        int nn = (int)sn.elements.size();
        if (nn < 3) return false;
        if (i > 0 && c->spine[i].corank1 == c->spine[i - 1].corank1) return false;
        auto u = sn.corank1
                     ? catalog("U(" + std::to_string(nn - 1) + "," + std::to_string(nn) + ")")
                     : catalog("U(1," + std::to_string(nn) + ")");
        spine.push_back(u.with_labels(sn.elements));
      }
      for (int i = 0; i + 1 < L; ++i) {
        if (!spine[i].elems.contains(c->spine_markers[i])) return false;
        if (!spine[i + 1].elems.contains(c->spine_markers[i])) return false;
      }
      // (F2) class constraints
      for (auto& [at, pw] : c->parts) {
        if (at < 0 || at >= L) return false;
        if (!spine[at].elems.contains(pw.marker)) return false;
        bool internal = at > 0 && at < L - 1;
        if (internal) {
          if (c->spine[at].corank1 && pw.cographic) return false;
          if (!c->spine[at].corank1 && !pw.cographic) return false;
        }
      }
      // (F3)-style end conditions: both classes available among non-spine
      // elements, free elements counting for both
      for (int end : {0, L - 1}) {
        std::string sm = c->spine_markers[end == 0 ? 0 : L - 2];
        bool any_g = false, any_cg = false;
        for (auto& l : c->spine[end].elements) {
          if (l == sm) continue;
          bool is_part = false, g = true, cg = true;
          for (auto& [at, pw] : c->parts)
            if (at == end && pw.marker == l) {
              is_part = true;
              g = !pw.cographic;
              cg = pw.cographic;
            }
          (void)is_part;
          if (g) any_g = true;
          if (cg) any_cg = true;
        }
        if (!any_g || !any_cg) return false;
      }
      // composition equals m
      BinaryMatroid acc = spine[0];
      for (int i = 1; i < L; ++i) acc = two_sum(acc, spine[i], c->spine_markers[i - 1]);
      std::vector<PartWitness> parts;
      for (auto& [_, pw] : c->parts) parts.push_back(pw);
      auto sum = detail::fold_parts(acc, parts);
      if (!sum) return false;
      if (!matroids_equal(*sum, m)) return false;
      return m.is_connected();
    }
    if (auto* c = std::get_if<ComponentsCert>(&cert.v)) {
      auto comps = m.components();
      if (comps.size() != c->parts.size()) return false;
      std::set<std::vector<std::string>> listed;
      for (auto& [els, sub] : c->parts) listed.insert(sorted_labels(els));
      for (Mask k : comps)
        if (!listed.count(sorted_labels(m.elems.labels_of(k)))) return false;
      for (auto& [els, sub] : c->parts) {
        Mask k = m.elems.mask_of(els);
        BinaryMatroid piece = m.delete_elements(m.ground_mask() & ~k);
        if (!sub || !verify_certificate(piece, *sub)) return false;
      }
      return true;
    }
    if (auto* c = std::get_if<NegativeCert>(&cert.v)) {
      if (c->reason == "excluded-minor") {
        static const std::set<std::string> allowed{"U(2,4)", "F7", "F7*", "R10", "R12"};
        if (!allowed.count(c->minor_name)) return false;
        BinaryMatroid target = catalog(c->minor_name);
        BinaryMatroid minor = m.minor(c->del, c->con);
        if (minor.size() != target.size()) return false;
        std::map<std::string, std::string> ren(c->iso.begin(), c->iso.end());
        if ((int)ren.size() != minor.size()) return false;
        return matroids_equal(minor.relabel(ren), target);
      }
      if (c->reason == "component") {
        Mask k = m.elems.mask_of(c->component_elements);
        bool is_comp = false;
        for (Mask km : m.components())
          if (km == k) is_comp = true;
        if (!is_comp || !c->component_cert) return false;
        BinaryMatroid piece = m.delete_elements(m.ground_mask() & ~k);
        return !c->component_cert->positive() && verify_certificate(piece, *c->component_cert);
      }
      if (c->reason != "tree-audit" || !c->tree) return false;
      auto tree = deserialize_tree(*c->tree);
      tree.validate();
      if (!is_canonical_tree(tree)) return false;
      if (!matroids_equal(compose(tree), m)) return false;
      if (!m.is_connected()) return false;
      auto info = classify_nodes(tree);
      // m graphic or cographic would contradict the claim
      bool some_non_g = false, some_non_cg = false;
      for (auto& ni : info) {
        if (!ni.graphic) some_non_g = true;
        if (!ni.cographic) some_non_cg = true;
      }
      if (!some_non_g || !some_non_cg) return false;
      auto adj = tree.adjacency();
      // (T1)
      for (auto& e : tree.edges) {
        auto s1 = detail::subtree_nodes(tree, e.b, e.a);
        auto s2 = detail::subtree_nodes(tree, e.a, e.b);
        if (detail::all_graphic(info, s1) && detail::all_cographic(info, s2)) return false;
        if (detail::all_graphic(info, s2) && detail::all_cographic(info, s1)) return false;
      }
      // (T2)
      for (int v = 0; v < (int)tree.nodes.size(); ++v) {
        if (!info[v].rank1 && !info[v].corank1) continue;
        bool all_in = true, has_g = false, has_cg = false;
        for (auto& [nb, mk] : adj[v]) {
          auto nodes = detail::subtree_nodes(tree, v, nb);
          bool g = detail::all_graphic(info, nodes), cg = detail::all_cographic(info, nodes);
          if (!g && !cg) all_in = false;
          if (g) has_g = true;
          if (cg) has_cg = true;
        }
        if (all_in && has_g && has_cg) return false;
      }
      // (T3) / (T4)
      if (detect_wheel_decomposition(tree, &info)) return false;
      if (detect_fan_decomposition(tree, &info)) return false;
      return true;
    }
  } catch (const std::exception&) {
    return false;
  }
  return false;
}

// --- generalized wheels -------------------------------------------------------------

struct GWAttachment {
  std::string basepoint;  // a wheel edge label e1..e2k surviving in the base
  BinaryMatroid part;     // contains the basepoint label as an element
  bool cographic = false;
};

struct GeneralizedWheelSpec {
  int k = 3;
  std::vector<std::string> del, con;  // applied to M(W_k), in e1..e2k names
  // final labels of surviving non-basepoint wheel edges (wheel name -> label)
  std::vector<std::pair<std::string, std::string>> base_relabel;
  std::vector<GWAttachment> attachments;
};

// Composes the spec: wheel-minor base, graphic parts at rim basepoints,
// cographic parts at spokes. Wheel edges are namespaced internally so part
// elements can never collide with them.
inline BinaryMatroid generalized_wheel(const GeneralizedWheelSpec& spec) {
  if (spec.k < 3) throw ArgumentError("wheel order must be >= 3");
  // a namespace for the wheel edges that collides with no part element
  std::string prefix = "#W";
  {
    bool clash = true;
    while (clash) {
      clash = false;
      for (auto& a : spec.attachments)
        for (auto& l : a.part.elems.labels)
          if (l.rfind(prefix, 0) == 0) clash = true;
      if (clash) prefix += "_";
    }
  }
  auto internal = [&](const std::string& wl) { return prefix + wl; };
  std::map<std::string, std::string> wren;
  for (int i = 1; i <= 2 * spec.k; ++i) {
    std::string wl = "e" + std::to_string(i);
    wren[wl] = internal(wl);
  }
  BinaryMatroid base = catalog("M(W_" + std::to_string(spec.k) + ")").relabel(wren);
  std::vector<std::string> del, con;
  for (auto& x : spec.del) del.push_back(internal(x));
  for (auto& y : spec.con) con.push_back(internal(y));
  base = base.minor(del, con);
  std::set<std::string> basepoints;
  for (auto& a : spec.attachments) {
    if (!base.elems.contains(internal(a.basepoint)))
      throw ArgumentError("basepoint missing from the base");
    if (!basepoints.insert(a.basepoint).second) throw ArgumentError("repeated basepoint");
    bool rim = is_rim_label(a.basepoint);
    if (rim == a.cographic)
      throw ArgumentError("rim basepoints carry graphic parts, spokes cographic parts");
    bool cls_ok = a.cographic ? is_cographic(a.part).has_value() : is_graphic(a.part).has_value();
    if (!cls_ok) throw ArgumentError("part class does not match its basepoint");
  }
  BinaryMatroid acc = base;
  for (auto& a : spec.attachments) {
    BinaryMatroid part = a.part.relabel({{a.basepoint, internal(a.basepoint)}});
    acc = two_sum(acc, part, internal(a.basepoint));
  }
  // surviving non-basepoint wheel edges keep their plain names unless mapped
  std::map<std::string, std::string> ren;
  for (int i = 1; i <= 2 * spec.k; ++i) {
    std::string wl = "e" + std::to_string(i);
    if (acc.elems.contains(internal(wl))) ren[internal(wl)] = wl;
  }
  for (auto& [wl, fin] : spec.base_relabel) ren[internal(wl)] = fin;
  return acc.relabel(ren);
}

// Dual of a generalized wheel is a generalized wheel: the wheel is
// self-dual with rims and spokes exchanged, parts dualize, classes flip.
inline GeneralizedWheelSpec dualize_spec(const GeneralizedWheelSpec& spec) {
  auto w = catalog("M(W_" + std::to_string(spec.k) + ")");
  Mask rim = 0, spoke = 0;
  for (int i = 1; i <= spec.k; ++i) {
    rim |= bit(w.elems.at("e" + std::to_string(2 * i - 1)));
    spoke |= bit(w.elems.at("e" + std::to_string(2 * i)));
  }
  auto phi_opt =
      find_isomorphism_constrained(w.dual(), w, spoke, rim, std::max(caps().iso, 2 * spec.k));
  if (!phi_opt) throw ArgumentError("wheel self-duality map not found");
  std::map<std::string, std::string> phi(phi_opt->begin(), phi_opt->end());
  GeneralizedWheelSpec out;
  out.k = spec.k;
  for (auto& x : spec.del) out.con.push_back(phi.at(x));
  for (auto& y : spec.con) out.del.push_back(phi.at(y));
  std::set<std::string> gone(spec.del.begin(), spec.del.end());
  gone.insert(spec.con.begin(), spec.con.end());
  std::set<std::string> basepoints;
  for (auto& a : spec.attachments) basepoints.insert(a.basepoint);
  std::map<std::string, std::string> final_name(spec.base_relabel.begin(), spec.base_relabel.end());
  for (int i = 1; i <= 2 * spec.k; ++i) {
    std::string wl = "e" + std::to_string(i);
    if (gone.count(wl) || basepoints.count(wl)) continue;
    std::string fin = final_name.count(wl) ? final_name[wl] : wl;
    out.base_relabel.push_back({phi.at(wl), fin});
  }
  for (auto& a : spec.attachments) {
    GWAttachment b;
    b.basepoint = phi.at(a.basepoint);
    b.part = a.part.dual().relabel({{a.basepoint, b.basepoint}});
    b.cographic = !a.cographic;
    out.attachments.push_back(b);
  }
  return out;
}

namespace detail {

// base = U(1,2) with labels {e1 (rim), e2 (spoke)}: W_3 \ {e3,e5} / {e4,e6}.
inline GeneralizedWheelSpec u12_base_spec() {
  GeneralizedWheelSpec spec;
  spec.k = 3;
  spec.del = {"e3", "e5"};
  spec.con = {"e4", "e6"};
  return spec;
}

// Translates a fan into a generalized-wheel spec over the base Pi_{L+2}
// (itself a wheel-graph minor): attachment i is a uniform glue matroid N_i
// two-summed with the hanging subtrees assigned to position i. Assumes the
// spine starts with a rank-1 node.
inline GeneralizedWheelSpec fan_spec_normalized(const FanCert& c) {
  int L = (int)c.spine.size();
  if (L < 2 || c.spine[0].corank1) throw ArgumentError("normalized fan expected");
  int piL = L + 2;
  GeneralizedWheelSpec spec;
  spec.k = piL / 2 + 1;
  if (piL % 2 == 1) {
    spec.con = {"e" + std::to_string(piL + 1)};
  } else {
    spec.del = {"e" + std::to_string(piL + 1)};
    spec.con = {"e" + std::to_string(piL + 2)};
  }
  // end pools: split non-spine elements into a graphic and a cographic pool
  auto end_split = [&](int end, std::vector<std::string>& gpool,
                       std::vector<std::string>& cgpool) {
    std::string sm = c.spine_markers[end == 0 ? 0 : L - 2];
    std::vector<std::pair<std::string, int>> els;  // label, class: 0 g, 1 cg, 2 free
    for (auto& l : c.spine[end].elements) {
      if (l == sm) continue;
      int cls = 2;
      for (auto& [at, pw] : c.parts)
        if (at == end && pw.marker == l) cls = pw.cographic ? 1 : 0;
      els.push_back({l, cls});
    }
    for (auto& [l, cls] : els)
      if (cls == 0) gpool.push_back(l);
      else if (cls == 1) cgpool.push_back(l);
    for (auto& [l, cls] : els) {
      if (cls != 2) continue;
      if (gpool.empty()) gpool.push_back(l);
      else cgpool.push_back(l);
    }
    if (gpool.empty() || cgpool.empty()) throw ArgumentError("fan end split failed");
  };
  std::vector<std::vector<std::string>> gamma(piL + 1);
  std::vector<std::string> x1, y1, xl, yl;
  end_split(0, x1, y1);
  end_split(L - 1, xl, yl);
  gamma[1] = x1;
  gamma[2] = y1;
  for (int i = 3; i <= piL - 2; ++i) {
    auto& sn = c.spine[i - 2];
    std::string m1 = c.spine_markers[i - 3];
    std::string m2 = c.spine_markers[i - 2];
    for (auto& l : sn.elements)
      if (l != m1 && l != m2) gamma[i].push_back(l);
  }
  gamma[piL - 1] = (piL - 1) % 2 == 1 ? xl : yl;
  gamma[piL] = piL % 2 == 1 ? xl : yl;
  for (int i = 1; i <= piL; ++i) {
    int key = std::min(i, L + 1);
    bool corank1 = (key >= 2 && key % 2 == 1);
    std::string bp = "e" + std::to_string(i);
    std::vector<std::string> labels = gamma[i];
    labels.push_back(bp);
    int nn = (int)labels.size();
    BinaryMatroid ni = corank1
                           ? catalog("U(" + std::to_string(nn - 1) + "," + std::to_string(nn) + ")")
                           : catalog("U(1," + std::to_string(nn) + ")");
    ni = ni.with_labels(labels);
    BinaryMatroid mi = ni;
    for (auto& l : gamma[i])
      for (auto& [at, pw] : c.parts)
        if (pw.marker == l) mi = two_sum(mi, part_matroid(pw), l);
    GWAttachment a;
    a.basepoint = bp;
    a.part = mi;
    a.cographic = (i % 2 == 0);
    spec.attachments.push_back(a);
  }
  return spec;
}

}  // namespace detail

// Converts a positive certificate into a generalized-wheel spec. Succeeds
// exactly when recognition is positive and m is connected.
inline std::optional<GeneralizedWheelSpec> extract_generalized_wheel(const BinaryMatroid& m) {
  if (!m.is_connected()) throw PreconditionError("extraction needs a connected matroid");
  auto cert = recognize(m);
  if (!cert.positive()) return std::nullopt;

  if (std::holds_alternative<GraphicCert>(cert.v)) {
    if (m.size() == 1) {
      GeneralizedWheelSpec spec;
      spec.k = 3;
      Mask e0 = bit(0);
      bool loop = m.rank_of(e0) == 0;
      if (loop) {
        spec.con = {"e1", "e3"};
        spec.del = {"e2", "e4", "e6"};
        spec.base_relabel = {{"e5", m.elems.labels[0]}};
      } else {
        spec.del = {"e2", "e3", "e4", "e5", "e6"};
        spec.base_relabel = {{"e1", m.elems.labels[0]}};
      }
      return spec;
    }
    auto spec = detail::u12_base_spec();
    std::string x = m.elems.labels[0];
    GWAttachment a;
    a.basepoint = "e1";
    a.part = m.relabel({{x, "e1"}});
    a.cographic = false;
    spec.attachments.push_back(a);
    spec.base_relabel = {{"e2", x}};
    return spec;
  }
  if (std::holds_alternative<CographicCert>(cert.v)) {
    auto spec = detail::u12_base_spec();
    std::string x = m.elems.labels[0];
    GWAttachment a;
    a.basepoint = "e2";
    a.part = m.relabel({{x, "e2"}});
    a.cographic = true;
    spec.attachments.push_back(a);
    spec.base_relabel = {{"e1", x}};
    return spec;
  }
  if (auto* c = std::get_if<TwoSumCert>(&cert.v)) {
    auto spec = detail::u12_base_spec();
    GWAttachment g, h;
    g.basepoint = "e1";
    g.part = cycle_matroid(c->graphic_part).relabel({{c->marker, "e1"}});
    g.cographic = false;
    h.basepoint = "e2";
    h.part = cycle_matroid(c->cographic_part_dual).dual().relabel({{c->marker, "e2"}});
    h.cographic = true;
    spec.attachments = {g, h};
    return spec;
  }
  if (auto* c = std::get_if<WheelCert>(&cert.v)) {
    GeneralizedWheelSpec spec;
    spec.k = c->k;
    std::map<std::string, std::string> iso(c->hub_iso.begin(), c->hub_iso.end());
    std::set<std::string> part_markers;
    for (auto& pw : c->parts) part_markers.insert(pw.marker);
    for (auto& [hubel, wlbl] : iso)
      if (!part_markers.count(hubel)) spec.base_relabel.push_back({wlbl, hubel});
    for (auto& pw : c->parts) {
      GWAttachment a;
      a.basepoint = iso.at(pw.marker);
      a.part = detail::part_matroid(pw).relabel({{pw.marker, a.basepoint}});
      a.cographic = pw.cographic;
      spec.attachments.push_back(a);
    }
    return spec;
  }
  if (auto* c = std::get_if<FanCert>(&cert.v)) {
    FanCert norm = *c;
    bool flipped = c->spine[0].corank1;
    if (flipped) {
      // work with the dual fan (types and part classes flip; witness graphs
      // stay valid for the dualized parts)
      for (auto& sn : norm.spine) sn.corank1 = !sn.corank1;
      for (auto& [at, pw] : norm.parts) pw.cographic = !pw.cographic;
    }
    auto spec = detail::fan_spec_normalized(norm);
    return flipped ? dualize_spec(spec) : spec;
  }
  if (std::holds_alternative<ComponentsCert>(cert.v)) {
    // connected input never produces a components certificate
    return std::nullopt;
  }
  return std::nullopt;
}

// --- gadget generators ---------------------------------------------------------------

struct GadgetBuild {
  BinaryMatroid matroid;
  MatroidLabelledTree tree;  // intended labelled tree, kept for audit
};

namespace detail {

inline BinaryMatroid prefixed(const BinaryMatroid& m, const std::string& prefix) {
  std::map<std::string, std::string> ren;
  for (auto& l : m.elems.labels) ren[l] = prefix + l;
  return m.relabel(ren);
}

inline std::string nth_label(const BinaryMatroid& m, int i) { return m.elems.labels[i]; }

inline bool in_g_minus_gstar(const BinaryMatroid& m) {
  return is_graphic(m) && !is_cographic(m);
}
inline bool in_gstar_minus_g(const BinaryMatroid& m) {
  return !is_graphic(m) && is_cographic(m);
}

}  // namespace detail

// Tripod: three-connected pieces in a path with classes G-, G*-, G- (or the
// dual pattern).
inline GadgetBuild make_tripod(const BinaryMatroid& m1, const BinaryMatroid& m2,
                               const BinaryMatroid& m3) {
  for (auto* m : {&m1, &m2, &m3})
    if (!is_3_connected(*m)) throw ArgumentError("tripod pieces must be 3-connected");
  bool pat1 = detail::in_g_minus_gstar(m1) && detail::in_gstar_minus_g(m2) &&
              detail::in_g_minus_gstar(m3);
  bool pat2 = detail::in_gstar_minus_g(m1) && detail::in_g_minus_gstar(m2) &&
              detail::in_gstar_minus_g(m3);
  if (!pat1 && !pat2) throw ArgumentError("tripod class pattern violated");
  auto a = detail::prefixed(m1, "a.");
  auto b = detail::prefixed(m2, "b.");
  auto c = detail::prefixed(m3, "c.");
  a = a.relabel({{detail::nth_label(a, 0), "#t1"}});
  b = b.relabel({{detail::nth_label(b, 0), "#t1"}, {detail::nth_label(b, 1), "#t2"}});
  c = c.relabel({{detail::nth_label(c, 0), "#t2"}});
  MatroidLabelledTree t;
  t.nodes = {{"m1", a}, {"m2", b}, {"m3", c}};
  t.edges = {{0, 1, "#t1"}, {1, 2, "#t2"}};
  t.validate();
  return GadgetBuild{compose(t), t};
}

// H-matroid: leaves x1,y1 at v1 and x2,y2 at v2, with v1v2 adjacent.
inline GadgetBuild make_H_matroid(const BinaryMatroid& x1, const BinaryMatroid& y1,
                                  const BinaryMatroid& v1, const BinaryMatroid& v2,
                                  const BinaryMatroid& x2, const BinaryMatroid& y2) {
  if (!detail::in_g_minus_gstar(x1) || !detail::in_g_minus_gstar(x2))
    throw ArgumentError("x-leaves must be graphic and not cographic");
  if (!detail::in_gstar_minus_g(y1) || !detail::in_gstar_minus_g(y2))
    throw ArgumentError("y-leaves must be cographic and not graphic");
  bool v1_uni = is_uniform_rank1(v1) || is_uniform_corank1(v1);
  bool v2_uni = is_uniform_rank1(v2) || is_uniform_corank1(v2);
  if (v1_uni && v2_uni) throw ArgumentError("one of v1, v2 must be non-uniform");
  auto X1 = detail::prefixed(x1, "x1.").relabel({{"x1." + detail::nth_label(x1, 0), "#h1"}});
  auto Y1 = detail::prefixed(y1, "y1.").relabel({{"y1." + detail::nth_label(y1, 0), "#h2"}});
  auto X2 = detail::prefixed(x2, "x2.").relabel({{"x2." + detail::nth_label(x2, 0), "#h3"}});
  auto Y2 = detail::prefixed(y2, "y2.").relabel({{"y2." + detail::nth_label(y2, 0), "#h4"}});
  auto V1 = detail::prefixed(v1, "v1.");
  V1 = V1.relabel({{detail::nth_label(V1, 0), "#h1"},
                   {detail::nth_label(V1, 1), "#h2"},
                   {detail::nth_label(V1, 2), "#h5"}});
  auto V2 = detail::prefixed(v2, "v2.");
  V2 = V2.relabel({{detail::nth_label(V2, 0), "#h3"},
                   {detail::nth_label(V2, 1), "#h4"},
                   {detail::nth_label(V2, 2), "#h5"}});
  MatroidLabelledTree t;
  t.nodes = {{"x1", X1}, {"y1", Y1}, {"v1", V1}, {"v2", V2}, {"x2", X2}, {"y2", Y2}};
  t.edges = {{0, 2, "#h1"}, {1, 2, "#h2"}, {2, 3, "#h5"}, {3, 4, "#h3"}, {3, 5, "#h4"}};
  t.validate();
  return GadgetBuild{compose(t), t};
}

// H'-matroid: H with a middle node v between v1 and v2; v must be
// non-uniform.
inline GadgetBuild make_Hprime_matroid(const BinaryMatroid& x1, const BinaryMatroid& y1,
                                       const BinaryMatroid& v1, const BinaryMatroid& v,
                                       const BinaryMatroid& v2, const BinaryMatroid& x2,
                                       const BinaryMatroid& y2) {
  if (!detail::in_g_minus_gstar(x1) || !detail::in_g_minus_gstar(x2))
    throw ArgumentError("x-leaves must be graphic and not cographic");
  if (!detail::in_gstar_minus_g(y1) || !detail::in_gstar_minus_g(y2))
    throw ArgumentError("y-leaves must be cographic and not graphic");
  if (is_uniform_rank1(v) || is_uniform_corank1(v))
    throw ArgumentError("middle node must not be uniform of rank or corank 1");
  auto X1 = detail::prefixed(x1, "x1.").relabel({{"x1." + detail::nth_label(x1, 0), "#h1"}});
  auto Y1 = detail::prefixed(y1, "y1.").relabel({{"y1." + detail::nth_label(y1, 0), "#h2"}});
  auto X2 = detail::prefixed(x2, "x2.").relabel({{"x2." + detail::nth_label(x2, 0), "#h3"}});
  auto Y2 = detail::prefixed(y2, "y2.").relabel({{"y2." + detail::nth_label(y2, 0), "#h4"}});
  auto V1 = detail::prefixed(v1, "v1.");
  V1 = V1.relabel({{detail::nth_label(V1, 0), "#h1"},
                   {detail::nth_label(V1, 1), "#h2"},
                   {detail::nth_label(V1, 2), "#h5"}});
  auto V = detail::prefixed(v, "v.");
  V = V.relabel({{detail::nth_label(V, 0), "#h5"}, {detail::nth_label(V, 1), "#h6"}});
  auto V2 = detail::prefixed(v2, "v2.");
  V2 = V2.relabel({{detail::nth_label(V2, 0), "#h3"},
                   {detail::nth_label(V2, 1), "#h4"},
                   {detail::nth_label(V2, 2), "#h6"}});
  MatroidLabelledTree t;
  t.nodes = {{"x1", X1}, {"y1", Y1}, {"v1", V1}, {"v", V}, {"v2", V2}, {"x2", X2}, {"y2", Y2}};
  t.edges = {{0, 2, "#h1"}, {1, 2, "#h2"}, {2, 3, "#h5"}, {3, 4, "#h6"}, {4, 5, "#h3"}, {4, 6, "#h4"}};
  t.validate();
  return GadgetBuild{compose(t), t};
}

// (m,k)-bench: a spine of m uniform nodes with end leaves x1,y1 / xm,ym and
// a leaf w at position k; classes per the bench conditions.
inline GadgetBuild make_bench(int m, int k, const BinaryMatroid& x1, const BinaryMatroid& y1,
                              const BinaryMatroid& xm, const BinaryMatroid& ym,
                              const BinaryMatroid& w) {
  if (m < 3 || k <= 1 || k >= m) throw ArgumentError("bench needs m >= 3 and 1 < k < m");
  if (!detail::in_g_minus_gstar(x1) || !detail::in_g_minus_gstar(xm))
    throw ArgumentError("x-leaves must be graphic and not cographic");
  if (!detail::in_gstar_minus_g(y1) || !detail::in_gstar_minus_g(ym))
    throw ArgumentError("y-leaves must be cographic and not graphic");
  MarkerSource src;
  MatroidLabelledTree t;
  // spine nodes alternate U(1,n) / U(n-1,n) starting with rank 1
  std::vector<std::string> spine_mks;
  for (int i = 0; i + 1 < m; ++i) spine_mks.push_back("#b" + std::to_string(i + 1));
  auto uniform_node = [&](int i, const std::vector<std::string>& labels) {
    int nn = (int)labels.size();
    bool corank1 = (i % 2 == 1);
    auto u = corank1 ? catalog("U(" + std::to_string(nn - 1) + "," + std::to_string(nn) + ")")
                     : catalog("U(1," + std::to_string(nn) + ")");
    return u.with_labels(labels);
  };
  // leaf class at w depends on the type of node k
  bool vk_corank1 = ((k - 1) % 2 == 1);
  if (vk_corank1) {
    if (!detail::in_gstar_minus_g(w))
      throw ArgumentError("w must be cographic-only when node k has corank 1");
  } else {
    if (!detail::in_g_minus_gstar(w))
      throw ArgumentError("w must be graphic-only when node k has rank 1");
  }
  std::vector<int> spine_ids;
  for (int i = 0; i < m; ++i) {
    std::vector<std::string> labels;
    if (i > 0) labels.push_back(spine_mks[i - 1]);
    if (i + 1 < m) labels.push_back(spine_mks[i]);
    if (i == 0) labels.insert(labels.end(), {"#bx1", "#by1"});
    if (i == m - 1) labels.insert(labels.end(), {"#bxm", "#bym"});
    if (i == k - 1) labels.push_back("#bw");
    while ((int)labels.size() < 3) labels.push_back("f" + std::to_string(i) + "." +
                                                    std::to_string(labels.size()));
    spine_ids.push_back((int)t.nodes.size());
    t.nodes.push_back({"v" + std::to_string(i + 1), uniform_node(i, labels)});
    if (i > 0) t.edges.push_back({spine_ids[i - 1], spine_ids[i], spine_mks[i - 1]});
  }
  auto add_leaf = [&](const BinaryMatroid& leaf, const std::string& pre, const std::string& mk,
                      int at) {
    auto L = detail::prefixed(leaf, pre).relabel({{pre + detail::nth_label(leaf, 0), mk}});
    int id = (int)t.nodes.size();
    t.nodes.push_back({pre + "leaf", L});
    t.edges.push_back({at, id, mk});
  };
  add_leaf(x1, "x1.", "#bx1", spine_ids[0]);
  add_leaf(y1, "y1.", "#by1", spine_ids[0]);
  add_leaf(xm, "xm.", "#bxm", spine_ids[m - 1]);
  add_leaf(ym, "ym.", "#bym", spine_ids[m - 1]);
  add_leaf(w, "w.", "#bw", spine_ids[k - 1]);
  t.validate();
  return GadgetBuild{compose(t), t};
}

// Starlike: a non-uniform planar hub with four leaves, two graphic-only and
// two cographic-only.
inline GadgetBuild make_starlike(const BinaryMatroid& hub, const BinaryMatroid& l1,
                                 const BinaryMatroid& l2, const BinaryMatroid& l3,
                                 const BinaryMatroid& l4,
                                 const std::vector<std::string>& hub_markers) {
  if (!is_graphic(hub) || !is_cographic(hub))
    throw ArgumentError("starlike hub must be graphic and cographic");
  if (is_uniform_rank1(hub) || is_uniform_corank1(hub))
    throw ArgumentError("starlike hub must not be uniform of rank or corank 1");
  if (hub_markers.size() != 4) throw ArgumentError("need four hub marker elements");
  if (!detail::in_g_minus_gstar(l1) || !detail::in_g_minus_gstar(l2))
    throw ArgumentError("leaves 1,2 must be graphic-only");
  if (!detail::in_gstar_minus_g(l3) || !detail::in_gstar_minus_g(l4))
    throw ArgumentError("leaves 3,4 must be cographic-only");
  std::map<std::string, std::string> ren;
  for (int i = 0; i < 4; ++i) ren[hub_markers[i]] = "#s" + std::to_string(i + 1);
  auto H = detail::prefixed(hub, "hub.");
  std::map<std::string, std::string> ren2;
  for (int i = 0; i < 4; ++i) ren2["hub." + hub_markers[i]] = "#s" + std::to_string(i + 1);
  H = H.relabel(ren2);
  MatroidLabelledTree t;
  t.nodes.push_back({"hub", H});
  const BinaryMatroid* leaves[4] = {&l1, &l2, &l3, &l4};
  for (int i = 0; i < 4; ++i) {
    std::string pre = "l" + std::to_string(i + 1) + ".";
    std::string mk = "#s" + std::to_string(i + 1);
    auto L = detail::prefixed(*leaves[i], pre).relabel({{pre + detail::nth_label(*leaves[i], 0), mk}});
    t.nodes.push_back({pre + "leaf", L});
    t.edges.push_back({0, i + 1, mk});
  }
  t.validate();
  return GadgetBuild{compose(t), t};
}

}  // namespace dgm
