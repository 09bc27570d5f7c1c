#pragma once

#include "dgm/matroid.hpp"

namespace dgm {

// --- cycle matroids ----------------------------------------------------------

// Cycle matroid of a multigraph: GF(2) vertex-edge incidence columns, loops
// as zero columns.
inline BinaryMatroid cycle_matroid(const MultiGraph& g) {
  Rep r;
  r.rows = g.n_vertices();
  std::vector<std::string> labels;
  for (auto& e : g.edges) {
    labels.push_back(e.label);
    Mask col = 0;
    if (!e.is_loop()) {
      col |= bit(g.vertex_index(e.u));
      col |= bit(g.vertex_index(e.v));
    }
    r.cols.push_back(col);
  }
  if (r.rows > 64) throw ResourceError("more than 64 vertices");
  return BinaryMatroid::from_rep(std::move(labels), std::move(r));
}

// --- isomorphism -------------------------------------------------------------

namespace detail {

inline std::vector<std::vector<int>> element_circuit_profiles(const BinaryMatroid& m) {
  std::vector<std::vector<int>> prof(m.size());
  for (Mask c : *m.circuits()) {
    int s = popcount(c);
    for (int e = 0; e < m.size(); ++e)
      if (has_bit(c, e)) prof[e].push_back(s);
  }
  for (auto& p : prof) std::sort(p.begin(), p.end());
  return prof;
}

}  // namespace detail

// Bijection E(m) -> E(n) carrying bases onto bases (equivalently circuits
// onto circuits). Backtracking with invariant pre-hashing; deterministic.
inline std::optional<std::map<std::string, std::string>> find_isomorphism(
    const BinaryMatroid& m, const BinaryMatroid& n, int cap_override = 0) {
  if (m.size() != n.size()) return std::nullopt;
  int cap = cap_override > 0 ? cap_override : caps().iso;
  if (m.size() > cap) throw ResourceError("isomorphism search beyond cap");
  if (m.rank() != n.rank()) return std::nullopt;
  auto cm = m.circuits(), cn = n.circuits();
  if (cm->size() != cn->size()) return std::nullopt;
  {
    std::vector<int> sm, sn;
    for (Mask c : *cm) sm.push_back(popcount(c));
    for (Mask c : *cn) sn.push_back(popcount(c));
    std::sort(sm.begin(), sm.end());
    std::sort(sn.begin(), sn.end());
    if (sm != sn) return std::nullopt;
  }
  auto pm = detail::element_circuit_profiles(m);
  auto pn = detail::element_circuit_profiles(n);
  {
    auto a = pm, b = pn;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  int N = m.size();
  std::set<Mask> ncirc(cn->begin(), cn->end());
  // order m's elements by profile rarity for early pruning
  std::map<std::vector<int>, int> freq;
  for (auto& p : pm) ++freq[p];
  std::vector<int> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return freq[pm[a]] < freq[pm[b]]; });
  std::vector<int> img(N, -1), used(N, 0), pos_of(N);
  for (int i = 0; i < N; ++i) pos_of[order[i]] = i;
  // circuits of m indexed by the position of their last-mapped element
  std::vector<std::vector<Mask>> closing(N);
  for (Mask c : *cm) {
    int last = -1;
    for (int e = 0; e < N; ++e)
      if (has_bit(c, e)) last = std::max(last, pos_of[e]);
    closing[last].push_back(c);
  }
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == N) return true;
    int e = order[i];
    for (int f = 0; f < N; ++f) {
      if (used[f] || pm[e] != pn[f]) continue;
      img[e] = f;
      used[f] = 1;
      bool ok = true;
      for (Mask c : closing[i]) {
        Mask fc = 0;
        for (int x = 0; x < N; ++x)
          if (has_bit(c, x)) fc |= bit(img[x]);
        if (!ncirc.count(fc)) {
          ok = false;
          break;
        }
      }
      if (ok && rec(i + 1)) return true;
      img[e] = -1;
      used[f] = 0;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  // circuit counts are equal, so mapping all m-circuits into n-circuits is a
  // bijection; matroids agree
  std::map<std::string, std::string> out;
  for (int e = 0; e < N; ++e) out[m.elems.labels[e]] = n.elems.labels[img[e]];
  return out;
}

inline bool is_isomorphic(const BinaryMatroid& m, const BinaryMatroid& n, int cap_override = 0) {
  return find_isomorphism(m, n, cap_override).has_value();
}

// Isomorphism m -> n required to carry the element set `from` onto `to`.
inline std::optional<std::map<std::string, std::string>> find_isomorphism_constrained(
    const BinaryMatroid& m, const BinaryMatroid& n, Mask from, Mask to, int cap_override = 0) {
  if (m.size() != n.size() || popcount(from) != popcount(to)) return std::nullopt;
  int cap = cap_override > 0 ? cap_override : caps().iso;
  if (m.size() > cap) throw ResourceError("isomorphism search beyond cap");
  if (m.rank() != n.rank()) return std::nullopt;
  auto cm = m.circuits(), cn = n.circuits();
  if (cm->size() != cn->size()) return std::nullopt;
  auto pm = detail::element_circuit_profiles(m);
  auto pn = detail::element_circuit_profiles(n);
  int N = m.size();
  std::set<Mask> ncirc(cn->begin(), cn->end());
  std::vector<int> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> pos_of(N);
  for (int i = 0; i < N; ++i) pos_of[order[i]] = i;
  std::vector<std::vector<Mask>> closing(N);
  for (Mask c : *cm) {
    int last = -1;
    for (int e = 0; e < N; ++e)
      if (has_bit(c, e)) last = std::max(last, pos_of[e]);
    closing[last].push_back(c);
  }
  std::vector<int> img(N, -1), used(N, 0);
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == N) return true;
    int e = order[i];
    for (int f = 0; f < N; ++f) {
      if (used[f] || pm[e] != pn[f]) continue;
      if (has_bit(from, e) != has_bit(to, f)) continue;
      img[e] = f;
      used[f] = 1;
      bool ok = true;
      for (Mask c : closing[i]) {
        Mask fc = 0;
        for (int x = 0; x < N; ++x)
          if (has_bit(c, x)) fc |= bit(img[x]);
        if (!ncirc.count(fc)) {
          ok = false;
          break;
        }
      }
      if (ok && rec(i + 1)) return true;
      img[e] = -1;
      used[f] = 0;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  std::map<std::string, std::string> out;
  for (int e = 0; e < N; ++e) out[m.elems.labels[e]] = n.elems.labels[img[e]];
  return out;
}

// --- minor containment ---------------------------------------------------------

struct MinorWitness {
  std::vector<std::string> deleted, contracted;
  std::map<std::string, std::string> iso;  // minor element -> target element
};

// First-found minor of m isomorphic to n: enumerate independent contraction
// sets of the right rank drop, then deletion sets, then isomorphism.
inline std::optional<MinorWitness> has_minor(const BinaryMatroid& m, const BinaryMatroid& n) {
  int nm = m.size(), nn = n.size();
  if (nn > nm) return std::nullopt;
  if (nm > caps().minor_scan) throw ResourceError("minor scan beyond cap");
  int rdrop = m.rank() - n.rank();
  if (rdrop < 0) return std::nullopt;
  if (nm - nn < rdrop) return std::nullopt;
  std::vector<int> con;
  std::optional<MinorWitness> found;
  std::function<bool(int)> pick_con = [&](int start) -> bool {
    if ((int)con.size() == rdrop) {
      Mask cmask = 0;
      for (int e : con) cmask |= bit(e);
      if (!m.is_independent(cmask)) return false;
      BinaryMatroid mc = m.contract_elements(cmask);
      // choose deletions among the rest
      int ndel = mc.size() - nn;
      std::vector<int> del;
      std::function<bool(int)> pick_del = [&](int s) -> bool {
        if ((int)del.size() == ndel) {
          Mask dmask = 0;
          for (int e : del) dmask |= bit(e);
          BinaryMatroid cand = mc.delete_elements(dmask);
          if (cand.rank() != n.rank()) return false;
          auto iso = find_isomorphism(cand, n, std::max(caps().iso, nn));
          if (!iso) return false;
          MinorWitness w;
          for (int e : del) w.deleted.push_back(mc.elems.labels[e]);
          for (int e : con) w.contracted.push_back(m.elems.labels[e]);
          w.iso = *iso;
          found = w;
          return true;
        }
        for (int e = s; e < mc.size(); ++e) {
          del.push_back(e);
          if (pick_del(e + 1)) return true;
          del.pop_back();
        }
        return false;
      };
      return pick_del(0);
    }
    for (int e = start; e < nm; ++e) {
      con.push_back(e);
      if (pick_con(e + 1)) return true;
      con.pop_back();
    }
    return false;
  };
  pick_con(0);
  return found;
}

// --- graphic / cographic -------------------------------------------------------

namespace detail {

// Searches for r+1 cocycle-space vectors covering every element exactly
// twice: such vectors are the vertex stars of a connected realization.
inline std::optional<std::vector<Mask>> star_cover(const std::vector<Mask>& space_rows, int n,
                                                   int r) {
  if (r > 20) throw ResourceError("cocycle cover search beyond rank 20");
  std::vector<Mask> words;
  words.reserve(size_t(1) << r);
  words.push_back(0);
  for (int i = 0; i < r; ++i) {
    size_t s = words.size();
    for (size_t j = 0; j < s; ++j) words.push_back(words[j] ^ space_rows[i]);
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  if (!words.empty() && words[0] == 0) words.erase(words.begin());

  std::vector<int> cov(n, 0);
  std::vector<Mask> chosen;
  Mask sat = 0;
  std::function<bool()> rec = [&]() -> bool {
    int e = -1;
    for (int i = 0; i < n; ++i)
      if (cov[i] < 2) {
        e = i;
        break;
      }
    if (e < 0) return (int)chosen.size() == r + 1 && gf2_rank(chosen) == r;
    if ((int)chosen.size() >= r + 1) return false;
    for (Mask w : words) {
      if (!has_bit(w, e) || (w & sat)) continue;
      Mask newly_sat = 0;
      bool ok = true;
      for (int i = 0; i < n && ok; ++i)
        if (has_bit(w, i)) {
          if (cov[i] >= 2) ok = false;
          else if (cov[i] == 1) newly_sat |= bit(i);
        }
      if (!ok) continue;
      for (int i = 0; i < n; ++i)
        if (has_bit(w, i)) ++cov[i];
      sat |= newly_sat;
      chosen.push_back(w);
      if (rec()) return true;
      chosen.pop_back();
      sat &= ~newly_sat;
      for (int i = 0; i < n; ++i)
        if (has_bit(w, i)) --cov[i];
    }
    return false;
  };
  if (!rec()) return std::nullopt;
  return chosen;
}

}  // namespace detail

namespace detail {

// Graph 2-sum: identify the marker edge's endpoints across the two graphs
// and drop both copies of the marker. Realizes the matroid 2-sum.
inline MultiGraph glue_graphs(const MultiGraph& g1, const MultiGraph& g2,
                              const std::string& marker) {
  const GraphEdge* m1 = nullptr;
  const GraphEdge* m2 = nullptr;
  for (auto& e : g1.edges)
    if (e.label == marker) m1 = &e;
  for (auto& e : g2.edges)
    if (e.label == marker) m2 = &e;
  if (!m1 || !m2) throw ArgumentError("marker edge missing");
  std::map<std::string, std::string> ren{{m2->u, m1->u}, {m2->v, m1->v}};
  MultiGraph out;
  out.vertices = g1.vertices;
  for (auto& v : g2.vertices)
    if (!ren.count(v)) out.vertices.push_back(v);
  for (auto& e : g1.edges)
    if (e.label != marker) out.edges.push_back(e);
  for (auto e : g2.edges) {
    if (e.label == marker) continue;
    if (ren.count(e.u)) e.u = ren[e.u];
    if (ren.count(e.v)) e.v = ren[e.v];
    out.edges.push_back(e);
  }
  return out;
}

// Realizes a connected matroid: splits along 2-separations until the pieces
// are small or 3-connected, runs the star-cover search there, and glues the
// witnesses back. Graphicness is preserved both ways across 2-sums.
inline std::optional<MultiGraph> realize_connected(const BinaryMatroid& piece,
                                                   const std::string& vprefix, int& vcount,
                                                   int& mkcount) {
  int n = piece.size(), r = piece.rank();
  auto fresh = [&]() { return vprefix + std::to_string(++vcount); };
  if (r == 0) {
    // single loop (connected pieces with rank 0 have one element)
    MultiGraph out;
    std::string v = fresh();
    out.vertices.push_back(v);
    for (auto& l : piece.elems.labels) out.edges.push_back({l, v, v});
    return out;
  }
  if (n > 12) {
    auto sep = find_2separation_connected(piece);
    if (sep) {
      auto rep = piece.binary_rep();
      Mask v = span_intersection_vector(*rep, n, sep->side_x);
      std::string mk = "#G" + std::to_string(++mkcount);
      auto make_part = [&](Mask side) {
        Rep r2;
        r2.rows = rep->rows;
        std::vector<std::string> labels;
        for (int e = 0; e < n; ++e) {
          if (!has_bit(side, e)) continue;
          labels.push_back(piece.elems.labels[e]);
          r2.cols.push_back(rep->cols[e]);
        }
        labels.push_back(mk);
        r2.cols.push_back(v);
        return BinaryMatroid::from_rep(std::move(labels), std::move(r2));
      };
      auto g1 = realize_connected(make_part(sep->side_x), vprefix, vcount, mkcount);
      if (!g1) return std::nullopt;
      auto g2 = realize_connected(make_part(sep->side_y), vprefix, vcount, mkcount);
      if (!g2) return std::nullopt;
      return glue_graphs(*g1, *g2, mk);
    }
  }
  if (r > 16) throw ResourceError("graphic realization beyond rank 16 on a 3-connected piece");
  const auto& sf = piece.std_form();
  std::vector<Mask> rows;
  for (int i = 0; i < (int)sf.base_order.size(); ++i) {
    Mask row = bit(sf.base_order[i]);
    for (int e = 0; e < n; ++e)
      if (!has_bit(sf.base, e) && has_bit(sf.fund[e], sf.base_order[i])) row |= bit(e);
    rows.push_back(row);
  }
  auto stars = star_cover(rows, n, r);
  if (!stars) return std::nullopt;
  MultiGraph out;
  std::vector<std::string> verts;
  for (int i = 0; i < r + 1; ++i) {
    verts.push_back(fresh());
    out.vertices.push_back(verts.back());
  }
  for (int e = 0; e < n; ++e) {
    std::vector<int> at;
    for (int i = 0; i < r + 1; ++i)
      if (has_bit((*stars)[i], e)) at.push_back(i);
    if (at.size() != 2) return std::nullopt;
    out.edges.push_back({piece.elems.labels[e], verts[at[0]], verts[at[1]]});
  }
  return out;
}

}  // namespace detail

// Multigraph G with cycle_matroid(G) equal to m (by labels), when m is
// graphic. Realizes each matroid component separately; the witness is
// verified against m before returning.
inline std::optional<MultiGraph> is_graphic(const BinaryMatroid& m, const std::string& vprefix = "g") {
  auto repo = m.binary_rep();
  if (!repo) return std::nullopt;  // graphic matroids are binary
  BinaryMatroid work = m.has_rep() ? m : BinaryMatroid::from_rep(m.elems.labels, *repo);

  MultiGraph out;
  int vcount = 0, mkcount = 0;
  for (Mask comp : work.components()) {
    BinaryMatroid piece = work.delete_elements(work.ground_mask() & ~comp);
    auto g = detail::realize_connected(piece, vprefix, vcount, mkcount);
    if (!g) return std::nullopt;
    for (auto& v : g->vertices) out.vertices.push_back(v);
    for (auto& e : g->edges) out.edges.push_back(e);
  }
  if (!matroids_equal(cycle_matroid(out), m)) return std::nullopt;
  return out;
}

inline std::optional<MultiGraph> is_cographic(const BinaryMatroid& m) {
  return is_graphic(m.dual(), "h");
}

// --- regularity ------------------------------------------------------------------

namespace detail {

// F7 minor test for a represented binary matroid: some contraction of
// corank 3 whose simplification covers all 7 points of PG(2,2).
inline bool has_f7_minor(const BinaryMatroid& m) {
  if (!m.has_rep()) throw ArgumentError("F7 scan needs a representation");
  int n = m.size(), r = m.rank();
  if (r < 3 || n < 7) return false;
  const auto& cols0 = m.rep().cols;
  long budget = caps().regular_steps;
  // DFS over independent sets of size r-3, projecting as we go
  std::vector<Mask> proj = cols0;
  std::function<bool(int, int, std::vector<Mask>&)> rec = [&](int start, int need,
                                                              std::vector<Mask>& cur) -> bool {
    if (--budget < 0) throw ResourceError("regularity scan budget exhausted");
    if (need == 0) {
      // rank of remaining multiset must be 3 and points must cover PG(2,2)
      std::vector<Mask> basis;
      std::vector<int> piv;
      for (Mask v : cur) {
        Mask w = v;
        for (size_t i = 0; i < basis.size(); ++i)
          if (has_bit(w, piv[i])) w ^= basis[i];
        if (w) {
          basis.push_back(w);
          piv.push_back(lowest_bit(w));
        }
      }
      if ((int)basis.size() != 3) return false;
      // coordinates over the 3 pivots
      std::set<int> pts;
      for (Mask v : cur) {
        Mask w = v;
        int coord = 0;
        for (size_t i = 0; i < basis.size(); ++i)
          if (has_bit(w, piv[i])) {
            w ^= basis[i];
            coord |= 1 << i;
          }
        if (w) return false;  // should not happen
        if (coord) pts.insert(coord);
      }
      return pts.size() == 7;
    }
    for (int e = start; e < (int)cur.size(); ++e) {
      Mask v = cur[e];
      if (!v) continue;
      int p = lowest_bit(v);
      std::vector<Mask> next(cur.size());
      for (int f = 0; f < (int)cur.size(); ++f)
        next[f] = has_bit(cur[f], p) ? (cur[f] ^ v) : cur[f];
      next[e] = 0;
      if (rec(e + 1, need - 1, next)) return true;
    }
    return false;
  };
  std::vector<Mask> cur = cols0;
  return rec(0, r - 3, cur);
}

}  // namespace detail

// Regular = binary with no F7 and no F7* minor. Regularity passes through
// 2-sums in both directions, so the scan runs on 3-connected pieces only.
inline bool is_regular(const BinaryMatroid& m) {
  auto repo = m.binary_rep();
  if (!repo) return false;  // U(2,4) territory
  BinaryMatroid work = m.has_rep() ? m : BinaryMatroid::from_rep(m.elems.labels, *repo);
  int mkserial = 0;
  std::function<bool(const BinaryMatroid&)> piece_regular = [&](const BinaryMatroid& piece) -> bool {
    if (piece.size() > 12) {
      auto sep = find_2separation_connected(piece);
      if (sep) {
        auto rep = piece.binary_rep();
        Mask v = detail::span_intersection_vector(*rep, piece.size(), sep->side_x);
        std::string mk = "#R" + std::to_string(++mkserial);
        auto make_part = [&](Mask side) {
          Rep r2;
          r2.rows = rep->rows;
          std::vector<std::string> labels;
          for (int e = 0; e < piece.size(); ++e) {
            if (!has_bit(side, e)) continue;
            labels.push_back(piece.elems.labels[e]);
            r2.cols.push_back(rep->cols[e]);
          }
          labels.push_back(mk);
          r2.cols.push_back(v);
          return BinaryMatroid::from_rep(std::move(labels), std::move(r2));
        };
        return piece_regular(make_part(sep->side_x)) && piece_regular(make_part(sep->side_y));
      }
    }
    if (detail::has_f7_minor(piece)) return false;
    if (detail::has_f7_minor(piece.dual())) return false;
    return true;
  };
  for (Mask comp : work.components()) {
    BinaryMatroid piece = work.delete_elements(work.ground_mask() & ~comp);
    if (!piece_regular(piece)) return false;
  }
  return true;
}

// --- catalog ------------------------------------------------------------------

namespace detail {

inline BinaryMatroid uniform_matroid(int r, int n) {
  if (r < 0 || r > n) throw ArgumentError("uniform matroid needs 0 <= r <= n");
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back("e" + std::to_string(i));
  if (r <= 1 || r >= n - 1) {
    Rep rep;
    if (r == 0) {
      rep.rows = 1;
      rep.cols.assign(n, 0);
    } else if (r == 1) {
      rep.rows = 1;
      rep.cols.assign(n, 1);
    } else if (r == n) {
      rep.rows = n;
      for (int i = 0; i < n; ++i) rep.cols.push_back(bit(i));
    } else {  // r == n-1
      rep.rows = n - 1;
      for (int i = 0; i < n - 1; ++i) rep.cols.push_back(bit(i));
      Mask all = full_mask(n - 1);
      rep.cols.push_back(all);
    }
    return BinaryMatroid::from_rep(std::move(labels), std::move(rep));
  }
  // non-binary in general: explicit bases
  std::vector<Mask> bases;
  std::function<void(int, int, Mask)> rec = [&](int start, int need, Mask cur) {
    if (need == 0) {
      bases.push_back(cur);
      return;
    }
    for (int e = start; e <= n - need; ++e) rec(e + 1, need - 1, cur | bit(e));
  };
  rec(0, r, 0);
  return BinaryMatroid::from_bases(std::move(labels), std::move(bases));
}

inline BinaryMatroid matrix_matroid(int r, int n, const char* const* rows) {
  std::vector<Mask> rr;
  for (int i = 0; i < r; ++i) {
    Mask row = 0;
    for (int j = 0; j < n; ++j)
      if (rows[i][j] == '1') row |= bit(j);
    rr.push_back(row);
  }
  std::vector<std::string> labels;
  for (int j = 1; j <= n; ++j) labels.push_back("e" + std::to_string(j));
  return BinaryMatroid::from_matrix_rows(std::move(labels), std::move(rr));
}

}  // namespace detail

// Named matroids. Wheel elements follow the W_k labelling: e_{2i-1} rim,
// e_{2i} spoke.
inline BinaryMatroid catalog(const std::string& name) {
  if (name == "F7") {
    static const char* A7[] = {"1001011", "0101101", "0010111"};
    return detail::matrix_matroid(3, 7, A7);
  }
  if (name == "F7*") return catalog("F7").dual();
  if (name == "R10") {
    static const char* A10[] = {"1000011001", "0100011100", "0010001110", "0001000111",
                                "0000110011"};
    return detail::matrix_matroid(5, 10, A10);
  }
  if (name == "R12") {
    static const char* A12[] = {"100000111000", "010000110100", "001000100010",
                                "000100010001", "000010001011", "000001000111"};
    return detail::matrix_matroid(6, 12, A12);
  }
  if (name == "M(K4)") return cycle_matroid(complete_graph(4));
  if (name == "M(K5)") return cycle_matroid(complete_graph(5));
  if (name == "M(K33)") return cycle_matroid(complete_bipartite(3, 3));
  if (name == "M(K33')") return cycle_matroid(k33_prime());
  if (name == "M*(K5)") return catalog("M(K5)").dual();
  if (name == "M*(K33)") return catalog("M(K33)").dual();
  if (name == "M*(K33')") return catalog("M(K33')").dual();
  auto parse_int_suffix = [&](const std::string& pre) -> std::optional<int> {
    if (name.rfind(pre, 0) != 0) return std::nullopt;
    std::string rest = name.substr(pre.size());
    if (!rest.empty() && rest.back() == ')') rest.pop_back();
    if (rest.empty()) return std::nullopt;
    for (char ch : rest)
      if (!isdigit((unsigned char)ch)) return std::nullopt;
    return std::stoi(rest);
  };
  if (auto k = parse_int_suffix("M(W_"); k || (k = parse_int_suffix("M(W"))) {
    if (*k < 3) throw ArgumentError("wheels need k >= 3");
    return cycle_matroid(wheel(*k));
  }
  if (auto k = parse_int_suffix("Pi_"); k || (k = parse_int_suffix("Pi"))) {
    if (*k < 2) throw ArgumentError("Pi needs k >= 2");
    return cycle_matroid(pi_graph(*k));
  }
  // U(r,n)
  if (name.rfind("U(", 0) == 0 && name.back() == ')') {
    auto comma = name.find(',');
    if (comma != std::string::npos) {
      int r = std::stoi(name.substr(2, comma - 2));
      int n = std::stoi(name.substr(comma + 1, name.size() - comma - 2));
      return detail::uniform_matroid(r, n);
    }
  }
  throw ArgumentError("unknown catalog name: " + name);
}

}  // namespace dgm
