#pragma once

#include <functional>
#include <memory>
#include <mutex>

#include "dgm/gf2.hpp"
#include "dgm/graph.hpp"

namespace dgm {

struct BinaryMatroid;
inline bool matroids_equal(const BinaryMatroid& a, const BinaryMatroid& b);

// GF(2) representation: one column bitmask per element. Rows are anonymous
// and may be redundant (incidence matrices keep their zero-sum row).
struct Rep {
  int rows = 0;
  std::vector<Mask> cols;
};

namespace detail {

// Standard-form data over a greedy base: for each element, the support of
// its fundamental circuit (as an element mask, including the element), and
// its coordinates over the base pivot order.
struct StdForm {
  Mask base = 0;
  std::vector<int> base_order;    // element ids of base, in pivot order
  std::vector<Mask> fund;         // fundamental circuit mask per element
  std::vector<Mask> coords;       // column of element over base positions
  int rank = 0;
};

inline StdForm std_form(const Rep& rep, int n) {
  StdForm sf;
  sf.fund.resize(n);
  sf.coords.resize(n);
  // reduced basis vectors with provenance over base positions
  std::vector<Mask> bvec, bprov;
  std::vector<int> bpivot;
  for (int e = 0; e < n; ++e) {
    Mask v = rep.cols[e];
    Mask prov = 0;  // over base positions
    for (size_t i = 0; i < bvec.size(); ++i) {
      if (has_bit(v, bpivot[i])) {
        v ^= bvec[i];
        prov ^= bprov[i];
      }
    }
    if (v == 0) {
      sf.coords[e] = prov;
      Mask f = bit(e);
      for (int i = 0; i < (int)sf.base_order.size(); ++i)
        if (has_bit(prov, i)) f |= bit(sf.base_order[i]);
      sf.fund[e] = f;
    } else {
      int pos = (int)bvec.size();
      bvec.push_back(v);
      bprov.push_back(prov | bit(pos));
      bpivot.push_back(lowest_bit(v));
      sf.base |= bit(e);
      sf.base_order.push_back(e);
      sf.coords[e] = bit(pos);
      sf.fund[e] = bit(e);
    }
  }
  sf.rank = (int)sf.base_order.size();
  return sf;
}

}  // namespace detail

// Binary matroid on a labelled ground set. Carries a GF(2) representation
// and/or an explicit base family; the base family is enumerated lazily and
// cached. Values are immutable after construction.
struct BinaryMatroid {
  LabelIndex elems;

 private:
  std::optional<Rep> rep_;
  std::shared_ptr<std::vector<Mask>> explicit_bases_;
  struct Cache {
    std::mutex mu;
    std::shared_ptr<std::vector<Mask>> bases;
    std::shared_ptr<std::vector<Mask>> circuits;
    std::optional<detail::StdForm> sf;
    std::optional<bool> binary;
    std::optional<Rep> derived_rep;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();

 public:
  BinaryMatroid() : elems(std::vector<std::string>{}) {
    explicit_bases_ = std::make_shared<std::vector<Mask>>(std::vector<Mask>{0});
  }

  static BinaryMatroid from_rep(std::vector<std::string> labels, Rep rep) {
    if ((int)rep.cols.size() != (int)labels.size())
      throw ArgumentError("representation column count does not match labels");
    BinaryMatroid m;
    m.elems = LabelIndex(std::move(labels));
    m.rep_ = std::move(rep);
    m.explicit_bases_.reset();
    m.cache_ = std::make_shared<Cache>();
    return m;
  }

  static BinaryMatroid from_matrix_rows(std::vector<std::string> labels, std::vector<Mask> rows) {
    Rep r;
    r.rows = (int)rows.size();
    r.cols.assign(labels.size(), 0);
    for (int i = 0; i < (int)rows.size(); ++i)
      for (int j = 0; j < (int)labels.size(); ++j)
        if (has_bit(rows[i], j)) r.cols[j] |= bit(i);
    return from_rep(std::move(labels), std::move(r));
  }

  static BinaryMatroid from_bases(std::vector<std::string> labels, std::vector<Mask> bases) {
    if (bases.empty()) throw ArgumentError("base family must be nonempty");
    std::sort(bases.begin(), bases.end());
    bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
    int sz = popcount(bases[0]);
    for (Mask b : bases)
      if (popcount(b) != sz) throw ArgumentError("bases have unequal cardinality");
    BinaryMatroid m;
    m.elems = LabelIndex(std::move(labels));
    m.explicit_bases_ = std::make_shared<std::vector<Mask>>(std::move(bases));
    m.cache_ = std::make_shared<Cache>();
    return m;
  }

  int size() const { return elems.size(); }
  Mask ground_mask() const { return full_mask(size()); }
  bool has_rep() const { return rep_.has_value(); }
  const Rep& rep() const {
    if (!rep_) throw ArgumentError("matroid has no representation");
    return *rep_;
  }

  const detail::StdForm& std_form() const {
    std::lock_guard<std::mutex> lk(cache_->mu);
    if (!cache_->sf) cache_->sf = detail::std_form(rep(), size());
    return *cache_->sf;
  }

  int rank() const {
    if (rep_) return std_form().rank;
    return popcount(bases_unlocked()->front());
  }

  int rank_of(Mask x) const {
    if (rep_) {
      // eliminate the columns of x
      std::vector<Mask> basis;
      std::vector<int> piv;
      int r = 0;
      for (int e = 0; e < size(); ++e) {
        if (!has_bit(x, e)) continue;
        Mask v = rep_->cols[e];
        for (size_t i = 0; i < basis.size(); ++i)
          if (has_bit(v, piv[i])) v ^= basis[i];
        if (v) {
          basis.push_back(v);
          piv.push_back(lowest_bit(v));
          ++r;
        }
      }
      return r;
    }
    int best = 0;
    for (Mask b : *bases_unlocked()) best = std::max(best, popcount(b & x));
    return best;
  }

  bool is_independent(Mask x) const { return rank_of(x) == popcount(x); }

  // --- base and circuit enumeration (capped) ------------------------------

  std::shared_ptr<const std::vector<Mask>> bases() const {
    return bases_unlocked();
  }

  std::shared_ptr<const std::vector<Mask>> circuits() const {
    std::lock_guard<std::mutex> lk(cache_->mu);
    if (cache_->circuits) return cache_->circuits;
    auto bs = bases_locked();
    std::set<Mask> cs;
    int n = size();
    std::set<Mask> base_set(bs->begin(), bs->end());
    // every circuit is a fundamental circuit over some base
    for (Mask b : *bs) {
      for (int e = 0; e < n; ++e) {
        if (has_bit(b, e)) continue;
        Mask c = bit(e);
        for (int x = 0; x < n; ++x) {
          if (!has_bit(b, x)) continue;
          Mask swapped = (b & ~bit(x)) | bit(e);
          if (base_set.count(swapped)) c |= bit(x);
        }
        cs.insert(c);
      }
    }
    // also, loops: elements in no base
    Mask in_some = 0;
    for (Mask b : *bs) in_some |= b;
    for (int e = 0; e < n; ++e)
      if (!has_bit(in_some, e)) cs.insert(bit(e));
    cache_->circuits = std::make_shared<std::vector<Mask>>(cs.begin(), cs.end());
    return cache_->circuits;
  }

  std::shared_ptr<const std::vector<Mask>> cocircuits() const { return dual().circuits(); }

  // --- duals and minors ----------------------------------------------------

  BinaryMatroid dual() const {
    if (rep_) {
      const auto& sf = std_form();
      int n = size();
      int r = sf.rank;
      int corank = n - r;
      // rows of the dual rep are indexed by non-base elements in order
      std::vector<int> row_of(n, -1);
      int ri = 0;
      for (int e = 0; e < n; ++e)
        if (!has_bit(sf.base, e)) row_of[e] = ri++;
      Rep d;
      d.rows = corank;
      d.cols.assign(n, 0);
      for (int e = 0; e < n; ++e) {
        if (has_bit(sf.base, e)) {
          // D^T column: rows where e participates in the fundamental circuit
          for (int f = 0; f < n; ++f)
            if (!has_bit(sf.base, f) && has_bit(sf.fund[f], e)) d.cols[e] |= bit(row_of[f]);
        } else {
          d.cols[e] = bit(row_of[e]);
        }
      }
      return from_rep(elems.labels, std::move(d));
    }
    auto bs = bases_unlocked();
    std::vector<Mask> comp;
    comp.reserve(bs->size());
    Mask g = ground_mask();
    for (Mask b : *bs) comp.push_back(g & ~b);
    return from_bases(elems.labels, std::move(comp));
  }

  BinaryMatroid delete_elements(Mask d) const {
    std::vector<std::string> labels;
    std::vector<int> keep;
    for (int e = 0; e < size(); ++e)
      if (!has_bit(d, e)) {
        labels.push_back(elems.labels[e]);
        keep.push_back(e);
      }
    if (rep_) {
      Rep r;
      r.rows = rep_->rows;
      for (int e : keep) r.cols.push_back(rep_->cols[e]);
      return from_rep(std::move(labels), std::move(r));
    }
    auto bs = bases_unlocked();
    int best = 0;
    for (Mask b : *bs) best = std::max(best, popcount(b & ~d));
    std::set<Mask> out;
    for (Mask b : *bs) {
      if (popcount(b & ~d) != best) continue;
      Mask nb = 0;
      for (int i = 0; i < (int)keep.size(); ++i)
        if (has_bit(b, keep[i])) nb |= bit(i);
      out.insert(nb);
    }
    return from_bases(std::move(labels), {out.begin(), out.end()});
  }

  BinaryMatroid contract_elements(Mask c) const {
    if (rep_) {
      // project every remaining column modulo span(columns of c)
      std::vector<Mask> basis;
      std::vector<int> piv;
      for (int e = 0; e < size(); ++e) {
        if (!has_bit(c, e)) continue;
        Mask v = rep_->cols[e];
        for (size_t i = 0; i < basis.size(); ++i)
          if (has_bit(v, piv[i])) v ^= basis[i];
        if (v) {
          basis.push_back(v);
          piv.push_back(lowest_bit(v));
        }
      }
      std::vector<std::string> labels;
      Rep r;
      r.rows = rep_->rows;
      for (int e = 0; e < size(); ++e) {
        if (has_bit(c, e)) continue;
        Mask v = rep_->cols[e];
        for (size_t i = 0; i < basis.size(); ++i)
          if (has_bit(v, piv[i])) v ^= basis[i];
        labels.push_back(elems.labels[e]);
        r.cols.push_back(v);
      }
      return from_rep(std::move(labels), std::move(r));
    }
    return dual().delete_elements(c).dual();
  }

  BinaryMatroid minor(Mask d, Mask c) const {
    if (d & c) throw ArgumentError("delete and contract sets overlap");
    // delete first, then contract by the surviving indices
    BinaryMatroid m1 = delete_elements(d);
    Mask c2 = 0;
    for (int e = 0; e < m1.size(); ++e)
      if (has_bit(c, elems.at(m1.elems.labels[e]))) c2 |= bit(e);
    return m1.contract_elements(c2);
  }

  BinaryMatroid minor(const std::vector<std::string>& d, const std::vector<std::string>& c) const {
    return minor(elems.mask_of(d), elems.mask_of(c));
  }

  BinaryMatroid relabel(const std::map<std::string, std::string>& ren) const {
    std::vector<std::string> labels = elems.labels;
    for (auto& l : labels) {
      auto it = ren.find(l);
      if (it != ren.end()) l = it->second;
    }
    BinaryMatroid m = *this;
    m.elems = LabelIndex(labels);
    m.cache_ = cache_;  // index structure unchanged, caches remain valid
    return m;
  }

  BinaryMatroid with_labels(std::vector<std::string> labels) const {
    if ((int)labels.size() != size()) throw ArgumentError("label count mismatch");
    BinaryMatroid m = *this;
    m.elems = LabelIndex(std::move(labels));
    m.cache_ = cache_;
    return m;
  }

  // --- connectivity --------------------------------------------------------

  // Partition of the ground set into matroid components.
  std::vector<Mask> components() const {
    int n = size();
    if (n == 0) return {};
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    if (rep_) {
      const auto& sf = std_form();
      for (int e = 0; e < n; ++e) {
        Mask f = sf.fund[e];
        if (popcount(f) < 2) continue;
        int first = lowest_bit(f);
        for (int x = first + 1; x < n; ++x)
          if (has_bit(f, x)) unite(first, x);
      }
    } else {
      for (Mask c : *circuits()) {
        if (popcount(c) < 2) continue;
        int first = lowest_bit(c);
        for (int x = first + 1; x < n; ++x)
          if (has_bit(c, x)) unite(first, x);
      }
    }
    std::map<int, Mask> comp;
    for (int e = 0; e < n; ++e) comp[find(e)] |= bit(e);
    std::vector<Mask> out;
    for (auto& [_, m] : comp) out.push_back(m);
    std::sort(out.begin(), out.end(),
              [](Mask a, Mask b) { return lowest_bit(a) < lowest_bit(b); });
    return out;
  }

  bool is_connected() const { return size() == 0 || components().size() == 1; }

  int lambda(Mask x) const {
    Mask y = ground_mask() & ~x;
    return rank_of(x) + rank_of(y) - rank();
  }

 private:
  std::shared_ptr<std::vector<Mask>> bases_unlocked() const {
    std::lock_guard<std::mutex> lk(cache_->mu);
    return bases_locked();
  }

  std::shared_ptr<std::vector<Mask>> bases_locked() const {
    if (cache_->bases) return cache_->bases;
    if (explicit_bases_) {
      cache_->bases = explicit_bases_;
      return cache_->bases;
    }
    if (size() > caps().base_enum)
      throw ResourceError("base enumeration beyond cap (" + std::to_string(size()) + " elements)");
    // DFS over columns, extending independent sets to full rank
    const auto& sf = detail::std_form(*rep_, size());
    int r = sf.rank, n = size();
    auto out = std::make_shared<std::vector<Mask>>();
    std::vector<Mask> basis;
    std::vector<int> piv;
    std::function<void(int, int, Mask)> rec = [&](int e, int have, Mask cur) {
      if (have == r) {
        out->push_back(cur);
        return;
      }
      if (n - e < r - have) return;
      for (int f = e; f < n; ++f) {
        Mask v = rep_->cols[f];
        for (size_t i = 0; i < basis.size(); ++i)
          if (has_bit(v, piv[i])) v ^= basis[i];
        if (!v) continue;
        basis.push_back(v);
        piv.push_back(lowest_bit(v));
        rec(f + 1, have + 1, cur | bit(f));
        basis.pop_back();
        piv.pop_back();
      }
    };
    rec(0, 0, 0);
    std::sort(out->begin(), out->end());
    cache_->bases = out;
    return out;
  }

 public:
  // Representation reconstructed from the base family; nullopt when the
  // family is not binary. Used by equality and graphicness on base-built
  // matroids.
  std::optional<Rep> binary_rep() const {
    if (rep_) return rep_;
    std::lock_guard<std::mutex> lk(cache_->mu);
    if (cache_->binary) return *cache_->binary ? cache_->derived_rep : std::optional<Rep>{};
    auto bs = bases_locked();
    int n = size();
    Mask b0 = bs->front();
    std::vector<int> row_of(n, -1);
    int ri = 0;
    for (int e = 0; e < n; ++e)
      if (has_bit(b0, e)) row_of[e] = ri++;
    Rep r;
    r.rows = ri;
    r.cols.assign(n, 0);
    std::set<Mask> base_set(bs->begin(), bs->end());
    for (int e = 0; e < n; ++e) {
      if (has_bit(b0, e)) {
        r.cols[e] = bit(row_of[e]);
        continue;
      }
      for (int x = 0; x < n; ++x) {
        if (!has_bit(b0, x)) continue;
        Mask swapped = (b0 & ~bit(x)) | bit(e);
        if (base_set.count(swapped)) r.cols[e] |= bit(row_of[x]);
      }
    }
    // verify the candidate reproduces the family
    BinaryMatroid cand = from_rep(elems.labels, r);
    bool ok = false;
    try {
      ok = *cand.bases() == *bs;
    } catch (const ResourceError&) {
      ok = false;
    }
    cache_->binary = ok;
    if (ok) cache_->derived_rep = r;
    return ok ? std::optional<Rep>(r) : std::nullopt;
  }

  bool is_binary() const { return binary_rep().has_value(); }
};

// Label-preserving equality: same ground set and the same family of bases.
// With representations this is cycle-space equality; otherwise base lists.
inline bool matroids_equal(const BinaryMatroid& a, const BinaryMatroid& b) {
  if (a.size() != b.size()) return false;
  auto la = sorted_labels(a.elems.labels), lb = sorted_labels(b.elems.labels);
  if (la != lb) return false;
  auto rep_a = a.binary_rep(), rep_b = b.binary_rep();
  if (rep_a && rep_b) {
    // kernel (cycle space) basis in the shared sorted-label order, RREF'd
    auto kernel_rref = [&](const BinaryMatroid& m, const Rep& rep) {
      int n = m.size();
      std::vector<int> order(n);  // position in sorted-label space
      for (int e = 0; e < n; ++e)
        order[e] = (int)(std::lower_bound(la.begin(), la.end(), m.elems.labels[e]) - la.begin());
      auto sf = detail::std_form(rep, n);
      std::vector<Mask> ker;
      for (int e = 0; e < n; ++e) {
        if (has_bit(sf.base, e)) continue;
        Mask v = 0;
        for (int x = 0; x < n; ++x)
          if (has_bit(sf.fund[e], x)) v |= bit(order[x]);
        ker.push_back(v);
      }
      // RREF
      std::vector<Mask> basis;
      std::vector<int> piv;
      for (Mask v : ker) {
        for (size_t i = 0; i < basis.size(); ++i)
          if (has_bit(v, piv[i])) v ^= basis[i];
        if (!v) continue;
        int p = lowest_bit(v);
        for (size_t i = 0; i < basis.size(); ++i)
          if (has_bit(basis[i], p)) basis[i] ^= v;
        basis.push_back(v);
        piv.push_back(p);
      }
      std::sort(basis.begin(), basis.end());
      return basis;
    };
    if (a.rank_of(a.ground_mask()) != b.rank_of(b.ground_mask())) return false;
    return kernel_rref(a, *rep_a) == kernel_rref(b, *rep_b);
  }
  // fall back to base families in sorted-label coordinates
  auto remap = [&](const BinaryMatroid& m) {
    std::vector<int> order(m.size());
    for (int e = 0; e < m.size(); ++e)
      order[e] = (int)(std::lower_bound(la.begin(), la.end(), m.elems.labels[e]) - la.begin());
    std::vector<Mask> out;
    for (Mask bm : *m.bases()) {
      Mask nb = 0;
      for (int e = 0; e < m.size(); ++e)
        if (has_bit(bm, e)) nb |= bit(order[e]);
      out.push_back(nb);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  return remap(a) == remap(b);
}

// --- separations -----------------------------------------------------------

struct Separation {
  Mask side_x = 0, side_y = 0;
  int lambda = 0;
};

namespace detail {

// Basis vector of span(cols X) intersect span(cols Y); expects dimension >= 1.
inline Mask span_intersection_vector(const Rep& rep, int n, Mask x) {
  auto span_basis = [&](Mask set) {
    std::vector<Mask> basis;
    std::vector<int> piv;
    for (int e = 0; e < n; ++e) {
      if (!has_bit(set, e)) continue;
      Mask v = rep.cols[e];
      for (size_t i = 0; i < basis.size(); ++i)
        if (has_bit(v, piv[i])) v ^= basis[i];
      if (v) {
        basis.push_back(v);
        piv.push_back(lowest_bit(v));
      }
    }
    return basis;
  };
  auto bx = span_basis(x);
  auto by = span_basis(full_mask(n) & ~x);
  int kx = (int)bx.size(), ky = (int)by.size();
  std::vector<Mask> cols;
  cols.insert(cols.end(), bx.begin(), bx.end());
  cols.insert(cols.end(), by.begin(), by.end());
  std::vector<Mask> bvec, bprov;
  std::vector<int> bpiv;
  for (int i = 0; i < kx + ky; ++i) {
    Mask v = cols[i], prov = 0;
    for (size_t j = 0; j < bvec.size(); ++j)
      if (has_bit(v, bpiv[j])) {
        v ^= bvec[j];
        prov ^= bprov[j];
      }
    if (v == 0) {
      Mask w = 0;
      for (int j = 0; j < kx; ++j)
        if (has_bit(prov, j)) w ^= bx[j];
      if (i >= kx && w != 0) return w;  // dependency mixing both sides
      continue;
    }
    int pos = (int)bvec.size();
    bvec.push_back(v);
    bprov.push_back(prov | bit(pos));
    bpiv.push_back(lowest_bit(v));
  }
  throw ArgumentError("span intersection is trivial");
}

// Components of a point multiset given by coordinate vectors, via exact
// fundamental-circuit provenance. Zero vectors are singleton classes.
inline std::vector<Mask> point_components(const std::vector<Mask>& pts) {
  int n = (int)pts.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<Mask> bvec, bprov;
  std::vector<int> bpiv, belem;
  for (int e = 0; e < n; ++e) {
    Mask v = pts[e], prov = 0;  // prov over basis positions
    for (size_t i = 0; i < bvec.size(); ++i)
      if (has_bit(v, bpiv[i])) {
        v ^= bvec[i];
        prov ^= bprov[i];
      }
    if (v == 0) {
      // prov is the exact fundamental-circuit support of e over the basis
      if (prov) {
        int anchor = -1;
        for (int i = 0; i < (int)bvec.size(); ++i)
          if (has_bit(prov, i)) {
            if (anchor < 0) anchor = belem[i];
            parent[find(belem[i])] = find(anchor);
          }
        if (anchor >= 0) parent[find(e)] = find(anchor);
      }
      // prov == 0: zero point, isolated
    } else {
      int pos = (int)bvec.size();
      bvec.push_back(v);
      bprov.push_back(prov | bit(pos));
      bpiv.push_back(lowest_bit(v));
      belem.push_back(e);
    }
  }
  std::map<int, Mask> cls;
  for (int e = 0; e < n; ++e) cls[find(e)] |= bit(e);
  std::vector<Mask> out;
  for (auto& [_, m] : cls) out.push_back(m);
  std::sort(out.begin(), out.end(), [](Mask a, Mask b) { return lowest_bit(a) < lowest_bit(b); });
  return out;
}

// Splits component classes into two sides of >= 2 elements each, if possible.
inline std::optional<std::pair<Mask, Mask>> split_classes(const std::vector<Mask>& classes, int n) {
  if (classes.size() < 2) return std::nullopt;
  Mask all = full_mask(n);
  for (auto c : classes) {
    int s = popcount(c);
    if (s >= 2 && n - s >= 2) return std::make_pair(c, all & ~c);
  }
  // two singleton classes as one side
  std::vector<Mask> singles;
  for (auto c : classes)
    if (popcount(c) == 1) singles.push_back(c);
  if (singles.size() >= 2 && n >= 4) {
    Mask x = singles[0] | singles[1];
    return std::make_pair(x, all & ~x);
  }
  return std::nullopt;
}

}  // namespace detail

// Finds a 2-separation of a connected represented matroid by guessing the
// 1-dimensional span intersection: for each v, quotient the points by v and
// look for a component split. Returns the first hit in v order.
inline std::optional<Separation> find_2separation_connected(const BinaryMatroid& m) {
  int n = m.size();
  if (n < 4) return std::nullopt;
  BinaryMatroid backed = m;
  if (!m.has_rep()) {
    auto br = m.binary_rep();
    if (!br) {
      // non-binary: raw subset scan
      if (n > caps().subset_scan) throw ResourceError("2-separation scan beyond cap");
      for (Mask x = 1; x < (Mask{1} << (n - 1)); ++x) {
        if (popcount(x) < 2 || n - popcount(x) < 2) continue;
        if (m.lambda(x) <= 1) return Separation{x, m.ground_mask() & ~x, m.lambda(x)};
      }
      return std::nullopt;
    }
    backed = BinaryMatroid::from_rep(m.elems.labels, *br);
  }
  // work on the smaller-rank side of {m, m*}
  const BinaryMatroid* work = &backed;
  std::optional<BinaryMatroid> dual_store;
  int r = backed.rank();
  if (n - r < r) {
    dual_store = backed.dual();
    work = &*dual_store;
    r = n - r;
  }
  if (r > caps().twosep_rank) throw ResourceError("2-separation search beyond rank cap");
  if (r == 0) return std::nullopt;
  const auto& sf = work->std_form();
  const auto& pts = sf.coords;  // n coordinates over r bits
  for (Mask v = 1; v < (Mask{1} << r); ++v) {
    int p = lowest_bit(v);
    std::vector<Mask> q(n);
    for (int e = 0; e < n; ++e) q[e] = has_bit(pts[e], p) ? (pts[e] ^ v) : pts[e];
    auto classes = detail::point_components(q);
    auto split = detail::split_classes(classes, n);
    if (split) {
      int lam = m.lambda(split->first);
      if (lam <= 1) return Separation{split->first, split->second, lam};
    }
  }
  return std::nullopt;
}

inline std::optional<Separation> find_k_separation(const BinaryMatroid& m, int k) {
  int n = m.size();
  if (k <= 0) throw ArgumentError("k must be positive");
  auto comps = m.components();
  if (k == 1) {
    if (comps.size() < 2) return std::nullopt;
    Mask x = comps[0];
    return Separation{x, m.ground_mask() & ~x, 0};
  }
  if (k == 2) {
    if (n < 4) return std::nullopt;
    if (comps.size() >= 2) {
      auto split = detail::split_classes(comps, n);
      if (split) return Separation{split->first, split->second, m.lambda(split->first)};
      // mixed split: a single element of the big component plus another
      // component's element still has lambda <= 1
      Mask big = 0;
      for (auto c : comps)
        if (popcount(c) > popcount(big)) big = c;
      Mask other = 0;
      for (auto c : comps)
        if (c != big) {
          other = c;
          break;
        }
      Mask x = bit(lowest_bit(big)) | bit(lowest_bit(other));
      int lam = m.lambda(x);
      if (lam <= 1 && popcount(x) >= 2 && n - popcount(x) >= 2)
        return Separation{x, m.ground_mask() & ~x, lam};
      return std::nullopt;
    }
    return find_2separation_connected(m);
  }
  // k >= 3: raw subset scan, test use only
  if (n > caps().subset_scan) throw ResourceError("k-separation scan beyond cap");
  std::optional<Separation> best;
  for (Mask x = 1; x < (Mask{1} << (n - 1)); ++x) {
    if (popcount(x) < k || n - popcount(x) < k) continue;
    int lam = m.lambda(x);
    if (lam < k && (!best || lam < best->lambda))
      best = Separation{x, m.ground_mask() & ~x, lam};
  }
  return best;
}

inline bool is_3_connected(const BinaryMatroid& m) {
  if (!m.is_connected()) return false;
  return !find_k_separation(m, 2).has_value();
}

}  // namespace dgm
