// Brute-force reference implementations used only by tests. These stay
// independent of the library code paths they check.
#pragma once

#include <random>

#include "dgm/matroid_ops.hpp"

namespace oracle {

using namespace dgm;

// All bases of a represented matroid by raw subset scan.
inline std::vector<Mask> brute_bases(const Rep& rep, int n) {
  // rank = max independent size
  auto rank_of = [&](Mask x) {
    std::vector<Mask> basis;
    std::vector<int> piv;
    int r = 0;
    for (int e = 0; e < n; ++e) {
      if (!has_bit(x, e)) continue;
      Mask v = rep.cols[e];
      for (size_t i = 0; i < basis.size(); ++i)
        if (has_bit(v, piv[i])) v ^= basis[i];
      if (v) {
        basis.push_back(v);
        piv.push_back(lowest_bit(v));
        ++r;
      }
    }
    return r;
  };
  int r = rank_of(full_mask(n));
  std::vector<Mask> out;
  for (Mask x = 0; x < (Mask{1} << n); ++x)
    if (popcount(x) == r && rank_of(x) == r) out.push_back(x);
  return out;
}

// Minimal dependent sets by subset scan over a base family.
inline std::vector<Mask> brute_circuits(const std::vector<Mask>& bases, int n) {
  auto independent = [&](Mask x) {
    for (Mask b : bases)
      if ((x & b) == x) return true;
    return false;
  };
  std::vector<Mask> out;
  for (Mask x = 1; x < (Mask{1} << n); ++x) {
    if (independent(x)) continue;
    bool minimal = true;
    for (int e = 0; e < n && minimal; ++e)
      if (has_bit(x, e) && !independent(x & ~bit(e))) minimal = false;
    if (minimal) out.push_back(x);
  }
  return out;
}

// Random represented matroid on n elements with rows r; connected retries.
inline BinaryMatroid random_matroid(int n, int r, std::mt19937_64& rng, bool want_connected) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    Rep rep;
    rep.rows = r;
    rep.cols.clear();
    for (int e = 0; e < n; ++e) rep.cols.push_back(rng() & full_mask(r));
    std::vector<std::string> labels;
    for (int e = 1; e <= n; ++e) labels.push_back("x" + std::to_string(e));
    auto m = BinaryMatroid::from_rep(labels, rep);
    if (m.rank() == 0) continue;
    if (want_connected && !m.is_connected()) continue;
    return m;
  }
  throw std::runtime_error("random matroid generation failed");
}

// 2-sum base family straight from the symmetric-difference formula:
// over pairs with e in exactly one of them.
inline std::vector<Mask> twosum_bases_formula(const BinaryMatroid& m1, const BinaryMatroid& m2,
                                              const std::string& marker,
                                              const std::vector<std::string>& out_labels) {
  int e1 = m1.elems.at(marker), e2 = m2.elems.at(marker);
  LabelIndex out(out_labels);
  std::set<Mask> res;
  for (Mask b1 : *m1.bases())
    for (Mask b2 : *m2.bases()) {
      bool in1 = has_bit(b1, e1), in2 = has_bit(b2, e2);
      if (in1 == in2) continue;
      Mask b = 0;
      for (int x = 0; x < m1.size(); ++x)
        if (has_bit(b1, x) && x != e1) b |= bit(out.at(m1.elems.labels[x]));
      for (int x = 0; x < m2.size(); ++x)
        if (has_bit(b2, x) && x != e2) b |= bit(out.at(m2.elems.labels[x]));
      res.insert(b);
    }
  return {res.begin(), res.end()};
}

// 2-sum bases via the circuit definition: circuits of the sum, then maximal
// circuit-free sets.
inline std::vector<Mask> twosum_bases_circuit_construction(const BinaryMatroid& m1,
                                                           const BinaryMatroid& m2,
                                                           const std::string& marker,
                                                           const std::vector<std::string>& out_labels) {
  LabelIndex out(out_labels);
  int n = out.size();
  auto remap = [&](const BinaryMatroid& m, Mask c, int skip) {
    Mask r = 0;
    for (int x = 0; x < m.size(); ++x)
      if (has_bit(c, x) && x != skip) r |= bit(out.at(m.elems.labels[x]));
    return r;
  };
  int e1 = m1.elems.at(marker), e2 = m2.elems.at(marker);
  std::set<Mask> circ;
  for (Mask c : *m1.circuits())
    if (!has_bit(c, e1)) circ.insert(remap(m1, c, e1));
  for (Mask c : *m2.circuits())
    if (!has_bit(c, e2)) circ.insert(remap(m2, c, e2));
  for (Mask c1 : *m1.circuits()) {
    if (!has_bit(c1, e1)) continue;
    for (Mask c2 : *m2.circuits()) {
      if (!has_bit(c2, e2)) continue;
      circ.insert(remap(m1, c1, e1) | remap(m2, c2, e2));
    }
  }
  auto independent = [&](Mask x) {
    for (Mask c : circ)
      if ((x & c) == c) return false;
    return true;
  };
  int best = 0;
  std::vector<Mask> ind;
  for (Mask x = 0; x < (Mask{1} << n); ++x)
    if (independent(x)) {
      ind.push_back(x);
      best = std::max(best, popcount(x));
    }
  std::vector<Mask> bases;
  for (Mask x : ind)
    if (popcount(x) == best) bases.push_back(x);
  return bases;
}

// Exchange axiom holds for a base family.
inline bool exchange_axiom_holds(const std::vector<Mask>& bases, int n) {
  std::set<Mask> bs(bases.begin(), bases.end());
  for (Mask b1 : bases)
    for (Mask b2 : bases) {
      Mask diff = b1 & ~b2;
      for (int x = 0; x < n; ++x) {
        if (!has_bit(diff, x)) continue;
        bool found = false;
        for (int y = 0; y < n && !found; ++y)
          if (has_bit(b2 & ~b1, y) && bs.count((b1 & ~bit(x)) | bit(y))) found = true;
        if (!found) return false;
      }
    }
  return true;
}

}  // namespace oracle
