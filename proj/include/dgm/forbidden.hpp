#pragma once

#include <filesystem>
#include <fstream>
#include <thread>

#include "dgm/delta_graphic.hpp"

namespace dgm {

// Canonical form of a binary matroid: the minimum sorted column multiset
// over all coordinatizations sending an ordered independent r-tuple of
// columns to the standard basis. Equal forms = isomorphic simple matroids
// (and equal multisets in general).
inline std::string canonical_form(const BinaryMatroid& m) {
  auto repo = m.binary_rep();
  if (!repo) {
    // only the hand-inserted non-binary report uses this branch
    return "nonbinary:" + std::to_string(m.size()) + ":" + std::to_string(m.rank());
  }
  BinaryMatroid work = m.has_rep() ? m : BinaryMatroid::from_rep(m.elems.labels, *repo);
  int n = work.size(), r = work.rank();
  if (r == 0) return "zero:" + std::to_string(n);
  // compress to r coordinates first
  const auto& sf = work.std_form();
  std::vector<Mask> pts(n);
  for (int e = 0; e < n; ++e) pts[e] = sf.coords[e];

  std::vector<Mask> best;
  std::vector<int> tuple;
  std::vector<Mask> basis_vec;
  std::function<void()> consider = [&]() {
    // transform mapping pts[tuple[i]] -> unit i: solve per point
    // build the change-of-basis: express each point over the tuple basis
    std::vector<Mask> bas(r), prov(r);
    std::vector<int> piv(r);
    int k = 0;
    for (int idx : tuple) {
      Mask v = pts[idx], p = 0;
      for (int i = 0; i < k; ++i)
        if (has_bit(v, piv[i])) {
          v ^= bas[i];
          p ^= prov[i];
        }
      bas[k] = v;
      prov[k] = p | bit(k);
      piv[k] = lowest_bit(v);
      ++k;
    }
    std::vector<Mask> img(n);
    for (int e = 0; e < n; ++e) {
      Mask v = pts[e], out = 0;
      for (int i = 0; i < r; ++i)
        if (has_bit(v, piv[i])) {
          v ^= bas[i];
          out ^= prov[i];
        }
      img[e] = out;
    }
    std::sort(img.begin(), img.end());
    if (best.empty() || img < best) best = img;
  };
  std::function<void()> rec = [&]() {
    if ((int)tuple.size() == r) {
      consider();
      return;
    }
    for (int e = 0; e < n; ++e) {
      Mask v = pts[e];
      for (size_t i = 0; i < basis_vec.size(); ++i)
        if (has_bit(v, lowest_bit(basis_vec[i]))) v ^= basis_vec[i];
      if (!v) continue;
      bool used = false;
      for (int t : tuple)
        if (t == e) used = true;
      if (used) continue;
      tuple.push_back(e);
      basis_vec.push_back(v);
      rec();
      tuple.pop_back();
      basis_vec.pop_back();
    }
  };
  rec();
  std::string s = std::to_string(n) + "," + std::to_string(r) + ":";
  for (Mask v : best) s += std::to_string(v) + ",";
  return s;
}

// Isomorph-free enumeration of simple binary matroids of rank r on n
// elements: point sets containing the standard basis, deduplicated by
// canonical form. The multi flag adds loops and parallel classes.
inline std::vector<BinaryMatroid> enumerate_binary(int n, int r, bool allow_multi = false) {
  if (n > 10) throw ResourceError("enumeration beyond 10 elements");
  if (r < 0 || r > n) throw ArgumentError("rank out of range");
  std::vector<BinaryMatroid> out;
  std::set<std::string> seen;
  auto labels = [&](int count) {
    std::vector<std::string> ls;
    for (int i = 1; i <= count; ++i) ls.push_back("e" + std::to_string(i));
    return ls;
  };
  if (n == 0) {
    out.push_back(BinaryMatroid());
    return out;
  }
  if (r == 0) {
    if (allow_multi) {
      Rep rep;
      rep.rows = 1;
      rep.cols.assign(n, 0);
      out.push_back(BinaryMatroid::from_rep(labels(n), rep));
    }
    return out;
  }
  // simple core: points of PG(r-1, 2) containing the standard basis
  std::vector<Mask> extra;
  for (Mask v = 1; v < (Mask{1} << r); ++v)
    if (popcount(v) > 1) extra.push_back(v);

  auto emit = [&](const std::vector<Mask>& cols) {
    Rep rep;
    rep.rows = r;
    rep.cols = cols;
    auto m = BinaryMatroid::from_rep(labels((int)cols.size()), rep);
    auto key = canonical_form(m);
    if (seen.insert(key).second) out.push_back(m);
  };

  std::function<void(int, int, std::vector<Mask>&)> rec = [&](int start, int need,
                                                              std::vector<Mask>& cur) {
    if (need == 0) {
      emit(cur);
      return;
    }
    for (int i = start; i <= (int)extra.size() - need; ++i) {
      cur.push_back(extra[i]);
      rec(i + 1, need - 1, cur);
      cur.pop_back();
    }
  };
  if (!allow_multi) {
    if (n < r || n - r > (int)extra.size()) return out;
    std::vector<Mask> cur;
    for (int i = 0; i < r; ++i) cur.push_back(bit(i));
    rec(0, n - r, cur);
    return out;
  }
  // with multiplicities: choose a simple support of s distinct points
  // (containing a basis), then distribute the remaining multiplicity and
  // loops
  for (int loops = 0; loops + r <= n; ++loops) {
    int rest = n - loops;
    for (int s = r; s <= rest && s <= r + (int)extra.size(); ++s) {
      // supports: basis + (s - r) extra points; then counts summing rest
      std::vector<Mask> support;
      for (int i = 0; i < r; ++i) support.push_back(bit(i));
      std::function<void(int, int)> pick = [&](int start, int need) {
        if (need == 0) {
          // distribute rest copies over s support points, each >= 1
          std::vector<int> cnt(s, 1);
          int free = rest - s;
          std::function<void(int, int)> dist = [&](int i, int left) {
            if (i == s) {
              if (left) return;
              std::vector<Mask> cols;
              for (int j = 0; j < s; ++j)
                for (int c = 0; c < cnt[j]; ++c) cols.push_back(support[j]);
              for (int l = 0; l < loops; ++l) cols.push_back(0);
              emit(cols);
              return;
            }
            for (int take = 0; take <= left; ++take) {
              cnt[i] = 1 + take;
              dist(i + 1, left - take);
            }
            cnt[i] = 1;
          };
          dist(0, free);
          return;
        }
        for (int i = start; i <= (int)extra.size() - need; ++i) {
          support.push_back(extra[i]);
          pick(i + 1, need - 1);
          support.pop_back();
        }
      };
      pick(0, s - r);
    }
  }
  return out;
}

// --- minimality ------------------------------------------------------------------

struct MinimalityReport {
  BinaryMatroid matroid;
  std::string canon;
  bool not_delta_graphic = false;
  bool minimal = false;
  // per single-element minor: ("del:<e>" or "con:<e>", delta-graphic?)
  std::vector<std::pair<std::string, bool>> minor_results;
  std::string note;
};

inline MinimalityReport check_minimal(const BinaryMatroid& m) {
  MinimalityReport rep;
  rep.matroid = m;
  rep.canon = canonical_form(m);
  auto cert = recognize(m);
  rep.not_delta_graphic = !cert.positive();
  bool minors_ok = true;
  for (int e = 0; e < m.size(); ++e) {
    bool d = recognize(m.delete_elements(bit(e))).positive();
    bool c = recognize(m.contract_elements(bit(e))).positive();
    rep.minor_results.push_back({"del:" + m.elems.labels[e], d});
    rep.minor_results.push_back({"con:" + m.elems.labels[e], c});
    if (!d || !c) minors_ok = false;
  }
  rep.minimal = rep.not_delta_graphic && minors_ok;
  return rep;
}

// --- search -----------------------------------------------------------------------

struct SearchOptions {
  int max_n = 7;
  int shards = 1;
  int threads = 1;
  std::string resume_dir;  // checkpoint directory, empty = none
};

// All minor-minimal non-delta-graphic matroids with at most max_n elements.
// U(2,4) is inserted by hand: the enumeration is binary-only and U(2,4) is
// the unique non-binary forbidden minor.
inline std::vector<MinimalityReport> search(const SearchOptions& opt) {
  if (opt.max_n > 10) throw ResourceError("search beyond 10 elements");
  // gather candidates: simple connected binary matroids (minor-minimal
  // instances are connected, simple and cosimple)
  std::vector<BinaryMatroid> cands;
  for (int n = 1; n <= opt.max_n; ++n)
    for (int r = 1; r < n; ++r)
      for (auto& m : enumerate_binary(n, r))
        if (m.is_connected()) cands.push_back(m);

  // checkpoint lines: "min <canon>" or "ok <canon>"
  std::map<std::string, bool> done;
  std::filesystem::path ckpt;
  if (!opt.resume_dir.empty()) {
    std::filesystem::create_directories(opt.resume_dir);
    ckpt = std::filesystem::path(opt.resume_dir) / "checkpoint.txt";
    std::ifstream in(ckpt);
    std::string verdict, canon;
    while (in >> verdict >> canon) done[canon] = (verdict == "min");
  }

  int shards = std::max(1, opt.shards);
  std::vector<std::vector<MinimalityReport>> found(shards);
  std::vector<std::vector<std::pair<std::string, bool>>> completed(shards);
  auto worker = [&](int shard) {
    for (size_t i = shard; i < cands.size(); i += shards) {
      auto canon = canonical_form(cands[i]);
      auto it = done.find(canon);
      if (it != done.end()) {
        if (it->second) found[shard].push_back(check_minimal(cands[i]));
        continue;
      }
      auto rep = check_minimal(cands[i]);
      if (rep.minimal) found[shard].push_back(rep);
      completed[shard].push_back({canon, rep.minimal});
    }
  };
  if (opt.threads > 1 && shards > 1) {
    std::vector<std::thread> pool;
    for (int s = 0; s < shards; ++s) pool.emplace_back(worker, s);
    for (auto& t : pool) t.join();
  } else {
    for (int s = 0; s < shards; ++s) worker(s);
  }

  if (!ckpt.empty()) {
    std::filesystem::path tmp = ckpt;
    tmp += ".tmp";
    std::ofstream out(tmp);
    for (auto& [c, v] : done) out << (v ? "min " : "ok ") << c << "\n";
    for (auto& v : completed)
      for (auto& [c, mn] : v) out << (mn ? "min " : "ok ") << c << "\n";
    out.close();
    std::filesystem::rename(tmp, ckpt);
  }

  std::vector<MinimalityReport> all;
  for (auto& v : found)
    for (auto& r : v) all.push_back(r);
  if (opt.max_n >= 4) {
    MinimalityReport u24 = check_minimal(catalog("U(2,4)"));
    u24.note = "hand-inserted: the unique non-binary forbidden minor";
    all.push_back(u24);
  }
  std::sort(all.begin(), all.end(), [](const MinimalityReport& a, const MinimalityReport& b) {
    if (a.matroid.size() != b.matroid.size()) return a.matroid.size() < b.matroid.size();
    return a.canon < b.canon;
  });
  all.erase(std::unique(all.begin(), all.end(),
                        [](const MinimalityReport& a, const MinimalityReport& b) {
                          return a.canon == b.canon;
                        }),
            all.end());
  return all;
}

}  // namespace dgm
