#include <catch2/catch_amalgamated.hpp>

#include "dgm/forbidden.hpp"
#include "oracles.hpp"

using namespace dgm;

TEST_CASE("canonical forms separate and identify") {
  REQUIRE(canonical_form(catalog("F7")) == canonical_form(catalog("F7")));
  REQUIRE(canonical_form(catalog("F7")) != canonical_form(catalog("F7*")));
  // relabelled copies share the form
  auto r10 = catalog("R10");
  std::map<std::string, std::string> ren;
  for (int i = 1; i <= 10; ++i) ren["e" + std::to_string(i)] = "z" + std::to_string(i);
  REQUIRE(canonical_form(r10) == canonical_form(r10.relabel(ren)));
  REQUIRE(canonical_form(catalog("M(W_3)")) == canonical_form(catalog("M(K4)")));
}

TEST_CASE("enumeration counts cross-checked against brute force") {
  // brute: all column assignments, filtered by pairwise isomorphism
  for (auto [n, r] : std::vector<std::pair<int, int>>{{3, 2}, {4, 3}, {5, 3}, {6, 3}}) {
    auto fast = enumerate_binary(n, r);
    // brute force over subsets of nonzero vectors
    std::vector<Mask> pts;
    for (Mask v = 1; v < (Mask{1} << r); ++v) pts.push_back(v);
    std::vector<BinaryMatroid> classes;
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int start) {
      if ((int)pick.size() == n) {
        Rep rep;
        rep.rows = r;
        std::vector<std::string> ls;
        for (int i = 0; i < n; ++i) {
          rep.cols.push_back(pts[pick[i]]);
          ls.push_back("e" + std::to_string(i + 1));
        }
        auto m = BinaryMatroid::from_rep(ls, rep);
        if (m.rank() != r) return;
        for (auto& c : classes)
          if (is_isomorphic(c, m)) return;
        classes.push_back(m);
        return;
      }
      for (int i = start; i < (int)pts.size(); ++i) {
        pick.push_back(i);
        rec(i + 1);
        pick.pop_back();
      }
    };
    rec(0);
    REQUIRE(fast.size() == classes.size());
  }
  // F7 is the unique (7,3) simple class
  auto f73 = enumerate_binary(7, 3);
  REQUIRE(f73.size() == 1);
  REQUIRE(is_isomorphic(f73[0], catalog("F7")));
  REQUIRE(enumerate_binary(0, 0).size() == 1);
}

TEST_CASE("enumeration with multiplicities") {
  auto multi = enumerate_binary(3, 1, true);
  // rank 1 on three elements: loops and parallel distribution classes
  REQUIRE(!multi.empty());
  for (auto& m : multi) REQUIRE(m.rank() <= 1);
  auto simple = enumerate_binary(3, 2, false);
  auto with = enumerate_binary(3, 2, true);
  REQUIRE(with.size() >= simple.size());
}

TEST_CASE("check_minimal on the known instances") {
  auto u24 = check_minimal(catalog("U(2,4)"));
  REQUIRE(u24.not_delta_graphic);
  REQUIRE(u24.minimal);
  auto k5 = check_minimal(catalog("M(K5)"));
  REQUIRE_FALSE(k5.not_delta_graphic);
  REQUIRE_FALSE(k5.minimal);
  auto f7 = check_minimal(catalog("F7"));
  REQUIRE(f7.minimal);
  auto r10 = check_minimal(catalog("R10"));
  REQUIRE(r10.minimal);
  REQUIRE(r10.minor_results.size() == 20);
  for (auto& [_, ok] : r10.minor_results) REQUIRE(ok);
}

TEST_CASE("search(4) finds exactly U(2,4)") {
  SearchOptions opt;
  opt.max_n = 4;
  auto out = search(opt);
  REQUIRE(out.size() == 1);
  REQUIRE(out[0].matroid.size() == 4);
  REQUIRE_FALSE(out[0].matroid.is_binary());
}

TEST_CASE("search(6) finds only U(2,4)") {
  SearchOptions opt;
  opt.max_n = 6;
  auto out = search(opt);
  REQUIRE(out.size() == 1);
}

TEST_CASE("search is invariant under sharding and resume") {
  SearchOptions a;
  a.max_n = 5;
  auto ra = search(a);
  SearchOptions b;
  b.max_n = 5;
  b.shards = 3;
  b.threads = 3;
  auto rb = search(b);
  REQUIRE(ra.size() == rb.size());
  for (size_t i = 0; i < ra.size(); ++i) REQUIRE(ra[i].canon == rb[i].canon);
  // resume: first run writes the checkpoint, second replays it
  std::string dir = "search_ckpt_test";
  std::filesystem::remove_all(dir);
  SearchOptions c;
  c.max_n = 5;
  c.resume_dir = dir;
  auto rc1 = search(c);
  auto rc2 = search(c);
  REQUIRE(rc1.size() == rc2.size());
  for (size_t i = 0; i < rc1.size(); ++i) REQUIRE(rc1[i].canon == rc2[i].canon);
  std::filesystem::remove_all(dir);
}

TEST_CASE("reported minimal matroids satisfy the audit invariants") {
  SearchOptions opt;
  opt.max_n = 7;
  for (auto& rep : search(opt)) {
    auto cert = recognize(rep.matroid);
    REQUIRE_FALSE(cert.positive());
    REQUIRE(verify_certificate(rep.matroid, cert));
    for (auto& [_, ok] : rep.minor_results) REQUIRE(ok);
    // binary reports are non-regular (F7/F7*-like) or 3-connected regular
    // with an R10 or R12 minor
    if (rep.matroid.is_binary()) {
      if (is_regular(rep.matroid) && is_3_connected(rep.matroid)) {
        bool obstruction = has_minor(rep.matroid, catalog("R10")).has_value() ||
                           has_minor(rep.matroid, catalog("R12")).has_value();
        REQUIRE(obstruction);
      } else {
        REQUIRE_FALSE(is_regular(rep.matroid));
      }
    }
  }
}
