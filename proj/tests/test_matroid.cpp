#include <catch2/catch_amalgamated.hpp>
#include <thread>
#include <atomic>

#include "oracles.hpp"

using namespace dgm;

TEST_CASE("uniform and catalog base counts") {
  REQUIRE(catalog("U(2,4)").bases()->size() == 6);
  REQUIRE(catalog("F7").bases()->size() == 28);
  auto w3 = catalog("M(W_3)");
  REQUIRE(w3.bases()->size() == 16);  // spanning trees of K4
  REQUIRE(catalog("R10").size() == 10);
  REQUIRE(catalog("R10").rank() == 5);
  REQUIRE(catalog("R12").size() == 12);
  REQUIRE(catalog("R12").rank() == 6);
}

TEST_CASE("bases agree with brute force on random matroids") {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 25; ++it) {
    auto m = oracle::random_matroid(6, 3, rng, false);
    auto brute = oracle::brute_bases(m.rep(), m.size());
    std::sort(brute.begin(), brute.end());
    REQUIRE(*m.bases() == brute);
    REQUIRE(oracle::exchange_axiom_holds(*m.bases(), m.size()));
  }
}

TEST_CASE("circuits: triangles, parallel pairs, Fano") {
  auto k3 = cycle_matroid(complete_graph(3));
  auto cs = k3.circuits();
  REQUIRE(cs->size() == 1);
  REQUIRE(popcount(cs->front()) == 3);

  auto u12 = catalog("U(1,2)");
  auto cs2 = u12.circuits();
  REQUIRE(cs2->size() == 1);
  REQUIRE(popcount(cs2->front()) == 2);

  auto f7 = catalog("F7");
  auto brute = oracle::brute_circuits(*f7.bases(), 7);
  std::sort(brute.begin(), brute.end());
  auto got = *f7.circuits();
  REQUIRE(got == brute);
  int threes = 0;
  for (Mask c : got)
    if (popcount(c) == 3) ++threes;
  REQUIRE(threes == 7);
}

TEST_CASE("duality") {
  auto f7 = catalog("F7");
  REQUIRE(matroids_equal(f7.dual().dual(), f7));
  auto u24 = catalog("U(2,4)");
  REQUIRE(matroids_equal(u24.dual(), u24));
  REQUIRE_FALSE(is_isomorphic(catalog("F7"), catalog("F7*")));
  REQUIRE(f7.rank() + f7.dual().rank() == f7.size());
}

TEST_CASE("minors match brute-force recomputation") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 20; ++it) {
    auto m = oracle::random_matroid(8, 4, rng, false);
    Mask d = rng() & full_mask(8);
    Mask c = rng() & full_mask(8) & ~d;
    if (popcount(d) + popcount(c) > 6) continue;
    auto got = m.minor(d, c);
    // oracle: delete = restrict columns, contract = quotient, recompute
    BinaryMatroid del = m.delete_elements(d);
    Mask c2 = 0;
    for (int e = 0; e < del.size(); ++e)
      if (has_bit(c, m.elems.at(del.elems.labels[e]))) c2 |= bit(e);
    auto ctr = del.contract_elements(c2);
    REQUIRE(matroids_equal(got, ctr));
    REQUIRE(oracle::exchange_axiom_holds(*got.bases(), got.size()));
    // deletion of nothing is the identity
    REQUIRE(matroids_equal(m.minor(Mask{0}, Mask{0}), m));
  }
}

TEST_CASE("contracting a loop equals deleting it") {
  // graph with a loop
  MultiGraph g({"a", "b"}, {{"l", "a", "a"}, {"e", "a", "b"}, {"f", "a", "b"}});
  auto m = cycle_matroid(g);
  Mask loop = bit(m.elems.at("l"));
  REQUIRE(matroids_equal(m.contract_elements(loop), m.delete_elements(loop)));
}

TEST_CASE("components") {
  // direct sum of two triangles: block-diagonal representation
  std::vector<std::string> ls{"a1", "a2", "a3", "b1", "b2", "b3"};
  Rep rep;
  rep.rows = 4;
  rep.cols = {bit(0), bit(1), Mask(bit(0) | bit(1)), bit(2), bit(3), Mask(bit(2) | bit(3))};
  auto m = BinaryMatroid::from_rep(ls, rep);
  auto comps = m.components();
  REQUIRE(comps.size() == 2);
  REQUIRE(catalog("R10").is_connected());
  REQUIRE(BinaryMatroid().is_connected());  // empty matroid
}

TEST_CASE("three-element connectivity cross-check") {
  // connected iff every 3-subset lies in a circuit or cocircuit
  std::mt19937_64 rng(4242);
  for (int it = 0; it < 30; ++it) {
    auto m = oracle::random_matroid(6, 3, rng, false);
    bool conn = m.is_connected();
    auto circ = *m.circuits();
    auto cocirc = *m.dual().circuits();
    bool all3 = true;
    for (Mask x = 0; x < (Mask{1} << 6) && all3; ++x) {
      if (popcount(x) != 3) continue;
      bool hit = false;
      for (Mask c : circ)
        if ((x & c) == x) hit = true;
      for (Mask c : cocirc)
        if ((x & c) == x) hit = true;
      if (!hit) all3 = false;
    }
    REQUIRE(conn == all3);
  }
}

TEST_CASE("lambda of a singleton") {
  std::mt19937_64 rng(606);
  for (int it = 0; it < 10; ++it) {
    auto m = oracle::random_matroid(6, 3, rng, true);
    for (int e = 0; e < m.size(); ++e) {
      bool loop = m.rank_of(bit(e)) == 0;
      bool coloop = m.rank() - m.rank_of(m.ground_mask() & ~bit(e)) > 0;
      if (!loop && !coloop) REQUIRE(m.lambda(bit(e)) == 1);
    }
  }
}

TEST_CASE("lambda and separations") {
  auto u34 = catalog("U(3,4)");
  for (Mask x = 1; x < 15; ++x) {
    if (popcount(x) != 2) continue;
    REQUIRE(u34.lambda(x) == 1);
    REQUIRE(u34.lambda(x) == u34.lambda(full_mask(4) & ~x));
  }
  auto sep = find_k_separation(u34, 2);
  REQUIRE(sep);
  REQUIRE(sep->lambda == 1);

  REQUIRE(is_3_connected(catalog("R10")));
  REQUIRE(is_3_connected(catalog("R12")));
  REQUIRE(is_3_connected(catalog("F7")));
  REQUIRE(is_3_connected(catalog("M(W_4)")));
  REQUIRE_FALSE(find_k_separation(catalog("R10"), 2).has_value());
}

TEST_CASE("2-separation finder agrees with subset scan on small matroids") {
  std::mt19937_64 rng(5150);
  int found = 0, absent = 0;
  for (int it = 0; it < 60; ++it) {
    auto m = oracle::random_matroid(7, 4, rng, true);
    bool brute_has = false;
    for (Mask x = 1; x < (Mask{1} << 6) && !brute_has; ++x) {
      Mask xx = x;
      if (popcount(xx) < 2 || m.size() - popcount(xx) < 2) continue;
      if (m.lambda(xx) <= 1) brute_has = true;
    }
    auto sep = find_k_separation(m, 2);
    REQUIRE(sep.has_value() == brute_has);
    if (sep) {
      REQUIRE(sep->lambda <= 1);
      REQUIRE(popcount(sep->side_x) >= 2);
      REQUIRE(popcount(sep->side_y) >= 2);
      REQUIRE((sep->side_x | sep->side_y) == m.ground_mask());
      REQUIRE((sep->side_x & sep->side_y) == 0);
      ++found;
    } else {
      ++absent;
    }
  }
  REQUIRE(found > 0);
  REQUIRE(absent > 0);
}

TEST_CASE("circuit and cocircuit never meet in one element") {
  std::mt19937_64 rng(8);
  for (int it = 0; it < 15; ++it) {
    auto m = oracle::random_matroid(6, 3, rng, false);
    auto circ = m.circuits();
    auto cocirc = m.dual().circuits();
    for (Mask c : *circ)
      for (Mask d : *cocirc) REQUIRE(popcount(c & d) != 1);
  }
}

TEST_CASE("isomorphism search") {
  auto f7 = catalog("F7");
  auto idm = find_isomorphism(f7, f7);
  REQUIRE(idm);
  REQUIRE_FALSE(find_isomorphism(catalog("F7"), catalog("F7*")));
  REQUIRE(find_isomorphism(catalog("M(W_3)"), catalog("M(K4)")));
  // relabelled copies are isomorphic
  auto r10 = catalog("R10");
  std::map<std::string, std::string> ren;
  for (int i = 1; i <= 10; ++i) ren["e" + std::to_string(i)] = "f" + std::to_string(11 - i);
  REQUIRE(find_isomorphism(r10, r10.relabel(ren)));
}

TEST_CASE("minor containment") {
  auto f7 = catalog("F7");
  REQUIRE_FALSE(has_minor(f7, catalog("U(2,4)")));
  auto self = has_minor(f7, f7);
  REQUIRE(self);
  REQUIRE(self->deleted.empty());
  REQUIRE(self->contracted.empty());
  REQUIRE_FALSE(has_minor(catalog("R12"), catalog("R10")));
  REQUIRE(has_minor(catalog("M(K5)"), catalog("M(K4)")));
}

TEST_CASE("graphic and cographic recognition") {
  auto k5 = catalog("M(K5)");
  auto w = is_graphic(k5);
  REQUIRE(w);
  REQUIRE(matroids_equal(cycle_matroid(*w), k5));
  REQUIRE(is_cographic(k5.dual()));
  REQUIRE_FALSE(is_graphic(catalog("R10")));
  REQUIRE_FALSE(is_cographic(catalog("R10")));
  REQUIRE_FALSE(is_graphic(catalog("M*(K33)")));
  REQUIRE(is_cographic(catalog("M*(K33)")));
  REQUIRE(is_graphic(catalog("M(W_6)")));
  // graphic with loops and parallels
  MultiGraph g({"a", "b", "c"},
               {{"l", "a", "a"}, {"e", "a", "b"}, {"f", "a", "b"}, {"g", "b", "c"}});
  auto m = cycle_matroid(g);
  auto w2 = is_graphic(m);
  REQUIRE(w2);
  REQUIRE(matroids_equal(cycle_matroid(*w2), m));
}

TEST_CASE("graphicness agrees with the excluded-minor characterization") {
  std::vector<BinaryMatroid> excl{catalog("U(2,4)"), catalog("F7"), catalog("F7*"),
                                  catalog("M*(K5)"), catalog("M*(K33)")};
  auto excluded_free = [&](const BinaryMatroid& m) {
    for (auto& x : excl)
      if (has_minor(m, x)) return false;
    return true;
  };
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 12; ++it) {
    auto m = oracle::random_matroid(7, 4, rng, false);
    REQUIRE(is_graphic(m).has_value() == excluded_free(m));
  }
  for (auto name : {"M(K5)", "M(K33)", "M*(K5)", "M*(K33)", "F7", "F7*", "R10", "M(W_4)",
                    "U(1,4)", "U(3,4)"}) {
    auto m = catalog(name);
    REQUIRE(is_graphic(m).has_value() == excluded_free(m));
  }
}

TEST_CASE("lazy caches are safe under concurrent readers") {
  auto m = catalog("R10");
  std::vector<std::thread> pool;
  std::atomic<int> total{0};
  for (int t = 0; t < 8; ++t)
    pool.emplace_back([&]() {
      total += (int)m.bases()->size();
      total += (int)m.circuits()->size();
      total += m.rank();
    });
  for (auto& t : pool) t.join();
  REQUIRE(total == 8 * ((int)m.bases()->size() + (int)m.circuits()->size() + m.rank()));
}

TEST_CASE("regularity") {
  REQUIRE_FALSE(is_regular(catalog("F7")));
  REQUIRE_FALSE(is_regular(catalog("F7*")));
  REQUIRE(is_regular(catalog("R10")));
  REQUIRE(is_regular(catalog("R12")));
  REQUIRE(is_regular(catalog("M(K5)")));
  REQUIRE(is_regular(catalog("M*(K33)")));
  REQUIRE_FALSE(is_regular(catalog("U(2,4)")));
}

TEST_CASE("catalog wheels and pi") {
  REQUIRE(is_isomorphic(catalog("M(W_3)"), catalog("M(K4)")));
  REQUIRE(matroids_equal(catalog("Pi_2"), catalog("U(1,2)").with_labels({"e1", "e2"})));
  auto pi3 = catalog("Pi_3");
  REQUIRE(pi3.size() == 3);
  REQUIRE(pi3.rank() == 1);
}

TEST_CASE("base enumeration cap raises a resource error") {
  auto save = caps().base_enum;
  caps().base_enum = 4;
  auto f7 = catalog("F7");
  REQUIRE_THROWS_AS(*f7.bases(), ResourceError);
  caps().base_enum = save;
}
