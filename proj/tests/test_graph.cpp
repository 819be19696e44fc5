#include "doctest.h"
#include "dpz/graph.hpp"

#include <functional>
#include <set>

using namespace dpz;

TEST_CASE("chain discriminants") {
  CHECK(chain_discriminant({2}) == 2);
  CHECK(chain_discriminant({2, 3}) == 5);
  CHECK(chain_discriminant({}) == 1);
  for (int k = 1; k <= 9; ++k) {
    Chain t(k, 2);
    CHECK(chain_discriminant(t) == k + 1);
  }
  CHECK(discriminant(WeightedForest::chain({2, 3})) == 5);
}

TEST_CASE("discriminant is reversal invariant (exhaustive small chains)") {
  std::vector<Chain> all;
  std::function<void(Chain&)> rec = [&](Chain& c) {
    if (!c.empty()) all.push_back(c);
    if (c.size() == 4) return;
    for (Int a = 2; a <= 9; ++a) {
      c.push_back(a);
      rec(c);
      c.pop_back();
    }
  };
  Chain c;
  rec(c);
  for (auto& t : all) {
    Chain r(t.rbegin(), t.rend());
    CHECK(chain_discriminant(t) == chain_discriminant(r));
  }
}

TEST_CASE("negative definiteness") {
  CHECK(is_negative_definite(WeightedForest::chain({2, 2})));
  CHECK(!is_negative_definite(WeightedForest::chain({0})));
  // affine D4: center with four -2 legs
  WeightedForest g;
  g.weight = {-2, -2, -2, -2, -2};
  g.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  CHECK(!is_negative_definite(g));
  CHECK(discriminant(g) == 0);
}

TEST_CASE("chain coefficients") {
  auto cf = chain_coefficients({2});
  CHECK(cf[0] == 0);
  cf = chain_coefficients({2, 3});
  CHECK(cf[0] == mpq_class(1, 5));
  CHECK(cf[1] == mpq_class(2, 5));
  cf = chain_coefficients({3, 2, 3});
  CHECK(cf[1] == mpq_class(1, 2));
  CHECK_THROWS_AS((void)chain_coefficients({1, 2}), Error);
}

TEST_CASE("twig coefficients reproduce the quoted values") {
  CHECK(twig_coefficients({2}) == std::vector<mpq_class>{mpq_class(1, 2)});
  auto cf = twig_coefficients({2, 3});
  CHECK(cf[0] == mpq_class(2, 5));
  CHECK(cf[1] == mpq_class(4, 5));
  CHECK(twig_coefficients({3})[0] == mpq_class(2, 3));
  auto c222 = twig_coefficients({2, 2, 2});
  CHECK(c222[2] == mpq_class(3, 4));
}

TEST_CASE("fork coefficients") {
  Fork d4{2, {Chain{2}, Chain{2}, Chain{2}}};
  auto fc = fork_coefficients(d4);
  CHECK(fc.branch == 0);
  Fork f2{2, {Chain{2}, Chain{2}, Chain{3}}};
  CHECK(fork_coefficients(f2).branch == mpq_class(1, 2));
  Fork bad{2, {Chain{2}, Chain{3}, Chain{7}}};
  CHECK_THROWS_AS((void)fork_coefficients(bad), Error);
}

TEST_CASE("platonic triples") {
  Fork f{2, {Chain{2}, Chain{3}, Chain{5}}};
  auto p = is_platonic(f);
  CHECK(p.platonic);
  CHECK(p.family == "{2,3,5}");
  Fork g{2, {Chain{2}, Chain{3}, Chain{7}}};
  CHECK(!is_platonic(g).platonic);
  Fork h{2, {Chain{2}, Chain{2}, Chain{11}}};
  auto ph = is_platonic(h);
  CHECK(ph.platonic);
  CHECK(ph.family == "{2,2,k}");
}

TEST_CASE("adjoint chains") {
  CHECK(adjoint_chain({2}) == Chain{2});
  CHECK(adjoint_chain({4}) == Chain({2, 2, 2}));
  CHECK(adjoint_chain({2, 2}) == Chain{3});
  for (Int k = 2; k <= 7; ++k) {
    Chain adj = adjoint_chain({k});
    CHECK(adj == Chain(k - 1, 2));
  }
}

TEST_CASE("adjoint certified for all admissible chains with d <= 50") {
  std::vector<Chain> all;
  std::function<void(Chain&)> rec = [&](Chain& c) {
    if (!c.empty() && chain_discriminant(c) <= 50) all.push_back(c);
    if (c.size() >= 8) return;
    for (Int a = 2; a <= 50; ++a) {
      c.push_back(a);
      if (chain_discriminant(c) > 50) {
        c.pop_back();
        break;
      }
      rec(c);
      c.pop_back();
    }
  };
  Chain c;
  rec(c);
  CHECK(all.size() > 100);
  for (auto& t : all) {
    Chain adj = adjoint_chain(t);
    CHECK(chain_discriminant(adj) == chain_discriminant(t));
    std::vector<Int> fiber(t.begin(), t.end());
    fiber.push_back(1);
    for (Int a : adj) fiber.push_back(a);
    auto res = blowdown_to_zero(WeightedForest::chain(fiber));
    CHECK(res.ok);
    // the double adjoint relates back to the chain up to reversal
    Chain rev(adj.rbegin(), adj.rend());
    Chain back = adjoint_chain(rev);
    Chain back_rev(back.rbegin(), back.rend());
    CHECK((back_rev == t || back == t));
  }
}

TEST_CASE("blowdown oracle") {
  auto r = blowdown_to_zero(WeightedForest::chain({2, 1, 2}));
  CHECK(r.ok);
  CHECK(r.mult == std::vector<mpz_class>{1, 2, 1});
  r = blowdown_to_zero(WeightedForest::chain({1, 2, 2, 1}));
  CHECK(r.ok);
  CHECK(r.mult == std::vector<mpz_class>{1, 1, 1, 1});
  r = blowdown_to_zero(WeightedForest::chain({2, 2}));
  CHECK(!r.ok);
  CHECK(r.error == "NotCorankOne");
}

TEST_CASE("branching (-1) rejected") {
  WeightedForest g;
  g.weight = {-1, -2, -2, -1};
  g.edges = {{0, 1}, {0, 2}, {0, 3}};
  auto r = blowdown_to_zero(g);
  CHECK(!r.ok);
}

TEST_CASE("canonical fiber enumeration matches brute force") {
  auto quick = enumerate_canonical_fibers(3);
  CHECK(quick.size() == 3);  // [1,1], [1,2,1], [2,1,2]
  auto q4 = enumerate_canonical_fibers(4);
  CHECK(q4.size() == 5);  // + [1,2,2,1], <2;[1],[2],[2]>
  for (int n = 3; n <= 8; ++n) {
    auto a = enumerate_canonical_fibers(n);
    auto b = brute_force_canonical_fibers(n);
    std::set<std::string> ca, cb;
    for (auto& s : a) ca.insert(weighted_tree_code(s.graph));
    for (auto& s : b) cb.insert(weighted_tree_code(s.graph));
    CHECK(ca == cb);
  }
  auto q5 = enumerate_canonical_fibers(5);
  bool found = false;
  for (auto& s : q5)
    if (s.tag == "<2;[1,(2)_1],[2],[2]>") found = true;
  CHECK(found);
}

TEST_CASE("fiber multiplicities are the primitive kernel vector") {
  for (auto& s : enumerate_canonical_fibers(9)) {
    auto r = blowdown_to_zero(s.graph);
    REQUIRE(r.ok);
    CHECK(r.mult == s.mult);
  }
}

TEST_CASE("ADE recognition") {
  auto a2 = ade_classify(WeightedForest::chain({2, 2}));
  CHECK(a2.str() == "A2");
  WeightedForest d4;
  d4.weight = {-2, -2, -2, -2};
  d4.edges = {{0, 1}, {0, 2}, {0, 3}};
  CHECK(ade_classify(d4).str() == "D4");
  WeightedForest e6;
  e6.weight = std::vector<Int>(6, -2);
  e6.edges = {{0, 1}, {0, 2}, {2, 3}, {0, 4}, {4, 5}};
  CHECK(ade_classify(e6).str() == "E6");
  CHECK(is_negative_definite(e6));
  WeightedForest aff;
  aff.weight = std::vector<Int>(5, -2);
  aff.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  CHECK(!ade_classify(aff).is_ade());
}

TEST_CASE("coefficient monotonicity harness") {
  CHECK(alexeev_compare_chains({3, 2, 3}, 1, {2}));
  CHECK(alexeev_compare_chains({2, 3}, 0, {2, 3}));
  CHECK(alexeev_compare_chains({5}, 0, {3}));
}

TEST_CASE("alexeev monotonicity on random admissible pairs") {
  Rng rng(20240817);
  for (int trials = 0; trials < 500; ++trials) {
    int len = (int)rng.uniform(1, 5);
    Chain d;
    for (int i = 0; i < len; ++i) d.push_back(rng.uniform(2, 7));
    int sublen = (int)rng.uniform(1, len);
    int off = (int)rng.uniform(0, len - sublen);
    Chain dp;
    for (int i = 0; i < sublen; ++i) dp.push_back(rng.uniform(2, d[off + i]));
    CHECK(alexeev_compare_chains(d, off, dp));
  }
}

TEST_CASE("parsing") {
  CHECK(parse_chain("[2,3,5]") == Chain({2, 3, 5}));
  Fork f = parse_fork("<2;[2],[3],[5]>");
  CHECK(f.b == 2);
  CHECK(f.twigs[2] == Chain{5});
  auto g = parse_fiber_chain("[2,3,*1*,2,3]");
  CHECK(g.weight == std::vector<Int>({-2, -3, -1, -2, -3}));
  auto j = WeightedForest::from_json(
      "{\"vertices\":[{\"id\":0,\"w\":-2},{\"id\":1,\"w\":-2}],\"edges\":[[0,1]]}");
  CHECK(discriminant(j) == 3);
}

TEST_CASE("cf values lie in [0,1) and vanish exactly on all-(-2) chains") {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    int len = (int)rng.uniform(1, 6);
    Chain t;
    for (int i = 0; i < len; ++i) t.push_back(rng.uniform(2, 6));
    bool all2 = true;
    for (Int a : t) all2 &= (a == 2);
    for (auto& v : chain_coefficients(t)) {
      CHECK(v >= 0);
      CHECK(v < 1);
      if (all2) CHECK(v == 0);
    }
    for (auto& v : twig_coefficients(t)) {
      CHECK(v > 0);
      CHECK(v < 1);
    }
  }
}
