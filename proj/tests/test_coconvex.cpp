#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "rootfree/coconvex.hpp"

using namespace rootfree;

TEST_CASE("convexity predicates on A2") {
  auto R = parse_system("A2");
  Bits simples(R->n());
  simples.set(0);
  simples.set(1);
  // {a1, a2} misses a1+a2, so it is coconvex but not convex
  CHECK_FALSE(is_convex(*R, simples));
  CHECK(is_coconvex(*R, simples));

  Bits top(R->n());
  top.set(2);
  // {a1+a2} is convex; its complement {a1,a2} is not
  CHECK(is_convex(*R, top));
  CHECK_FALSE(is_coconvex(*R, top));

  Bits empty(R->n());
  CHECK(is_biconvex(*R, empty));
  CHECK(is_biconvex(*R, ~empty));
}

TEST_CASE("enumeration counts") {
  CHECK(enumerate_coconvex(*parse_system("A2")).size() == 7);
  CHECK(enumerate_coconvex(*parse_system("A3")).size() == 40);
  CHECK(enumerate_coconvex(*parse_system("B3")).size() == 172);
  CHECK(enumerate_coconvex(*parse_system("C3")).size() == 172);
  CHECK(enumerate_coconvex(*parse_system("D4")).size() == 888);
  CHECK(enumerate_biconvex(*parse_system("A3")).size() == 24);
  CHECK(enumerate_biconvex(*parse_system("G2")).size() == 12);
}

TEST_CASE("enumeration agrees with brute force on A3") {
  auto R = parse_system("A3");
  std::set<std::uint64_t> brute_cc, brute_bc;
  for (std::uint64_t m = 0; m < (1ull << R->n()); ++m) {
    Bits S = Bits::from_mask(R->n(), m);
    if (is_coconvex(*R, S)) brute_cc.insert(m);
    if (is_biconvex(*R, S)) brute_bc.insert(m);
  }
  auto cc = enumerate_coconvex(*R);
  REQUIRE(cc.size() == brute_cc.size());
  for (const Bits& S : cc) CHECK(brute_cc.count(S.mask64()));
  // output is sorted ascending and duplicate-free
  for (size_t i = 1; i < cc.size(); ++i) CHECK(cc[i - 1] < cc[i]);
  CHECK(enumerate_biconvex(*R).size() == brute_bc.size());
}

TEST_CASE("enumeration budget") {
  CHECK_THROWS_AS(enumerate_coconvex(*parse_system("A3"), 5), BudgetExceeded);
}

TEST_CASE("lower ideals are coconvex and closed downward") {
  auto R = parse_system("B3");
  int n_ideals = 0;
  for (std::uint64_t m = 0; m < (1ull << R->n()); ++m) {
    Bits S = Bits::from_mask(R->n(), m);
    if (!is_lower_ideal(*R, S)) continue;
    ++n_ideals;
    CHECK(is_coconvex(*R, S));
    for (int g : S.indices())
      for (int b = 0; b < R->n(); ++b)
        if (R->dominance_leq(b, g)) CHECK(S.get(b));
  }
  CHECK(n_ideals > 2);
  Bits top(R->n());
  top.set(R->n() - 1);
  CHECK_FALSE(is_lower_ideal(*R, top));
}

TEST_CASE("Exp of the full positive system gives the exponents") {
  auto full_exp = [](const char* nm) {
    auto R = parse_system(nm);
    Bits all = ~Bits(R->n());
    return exp_multiset(*R, all);
  };
  CHECK(full_exp("A3") == std::vector<int>{1, 2, 3});
  CHECK(full_exp("B3") == std::vector<int>{1, 3, 5});
  CHECK(full_exp("C3") == std::vector<int>{1, 3, 5});
  CHECK(full_exp("D4") == std::vector<int>{1, 3, 3, 5});
  CHECK(full_exp("G2") == std::vector<int>{1, 5});
  CHECK(full_exp("F4") == std::vector<int>{1, 5, 7, 11});
}

TEST_CASE("Exp rejects non-ideals and handles the empty set") {
  auto R = parse_system("A3");
  CHECK(exp_multiset(*R, Bits(R->n())) == std::vector<int>{0, 0, 0});
  Bits bad(R->n());
  bad.set(R->n() - 1);
  CHECK_THROWS_AS(exp_multiset(*R, bad), std::invalid_argument);
}

TEST_CASE("intersect_with_subspace pulls back along the index maps") {
  auto R = parse_system("A3");
  Subspace U = span_of_roots(*R, {0, 1});  // an A2 inside A3
  Restriction res = restrict_system(*R, U);
  REQUIRE(res.sys->n() == 3);
  Bits S = ~Bits(R->n());  // everything
  Bits T = intersect_with_subspace(S, U, res);
  CHECK(T.count() == 3);
  Bits S2(R->n());
  S2.set(res.to_ambient[0]);
  Bits T2 = intersect_with_subspace(S2, U, res);
  CHECK(T2.count() == 1);
  CHECK(T2.get(0));
}
