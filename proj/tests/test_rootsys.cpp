#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "rootfree/rootsys.hpp"

using namespace rootfree;

TEST_CASE("positive root counts for the small types") {
  CHECK(parse_system("A2")->n() == 3);
  CHECK(parse_system("A3")->n() == 6);
  CHECK(parse_system("B3")->n() == 9);
  CHECK(parse_system("C3")->n() == 9);
  CHECK(parse_system("D4")->n() == 12);
  CHECK(parse_system("G2")->n() == 6);
  CHECK(parse_system("F4")->n() == 24);
  CHECK(parse_system("A4")->n() == 10);
  CHECK(parse_system("B4")->n() == 16);
  CHECK(parse_system("C4")->n() == 16);
  CHECK(parse_system("D5")->n() == 20);
  CHECK(parse_system("B2xA1")->n() == 5);
}

TEST_CASE("C uses the long-first-node convention, B its transpose") {
  auto C = parse_system("C3");
  // alpha_1 = 2e_1 is the long root: <alpha_1, alpha_2^vee> = -2
  CHECK(C->cartan[0][1] == -2);
  CHECK(C->cartan[1][0] == -1);
  CHECK(C->long_root[0]);
  CHECK_FALSE(C->long_root[1]);

  auto B = parse_system("B3");
  CHECK(B->cartan[0][1] == -1);
  CHECK(B->cartan[1][0] == -2);
  CHECK_FALSE(B->long_root[0]);  // alpha_1 = e_1 short
  CHECK(B->long_root[1]);

  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(B->cartan[i][j] == C->cartan[j][i]);
}

TEST_CASE("root order is by height then reverse lex") {
  auto C = parse_system("C3");
  Mat expect = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {0, 1, 1},
                {1, 2, 0}, {1, 1, 1}, {1, 2, 1}, {1, 2, 2}};
  REQUIRE(C->n() == (int)expect.size());
  for (int k = 0; k < C->n(); ++k) CHECK(C->pos[k] == expect[k]);
  for (int k = 1; k < C->n(); ++k) CHECK(C->height[k - 1] <= C->height[k]);
}

TEST_CASE("heights and highest root") {
  auto A = parse_system("A3");
  CHECK(A->height[A->highest_root[0]] == 3);
  auto F = parse_system("F4");
  CHECK(F->height[F->highest_root[0]] == 11);
}

TEST_CASE("parse_system rejects malformed names") {
  CHECK_THROWS_AS(parse_system("Z9"), std::invalid_argument);
  CHECK_THROWS_AS(parse_system("A0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_system(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_system("E9"), std::invalid_argument);
  CHECK_THROWS_AS(parse_system("B1"), std::invalid_argument);  // rank below 2
  CHECK_THROWS_AS(parse_system("A2x"), std::invalid_argument);
}

TEST_CASE("reducible systems factor correctly") {
  auto R = parse_system("B2xA1");
  REQUIRE(R->factors.size() == 2);
  CHECK(R->factors[0] == std::make_pair('B', 2));
  CHECK(R->factors[1] == std::make_pair('A', 1));
  CHECK(R->factor_of_root[R->n() - 1] >= 0);
  // every root lives in exactly one factor, with nodes from that factor only
  for (int k = 0; k < R->n(); ++k) {
    int f = R->factor_of_root[k];
    for (int i = 0; i < R->l; ++i)
      if (R->pos[k][i] != 0) CHECK(R->factor_of_node[i] == f);
  }
}

TEST_CASE("dual system swaps B and C") {
  auto B = parse_system("B3");
  DualSystem d = dual_system(*B);
  CHECK(d.sys->factors == parse_system("C3")->factors);
  // duality is an involution on root indices
  DualSystem dd = dual_system(*d.sys);
  for (int k = 0; k < B->n(); ++k) CHECK(dd.root_map[d.root_map[k]] == k);
  // long roots of B3 map to short roots of C3
  for (int k = 0; k < B->n(); ++k)
    CHECK(B->long_root[k] == !d.sys->long_root[d.root_map[k]]);
}

TEST_CASE("cartan_isos counts diagram symmetries") {
  auto A = parse_system("A3");
  CHECK(cartan_isos(A->cartan, A->cartan).size() == 2);
  auto D = parse_system("D4");
  CHECK(cartan_isos(D->cartan, D->cartan).size() == 6);
  auto B = parse_system("B3");
  auto C = parse_system("C3");
  CHECK(cartan_isos(B->cartan, C->cartan).empty());
  CHECK(cartan_isos(B->cartan, B->cartan).size() == 1);
}

TEST_CASE("restriction classifies sub-root-systems") {
  auto D = parse_system("D4");
  // the three outer nodes span an A1^3
  Subspace U = span_of_roots(*D, {0, 2, 3});
  Restriction res = restrict_system(*D, U);
  CHECK(factors_name(res.sys->factors) == "A1xA1xA1");

  // a hyperplane through 9 roots of D4 restricts to B3... check via count instead:
  auto spaces = root_spanned_subspaces(*D, 3);
  std::set<std::string> names;
  for (const auto& W : spaces) names.insert(factors_name(restrict_system(*D, W).sys->factors));
  CHECK(names.count("A3"));
  CHECK(names.count("A1xA1xA1"));

  // index maps are mutually inverse on the subspace roots
  for (int s = 0; s < res.sys->n(); ++s) CHECK(res.from_ambient[res.to_ambient[s]] == s);
}

TEST_CASE("root_spanned_subspaces covers all flats of the braid A3") {
  auto A = parse_system("A3");
  auto dim2 = root_spanned_subspaces(*A, 2);
  CHECK(dim2.size() == 7);  // 4 triple flats + 3 transversal pairs
  auto dim3 = root_spanned_subspaces(*A, 3);
  CHECK(dim3.size() == 1);
  CHECK(dim3[0].roots.count() == A->n());
}

TEST_CASE("alpha strings partition the positive roots") {
  auto C = parse_system("C3");
  for (int a = 0; a < C->n(); ++a) {
    std::set<int> seen;
    for (const auto& str : C->strings[a])
      for (int j : str) CHECK(seen.insert(j).second);
    CHECK((int)seen.size() == C->n());
  }
}

TEST_CASE("render_root formats coefficient vectors") {
  CHECK(render_root({1, 2, 0}) == "[1,2,0]");
}
