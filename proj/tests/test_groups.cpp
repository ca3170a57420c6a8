#include <doctest.h>

#include <set>

#include "rwp/groups.hpp"
#include "rwp/splitting.hpp"

using namespace rwp;

TEST_CASE("zd arithmetic and ball sizes") {
  Group Z2 = Group::zd(2);
  CHECK(Z2.multiply(Z2.parse("1,2"), Z2.parse("3,-1")) == Z2.parse("4,1"));
  CHECK(Z2.ball(0).size() == 1);
  for (int r = 0; r <= 6; ++r) CHECK(Z2.ball(r).size() == static_cast<size_t>(2 * r * r + 2 * r + 1));
  auto g = Z2.parse("3,-2"), h = Z2.parse("-1,1");
  CHECK(Z2.distance(g, h) == 7);
  CHECK(Z2.distance(h, g) == 7);
  CHECK(Z2.distance(g, g) == 0);
  CHECK(Z2.format(g) == "3,-2");
}

TEST_CASE("free group reduction, balls and text") {
  Group F2 = Group::free(2);
  auto g = F2.parse("abA");
  CHECK(F2.format(g) == "abA");
  CHECK(F2.multiply(g, F2.inverse(g)) == F2.identity());
  CHECK(F2.format(F2.parse("aAb")) == "b");
  CHECK(F2.format(F2.identity()) == "1");
  size_t expected = 1;
  for (int r = 0; r <= 6; ++r) {
    if (r > 0) {
      size_t sphere = 4;
      for (int i = 1; i < r; ++i) sphere *= 3;
      expected += sphere;
    }
    CHECK(F2.ball(r).size() == expected);
  }
  CHECK(F2.ball(2).size() == 17);
  CHECK(F2.norm(F2.parse("abAB")) == 4);
}

TEST_CASE("ball is closed under one more generator step") {
  Group F2 = Group::free(2);
  auto b2 = F2.ball(2), b3 = F2.ball(3);
  std::set<GroupElement> s3(b3.begin(), b3.end());
  for (const auto& g : b2)
    for (const auto& s : F2.generators()) CHECK(s3.count(F2.multiply(g, s)) == 1);
  CHECK_THROWS(F2.ball(10, 1000));
}

TEST_CASE("lamplighter law and generators") {
  Group L = Group::lamplighter(2);
  auto a = L.word("a"), b = L.word("b");
  CHECK(L.format(a) == "t^1|lamps@{}");
  CHECK(L.format(b) == "t^1|lamps@{1}");
  // (1, 0)(1, d_1) = (2, tau_1 d_1) = (2, d_2)
  CHECK(L.format(L.multiply(a, b)) == "t^2|lamps@{2}");
  CHECK(L.parse("t^2|lamps@{2}") == L.multiply(a, b));
  for (const char* w : {"ab", "bAb", "aaBB", "bbbb"}) {
    auto g = L.word(w);
    CHECK(L.multiply(g, L.inverse(g)) == L.identity());
    CHECK(L.parse(L.format(g)) == g);
  }
  CHECK(L.multiply(b, b) == L.parse("t^2|lamps@{1,2}"));
  Group L3 = Group::lamplighter(3, 2);
  auto g = L3.word("bcB");
  CHECK(L3.parse(L3.format(g)) == g);
  CHECK(L3.multiply(g, L3.inverse(g)) == L3.identity());
  // lamp values stay canonical mod q
  CHECK(L3.power(L3.lamp(0, {1, 0}), 3) == L3.identity());
}

TEST_CASE("free splitting scheme validates for radii up to 6") {
  Group F2 = Group::free(2);
  for (int r = 0; r <= 6; ++r) {
    FiniteGraph g = ball_graph(F2, r);
    SplitTree t = split_free(g);
    SplitCheck c = verify_splitting_scheme(t, g, {2, 3}, 1);
    CHECK_MESSAGE(c.ok, "r=" << r << " node " << c.node << ": " << c.reason);
  }
}

TEST_CASE("free splitting at radius 1 cuts the identity") {
  Group F2 = Group::free(2);
  FiniteGraph g = ball_graph(F2, 1);
  SplitTree t = split_free(g);
  const SplitNode& root = t.nodes[t.root];
  REQUIRE(root.cut.size() == 1);
  CHECK(g.labels[root.cut[0]] == "1");
  CHECK(t.nodes[root.left].A.size() == 2);
  CHECK(t.nodes[root.right].A.size() == 2);
}

TEST_CASE("verification rejects touching parts and accepts the empty leaf") {
  Group F2 = Group::free(2);
  FiniteGraph g = ball_graph(F2, 1);
  SplitTree empty;
  empty.nodes.push_back(SplitNode{});
  CHECK(verify_splitting_scheme(empty, g, {2, 3}, 1).ok);
  // split {1, a} with empty cut: the two parts are adjacent
  int id1 = 0, ida = 1;
  SplitTree bad;
  bad.nodes = {SplitNode{{id1, ida}, {}, 1, 2}, SplitNode{{id1}, {}, 3, 4}, SplitNode{{ida}, {}, 5, 6}};
  for (int i = 0; i < 4; ++i) bad.nodes.push_back(SplitNode{});
  bad.nodes[1].cut = {id1};
  bad.nodes[1].A = {id1};
  bad.nodes[2].cut = {ida};
  SplitCheck c = verify_splitting_scheme(bad, g, {1, 1}, 1);
  CHECK_FALSE(c.ok);
  CHECK(c.reason == "parts touch");
  CHECK(((c.u == id1 && c.v == ida) || (c.u == ida && c.v == id1)));
}

TEST_CASE("pentagon regions and path splitting") {
  CHECK(pentagon_region(0).size() == 1);
  CHECK(pentagon_region(1).size() == 3);
  CHECK(pentagon_region(3).size() == 15);
  for (int k = 0; k <= 8; ++k) {
    FiniteGraph g = pentagon_region(k);
    SplitTree t = split_pentagon(k, g);
    SplitCheck c = verify_splitting_scheme(t, g, {3, 4}, k + 1);
    CHECK_MESSAGE(c.ok, "k=" << k << " node " << c.node << ": " << c.reason);
  }
}
