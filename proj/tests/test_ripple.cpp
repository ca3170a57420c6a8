#include <doctest.h>

#include <random>

#include "rwp/ripple.hpp"

using namespace rwp;

namespace {

// Graph with a full depth-n binary cone rooted at node 0, B value = depth, C value 0 off the root.
LabeledGraph binary_cone(int n, int root_c) {
  LabeledGraph g;
  int total = (1 << (n + 1)) - 1;
  g.nodes.resize(total);
  g.succ.assign(total, std::vector<int>(2, -1));
  for (int v = 0; v < total; ++v) {
    int depth = 0;
    while ((2 << depth) - 1 <= v) ++depth;
    g.nodes[v] = {v == 0 ? root_c : 0, depth};
    if (depth < n) {
      g.succ[v][0] = 2 * v + 1;
      g.succ[v][1] = 2 * v + 2;
    }
  }
  return g;
}

std::vector<int> c_values(const LabeledGraph& g) {
  std::vector<int> c;
  for (const auto& nd : g.nodes) c.push_back(nd.c);
  return c;
}

}  // namespace

TEST_CASE("successor systems and successful nodes") {
  auto sys = SuccessorSystem::counter(2, 2);
  CHECK(sys.valid());
  CHECK(sys.b_size == 4);
  auto bad = sys;
  bad.rel[0][0][2] = 1;
  CHECK_FALSE(bad.valid());

  LabeledGraph g;
  g.nodes = {{0, 0}, {0, 1}, {0, 1}};
  g.succ = {{1, 2}, {-1, -1}, {-1, -1}};
  CHECK(is_successful(g, sys, 0));
  CHECK_FALSE(is_successful(g, sys, 1));
  g.nodes[2].b = 2;
  CHECK_FALSE(is_successful(g, sys, 0));
  g.nodes[2].b = 3;  // bottom is an s-successor of 0 for s = 0 only
  CHECK_FALSE(is_successful(g, sys, 0));
  g.nodes[1].b = 3;
  g.nodes[2].b = 1;
  CHECK(is_successful(g, sys, 0));
  g.succ[0][1] = -1;
  CHECK_FALSE(is_successful(g, sys, 0));
}

TEST_CASE("generators act where their condition holds") {
  auto sys = SuccessorSystem::counter(2, 2);
  Perm pi = Perm::parse(6, "(0 1 2)");
  LabeledGraph g;
  g.nodes = {{0, 0}, {3, 1}, {4, 1}, {5, 3}};
  g.succ = {{1, 2}, {3, -1}, {-1, -1}, {3, 3}};

  CHECK(apply_generator({RippleKind::Gamma, Perm::identity(6)}, g, sys) == g);
  CHECK(apply_generator({RippleKind::Beta, pi, 0, 2}, g, sys) == g);

  std::vector<int> successful;
  for (int u = 0; u < g.size(); ++u)
    if (is_successful(g, sys, u)) successful.push_back(u);
  REQUIRE(successful == std::vector<int>{0});
  auto gg = apply_generator({RippleKind::Gamma, pi}, g, sys);
  CHECK(c_values(gg) == std::vector<int>{1, 3, 4, 5});
  auto gi = apply_generator({RippleKind::Gamma, pi, 0, 0, true}, g, sys);
  CHECK(c_values(gi) == std::vector<int>{2, 3, 4, 5});

  auto gb = apply_generator({RippleKind::Beta, pi, 0, 1}, g, sys);
  CHECK(c_values(gb) == std::vector<int>{0, 3, 4, 5});  // 3 and 4 are fixed by pi
  auto gb2 = apply_generator({RippleKind::Beta, Perm::parse(6, "(3 4 5)"), 0, 1}, g, sys);
  CHECK(c_values(gb2) == std::vector<int>{0, 4, 5, 5});

  // phi with c = 5: node 1 (successor 3 has C 5), node 2 (no successors), node 3 (self loops, C 5)
  auto gp = apply_generator({RippleKind::Phi, pi, 5}, g, sys);
  CHECK(c_values(gp) == std::vector<int>{0, 3, 4, 5});
  auto gp2 = apply_generator({RippleKind::Phi, Perm::parse(6, "(0 3 4)"), 5}, g, sys);
  CHECK(c_values(gp2) == std::vector<int>{0, 4, 0, 5});

  CHECK_THROWS(apply_generator({RippleKind::Phi, pi, 1}, g, sys));
  CHECK_THROWS(apply_generator({RippleKind::Gamma, Perm::parse(5, "(0 1 2)")}, g, sys));
}

TEST_CASE("generator order divides the permutation order") {
  auto sys = SuccessorSystem::counter(2, 2);
  std::mt19937_64 rng(5);
  std::vector<Perm> perms = {Perm::parse(6, "(0 1 2)"), Perm::parse(6, "(0 1 2 3 4)"), Perm::parse(6, "(0 1)(2 3)"),
                             Perm::parse(6, "(0 1 2)(3 4 5)")};
  for (int trial = 0; trial < 200; ++trial) {
    auto g = random_graph(rng, 8, 2, 6, sys, 1, trial % 6);
    for (const auto& p : perms) {
      if (!p.is_even()) continue;
      int c = p.moves(5) ? -1 : 5;
      std::vector<RippleGen> gens = {{RippleKind::Gamma, p}, {RippleKind::Beta, p, 0, trial % 3}};
      if (c >= 0) gens.push_back({RippleKind::Phi, p, c});
      for (const auto& gen : gens) {
        auto out = apply_generator(gen, g, sys);
        CHECK(out.same_shape_and_b(g));
        CHECK(p.order() % orbit_length(gen, g, sys) == 0);
      }
    }
  }
}

TEST_CASE("gamma_rank matches its direct semantics on all small graphs") {
  auto sys = SuccessorSystem::counter(2, 2);
  for (const char* text : {"(0 1 2)", "(0 1)(2 3)", "(0 1 2 3 4)"}) {
    Perm pi = Perm::parse(6, text);
    for (int ell = 0; ell <= 2; ++ell) {
      CompiledRipple w(build_gamma_rank(pi, ell));
      long long bad = 0;
      for (int N = 1; N <= 2; ++N)
        for_each_good_graph(N, 2, 6, sys.b_size, [&](const LabeledGraph& g) {
          if (w.apply(g, sys) != gamma_rank_reference(pi, ell, g, sys)) ++bad;
          return true;
        });
      CHECK(bad == 0);
    }
  }
  CHECK(build_gamma_rank(Perm::identity(6), 1).size() == 0);
}

TEST_CASE("psi matches its direct semantics") {
  auto sys = SuccessorSystem::counter(2, 2);
  std::mt19937_64 rng(11);
  struct Case {
    const char* pi;
    int c;
  };
  // c outside the support, c inside with a fixed point, and a fixed-point-free pi
  std::vector<Case> cases = {{"(0 1 2)", 5}, {"(0 1 2)", 0}, {"(0 1)(2 3)", 3}, {"(0 1 2 3 4)", 2},
                             {"(0 1 2)(3 4 5)", 4}, {"(1 2 3 4 5)", 0}};
  for (const auto& cs : cases) {
    Perm pi = Perm::parse(6, cs.pi);
    for (int ell = 0; ell <= 2; ++ell) {
      auto word = build_psi(pi, ell, cs.c);
      CompiledRipple w(word);
      long long bad = 0;
      for (int N = 1; N <= 2; ++N)
        for_each_good_graph(N, 2, 6, sys.b_size, [&](const LabeledGraph& g) {
          if (w.apply(g, sys) != psi_reference(pi, ell, cs.c, g, sys)) ++bad;
          return true;
        });
      for (int t = 0; t < 200; ++t) {
        auto g = random_graph(rng, 12, 2, 6, sys, 1, t % 2 == 0 ? cs.c : 0);
        auto out = w.apply(g, sys);
        CHECK(out.same_shape_and_b(g));
        if (out != psi_reference(pi, ell, cs.c, g, sys)) ++bad;
      }
      CHECK_MESSAGE(bad == 0, cs.pi, " c=", cs.c, " ell=", ell);
    }
  }
}

TEST_CASE("psi on a hand-built qualifying node") {
  auto sys = SuccessorSystem::counter(2, 2);
  Perm pi = Perm::parse(6, "(0 1 2)");
  auto g = binary_cone(1, 4);
  g.nodes[1].c = g.nodes[2].c = 1;
  for (int c : {0, 1}) {
    auto out = apply_word(build_psi(pi, 0, c), g, sys);
    auto want = g;
    if (c == 1) want.nodes[0].c = pi(4);
    CHECK(out == want);
  }
  // no rank-2 node
  CHECK(apply_word(build_psi(pi, 2, 1), g, sys) == g);
}

TEST_CASE("catcher examples") {
  auto sys = SuccessorSystem::counter(2, 2);
  Perm pi = Perm::parse(6, "(0 1 2)");
  auto w = build_catcher(2, pi);
  CompiledRipple cw(w);

  CHECK(cw.apply(LabeledGraph{}, sys).size() == 0);
  LabeledGraph single;
  single.nodes = {{0, 0}};
  single.succ = {{-1, -1}};
  CHECK(cw.apply(single, sys) == single);

  auto cone = binary_cone(2, 1);
  auto out = cw.apply(cone, sys);
  auto want = cone;
  want.nodes[0].c = 2;
  CHECK(out == want);
  CHECK(out == oracle_catcher(2, pi, cone, sys));

  for (int v = 1; v < cone.size(); ++v) {
    auto bad = cone;
    bad.nodes[v].c = 1 + v % 5;
    CHECK(cw.apply(bad, sys) == bad);
  }
  auto cut = cone;
  cut.succ[2][1] = -1;
  CHECK(cw.apply(cut, sys) == cut);

  // two disjoint cones
  LabeledGraph two = cone;
  int off = two.size();
  for (int v = 0; v < cone.size(); ++v) {
    auto row = cone.succ[v];
    for (int& x : row)
      if (x >= 0) x += off;
    two.nodes.push_back(cone.nodes[v]);
    two.succ.push_back(row);
  }
  two.nodes[off].c = 2;
  auto want2 = two;
  want2.nodes[0].c = 2;
  want2.nodes[off].c = 0;
  CHECK(oracle_catcher(2, pi, two, sys) == want2);
  CHECK(cw.apply(two, sys) == want2);

  CHECK_THROWS(build_catcher(2, Perm::identity(6)));
  CHECK_THROWS(build_catcher(2, Perm::parse(5, "(0 1 2)")));
}

TEST_CASE("catcher matches the oracle on small and random graphs") {
  auto sys = SuccessorSystem::counter(2, 3);
  Perm pi = Perm::parse(6, "(0 1 2 3 4)");
  for (int n = 1; n <= 2; ++n) {
    CompiledRipple w(build_catcher(n, pi));
    long long bad = 0, fired = 0;
    for (int N = 1; N <= 2; ++N)
      for_each_good_graph(N, 2, 6, sys.b_size, [&](const LabeledGraph& g) {
        auto want = oracle_catcher(n, pi, g, sys);
        if (want != g) ++fired;
        if (w.apply(g, sys) != want) ++bad;
        return true;
      });
    for_each_good_graph(3, 2, 2, 3, [&](const LabeledGraph& g) {
      auto want = oracle_catcher(n, pi, g, sys);
      if (want != g) ++fired;
      if (w.apply(g, sys) != want) ++bad;
      return true;
    });
    std::mt19937_64 rng(n);
    for (int t = 0; t < 500; ++t) {
      auto g = random_graph(rng, 15, 2, 6, sys, n);
      auto want = oracle_catcher(n, pi, g, sys);
      if (want != g) ++fired;
      if (w.apply(g, sys) != want) ++bad;
    }
    CHECK(bad == 0);
    CHECK(fired > 20);
  }
}

TEST_CASE("catcher length is affine in n") {
  Perm pi = Perm::parse(6, "(0 1 2)");
  std::vector<long long> len;
  for (int n = 1; n <= 8; ++n) len.push_back(static_cast<long long>(build_catcher(n, pi).size()));
  for (int n = 2; n <= 8; ++n) CHECK(len[n - 1] - len[n - 2] == 144);
}

TEST_CASE("graph enumeration counts") {
  CHECK(good_graph_count(2, 2, 6, 4) == 81LL * 24 * 24);
  long long seen = for_each_good_graph(2, 2, 6, 4, [](const LabeledGraph&) { return true; });
  CHECK(seen == 81LL * 24 * 24);
  long long stop = for_each_good_graph(3, 2, 6, 4, [n = 0](const LabeledGraph&) mutable { return ++n < 10; });
  CHECK(stop == 10);
  CHECK(good_graph_count(6, 2, 6, 4) > 1'000'000'000'000LL);
}
