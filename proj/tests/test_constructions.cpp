#include <doctest.h>

#include <random>

#include "rwp/constructions.hpp"

using namespace rwp;

namespace {

PeriodicPoint blank_point(const ZdLayout& L, std::vector<int> periods) {
  PeriodicPoint x;
  x.periods = std::move(periods);
  int cells = 1;
  for (int p : x.periods) cells *= p;
  x.values.assign(cells, L.tracks.encode({0, 0}));
  return x;
}

void set_c(const ZdLayout& L, PeriodicPoint& x, const std::vector<int>& v, int c) {
  set_cell(x, v, L.tracks.set(cell(x, v), L.c_track, c));
}

int get_c(const ZdLayout& L, const PeriodicPoint& x, const std::vector<int>& v) {
  return L.tracks.get(cell(x, v), L.c_track);
}

PeriodicPoint random_point(std::mt19937_64& rng, const ZdLayout& L) {
  std::uniform_int_distribution<int> p0(3, 7), p1(2, 4), coin(0, 1);
  PeriodicPoint x = blank_point(L, {p0(rng), p1(rng)});
  std::uniform_int_distribution<int> cdist(0, L.tracks.radix[L.c_track] - 1), bdist(0, L.tracks.radix[L.b_track] - 1);
  std::bernoulli_distribution zero(0.7);
  for (int& s : x.values) s = L.tracks.encode({zero(rng) ? 0 : cdist(rng), bdist(rng)});
  if (coin(rng)) {
    std::uniform_int_distribution<int> a(0, x.periods[0] - 1), b(0, x.periods[1] - 1);
    std::vector<int> v{a(rng), b(rng)};
    lay_cone(L, x, v, L.n);
    for (int j = 1; j <= L.n; ++j) set_c(L, x, {v[0] + j, v[1]}, 0);
    if (coin(rng)) {
      // one perturbation somewhere on the cone
      std::uniform_int_distribution<int> cj(0, L.n), cr(0, L.k);
      std::vector<int> p{v[0] + cj(rng), v[1] + cr(rng)};
      set_cell(x, p, L.tracks.encode({cdist(rng), bdist(rng)}));
    }
  }
  return x;
}

// Classes of the word tree quotient by transitive closure of the identifying pairs.
std::vector<std::vector<char>> naive_classes(const Thicket& t, const std::vector<std::vector<int>>& U) {
  const int N = static_cast<int>(t.words.size());
  std::vector<std::vector<char>> rel(N, std::vector<char>(N, 0));
  for (int i = 0; i < N; ++i) rel[i][i] = 1;
  for (const auto& u : U)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        const auto &x = t.words[i], &y = t.words[j];
        if (x.size() != y.size() || x.size() <= u.size()) continue;
        bool ok = std::equal(u.begin(), u.end(), x.begin()) && std::equal(u.begin(), u.end(), y.begin());
        for (size_t p = u.size() + 1; p < x.size(); ++p) ok = ok && x[p] == y[p];
        if (ok) rel[i][j] = 1;
      }
  for (int m = 0; m < N; ++m)
    for (int i = 0; i < N; ++i)
      if (rel[i][m])
        for (int j = 0; j < N; ++j)
          if (rel[m][j]) rel[i][j] = 1;
  return rel;
}

}  // namespace

TEST_CASE("index reading on Z^2") {
  ZdLayout L = zd_layout(1, 1);
  CHECK(L.n == 2);
  PeriodicPoint x = blank_point(L, {4, 3});
  CHECK(index_at(L, x, {0, 0}) == std::vector<int>{0});
  set_cell(x, {1, 0}, L.tracks.encode({0, 1}));
  CHECK(index_at(L, x, {1, 0}) == std::vector<int>{1});
  set_cell(x, {2, 1}, L.tracks.encode({0, 1}));
  CHECK(index_at(L, x, {2, 0}) == std::vector<int>{2});
  CHECK(index_at(L, x, {2, 1}) == std::vector<int>{1});
  set_cell(x, {3, 0}, L.tracks.encode({0, 1}));
  set_cell(x, {3, 1}, L.tracks.encode({0, 1}));
  CHECK_FALSE(index_at(L, x, {3, 0}));
  // coordinates wrap around the periods
  CHECK(index_at(L, x, {-3, 0}) == std::vector<int>{1});
  CHECK_THROWS(index_at(L, x, {0}));
  CHECK_THROWS(index_at(L, blank_point(L, {4}), {0, 0}));
}

TEST_CASE("geometric cones and laying them") {
  CHECK(geometric_cone(1, 2) == std::vector<std::vector<int>>{{0}, {1}, {2}});
  CHECK(geometric_cone(2, 1) == std::vector<std::vector<int>>{{0, 0}, {0, 1}, {1, 0}});
  CHECK(geometric_cone(3, 2).size() == 10);
  for (int d : {1, 2})
    for (int k : {1, 2}) {
      ZdLayout L = zd_layout(d, k);
      std::vector<int> periods(d, 2 * L.n + 1);
      periods.push_back(k + 2);
      PeriodicPoint x = blank_point(L, periods);
      std::vector<int> v(d + 1, 1);
      lay_cone(L, x, v, L.n);
      CHECK(is_self_indexing(L, x, v, L.n));
      auto roots = zd_catcher_roots(L, x);
      CHECK(std::find(roots.begin(), roots.end(), v) != roots.end());
    }
}

TEST_CASE("self-indexing cones never overlap") {
  ZdLayout L = zd_layout(1, 1);
  const std::vector<int> periods{5, 2};
  long long with_roots = 0;
  for (unsigned mask = 0; mask < (1u << 10); ++mask) {
    PeriodicPoint x = blank_point(L, periods);
    for (int i = 0; i < 10; ++i) x.values[i] = L.tracks.encode({0, static_cast<int>((mask >> i) & 1)});
    std::map<std::vector<int>, std::vector<int>> owner;
    bool clash = false;
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 2; ++b) {
        if (!is_self_indexing(L, x, {a, b}, L.n)) continue;
        ++with_roots;
        for (int j = 0; j <= L.n; ++j) {
          std::vector<int> cellpos{(a + j) % 5, b};
          auto [it, fresh] = owner.emplace(cellpos, std::vector<int>{a, b});
          if (!fresh) clash = true;
        }
      }
    CHECK_FALSE(clash);
  }
  CHECK(with_roots > 0);
}

TEST_CASE("Z^2 catcher on crafted configurations") {
  Perm pi = Perm::cycle(6, {0, 1, 2});
  ZdCatcher z = build_zd_catcher(1, 1, pi);
  const ZdLayout& L = z.layout;
  CHECK(z.distinct_blocks > 0);
  CHECK_THROWS(build_zd_catcher(2, 1, pi));

  PeriodicPoint x = blank_point(L, {5, 3});
  lay_cone(L, x, {1, 0}, L.n);
  set_c(L, x, {1, 0}, 1);

  SUBCASE("positive") {
    auto y = apply_zd_catcher(z, x);
    CHECK(get_c(L, y, {1, 0}) == 2);
    CHECK(y == zd_catcher_reference(L, pi, x));
    for (size_t i = 0; i < y.values.size(); ++i)
      if (i != 1) CHECK(y.values[i] == x.values[i]);
  }
  SUBCASE("nonzero C below the root") {
    set_c(L, x, {3, 0}, 4);
    CHECK(apply_zd_catcher(z, x) == x);
  }
  SUBCASE("broken index") {
    set_cell(x, {2, 0}, L.tracks.encode({0, 0}));
    CHECK(apply_zd_catcher(z, x) == x);
  }
  SUBCASE("period too short for the cone") {
    PeriodicPoint w = blank_point(L, {2, 3});
    lay_cone(L, w, {0, 0}, L.n);
    CHECK(zd_catcher_roots(L, w).empty());
    CHECK(apply_zd_catcher(z, w) == w);
  }
}

TEST_CASE("Z^2 catcher equals its reference on random configurations") {
  Perm pi = Perm::cycle(6, {0, 1, 2});
  ZdCatcher z = build_zd_catcher(1, 1, pi);
  std::mt19937_64 rng(2024);
  int fired = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto x = random_point(rng, z.layout);
    auto want = zd_catcher_reference(z.layout, pi, x);
    auto got = apply_zd_catcher(z, x);
    CHECK(got == want);
    fired += got != x;
    if (trial < 3) CHECK(apply_zd_catcher(z, x, BlockMode::Flat) == got);
  }
  CHECK(fired > 20);
}

TEST_CASE("lamplighter grids") {
  for (int n = 1; n <= 3; ++n) {
    auto r = check_grid(n);
    CHECK(r.commute);
    CHECK(r.injective);
    CHECK(r.zero_shift);
    CHECK(r.pairs == (long long)(1 << (2 * n)) * ((1 << (2 * n)) - 1) / 2);
  }
  Group L = Group::lamplighter(2, 1);
  CHECK(grid_element(L, L.identity(), 2, 0, 0) == L.identity());
  CHECK(grid_element(L, L.identity(), 1, 1, 0) == L.word("Ab"));
  CHECK_THROWS(grid_element(Group::zd(1), Group::zd(1).identity(), 1, 0, 0));
  CHECK_THROWS(grid_element(L, L.identity(), 2, 4, 0));
}

TEST_CASE("thickets: examples") {
  auto free_tree = build_thicket(3, 2, {});
  CHECK(free_tree.num_classes() == 15);
  for (int c : branching_counts(free_tree)) CHECK(c == 3);
  CHECK(is_thicket(free_tree, 3));
  CHECK_FALSE(is_thicket(free_tree, 4));

  auto t = build_thicket(2, 2, {{}});
  CHECK(t.cls[t.index_of({0})] == t.cls[t.index_of({1})]);
  CHECK(t.cls[t.index_of({0, 1})] == t.cls[t.index_of({1, 1})]);
  CHECK(t.cls[t.index_of({0, 0})] != t.cls[t.index_of({0, 1})]);
  for (int c : branching_counts(t)) CHECK(c == 1);
  CHECK(is_thicket(t, 1));
  CHECK_FALSE(is_thicket(t, 2));
  CHECK(t.index_of({0, 0, 0}) == -1);
  CHECK_THROWS(build_thicket(2, 2, {{3}}));
}

TEST_CASE("thickets agree with a transitive-closure oracle") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 80; ++trial) {
    int s = 2 + trial % 2, k = 2 + trial % 3;
    std::uniform_int_distribution<int> cnt(0, 3), len(0, k - 1), let(0, s - 1);
    std::vector<std::vector<int>> U(cnt(rng));
    for (auto& u : U) {
      u.resize(len(rng));
      for (int& a : u) a = let(rng);
    }
    auto t = build_thicket(k, s, U);
    auto rel = naive_classes(t, U);
    for (size_t i = 0; i < t.words.size(); ++i)
      for (size_t j = 0; j < t.words.size(); ++j) CHECK((t.cls[i] == t.cls[j]) == (rel[i][j] != 0));
    // branching counts by direct recount
    auto counts = branching_counts(t);
    size_t leaf = 0;
    for (size_t i = 0; i < t.words.size(); ++i) {
      if (static_cast<int>(t.words[i].size()) != k) continue;
      int c = 0;
      for (int l = 0; l < k; ++l) {
        std::vector<int> p(t.words[i].begin(), t.words[i].begin() + l);
        bool all_distinct = true;
        for (int a = 0; a < s; ++a)
          for (int b = a + 1; b < s; ++b) {
            auto x = p, y = p;
            x.push_back(a);
            y.push_back(b);
            if (rel[t.index_of(x)][t.index_of(y)]) all_distinct = false;
          }
        c += all_distinct;
      }
      CHECK(counts[leaf++] == c);
    }
  }
}

TEST_CASE("tree regions are actions of F_3") {
  auto R = tree_region(2);
  CHECK(R.X.size() == 7 * 2);
  Group G = Group::free(3);
  for (const char* g : {"a", "b", "c"}) {
    const auto& f = R.X.right_mult(G.word(g));
    const auto& b = R.X.right_mult(G.inverse(G.word(g)));
    for (int p = 0; p < R.X.size(); ++p) CHECK(b[f[p]] == p);
  }
  CHECK(R.X.move(R.point.at({"", 0}), G.word("a")) == R.point.at({"a", 0}));
  CHECK(R.X.move(R.point.at({"a", 0}), G.word("b")) == R.point.at({"ab", 0}));
  CHECK(R.X.move(R.point.at({"ab", 1}), G.word("c")) == R.point.at({"ab", 0}));
}

TEST_CASE("free monoid reduction on inputs of length 2") {
  auto [t0, t1] = toy_machine_pair();
  auto R = tree_region(2);
  std::mt19937_64 rng(3);
  for (unsigned x = 0; x < 4; ++x) {
    std::vector<int> in{static_cast<int>(x & 1), static_cast<int>(x >> 1)};
    auto r = build_pspace_reduction(t0, t1, in);
    CHECK(r.layout.n == 2);
    auto v = decide_reduction(r, R);
    CHECK(v.trees > 0);
    CHECK(v.reference_agrees);
    CHECK((v.verdict == Verdict::Nontrivial) == tree_accepts(t0, t1, in));

    // the encoded accepting tree is caught at its root only
    if (auto tree = accepting_tree(t0, t1, in)) {
      auto cfg = encode_tree(r.layout, R, *tree);
      auto mg = monoid_graph(r.layout, R.X, cfg);
      auto roots = catcher_roots(2, mg.graph, mg.rank, mg.successful);
      REQUIRE(roots.size() == 1);
      CHECK(mg.point[roots[0]] == R.point.at({"", 0}));
    }

    // perturbed encodings against the reference
    auto trees = all_computation_trees(t0, t1, in);
    const auto& tr = r.layout.tracks;
    for (int trial = 0; trial < 6; ++trial) {
      auto cfg = encode_tree(r.layout, R, trees[trial % trees.size()]);
      std::uniform_int_distribution<int> pt(0, R.X.size() - 1), track(0, 2);
      for (int e = 0; e < 1 + trial % 2; ++e) {
        int p = pt(rng), t = track(rng);
        cfg[p] = tr.set(cfg[p], t, std::uniform_int_distribution<int>(0, tr.radix[t] - 1)(rng));
      }
      auto got = cfg;
      apply_on_action(r.word, R.X, tr, got);
      CHECK(got == monoid_reference(r.layout, r.pi, R.X, cfg));
    }
  }
}
