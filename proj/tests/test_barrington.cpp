#include <random>

#include "doctest.h"
#include "rwp/barrington.hpp"
#include "rwp/formula_library.hpp"

using namespace rwp;

namespace {

Formula random_formula(int depth, int n, int alphabet, std::mt19937_64& rng) {
  if (depth == 0 || rng() % 4 == 0) return atom(static_cast<int>(rng() % n), static_cast<int>(rng() % alphabet));
  switch (rng() % 3) {
    case 0: return f_and(random_formula(depth - 1, n, alphabet, rng), random_formula(depth - 1, n, alphabet, rng));
    case 1: return f_or(random_formula(depth - 1, n, alphabet, rng), random_formula(depth - 1, n, alphabet, rng));
    default: return f_not(random_formula(depth - 1, n, alphabet, rng));
  }
}

// Satisfying set of f by enumeration.
std::vector<std::vector<int>> models(const Formula& f, const ControlSpace& sp) {
  std::vector<std::vector<int>> out;
  for (long long i = 0; i < sp.count(); ++i) {
    auto u = sp.decode(i);
    if (eval(f, u)) out.push_back(u);
  }
  return out;
}

}  // namespace

TEST_CASE("generator evaluation") {
  ControlSpace sp = ControlSpace::uniform(2, 2);  // x = 0, y = 1
  PermWord w(5, sp);
  w.push(Perm::parse(5, "(0 1)"), 0, 0);
  auto s = eval_generator(w, w.gens()[0], {0, {0, 1}});
  CHECK(s.c == 1);
  CHECK(s.u == std::vector<int>{0, 1});
  auto t = eval_generator(w, w.gens()[0], {0, {1, 0}});
  CHECK(t.c == 0);
  PermWord id(5, sp);
  id.push(Perm::identity(5), 1, 1);
  CHECK(eval_generator(id, id.gens()[0], {3, {1, 1}}).c == 3);
  CHECK_THROWS(eval_generator(w, w.gens()[0], {0, {0}}));
}

TEST_CASE("word evaluation order and formal inverse") {
  ControlSpace sp = ControlSpace::uniform(2, 2);
  PermWord w(5, sp);
  CHECK(eval_word(w, {2, {0, 1}}).c == 2);
  Perm a = Perm::parse(5, "(0 1 2)"), b = Perm::parse(5, "(2 3 4)");
  w.push(a, 0, 0);
  w.push(b, 1, 1);
  // b first (control 1 at 1), then a (control 0 at 0).
  int c = 2;
  c = b(c);
  c = a(c);
  CHECK(eval_word(w, {2, {0, 1}}).c == c);
  PermWord both = w;
  both.append(w.inverse());
  for (long long i = 0; i < sp.count(); ++i)
    for (int x = 0; x < 5; ++x) CHECK(eval_word(both, {x, sp.decode(i)}).c == x);
}

TEST_CASE("unconditional word") {
  Perm p = Perm::parse(5, "(0 1 2)");
  ControlSpace sp = ControlSpace::uniform(3, 2);
  PermWord w = word_unconditional(p, sp);
  CHECK(w.length() == 2);
  for (long long i = 0; i < sp.count(); ++i)
    for (int c = 0; c < 5; ++c) CHECK(eval_word(w, {c, sp.decode(i)}).c == p(c));
  ControlSpace sp3 = ControlSpace::uniform(1, 3);
  PermWord w3 = word_unconditional(p, sp3);
  CHECK(w3.length() == 3);
  for (int u = 0; u < 3; ++u) CHECK(eval_word(w3, {0, {u}}).c == 1);
  CHECK(word_unconditional(Perm::identity(5), sp).empty());
}

TEST_CASE("compile: atoms, tautology, conjunction") {
  Perm p = Perm::parse(5, "(0 1 2)");
  ControlSpace sp = ControlSpace::uniform(2, 2);
  PermWord a = compile(p, atom(1, 0), sp);
  REQUIRE(a.length() == 1);
  CHECK(a.gens()[0].position == 1);
  CHECK(a.gens()[0].symbol == 0);
  CHECK(a.perm_of(a.gens()[0]) == p);
  PermWord taut = compile(p, f_or(atom(0, 1), f_not(atom(0, 1))), sp);
  for (long long i = 0; i < sp.count(); ++i)
    for (int c = 0; c < 5; ++c) CHECK(eval_word(taut, {c, sp.decode(i)}).c == p(c));
  Formula conj = f_and(atom(0, 1), atom(1, 0));
  PermWord w = compile(p, conj, sp);
  CHECK(w.length() == 4);
  int acting = 0;
  for (long long i = 0; i < sp.count(); ++i) acting += eval_word(w, {0, sp.decode(i)}).c != 0;
  CHECK(acting == 1);
  CHECK(word_table(w) == brute_oracle(p, conj, sp));
  CHECK_THROWS(compile(Perm::parse(5, "(0 1)"), conj, sp));
  CHECK_THROWS(compile(Perm::parse(4, "(0 1 2)"), conj, sp));
}

TEST_CASE("brute oracle basics") {
  Perm p = Perm::parse(5, "(0 1 2)");
  ControlSpace sp = ControlSpace::uniform(3, 2);
  StateTable id(5 * 8);
  for (int i = 0; i < 40; ++i) id[i] = i;
  CHECK(brute_oracle(p, f_and(atom(0, 0), atom(0, 1)), sp) == id);
  PermWord g(5, sp);
  g.push(p, 1, 2);
  CHECK(brute_oracle(p, atom(2, 1), sp) == word_table(g));
  CHECK_THROWS(brute_oracle(p, atom(0, 0), ControlSpace::uniform(30, 2), 1000));
}

TEST_CASE("compile equals brute oracle on random formulas") {
  std::mt19937_64 rng(11);
  for (int alphabet : {2, 3}) {
    ControlSpace sp = ControlSpace::uniform(3, alphabet);
    for (const char* ps : {"(0 1 2)", "(0 1)(2 3)", "(0 1 2 3 4)"}) {
      Perm p = Perm::parse(5, ps);
      for (int i = 0; i < 60; ++i) {
        Formula f = random_formula(3, 3, alphabet, rng);
        PermWord w = compile(p, f, sp);
        REQUIRE(word_table(w) == brute_oracle(p, f, sp));
        CHECK(word_length(w) <= length_envelope(depth(f), alphabet));
      }
    }
  }
}

TEST_CASE("compile on six points and mixed radices") {
  std::mt19937_64 rng(12);
  ControlSpace sp{{2, 3, 4}};
  Perm p = Perm::parse(6, "(0 1 2)(3 4 5)");
  for (int i = 0; i < 40; ++i) {
    Formula f = random_formula(3, 3, 2, rng);
    CHECK(word_table(compile(p, f, sp)) == brute_oracle(p, f, sp));
  }
  CHECK_THROWS(compile(p, atom(0, 3), sp));
}

TEST_CASE("formula text round trip") {
  std::vector<std::string> names{"a", "b", "#"};
  Formula f = parse_formula("(and (atom 0 a) (not (atom 3 #)))", names);
  CHECK(to_sexpr(f, names) == "(and (atom 0 a) (not (atom 3 #)))");
  CHECK(eval(f, {0, 1, 1, 1}));
  CHECK_FALSE(eval(f, {0, 1, 1, 2}));
  CHECK(depth(f) == 2);
  CHECK(depth(parse_formula("(or (atom 0 1) (atom 1 0) (atom 2 1))")) == 2);
  CHECK_THROWS(parse_formula("(xor (atom 0 1))"));
  CHECK_THROWS(parse_formula("(atom 0 z)", names));
}

TEST_CASE("fixed word formula") {
  CHECK(formula_fixed_word({1})->op == Op::Atom);
  Formula ab = formula_fixed_word({0, 1});
  CHECK(ab->op == Op::And);
  std::vector<int> u{1, 0, 0, 1, 1, 1, 0, 1};
  Formula f = formula_fixed_word(u);
  CHECK(depth(f) == 3);
  auto ms = models(f, ControlSpace::uniform(8, 2));
  REQUIRE(ms.size() == 1);
  CHECK(ms[0] == u);
}

TEST_CASE("binary increment formula") {
  Formula f2 = formula_binary_increment(2);
  CHECK(eval(f2, {1, 0, 0, 1}));
  CHECK_FALSE(eval(f2, {1, 1, 0, 0}));
  for (int m : {1, 2, 3, 4}) {
    ControlSpace sp = ControlSpace::uniform(2 * m, 2);
    std::vector<std::vector<int>> expect;
    for (int n = 0; n + 1 < (1 << m); ++n) {
      std::vector<int> w;
      for (int i = 0; i < m; ++i) w.push_back((n >> i) & 1);
      for (int i = 0; i < m; ++i) w.push_back(((n + 1) >> i) & 1);
      expect.push_back(w);
    }
    auto got = models(formula_binary_increment(m), sp);
    std::sort(got.begin(), got.end());
    std::sort(expect.begin(), expect.end());
    CHECK(got == expect);
  }
}

TEST_CASE("unary increment and tail append formulas") {
  for (int m : {1, 2, 3, 4, 5}) {
    ControlSpace sp = ControlSpace::uniform(2 * m + 1, 3);
    std::vector<std::vector<int>> expect;
    for (int n = 0; n < m; ++n) {
      std::vector<int> w;
      for (int i = 0; i < m; ++i) w.push_back(i < n ? 0 : 1);
      w.push_back(2);
      for (int i = 0; i < m; ++i) w.push_back(i < n + 1 ? 0 : 1);
      expect.push_back(w);
    }
    auto got = models(formula_unary_increment(m), sp);
    std::sort(got.begin(), got.end());
    std::sort(expect.begin(), expect.end());
    CHECK(got == expect);
  }
  for (int a : {0, 1})
    for (int n : {1, 2, 3, 4}) {
      ControlSpace sp = ControlSpace::uniform(2 * n + 1, 4);
      std::vector<std::vector<int>> expect;
      for (int k = 1; k <= n; ++k) {
        int len = n - k;
        for (int bits = 0; bits < (1 << len); ++bits) {
          std::vector<int> w;
          for (int i = 0; i < len; ++i) w.push_back((bits >> i) & 1);
          std::vector<int> left = w, right = w;
          for (int i = 0; i < k; ++i) left.push_back(2);
          right.push_back(a);
          for (int i = 1; i < k; ++i) right.push_back(2);
          left.push_back(3);
          left.insert(left.end(), right.begin(), right.end());
          expect.push_back(left);
        }
      }
      auto got = models(formula_tail_append(a, n), sp);
      std::sort(got.begin(), got.end());
      std::sort(expect.begin(), expect.end());
      CHECK(got == expect);
    }
}

TEST_CASE("sum formula") {
  auto ms = models(formula_sum(2, 1, 1), ControlSpace::uniform(2, 2));
  std::sort(ms.begin(), ms.end());
  CHECK(ms == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
  CHECK(models(formula_sum(3, 2, 0), ControlSpace::uniform(6, 2)) == std::vector<std::vector<int>>{{0, 0, 0, 0, 0, 0}});
  CHECK(formula_sum(2, 2, 7)->op == Op::False);
  for (int d : {2, 3, 4})
    for (int m : {1, 2, 3}) {
      if (d * m > 12) continue;
      ControlSpace sp = ControlSpace::uniform(d * m, 2);
      for (long long ell = 0; ell <= d * ((1 << m) - 1); ++ell) {
        Formula f = formula_sum(d, m, ell);
        for (long long i = 0; i < sp.count(); ++i) {
          auto u = sp.decode(i);
          long long s = 0;
          for (int j = 0; j < d; ++j)
            for (int b = 0; b < m; ++b) s += static_cast<long long>(u[j * m + b]) << b;
          REQUIRE(eval(f, u) == (s == ell));
        }
      }
    }
}

TEST_CASE("restriction calculus") {
  std::mt19937_64 rng(13);
  ControlSpace sp = ControlSpace::uniform(3, 2);
  auto a5 = alternating_group(5);
  for (int i = 0; i < 50; ++i) {
    Formula X = random_formula(2, 3, 2, rng), Y = random_formula(2, 3, 2, rng);
    Perm p1 = a5[rng() % a5.size()], p2 = a5[rng() % a5.size()];
    PermWord wx = compile(p1, X, sp), wy = compile(p2, Y, sp);
    PermWord comm(5, sp);
    comm.append(wx, true);
    comm.append(wy, true);
    comm.append(wx);
    comm.append(wy);
    CHECK(word_table(comm) == brute_oracle(commutator(p1, p2), f_and(X, Y), sp));
    CHECK(word_table(wx.inverse()) == brute_oracle(p1.inverse(), X, sp));
  }
}
