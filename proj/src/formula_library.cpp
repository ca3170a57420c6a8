#include "rwp/formula_library.hpp"

#include <stdexcept>

namespace rwp {

namespace {

Positions range(int lo, int hi) {
  Positions p;
  for (int i = lo; i < hi; ++i) p.push_back(i);
  return p;
}

std::pair<Positions, Positions> halves(const Positions& p) {
  size_t mid = (p.size() + 1) / 2;
  return {Positions(p.begin(), p.begin() + mid), Positions(p.begin() + mid, p.end())};
}

void same_length(const Positions& I, const Positions& J, const char* who) {
  if (I.size() != J.size() || I.empty()) throw std::invalid_argument(std::string(who) + ": position lists must be equal and nonempty");
}

Formula f_xor(const Formula& a, const Formula& b) { return f_or(f_and(a, f_not(b)), f_and(f_not(a), b)); }

Formula majority(const Formula& a, const Formula& b, const Formula& c) {
  return f_or(f_and(a, b), f_and(c, f_or(a, b)));
}

using Number = std::vector<Formula>;  // bits, least significant first

}  // namespace

Formula fixed_word_at(const Positions& pos, const std::vector<int>& syms) {
  if (pos.size() != syms.size()) throw std::invalid_argument("fixed_word_at: length mismatch");
  std::vector<Formula> fs;
  for (size_t i = 0; i < pos.size(); ++i) fs.push_back(atom(pos[i], syms[i]));
  return all_of(fs);
}

Formula formula_fixed_word(const std::vector<int>& u) { return fixed_word_at(range(0, static_cast<int>(u.size())), u); }

Formula subalphabet(const Positions& pos, const SymbolSet& allowed) {
  std::vector<Formula> fs;
  for (int p : pos) fs.push_back(in_set(p, allowed));
  return all_of(fs);
}

Formula pairwise(const Positions& I, const Positions& J, const std::vector<std::pair<int, int>>& allowed) {
  if (I.size() != J.size()) throw std::invalid_argument("pairwise: length mismatch");
  std::vector<Formula> fs;
  for (size_t k = 0; k < I.size(); ++k) {
    std::vector<Formula> opts;
    for (auto [x, y] : allowed) opts.push_back(f_and(atom(I[k], x), atom(J[k], y)));
    fs.push_back(any_of(opts));
  }
  return all_of(fs);
}

Formula eq_words(const Positions& I, const Positions& J, const SymbolSet& alphabet) {
  std::vector<std::pair<int, int>> diag;
  for (int x : alphabet) diag.emplace_back(x, x);
  return pairwise(I, J, diag);
}

Formula exactly_one(const Positions& pos, const SymbolSet& marked, const SymbolSet& plain) {
  if (pos.empty()) return f_false();
  if (pos.size() == 1) return in_set(pos[0], marked);
  auto [L, R] = halves(pos);
  return f_or(f_and(exactly_one(L, marked, plain), subalphabet(R, plain)),
              f_and(subalphabet(L, plain), exactly_one(R, marked, plain)));
}

Formula unary_increment_at(const Positions& I, const Positions& J, const SymbolSet& zero, const SymbolSet& one) {
  same_length(I, J, "unary_increment_at");
  if (I.size() == 1) return f_and(in_set(I[0], one), in_set(J[0], zero));
  auto [IL, IR] = halves(I);
  auto [JL, JR] = halves(J);
  Formula left_zero = all_of({subalphabet(IL, zero), subalphabet(JL, zero), unary_increment_at(IR, JR, zero, one)});
  Formula right_one = all_of({subalphabet(IR, one), subalphabet(JR, one), unary_increment_at(IL, JL, zero, one)});
  return f_or(left_zero, right_one);
}

Formula formula_unary_increment(int m) {
  if (m < 1) throw std::invalid_argument("formula_unary_increment: m must be positive");
  return f_and(atom(m, 2), unary_increment_at(range(0, m), range(m + 1, 2 * m + 1), {0}, {1}));
}

Formula tail_append_at(const Positions& I, const Positions& J, int a, int q_sym, const SymbolSet& letters) {
  same_length(I, J, "tail_append_at");
  std::vector<std::pair<int, int>> pairs;
  for (int x : letters) pairs.emplace_back(x, x);
  pairs.emplace_back(q_sym, a);
  pairs.emplace_back(q_sym, q_sym);
  return f_and(unary_increment_at(I, J, letters, {q_sym}), pairwise(I, J, pairs));
}

Formula formula_tail_append(int a, int n) {
  if (n < 1) throw std::invalid_argument("formula_tail_append: n must be positive");
  if (a != 0 && a != 1) throw std::invalid_argument("formula_tail_append: a must be 0 or 1");
  return f_and(atom(n, 3), tail_append_at(range(0, n), range(n + 1, 2 * n + 1), a, 2, {0, 1}));
}

Formula binary_increment_at(const Positions& I, const Positions& J, int zero, int one) {
  same_length(I, J, "binary_increment_at");
  if (I.size() == 1) return f_and(atom(I[0], zero), atom(J[0], one));
  auto [IL, IH] = halves(I);
  auto [JL, JH] = halves(J);
  Formula low_carry_free = f_and(eq_words(IH, JH, {zero, one}), binary_increment_at(IL, JL, zero, one));
  Formula low_overflow = all_of({subalphabet(IL, {one}), subalphabet(JL, {zero}), binary_increment_at(IH, JH, zero, one)});
  return f_or(low_carry_free, low_overflow);
}

Formula formula_binary_increment(int m) {
  if (m < 1) throw std::invalid_argument("formula_binary_increment: m must be positive");
  return binary_increment_at(range(0, m), range(m, 2 * m), 0, 1);
}

Formula sum_equals_at(const std::vector<Positions>& numbers, long long ell, int one) {
  if (numbers.empty()) throw std::invalid_argument("sum_equals_at: no numbers");
  long long max_sum = 0;
  for (const auto& p : numbers) {
    if (p.size() > 40) throw std::invalid_argument("sum_equals_at: numbers wider than 40 bits");
    max_sum += (1LL << p.size()) - 1;
  }
  if (ell < 0 || ell > max_sum) return f_false();
  int width = 1;
  while ((1LL << width) <= max_sum) ++width;
  std::vector<Number> nums;
  for (const auto& p : numbers) {
    Number x(width, f_false());
    for (size_t i = 0; i < p.size(); ++i) x[i] = atom(p[i], one);
    nums.push_back(std::move(x));
  }
  // Carry-save: three numbers become a bitwise sum and a shifted majority.
  while (nums.size() > 2) {
    std::vector<Number> next;
    size_t k = 0;
    for (; k + 3 <= nums.size(); k += 3) {
      const Number &x = nums[k], &y = nums[k + 1], &z = nums[k + 2];
      Number s(width), c(width, f_false());
      for (int i = 0; i < width; ++i) {
        s[i] = f_xor(f_xor(x[i], y[i]), z[i]);
        if (i + 1 < width) c[i + 1] = majority(x[i], y[i], z[i]);
      }
      next.push_back(std::move(s));
      next.push_back(std::move(c));
    }
    for (; k < nums.size(); ++k) next.push_back(nums[k]);
    nums = std::move(next);
  }
  Number total;
  if (nums.size() == 1) {
    total = nums[0];
  } else {
    const Number &a = nums[0], &b = nums[1];
    Number g(width), p(width);
    for (int i = 0; i < width; ++i) {
      g[i] = f_and(a[i], b[i]);
      p[i] = f_or(a[i], b[i]);
    }
    total.resize(width);
    for (int i = 0; i < width; ++i) {
      // Carry into bit i: some j < i generates and every bit strictly between propagates.
      std::vector<Formula> terms;
      for (int j = 0; j < i; ++j) {
        std::vector<Formula> conj{g[j]};
        for (int k = j + 1; k < i; ++k) conj.push_back(p[k]);
        terms.push_back(all_of(conj));
      }
      total[i] = f_xor(f_xor(a[i], b[i]), any_of(terms));
    }
  }
  std::vector<Formula> bits;
  for (int i = 0; i < width; ++i) bits.push_back((ell >> i) & 1 ? total[i] : f_not(total[i]));
  return all_of(bits);
}

Formula formula_sum(int d, int m, long long ell) {
  if (d < 2 || m < 1) throw std::invalid_argument("formula_sum: need d >= 2 and m >= 1");
  std::vector<Positions> nums;
  for (int i = 0; i < d; ++i) nums.push_back(range(i * m, (i + 1) * m));
  return sum_equals_at(nums, ell, 1);
}

Formula basic_step_at(const NDTM& m, const Quintuple& t, int i, const Positions& U, const Positions& V) {
  ConfigAlphabet ca(m);
  const int n = static_cast<int>(U.size());
  Formula here = f_and(atom(U[i], ca.head(t.q, t.s)), t.d == 0 ? atom(V[i], ca.head(t.q2, t.s2)) : atom(V[i], t.s2));
  if (t.d == 0) return here;
  int j = i + t.d;
  if (j < 0 || j >= n) return f_false();
  std::vector<Formula> opts;
  for (int a = 0; a < ca.S; ++a) opts.push_back(f_and(atom(U[j], a), atom(V[j], ca.head(t.q2, a))));
  return f_and(here, any_of(opts));
}

Formula step_formula(const NDTM& m, const Positions& U, const Positions& V) {
  same_length(U, V, "step_formula");
  ConfigAlphabet ca(m);
  SymbolSet tape;
  for (int a = 0; a < ca.S; ++a) tape.push_back(a);
  const int n = static_cast<int>(U.size());
  std::vector<Formula> cases;
  for (const auto& t : m.delta) {
    for (int i = 0; i < n; ++i) {
      Formula basic = basic_step_at(m, t, i, U, V);
      if (basic->op == Op::False) continue;
      Positions J, K;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == i + t.d) continue;
        J.push_back(U[k]);
        K.push_back(V[k]);
      }
      // Equal tape symbols off the touched cells; this also rules out a second head in u.
      cases.push_back(f_and(basic, J.empty() ? f_true() : eq_words(J, K, tape)));
    }
  }
  return any_of(cases);
}

Formula hashcheck(const NDTM& m, int n) {
  ConfigAlphabet ca(m);
  SymbolSet non_hash;
  for (int x = 0; x < ca.size(); ++x) non_hash.push_back(x);
  Positions others = range(0, n);
  for (int k = n + 1; k <= 2 * n; ++k) others.push_back(k);
  return f_and(atom(n, ca.hash()), subalphabet(others, non_hash));
}

Formula formula_turing_step(const NDTM& m, int id_length) {
  if (id_length < 3 || id_length % 2 == 0) throw std::invalid_argument("formula_turing_step: id_length must be 2n+1, n >= 1");
  const int n = id_length / 2;
  return f_and(hashcheck(m, n), step_formula(m, range(0, n), range(n + 1, 2 * n + 1)));
}

}  // namespace rwp
