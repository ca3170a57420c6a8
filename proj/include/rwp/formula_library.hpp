#pragma once

#include <utility>
#include <vector>

#include "rwp/formula.hpp"
#include "rwp/machines.hpp"

namespace rwp {

using Positions = std::vector<int>;
using SymbolSet = std::vector<int>;

// Satisfied exactly by `syms` written on `pos`; balanced conjunction.
Formula fixed_word_at(const Positions& pos, const std::vector<int>& syms);
Formula formula_fixed_word(const std::vector<int>& u);

// SUBALPHABET: every position carries a symbol from `allowed`.
Formula subalphabet(const Positions& pos, const SymbolSet& allowed);
// Every pair (w[I[k]], w[J[k]]) lies in `allowed`.
Formula pairwise(const Positions& I, const Positions& J, const std::vector<std::pair<int, int>>& allowed);
// EQ: w[I[k]] = w[J[k]] with the common value in `alphabet`.
Formula eq_words(const Positions& I, const Positions& J, const SymbolSet& alphabet);
// Exactly one position carries a symbol from `marked`, all others carry one from `plain`.
Formula exactly_one(const Positions& pos, const SymbolSet& marked, const SymbolSet& plain);

// Unary increment over symbol classes: I reads 0^k 1^(m-k), J reads 0^(k+1) 1^(m-k-1), k in [0, m).
Formula unary_increment_at(const Positions& I, const Positions& J, const SymbolSet& zero, const SymbolSet& one);
// unary_m(k) # unary_m(k+1) over {0, 1, #} = {0, 1, 2}, # at position m.
Formula formula_unary_increment(int m);
// u ?^k  ->  u a ?^(k-1) with `letters` the non-? symbols; I and J of equal length.
Formula tail_append_at(const Positions& I, const Positions& J, int a, int q_sym, const SymbolSet& letters);
// u 2^k # u a 2^(k-1) over {0, 1, 2, #} = {0, 1, 2, 3}, words of length n, # at position n.
Formula formula_tail_append(int a, int n);

// bin(k) on I and bin(k+1) on J, least significant bit first, k + 1 < 2^|I|.
Formula binary_increment_at(const Positions& I, const Positions& J, int zero, int one);
// bin_m(k) bin_m(k+1) on positions [0, 2m).
Formula formula_binary_increment(int m);

// Numbers bin(n_i) on the position lists, with sum exactly ell.
// Carry-save reduction followed by a carry-lookahead adder.
Formula sum_equals_at(const std::vector<Positions>& numbers, long long ell, int one);
// d numbers of m bits on consecutive positions.
Formula formula_sum(int d, int m, long long ell);

// BASICSTEPAT for quintuple t with the head at index i of U (and V).
Formula basic_step_at(const NDTM& m, const Quintuple& t, int i, const Positions& U, const Positions& V);
// STEP: (w[U], w[V]) is a computation step of m. IDs use ConfigAlphabet symbols.
Formula step_formula(const NDTM& m, const Positions& U, const Positions& V);
// HASHCHECK for length 2n+1 with # = ConfigAlphabet::hash() at position n.
Formula hashcheck(const NDTM& m, int n);
// u # v is a computation step; id_length = 2n + 1.
Formula formula_turing_step(const NDTM& m, int id_length);

}  // namespace rwp
