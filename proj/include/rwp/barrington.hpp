#pragma once

#include <cstdint>
#include <vector>

#include "rwp/formula.hpp"
#include "rwp/perm.hpp"

namespace rwp {

// Control words of length n; position i ranges over [0, radix[i]).
struct ControlSpace {
  std::vector<int> radix;

  static ControlSpace uniform(int n, int alphabet);
  int n() const { return static_cast<int>(radix.size()); }
  int max_radix() const;
  // Number of control words, or -1 on overflow of 2^62.
  long long count() const;
  std::vector<int> decode(long long index) const;
  long long encode(const std::vector<int>& u) const;
};

struct ControlledState {
  int c = 0;
  std::vector<int> u;
  bool operator==(const ControlledState& o) const { return c == o.c && u == o.u; }
};

// pi_{symbol, position}; `perm` indexes the owning word's permutation pool.
struct CPGenerator {
  int32_t perm = 0;
  int32_t symbol = 0;
  int32_t position = 0;
  bool inverted = false;
};

class PermWord {
 public:
  PermWord() = default;
  PermWord(int c_size, ControlSpace space);

  int c_size() const { return c_size_; }
  const ControlSpace& space() const { return space_; }
  size_t length() const { return gens_.size(); }
  bool empty() const { return gens_.empty(); }
  const std::vector<CPGenerator>& gens() const { return gens_; }
  const Perm& perm(int id) const { return perms_[id]; }
  Perm perm_of(const CPGenerator& g) const;
  int pool_size() const { return static_cast<int>(perms_.size()); }

  int intern(const Perm& p);
  void push(const Perm& p, int symbol, int position, bool inverted = false);
  void push_id(int perm_id, int symbol, int position, bool inverted = false);
  // Appends w (or its formal inverse) to this word.
  void append(const PermWord& w, bool inverted = false);
  // Reversed order with flipped flags.
  PermWord inverse() const;

  // Image of c under generator g for control u, using the cached tables.
  int apply(const CPGenerator& g, int c, const std::vector<int>& u) const {
    if (u[g.position] != g.symbol) return c;
    return (g.inverted ? inv_ : img_)[static_cast<size_t>(g.perm) * c_size_ + c];
  }
  // Images of every c in one pass.
  std::vector<int> images(const std::vector<int>& u) const;

 private:
  int c_size_ = 0;
  ControlSpace space_;
  std::vector<Perm> perms_;
  std::vector<int> img_, inv_;
  std::vector<CPGenerator> gens_;
};

ControlledState eval_generator(const PermWord& w, const CPGenerator& g, const ControlledState& s);
// Index-0 generator is outermost, so generators are applied from the back.
ControlledState eval_word(const PermWord& w, const ControlledState& s);
int eval_word_c(const PermWord& w, int c, const std::vector<int>& u);
// Image table of the whole word for control u.
std::vector<int> eval_word_table(const PermWord& w, const std::vector<int>& u);

// pi_{a,0} for every a: exactly one fires on any control word.
PermWord word_unconditional(const Perm& p, const ControlSpace& space);
// Word realizing p|{u : f(u)}. Requires p even and |C| >= 5.
PermWord compile(const Perm& p, const Formula& f, const ControlSpace& space);

// Full table of a map on C x control words, indexed c + |C| * encode(u).
using StateTable = std::vector<int32_t>;
StateTable brute_oracle(const Perm& p, const Formula& f, const ControlSpace& space, long long budget = 50'000'000);
StateTable word_table(const PermWord& w, long long budget = 50'000'000);

inline long long word_length(const PermWord& w) { return static_cast<long long>(w.length()); }
// (6 + |Actrl|)^(depth + 1), saturating.
long long length_envelope(int depth, int alphabet);

}  // namespace rwp
