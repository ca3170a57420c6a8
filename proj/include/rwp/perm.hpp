#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rwp {

// Permutation of [0, n). Products follow (p*q)(x) = p(q(x)).
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> images);

  static Perm identity(int n);
  // Cycle a0 -> a1 -> ... -> a0 on [0, n).
  static Perm cycle(int n, const std::vector<int>& pts);
  // Cycle notation "(0 1 2)(3 4)"; "()" is the identity.
  static Perm parse(int n, const std::string& text);

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int x) const { return img_[x]; }
  const std::vector<int>& images() const { return img_; }

  bool is_identity() const;
  bool is_even() const;
  bool moves(int x) const { return img_[x] != x; }
  std::vector<int> support() const;
  // Sorted cycle lengths (fixed points excluded).
  std::vector<int> cycle_type() const;
  std::vector<std::vector<int>> cycles() const;
  int order() const;

  Perm inverse() const;
  std::string str() const;

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator!=(const Perm& o) const { return img_ != o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }

 private:
  std::vector<int> img_;
};

Perm compose(const Perm& p, const Perm& q);
Perm operator*(const Perm& p, const Perm& q);
// [p, q] = p^-1 q^-1 p q.
Perm commutator(const Perm& p, const Perm& q);
// [a1, ..., ak] = [a1, [a2, ..., ak]]; a single entry is returned as is.
Perm nested_commutator(const std::vector<Perm>& ps);
// a^b = b^-1 a b.
Perm conjugate(const Perm& a, const Perm& b);

// Even permutations fixing everything outside `domain`, in lexicographic
// order of their image vectors.
std::vector<Perm> alternating_group(int n, const std::vector<int>& domain);
std::vector<Perm> alternating_group(int n);

// First pair (p1, p2) of even permutations with [p1, p2] = p, searched in
// lexicographic order. Requires p even and n >= 5. Memoized.
std::pair<Perm, Perm> ore_decompose(const Perm& p);

// k permutations, none moving `avoid`, with nested commutator p.
// Throws std::runtime_error when no such sequence exists.
std::vector<Perm> decompose_avoiding(const Perm& p, int avoid, int k);

// 3-cycles t0, ..., tm with t0*t1*...*tm = p.
std::vector<Perm> product_of_3cycles(const Perm& p);

}  // namespace rwp
