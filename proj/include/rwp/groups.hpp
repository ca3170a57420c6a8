#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace rwp {

enum class Backend { Zd, Free, Lamplighter };

// Canonical payloads:
//   Zd: coordinates.
//   Free: freely reduced letters +-1..+-k (negative = inverse).
//   Lamplighter: [shift, pos_0, v_0[0..r), pos_1, ...], positions increasing, only nonzero lamp vectors.
struct GroupElement {
  std::vector<int64_t> data;
  bool operator==(const GroupElement& o) const { return data == o.data; }
  bool operator!=(const GroupElement& o) const { return data != o.data; }
  bool operator<(const GroupElement& o) const { return data < o.data; }
};

struct GroupElementHash {
  size_t operator()(const GroupElement& g) const;
};

// A finitely generated group with a fixed symmetric generating set.
//   Zd: +-e_i.  Free: letters a, b, ... and inverses A, B, ...
//   Lamplighter Z_q^r wr Z: a = t and, for each lamp coordinate j, t times the unit lamp e_j at 0
//   (named b, c, ...), with inverses in capitals. Products satisfy
//   (s1, f1)(s2, f2) = (s1 + s2, f1 + tau_{s1} f2), (tau_s f)(x) = f(x - s).
class Group {
 public:
  static Group zd(int d);
  static Group free(int k);
  static Group lamplighter(int q, int r = 1);

  Backend backend() const { return kind_; }
  int rank() const { return rank_; }
  int lamp_order() const { return q_; }

  GroupElement identity() const;
  GroupElement multiply(const GroupElement& g, const GroupElement& h) const;
  GroupElement inverse(const GroupElement& g) const;
  GroupElement power(const GroupElement& g, int64_t e) const;
  GroupElement product(const std::vector<GroupElement>& gs) const;

  const std::vector<GroupElement>& generators() const { return gens_; }
  const std::vector<std::string>& generator_names() const { return gen_names_; }
  // Element of a word over generator names ("aB" etc.); Zd uses letters a.. for +e_i, capitals for -e_i.
  GroupElement word(const std::string& letters) const;

  // Zd: "1,-2". Free: "abA", identity "1". Lamplighter: "t^3|lamps@{0,2}" (q = 2, r = 1)
  // or "t^3|lamps@{0=1.0,2=0.1}" in general.
  std::string format(const GroupElement& g) const;
  GroupElement parse(const std::string& text) const;

  // Zd only.
  GroupElement zd_vector(const std::vector<int64_t>& v) const;
  // Lamplighter only.
  GroupElement lamp(int64_t pos, const std::vector<int64_t>& value) const;
  int64_t shift(const GroupElement& g) const;

  // Exact ball of radius r by BFS; throws when more than `budget` elements would be produced.
  std::vector<GroupElement> ball(int r, size_t budget = 5'000'000) const;
  // Word metric by BFS from the identity, bounded by the budget.
  int distance(const GroupElement& g, const GroupElement& h, size_t budget = 5'000'000) const;
  int norm(const GroupElement& g, size_t budget = 5'000'000) const { return distance(identity(), g, budget); }

 private:
  Backend kind_ = Backend::Zd;
  int rank_ = 0;
  int q_ = 0;
  std::vector<GroupElement> gens_;
  std::vector<std::string> gen_names_;
  void check(const GroupElement& g) const;
};

}  // namespace rwp
