#pragma once

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rwp/barrington.hpp"
#include "rwp/ca.hpp"
#include "rwp/groups.hpp"
#include "rwp/machines.hpp"
#include "rwp/perm.hpp"
#include "rwp/ripple.hpp"

namespace rwp {

// Realizes ripple generators as PAut words; identical generators share one block.
class RippleRealizer {
 public:
  using Builder = std::function<AutWord(const RippleGen&)>;
  explicit RippleRealizer(Builder b) : build_(std::move(b)) {}
  AutWord realize(const RippleWord& w);
  // Distinct generator blocks built so far.
  size_t distinct() const { return cache_.size(); }

 private:
  Builder build_;
  std::map<std::tuple<int, std::vector<int>, int, int>, std::shared_ptr<const AutWord>> cache_;
};

// ---------------------------------------------------------------- Z^D self-indexing cones

// A = C x B with B = {0,1}^d on Z^(d+1); the index of v is read from v, v + e_D, ..., v + k e_D.
struct ZdLayout {
  int d = 1;
  int k = 1;
  int n = 2;  // 2^k
  Tracks tracks;
  int c_track = 0, b_track = 1;
  Group G = Group::zd(2);

  int dim() const { return d + 1; }
};

ZdLayout zd_layout(int d, int k, int c_size = 6);

// Flat symbol of a periodic point at integer coordinates (taken modulo the periods).
int cell(const PeriodicPoint& x, const std::vector<int>& v);
void set_cell(PeriodicPoint& x, const std::vector<int>& v, int sym);

// Index at v, or nullopt when a component exceeds n. Throws if x has the wrong dimension.
std::optional<std::vector<int>> index_at(const ZdLayout& L, const PeriodicPoint& x, const std::vector<int>& v);
// idx(v + u) = u for every u in T_n (u in N^d, sum u <= n).
bool is_self_indexing(const ZdLayout& L, const PeriodicPoint& x, const std::vector<int>& v, int n);
// Points of T_n, in lexicographic order.
std::vector<std::vector<int>> geometric_cone(int d, int n);
// Writes idx(v + u) = u on the cone at v (B bits only).
void lay_cone(const ZdLayout& L, PeriodicPoint& x, const std::vector<int>& v, int n);
// Roots v (fundamental domain) of self-indexing depth-n cones whose C values vanish off the root.
std::vector<std::vector<int>> zd_catcher_roots(const ZdLayout& L, const PeriodicPoint& x);
PeriodicPoint zd_catcher_reference(const ZdLayout& L, const Perm& pi, const PeriodicPoint& x);

struct ZdCatcher {
  ZdLayout layout;
  Perm pi;
  RippleWord ripple;
  AutWord word;
  size_t distinct_blocks = 0;
};

// d = 1 only. gamma and beta become Barrington-compiled controlled blocks reading the index
// bits, phi becomes the PAut gadget with s = e_1.
ZdCatcher build_zd_catcher(int d, int k, const Perm& pi);
PeriodicPoint apply_zd_catcher(const ZdCatcher& z, const PeriodicPoint& x, BlockMode mode = BlockMode::Cellwise);

// ---------------------------------------------------------------- lamplighter grids

// f_g(l, m) in Z_2 wr Z with a = t, b = t * (lamp at 0).
GroupElement grid_element(const Group& L, const GroupElement& g, int n, int l, int m);

struct GridCheck {
  bool commute = true, injective = true, zero_shift = true;
  long long pairs = 0;
  std::string witness;
};
GridCheck check_grid(int n);

// ---------------------------------------------------------------- thickets

struct Thicket {
  int k = 0;
  int s = 2;                          // |S|
  std::vector<std::vector<int>> words;  // vertex words of S^{<=k}, shortlex
  std::vector<int> cls;                 // class representative per word
  int index_of(const std::vector<int>& w) const;
  int num_classes() const;
};

// Quotient of the depth-k word tree by {u s v : s in S} for u in U.
Thicket build_thicket(int k, int s, const std::vector<std::vector<int>>& U);
// Every leaf word has at least n proper prefixes whose |S| children are distinct vertices.
bool is_thicket(const Thicket& t, int n);
// Branching prefix count per leaf (leaves in shortlex order).
std::vector<int> branching_counts(const Thicket& t);

// ---------------------------------------------------------------- free monoid reduction

// Alphabet C x B x W on F_3 = <a, b, c>, B = {a, b, ?} = {0, 1, 2}, W = ID symbols of the machines.
struct MonoidLayout {
  NDTM t0, t1;
  std::vector<int> input;  // padded to a power of two
  int n = 0;
  Tracks tracks;
  int c_track = 0, b_track = 1, w_track = 2;
  Group G = Group::free(3);
  static constexpr int kA = 0, kB = 1, kQ = 2;
};

MonoidLayout monoid_layout(const NDTM& t0, const NDTM& t1, const std::vector<int>& input, int c_size = 6);

// u ?^k read on g, gc, ..., gc^(n-1), returned as B values; nullopt when a letter follows a ?.
std::optional<std::vector<int>> monoid_node_color(const MonoidLayout& L, const FiniteAction& X, const std::vector<int>& x,
                                                  int g);

struct MonoidGraph {
  LabeledGraph graph;          // C values only; B colors are unused (0)
  std::vector<int> point;      // node -> point of X
  std::vector<int> node_of;    // point -> node or -1
  std::vector<int> rank;       // per node
  std::vector<char> successful;
};

// The ripple-catching graph a configuration encodes (node conditions, a/b edges, successor checks).
MonoidGraph monoid_graph(const MonoidLayout& L, const FiniteAction& X, const std::vector<int>& x);
std::vector<int> monoid_reference(const MonoidLayout& L, const Perm& pi, const FiniteAction& X, const std::vector<int>& x);

struct PspaceReduction {
  MonoidLayout layout;
  Perm pi;
  RippleWord ripple;
  AutWord word;
  long long max_block_length = 0;
};

PspaceReduction build_pspace_reduction(const NDTM& t0, const NDTM& t1, const std::vector<int>& input);

// Finite Schreier graph of F_3 holding points w c^i (w in {a,b}^{<=n}, i < n); a and b edges
// outside the tree and c on the chain ends are completed into permutations.
struct TreeRegion {
  FiniteAction X;
  std::map<std::pair<std::string, int>, int> point;  // (w over "ab", i) -> point
};
TreeRegion tree_region(int n);

// Configuration encoding a heap-ordered tree of IDs (depth n) with C = 0 everywhere.
std::vector<int> encode_tree(const MonoidLayout& L, const TreeRegion& R, const std::vector<ID>& tree);

struct ReductionVerdict {
  Verdict verdict = Verdict::Unknown;
  long long trees = 0;
  std::optional<std::vector<ID>> witness_tree;
  bool reference_agrees = true;
};

// Applies the reduction word to every encodable computation tree (all_computation_trees);
// Nontrivial when one of them moves, otherwise Trivial over that search space.
ReductionVerdict decide_reduction(const PspaceReduction& r, const TreeRegion& R, size_t tree_limit = 100000,
                                  bool stop_at_witness = false);

}  // namespace rwp
