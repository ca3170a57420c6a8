#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rwp/barrington.hpp"
#include "rwp/groups.hpp"
#include "rwp/perm.hpp"

namespace rwp {

// Alphabet A = A_0 x ... x A_{k-1}; a symbol is stored as a mixed-radix integer, track 0 least significant.
struct Tracks {
  std::vector<int> radix;
  std::vector<std::string> names;

  Tracks() = default;
  Tracks(std::vector<int> r, std::vector<std::string> n = {});

  int count() const { return static_cast<int>(radix.size()); }
  int alphabet_size() const;
  int stride(int t) const;
  int get(int sym, int t) const { return (sym / stride(t)) % radix[t]; }
  int set(int sym, int t, int v) const { return sym + (v - get(sym, t)) * stride(t); }
  int encode(const std::vector<int>& values) const;
  std::vector<int> decode(int sym) const;
  int index_of(const std::string& name) const;
};

// Symbol permutation of the whole alphabet given track-wise: f maps track values to track values.
Perm symbol_perm_from(const Tracks& tr, const std::function<std::vector<int>(const std::vector<int>&)>& f);
// Permutes track `target` by p where `cond` holds on the symbol; other tracks untouched.
// cond must not depend on `target` unless p preserves it.
Perm track_perm(const Tracks& tr, int target, const Perm& p, const std::function<bool(const std::vector<int>&)>& cond = {});

class AutWord;

// Barrington word lifted to configurations: generator pi_{a,i} permutes track `target` at h
// when the control tracks at h * offsets[i] read the control symbol a (mixed radix over the
// position's tracks, first track least significant).
struct ControlledBlock {
  PermWord word;
  std::vector<GroupElement> offsets;
  std::vector<int> control_tracks;
  // Per-position track lists; when nonempty, position i reads position_tracks[i] instead.
  std::vector<std::vector<int>> position_tracks;
  int target = 0;
  std::string name;

  const std::vector<int>& tracks_at(int i) const { return position_tracks.empty() ? control_tracks : position_tracks[i]; }

  // Net permutation of the target value at a cell with control view u (encoded); cached.
  const std::vector<int>& view_perm(long long u) const;
  // The same block written with partial shifts and symbol permutations only.
  std::shared_ptr<const AutWord> expand(const Group& G, const Tracks& tr) const;

 private:
  mutable std::mutex mu_;
  mutable std::unordered_map<long long, std::vector<int>> cache_;
  mutable std::shared_ptr<const AutWord> flat_;
};

enum class LetterKind { Shift, Perm, Block, Controlled };

struct Letter {
  LetterKind kind = LetterKind::Perm;
  GroupElement g;  // Shift
  int track = 0;   // Shift
  std::shared_ptr<const Perm> perm;
  std::shared_ptr<const AutWord> block;
  std::shared_ptr<const ControlledBlock> controlled;
  bool inverted = false;
  std::string name;
};

// Product f_0 f_1 ... f_{m-1}; the last letter acts first.
class AutWord {
 public:
  AutWord() = default;

  static AutWord shift(const GroupElement& g, int track, std::string name = {});
  static AutWord symbol(const Perm& p, std::string name = {});
  static AutWord block(std::shared_ptr<const AutWord> w, std::string name = {});
  static AutWord controlled(std::shared_ptr<const ControlledBlock> b);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  size_t size() const { return letters_.size(); }
  // Number of shift and symbol-permutation letters after expanding blocks.
  long long flat_length() const;

  AutWord inverse() const;
  AutWord& append(const AutWord& w);
  AutWord& push(Letter l);

  friend AutWord operator*(const AutWord& a, const AutWord& b);

 private:
  std::vector<Letter> letters_;
};

AutWord commutator(const AutWord& a, const AutWord& b);
AutWord nested_commutator(const std::vector<AutWord>& ws);
// b^-1 a b
AutWord conjugate(const AutWord& a, const AutWord& b);
AutWord power(const AutWord& a, int e);

// Letters with blocks expanded into shifts and symbol permutations.
std::vector<Letter> flatten(const AutWord& w, const Group& G, const Tracks& tr);
// Sum of |g| over shift letters of the flattened word.
long long cumulative_radius(const AutWord& w, const Group& G, const Tracks& tr);

struct Pattern {
  std::map<GroupElement, int> values;  // flat symbols
};

// Exact dependency domains of a flattened word: stage i holds, per track, the cells whose
// values after the last (m - i) letters determine the symbol at 1_G.
class EvalPlan {
 public:
  // `extra` adds input cells per track (e.g. cells a reference rule reads).
  EvalPlan(const AutWord& w, const Group& G, const Tracks& tr, const std::vector<std::vector<GroupElement>>& extra = {});

  const Tracks& tracks() const { return tr_; }
  // Input cells per track (the identity is always present on every track).
  const std::vector<std::vector<GroupElement>>& input_domain() const { return domains_.back(); }
  // log10 of the number of input patterns.
  double log10_patterns() const;
  long long pattern_count() const;  // -1 when above 2^62
  // Flat symbol at 1_G after applying the word; inputs are per-track values on input_domain().
  int eval(const std::vector<std::vector<int>>& input) const;
  // Input symbol at 1_G of the same input.
  int input_at_identity(const std::vector<std::vector<int>>& input) const;
  std::vector<std::vector<int>> from_pattern(const Pattern& p) const;
  Pattern to_pattern(const std::vector<std::vector<int>>& input) const;
  std::vector<std::vector<int>> decode_index(long long index) const;

 private:
  struct Step {
    LetterKind kind;
    int track = 0;
    const Perm* perm = nullptr;
    // Shift: gather index into the next stage's track domain.
    std::vector<int> gather;
    // Perm: for each output track, for each cell, for each input track, index or -1.
    std::vector<std::vector<std::vector<int>>> perm_gather;
  };
  Tracks tr_;
  std::vector<Letter> flat_;
  std::vector<std::shared_ptr<const Perm>> perms_;
  std::vector<std::vector<std::vector<GroupElement>>> domains_;  // stage -> track -> cells
  std::vector<Step> steps_;
  std::vector<int> identity_index_;
};

enum class Verdict { Trivial, Nontrivial, Unknown };
const char* verdict_name(Verdict v);

struct TrivialityResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Pattern> witness;
  int before = 0, after = 0;  // symbol at 1_G on the witness
  long long tested = 0;
  bool exhaustive = false;
};

// Exhaustive over the input domain when the pattern count is within budget; otherwise sparse
// and random patterns from `seed`, returning Unknown when none moves.
TrivialityResult is_trivial(const AutWord& w, const Group& G, const Tracks& tr, long long budget = 10'000'000,
                            uint64_t seed = 0);

struct ReferenceCheck {
  bool ok = true;
  long long tested = 0;
  bool exhaustive = false;               // every pattern on the dependency domain
  bool neighborhood_exhaustive = false;  // every pattern on ref_cells, under sampled backgrounds
  std::optional<Pattern> witness;
  int got = 0, want = 0;
};

// Compares the symbol w produces at 1_G with `ref` on every pattern over the dependency domain
// (enlarged by `ref_cells`) when there are at most `exhaustive_limit` of them. Otherwise every
// assignment of ref_cells is tried under a zero background and `backgrounds` random ones (when that
// fits the limit), followed by `samples` fully random patterns.
ReferenceCheck check_against_reference(const AutWord& w, const Group& G, const Tracks& tr,
                                       const std::function<int(const Pattern&)>& ref,
                                       const std::vector<std::vector<GroupElement>>& ref_cells, long long exhaustive_limit,
                                       long long samples, uint64_t seed, int backgrounds = 3);

// Reference rule of phi_{pi,c,S} at 1_G.
int phi_reference(const Tracks& tr, int c_track, const Perm& pi, int c, const std::vector<GroupElement>& S, const Pattern& p,
                  const Group& G);

// Right action of F_S (or Z^d) on a finite set: point h moves to h * s along generator s.
class FiniteAction {
 public:
  FiniteAction(const Group& G, std::vector<std::vector<int>> gen_tables);
  // Z^d / (p_1 Z x ... x p_d Z); point index is the mixed-radix encoding, coordinate 0 fastest.
  static FiniteAction torus(const Group& G, const std::vector<int>& periods);

  int size() const { return n_; }
  const Group& group() const { return G_; }
  // Table h -> h * g (cached).
  const std::vector<int>& right_mult(const GroupElement& g) const;
  int move(int h, const GroupElement& g) const { return right_mult(g)[h]; }
  const std::vector<int>& periods() const { return periods_; }

 private:
  Group G_;
  int n_ = 0;
  std::vector<std::vector<int>> gen_;  // indexed like G.generators()
  std::vector<int> periods_;
  // Not synchronized: a FiniteAction is used from one thread at a time.
  mutable std::map<GroupElement, std::vector<int>> cache_;
};

// Generator indices (into G.generators()) whose product is g. Zd and free groups only.
std::vector<int> generator_path(const Group& G, const GroupElement& g);

enum class BlockMode { Flat, Cellwise };

// Applies w to the configuration (flat symbol per point) in place. Controlled blocks are either
// expanded into shifts (Flat) or applied through their per-cell control view (Cellwise).
void apply_on_action(const AutWord& w, const FiniteAction& X, const Tracks& tr, std::vector<int>& config,
                     BlockMode mode = BlockMode::Cellwise);

struct PeriodicPoint {
  std::vector<int> periods;
  std::vector<int> values;  // flat symbols over the fundamental domain, coordinate 0 fastest
  bool operator==(const PeriodicPoint&) const = default;
};

// Requires every period >= 2 * cumulative_radius + 1.
PeriodicPoint act_on_periodic(const AutWord& w, const Group& G, const Tracks& tr, const PeriodicPoint& x);

struct PeriodicVerdict {
  Verdict verdict = Verdict::Unknown;  // Trivial: no tested point moved
  long long tested = 0;
  bool exhaustive = false;  // every point of the given period was tested
  std::optional<PeriodicPoint> witness;
  // Cells where the torus action differs from the local rule read around the cell.
  long long rule_mismatches = 0;
};

// Acts on all Z^d points with the given period in every direction when there are at most
// `budget` of them, otherwise on `budget` random ones. Every tested point is also compared
// cell by cell with the local rule of w.
PeriodicVerdict periodic_verdict(const AutWord& w, const Group& G, const Tracks& tr, int period, long long budget,
                                 uint64_t seed);

// phi_{pi,c,s}: permutes the C value at g by pi when the C value at gs is c. The product form
// uses theta_b (pi_b at g when B at gs is b), theta (B 0<->1 where C is c) and theta' (B rotation).
struct GadgetParts {
  AutWord theta0, theta1, theta, theta_rot;
  Perm pi0, pi1;
};
GadgetParts phi_single_parts(const Tracks& tr, int c_track, int b_track, const Perm& pi, int c, const GroupElement& s);
AutWord build_phi_single(const Tracks& tr, int c_track, int b_track, const Perm& pi, int c, const GroupElement& s);
// phi_{pi,c,S}: nested commutator of phi_{pi_i,c,s_i} with pi = [pi_1, ..., pi_l], no pi_i moving c.
AutWord build_phi_set(const Tracks& tr, int c_track, int b_track, const Perm& pi, int c, const std::vector<GroupElement>& S);

}  // namespace rwp
