#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "rwp/perm.hpp"

namespace rwp {

struct RNode {
  int c = 0;
  int b = 0;
  bool operator==(const RNode& o) const { return c == o.c && b == o.b; }
};

// Good S-labeled (C x B)-colored graph. succ[u][s] is the s-successor of u or -1; the s^-1
// edges are implied, so the first goodness clause holds by construction.
struct LabeledGraph {
  std::vector<RNode> nodes;
  std::vector<std::vector<int>> succ;

  int size() const { return static_cast<int>(nodes.size()); }
  int labels() const { return succ.empty() ? 0 : static_cast<int>(succ[0].size()); }
  bool same_shape_and_b(const LabeledGraph& o) const;
  bool operator==(const LabeledGraph& o) const { return nodes == o.nodes && succ == o.succ; }
};

// Successor relations R_s on B = [0, b_size) and a rank function (-1 stands for bottom).
struct SuccessorSystem {
  int labels = 0;
  int b_size = 0;
  std::vector<std::vector<std::vector<char>>> rel;  // rel[s][b][b']
  std::vector<int> rank;

  bool related(int s, int b, int b2) const { return rel[s][b][b2] != 0; }
  // rank(b') = rank(b) + 1 or bottom for every related pair.
  bool valid() const;
  // B = {0..max_rank, bottom}; R_s(b) = b + 1 below max_rank, plus (b, bottom) when b + s is even.
  static SuccessorSystem counter(int labels, int max_rank);
};

bool is_successful(const LabeledGraph& g, const SuccessorSystem& sys, int u);

enum class RippleKind { Phi, Gamma, Beta };

struct RippleGen {
  RippleKind kind = RippleKind::Gamma;
  Perm pi;
  int c = 0;    // Phi
  int ell = 0;  // Beta
  bool inverted = false;
};

// Product g_0 g_1 ... g_{m-1}; the last generator acts first.
struct RippleWord {
  std::vector<RippleGen> gens;

  size_t size() const { return gens.size(); }
  RippleWord inverse() const;
  RippleWord& append(const RippleWord& w);
  static RippleWord single(RippleGen g);
  static RippleWord phi(const Perm& pi, int c);
  static RippleWord gamma(const Perm& pi);
  static RippleWord beta(const Perm& pi, int ell);
};

RippleWord operator*(const RippleWord& a, const RippleWord& b);
RippleWord commutator(const RippleWord& a, const RippleWord& b);
RippleWord nested_commutator(const std::vector<RippleWord>& ws);
RippleWord conjugate(const RippleWord& a, const RippleWord& b);

// Simultaneous application at every qualifying node. Requires |C| >= 6 and, for Phi, c fixed by pi.
LabeledGraph apply_generator(const RippleGen& g, const LabeledGraph& G, const SuccessorSystem& sys);
LabeledGraph apply_word(const RippleWord& w, const LabeledGraph& G, const SuccessorSystem& sys);
// Order of the generator's action on G (smallest k > 0 with g^k G = G).
int orbit_length(const RippleGen& g, const LabeledGraph& G, const SuccessorSystem& sys, int limit = 1000);

// pi at u iff u is successful, every us has C value c, and rank(b_u) = ell.
RippleWord build_psi(const Perm& pi, int ell, int c);
// pi at u iff u is successful and rank(b_u) = ell: [gamma_{pi1}, beta_{pi2,ell}] with pi = [pi1, pi2].
RippleWord build_gamma_rank(const Perm& pi, int ell);
// pi at u iff the depth-n cone at u is full, ranks equal depths, and all C values below the root are 0.
RippleWord build_catcher(int n, const Perm& pi);

LabeledGraph psi_reference(const Perm& pi, int ell, int c, const LabeledGraph& G, const SuccessorSystem& sys);
LabeledGraph gamma_rank_reference(const Perm& pi, int ell, const LabeledGraph& G, const SuccessorSystem& sys);
// Roots u with F(u, 0), F(v, j) = rank(v) = j and (j >= 1 => C(v) = 0) and
// (j < n => v successful and F(vs, j + 1) for all s).
std::vector<int> catcher_roots(int n, const LabeledGraph& G, const SuccessorSystem& sys);
// The same recursion with rank (-1 for bottom) and successfulness given per node.
std::vector<int> catcher_roots(int n, const LabeledGraph& G, const std::vector<int>& rank,
                               const std::vector<char>& successful);
LabeledGraph oracle_catcher(int n, const Perm& pi, const LabeledGraph& G, const SuccessorSystem& sys);

// All good graphs on exactly `nodes` vertices (every successor choice, every coloring), in a fixed
// order. The callback returns false to stop; returns the number visited.
long long for_each_good_graph(int nodes, int labels, int c_size, int b_size,
                              const std::function<bool(const LabeledGraph&)>& fn);
// Number of graphs for_each_good_graph would visit (saturating at 2^62).
long long good_graph_count(int nodes, int labels, int c_size, int b_size);

// Random good graph with up to max_nodes vertices. With probability 1/2 a full cone of depth
// `plant_depth` with consistent B colors and C value `fill_c` below the root is planted (when it
// fits) and then lightly perturbed.
LabeledGraph random_graph(std::mt19937_64& rng, int max_nodes, int labels, int c_size, const SuccessorSystem& sys,
                          int plant_depth, int fill_c = 0);

// A word compiled for repeated evaluation: only the C values change.
class CompiledRipple {
 public:
  explicit CompiledRipple(const RippleWord& w);
  LabeledGraph apply(const LabeledGraph& G, const SuccessorSystem& sys) const;
  // In place on the C values of G's nodes.
  void apply_c(const LabeledGraph& G, const SuccessorSystem& sys, std::vector<int>& c) const;

 private:
  struct Step {
    RippleKind kind;
    std::vector<int> img;
    int c = 0;
    int ell = 0;
  };
  std::vector<Step> steps_;  // in application order
};

}  // namespace rwp
