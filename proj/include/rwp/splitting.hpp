#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rwp/groups.hpp"

namespace rwp {

// Finite undirected graph on vertices 0..size()-1. `norm` is the distance from a base vertex.
struct FiniteGraph {
  std::vector<std::vector<int>> adj;
  std::vector<std::string> labels;
  std::vector<int> norm;
  std::vector<std::pair<int, int>> coords;  // pentagon regions only

  int size() const { return static_cast<int>(adj.size()); }
};

// Cayley graph of the ball B_r, edges g -- gs for generators s.
FiniteGraph ball_graph(const Group& G, int r, size_t budget = 5'000'000);

// P_k = {(x, y) : 0 <= y <= k, 0 <= x < 2^y} with pentagon-model edges inside P_k.
FiniteGraph pentagon_region(int k);

struct Ratio {
  int64_t num = 2, den = 3;
};

struct SplitNode {
  std::vector<int> A, cut;
  int left = -1, right = -1;  // both -1 iff A is empty
};

struct SplitTree {
  std::vector<SplitNode> nodes;
  int root = 0;
  size_t max_cut() const;
  int depth() const;
};

struct SplitCheck {
  bool ok = true;
  int node = -1;
  std::string reason;
  int u = -1, v = -1;  // witnessing pair for touching parts
};

// Tree-graph splitting: empty cuts while every component is small, otherwise cut the
// vertex of least norm in the largest component (falls back to its centroid).
SplitTree split_free(const FiniteGraph& g, Ratio alpha = {2, 3});

// Splits P_k along parent chains (X >> (k - y), y) through candidate top vertices X.
// Throws std::runtime_error if no candidate cut meets alpha.
SplitTree split_pentagon(int k, const FiniteGraph& region, Ratio alpha = {3, 4});

// All clauses of the splitting-scheme definition. Parts are separated when no edge joins them.
SplitCheck verify_splitting_scheme(const SplitTree& t, const FiniteGraph& g, Ratio alpha, size_t cut_bound);

}  // namespace rwp
