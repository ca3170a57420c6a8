#include "rwp/splitting.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace rwp {

FiniteGraph ball_graph(const Group& G, int r, size_t budget) {
  std::vector<GroupElement> ball = G.ball(r, budget);
  std::unordered_map<GroupElement, int, GroupElementHash> index;
  for (size_t i = 0; i < ball.size(); ++i) index[ball[i]] = static_cast<int>(i);
  FiniteGraph g;
  g.adj.resize(ball.size());
  g.norm.assign(ball.size(), 0);
  for (size_t i = 0; i < ball.size(); ++i) {
    g.labels.push_back(G.format(ball[i]));
    for (const auto& s : G.generators()) {
      auto it = index.find(G.multiply(ball[i], s));
      if (it != index.end() && it->second != static_cast<int>(i)) g.adj[i].push_back(it->second);
    }
    std::sort(g.adj[i].begin(), g.adj[i].end());
    g.adj[i].erase(std::unique(g.adj[i].begin(), g.adj[i].end()), g.adj[i].end());
  }
  // BFS order of ball() is by radius, so norms follow from a BFS over the graph.
  std::vector<int> dist(ball.size(), -1), queue{0};
  dist[0] = 0;
  for (size_t h = 0; h < queue.size(); ++h)
    for (int w : g.adj[queue[h]])
      if (dist[w] < 0) {
        dist[w] = dist[queue[h]] + 1;
        queue.push_back(w);
      }
  g.norm = dist;
  return g;
}

FiniteGraph pentagon_region(int k) {
  if (k < 0 || k > 20) throw std::invalid_argument("pentagon_region: k out of range");
  FiniteGraph g;
  auto id = [](int x, int y) { return (1 << y) - 1 + x; };
  for (int y = 0; y <= k; ++y)
    for (int x = 0; x < (1 << y); ++x) {
      g.coords.emplace_back(x, y);
      g.labels.push_back("(" + std::to_string(x) + "," + std::to_string(y) + ")");
      g.norm.push_back(y);
    }
  g.adj.resize(g.coords.size());
  auto link = [&](int a, int b) {
    g.adj[a].push_back(b);
    g.adj[b].push_back(a);
  };
  for (int y = 0; y <= k; ++y)
    for (int x = 0; x < (1 << y); ++x) {
      if (x + 1 < (1 << y)) link(id(x, y), id(x + 1, y));
      if (y < k) {
        link(id(x, y), id(2 * x, y + 1));
        link(id(x, y), id(2 * x + 1, y + 1));
      }
    }
  for (auto& a : g.adj) std::sort(a.begin(), a.end());
  return g;
}

size_t SplitTree::max_cut() const {
  size_t m = 0;
  for (const auto& n : nodes) m = std::max(m, n.cut.size());
  return m;
}

int SplitTree::depth() const {
  std::function<int(int)> rec = [&](int i) -> int {
    if (i < 0 || nodes[i].left < 0) return 0;
    return 1 + std::max(rec(nodes[i].left), rec(nodes[i].right));
  };
  return rec(root);
}

namespace {

bool within(size_t part, size_t whole, Ratio a) {
  return static_cast<int64_t>(part) * a.den <= a.num * static_cast<int64_t>(whole);
}

std::vector<std::vector<int>> components(const FiniteGraph& g, const std::vector<int>& A) {
  std::vector<char> in(g.size(), 0), seen(g.size(), 0);
  for (int v : A) in[v] = 1;
  std::vector<std::vector<int>> out;
  for (int v : A) {
    if (seen[v]) continue;
    std::vector<int> comp{v};
    seen[v] = 1;
    for (size_t h = 0; h < comp.size(); ++h)
      for (int w : g.adj[comp[h]])
        if (in[w] && !seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

// Two-way partition of components: the largest alone if it carries a third, else greedy.
std::pair<std::vector<int>, std::vector<int>> pack_components(std::vector<std::vector<int>> comps, size_t total) {
  std::stable_sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  std::vector<int> L, R;
  size_t start = 0;
  if (!comps.empty() && 3 * comps[0].size() >= total) {
    L = comps[0];
    start = 1;
  }
  for (size_t i = start; i < comps.size(); ++i) {
    auto& side = (start == 1 || L.size() > R.size()) ? R : L;
    side.insert(side.end(), comps[i].begin(), comps[i].end());
  }
  std::sort(L.begin(), L.end());
  std::sort(R.begin(), R.end());
  return {L, R};
}

int add_node(SplitTree& t, std::vector<int> A) {
  t.nodes.push_back(SplitNode{std::move(A), {}, -1, -1});
  return static_cast<int>(t.nodes.size()) - 1;
}

std::vector<int> minus(const std::vector<int>& A, const std::vector<int>& cut) {
  std::vector<int> out;
  for (int v : A)
    if (std::find(cut.begin(), cut.end(), v) == cut.end()) out.push_back(v);
  return out;
}

}  // namespace

SplitTree split_free(const FiniteGraph& g, Ratio alpha) {
  SplitTree t;
  std::vector<int> all(g.size());
  for (int i = 0; i < g.size(); ++i) all[i] = i;
  t.root = add_node(t, all);
  std::vector<int> stack{t.root};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    std::vector<int> A = t.nodes[id].A;
    if (A.empty()) continue;
    std::vector<int> cut;
    std::vector<std::vector<int>> comps = components(g, A);
    auto largest = std::max_element(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    std::pair<std::vector<int>, std::vector<int>> parts;
    if (A.size() > 1 && within(largest->size(), A.size(), alpha)) {
      parts = pack_components(comps, A.size());
    } else {
      std::vector<int> candidates;
      int root = *std::min_element(largest->begin(), largest->end(), [&](int a, int b) { return g.norm[a] < g.norm[b]; });
      candidates.push_back(root);
      candidates.insert(candidates.end(), largest->begin(), largest->end());
      bool found = false;
      for (int c : candidates) {
        cut = {c};
        std::vector<int> rest = minus(A, cut);
        parts = pack_components(components(g, rest), rest.size());
        if (within(parts.first.size(), A.size(), alpha) && within(parts.second.size(), A.size(), alpha)) {
          found = true;
          break;
        }
      }
      if (!found) throw std::runtime_error("split_free: no single-vertex cut meets alpha");
    }
    t.nodes[id].cut = cut;
    int l = add_node(t, parts.first), r = add_node(t, parts.second);
    t.nodes[id].left = l;
    t.nodes[id].right = r;
    stack.push_back(l);
    stack.push_back(r);
  }
  return t;
}

SplitTree split_pentagon(int k, const FiniteGraph& region, Ratio alpha) {
  if (static_cast<int>(region.coords.size()) != (2 << k) - 1) throw std::invalid_argument("split_pentagon: region is not P_k");
  SplitTree t;
  std::vector<int> all(region.size());
  for (int i = 0; i < region.size(); ++i) all[i] = i;
  t.root = add_node(t, all);
  std::vector<int> stack{t.root};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    std::vector<int> A = t.nodes[id].A;
    if (A.empty()) continue;
    // Candidate X: endpoints of the top-row shadows of vertices of A.
    std::vector<int64_t> xs;
    for (int v : A) {
      auto [x, y] = region.coords[v];
      xs.push_back(static_cast<int64_t>(x) << (k - y));
      xs.push_back((static_cast<int64_t>(x + 1) << (k - y)) - 1);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    size_t best = SIZE_MAX;
    std::vector<int> bestL, bestR, bestC;
    for (int64_t X : xs) {
      std::vector<int> L, R, C;
      for (int v : A) {
        auto [x, y] = region.coords[v];
        int64_t p = X >> (k - y);
        (x < p ? L : x > p ? R : C).push_back(v);
      }
      size_t worse = std::max(L.size(), R.size());
      if (worse < best) {
        best = worse;
        bestL = std::move(L);
        bestR = std::move(R);
        bestC = std::move(C);
      }
    }
    if (!within(best, A.size(), alpha))
      throw std::runtime_error("split_pentagon: no path cut meets alpha on a set of size " + std::to_string(A.size()));
    t.nodes[id].cut = bestC;
    int l = add_node(t, bestL), r = add_node(t, bestR);
    t.nodes[id].left = l;
    t.nodes[id].right = r;
    stack.push_back(l);
    stack.push_back(r);
  }
  return t;
}

SplitCheck verify_splitting_scheme(const SplitTree& t, const FiniteGraph& g, Ratio alpha, size_t cut_bound) {
  SplitCheck bad;
  bad.ok = false;
  for (size_t i = 0; i < t.nodes.size(); ++i) {
    const SplitNode& n = t.nodes[i];
    bad.node = static_cast<int>(i);
    if (n.A.empty()) {
      if (n.left >= 0 || n.right >= 0 || !n.cut.empty()) return bad.reason = "empty set with a split", bad;
      continue;
    }
    if (n.left < 0 || n.right < 0) return bad.reason = "nonempty set without a split", bad;
    if (n.cut.size() > cut_bound) return bad.reason = "cut larger than bound", bad;
    const auto& A1 = t.nodes[n.left].A;
    const auto& A2 = t.nodes[n.right].A;
    std::vector<int> expect = n.A, got = n.cut;
    got.insert(got.end(), A1.begin(), A1.end());
    got.insert(got.end(), A2.begin(), A2.end());
    std::sort(expect.begin(), expect.end());
    std::sort(got.begin(), got.end());
    if (expect != got) return bad.reason = "cut and parts do not partition the set", bad;
    if (!within(A1.size(), n.A.size(), alpha) || !within(A2.size(), n.A.size(), alpha))
      return bad.reason = "part exceeds alpha", bad;
    std::vector<char> in2(g.size(), 0);
    for (int v : A2) in2[v] = 1;
    for (int u : A1)
      for (int w : g.adj[u])
        if (in2[w]) {
          bad.u = u;
          bad.v = w;
          return bad.reason = "parts touch", bad;
        }
  }
  return SplitCheck{};
}

}  // namespace rwp
