#include "rwp/ripple.hpp"

#include <algorithm>
#include <stdexcept>

namespace rwp {

bool LabeledGraph::same_shape_and_b(const LabeledGraph& o) const {
  if (succ != o.succ || nodes.size() != o.nodes.size()) return false;
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].b != o.nodes[i].b) return false;
  return true;
}

bool SuccessorSystem::valid() const {
  if (static_cast<int>(rel.size()) != labels || static_cast<int>(rank.size()) != b_size) return false;
  for (int s = 0; s < labels; ++s) {
    if (static_cast<int>(rel[s].size()) != b_size) return false;
    for (int b = 0; b < b_size; ++b) {
      if (static_cast<int>(rel[s][b].size()) != b_size) return false;
      for (int b2 = 0; b2 < b_size; ++b2) {
        if (!rel[s][b][b2]) continue;
        if (rank[b2] == -1) continue;
        if (rank[b] == -1 || rank[b2] != rank[b] + 1) return false;
      }
    }
  }
  return true;
}

SuccessorSystem SuccessorSystem::counter(int labels, int max_rank) {
  SuccessorSystem sys;
  sys.labels = labels;
  sys.b_size = max_rank + 2;
  int bottom = max_rank + 1;
  sys.rank.resize(sys.b_size);
  for (int b = 0; b <= max_rank; ++b) sys.rank[b] = b;
  sys.rank[bottom] = -1;
  sys.rel.assign(labels, std::vector<std::vector<char>>(sys.b_size, std::vector<char>(sys.b_size, 0)));
  for (int s = 0; s < labels; ++s)
    for (int b = 0; b <= max_rank; ++b) {
      if (b < max_rank) sys.rel[s][b][b + 1] = 1;
      if ((b + s) % 2 == 0) sys.rel[s][b][bottom] = 1;
    }
  return sys;
}

bool is_successful(const LabeledGraph& g, const SuccessorSystem& sys, int u) {
  for (int s = 0; s < g.labels(); ++s) {
    int v = g.succ[u][s];
    if (v < 0) return false;
    if (!sys.related(s, g.nodes[u].b, g.nodes[v].b)) return false;
  }
  return true;
}

RippleWord RippleWord::inverse() const {
  RippleWord r;
  r.gens.assign(gens.rbegin(), gens.rend());
  for (auto& g : r.gens) g.inverted = !g.inverted;
  return r;
}

RippleWord& RippleWord::append(const RippleWord& w) {
  gens.insert(gens.end(), w.gens.begin(), w.gens.end());
  return *this;
}

RippleWord RippleWord::single(RippleGen g) {
  RippleWord w;
  if (!g.pi.is_identity()) w.gens.push_back(std::move(g));
  return w;
}

RippleWord RippleWord::phi(const Perm& pi, int c) {
  if (pi.moves(c)) throw std::invalid_argument("phi: c lies in the support of pi");
  return single({RippleKind::Phi, pi, c, 0, false});
}

RippleWord RippleWord::gamma(const Perm& pi) { return single({RippleKind::Gamma, pi, 0, 0, false}); }

RippleWord RippleWord::beta(const Perm& pi, int ell) { return single({RippleKind::Beta, pi, 0, ell, false}); }

RippleWord operator*(const RippleWord& a, const RippleWord& b) {
  RippleWord r = a;
  r.append(b);
  return r;
}

RippleWord commutator(const RippleWord& a, const RippleWord& b) {
  if (a.gens.empty() || b.gens.empty()) return {};
  return a.inverse() * b.inverse() * a * b;
}

RippleWord nested_commutator(const std::vector<RippleWord>& ws) {
  if (ws.empty()) return {};
  RippleWord acc = ws.back();
  for (size_t i = ws.size() - 1; i-- > 0;) acc = commutator(ws[i], acc);
  return acc;
}

RippleWord conjugate(const RippleWord& a, const RippleWord& b) { return b.inverse() * a * b; }

namespace {

void check_c_size(int n) {
  if (n < 6) throw std::invalid_argument("ripple: |C| must be at least 6");
}

struct NodeFacts {
  std::vector<char> successful;
  std::vector<int> rank;
};

NodeFacts facts(const LabeledGraph& G, const SuccessorSystem& sys) {
  NodeFacts f;
  f.successful.resize(G.size());
  f.rank.resize(G.size());
  for (int u = 0; u < G.size(); ++u) {
    f.successful[u] = is_successful(G, sys, u);
    f.rank[u] = sys.rank[G.nodes[u].b];
  }
  return f;
}

}  // namespace

CompiledRipple::CompiledRipple(const RippleWord& w) {
  for (auto it = w.gens.rbegin(); it != w.gens.rend(); ++it) {
    check_c_size(it->pi.size());
    if (it->kind == RippleKind::Phi && it->pi.moves(it->c))
      throw std::invalid_argument("phi: c lies in the support of pi");
    Step st{it->kind, it->inverted ? it->pi.inverse().images() : it->pi.images(), it->c, it->ell};
    steps_.push_back(std::move(st));
  }
}

void CompiledRipple::apply_c(const LabeledGraph& G, const SuccessorSystem& sys, std::vector<int>& c) const {
  NodeFacts f = facts(G, sys);
  int n = G.size();
  int L = G.labels();
  std::vector<int> hit;
  hit.reserve(n);
  for (const auto& st : steps_) {
    switch (st.kind) {
      case RippleKind::Gamma:
        for (int u = 0; u < n; ++u)
          if (f.successful[u]) c[u] = st.img[c[u]];
        break;
      case RippleKind::Beta:
        for (int u = 0; u < n; ++u)
          if (f.rank[u] == st.ell) c[u] = st.img[c[u]];
        break;
      case RippleKind::Phi:
        hit.clear();
        for (int u = 0; u < n; ++u) {
          bool ok = true;
          for (int s = 0; s < L && ok; ++s) {
            int v = G.succ[u][s];
            if (v >= 0 && c[v] != st.c) ok = false;
          }
          if (ok) hit.push_back(u);
        }
        for (int u : hit) c[u] = st.img[c[u]];
        break;
    }
  }
}

LabeledGraph CompiledRipple::apply(const LabeledGraph& G, const SuccessorSystem& sys) const {
  std::vector<int> c(G.size());
  for (int u = 0; u < G.size(); ++u) c[u] = G.nodes[u].c;
  apply_c(G, sys, c);
  LabeledGraph out = G;
  for (int u = 0; u < G.size(); ++u) out.nodes[u].c = c[u];
  return out;
}

LabeledGraph apply_generator(const RippleGen& g, const LabeledGraph& G, const SuccessorSystem& sys) {
  return CompiledRipple(RippleWord{{g}}).apply(G, sys);
}

LabeledGraph apply_word(const RippleWord& w, const LabeledGraph& G, const SuccessorSystem& sys) {
  return CompiledRipple(w).apply(G, sys);
}

int orbit_length(const RippleGen& g, const LabeledGraph& G, const SuccessorSystem& sys, int limit) {
  CompiledRipple cr(RippleWord{{g}});
  LabeledGraph cur = cr.apply(G, sys);
  for (int k = 1; k <= limit; ++k) {
    if (cur == G) return k;
    cur = cr.apply(cur, sys);
  }
  throw std::runtime_error("orbit_length: limit exceeded");
}

RippleWord build_gamma_rank(const Perm& pi, int ell) {
  check_c_size(pi.size());
  if (!pi.is_even()) throw std::invalid_argument("build_gamma_rank: pi must be even");
  if (pi.is_identity()) return {};
  auto [p1, p2] = ore_decompose(pi);
  return commutator(RippleWord::gamma(p1), RippleWord::beta(p2, ell));
}

RippleWord build_psi(const Perm& pi, int ell, int c) {
  int n = pi.size();
  check_c_size(n);
  if (!pi.is_even()) throw std::invalid_argument("build_psi: pi must be even");
  if (c < 0 || c >= n) throw std::invalid_argument("build_psi: c out of range");
  if (pi.is_identity()) return {};
  if (!pi.moves(c)) {
    auto d = decompose_avoiding(pi, c, 3);
    return nested_commutator({RippleWord::phi(d[0], c), RippleWord::gamma(d[1]), RippleWord::beta(d[2], ell)});
  }
  int f = -1;
  for (int x = 0; x < n && f < 0; ++x)
    if (!pi.moves(x)) f = x;
  if (f < 0) {
    RippleWord w;
    for (const auto& t : product_of_3cycles(pi)) w.append(build_psi(t, ell, c));
    return w;
  }
  // pi = rho^-1 sigma rho with sigma fixing c; the rank-restricted gamma never touches the
  // successors of a node it acts on, so conjugating by it keeps the C condition intact.
  int x = 0;
  while (x == f || x == c) ++x;
  Perm rho = Perm::cycle(n, {f, c, x});
  Perm sigma = rho * pi * rho.inverse();
  return conjugate(build_psi(sigma, ell, c), build_gamma_rank(rho, ell));
}

RippleWord build_catcher(int n, const Perm& pi) {
  check_c_size(pi.size());
  if (n < 1) throw std::invalid_argument("build_catcher: n must be at least 1");
  if (!pi.is_even() || pi.is_identity()) throw std::invalid_argument("build_catcher: pi must be even and nontrivial");
  auto [pi2, pi1] = ore_decompose(pi);
  Perm rho = Perm::cycle(pi.size(), {0, 1, 2});
  auto ripple = [&](const Perm& r, int p) {
    RippleWord w;
    for (int ell = 1; ell <= n - 1; ++ell) w.append(build_psi(r, ell, p));
    w.append(RippleWord::beta(r, n));
    return w;
  };
  RippleWord x1 = conjugate(build_psi(pi1, 0, 1), ripple(rho, 1));
  RippleWord x2 = conjugate(build_psi(pi2, 0, 2), ripple(rho.inverse(), 2));
  return commutator(x2, x1);
}

LabeledGraph psi_reference(const Perm& pi, int ell, int c, const LabeledGraph& G, const SuccessorSystem& sys) {
  LabeledGraph out = G;
  for (int u = 0; u < G.size(); ++u) {
    if (!is_successful(G, sys, u) || sys.rank[G.nodes[u].b] != ell) continue;
    bool ok = true;
    for (int s = 0; s < G.labels(); ++s)
      if (G.nodes[G.succ[u][s]].c != c) ok = false;
    if (ok) out.nodes[u].c = pi(G.nodes[u].c);
  }
  return out;
}

LabeledGraph gamma_rank_reference(const Perm& pi, int ell, const LabeledGraph& G, const SuccessorSystem& sys) {
  LabeledGraph out = G;
  for (int u = 0; u < G.size(); ++u)
    if (is_successful(G, sys, u) && sys.rank[G.nodes[u].b] == ell) out.nodes[u].c = pi(G.nodes[u].c);
  return out;
}

std::vector<int> catcher_roots(int n, const LabeledGraph& G, const std::vector<int>& rank,
                               const std::vector<char>& successful) {
  int N = G.size();
  std::vector<char> ok(N), next(N);
  for (int j = n; j >= 0; --j) {
    for (int v = 0; v < N; ++v) {
      bool f = rank[v] == j && (j == 0 || G.nodes[v].c == 0);
      if (f && j < n) {
        f = successful[v];
        for (int s = 0; s < G.labels() && f; ++s) f = next[G.succ[v][s]];
      }
      ok[v] = f;
    }
    std::swap(ok, next);
  }
  std::vector<int> roots;
  for (int v = 0; v < N; ++v)
    if (next[v]) roots.push_back(v);
  return roots;
}

std::vector<int> catcher_roots(int n, const LabeledGraph& G, const SuccessorSystem& sys) {
  NodeFacts f = facts(G, sys);
  return catcher_roots(n, G, f.rank, f.successful);
}

LabeledGraph oracle_catcher(int n, const Perm& pi, const LabeledGraph& G, const SuccessorSystem& sys) {
  LabeledGraph out = G;
  for (int u : catcher_roots(n, G, sys)) out.nodes[u].c = pi(G.nodes[u].c);
  return out;
}

long long good_graph_count(int nodes, int labels, int c_size, int b_size) {
  const long long cap = 1LL << 62;
  long long total = 1;
  auto mul = [&](long long f, int times) {
    for (int i = 0; i < times; ++i) total = (total > cap / f) ? cap : total * f;
  };
  mul(nodes + 1, nodes * labels);
  mul(static_cast<long long>(c_size) * b_size, nodes);
  return total;
}

long long for_each_good_graph(int nodes, int labels, int c_size, int b_size,
                              const std::function<bool(const LabeledGraph&)>& fn) {
  LabeledGraph g;
  g.nodes.assign(nodes, RNode{});
  g.succ.assign(nodes, std::vector<int>(labels, -1));
  long long visited = 0;
  int slots = nodes * labels;
  while (true) {
    // colorings for this shape
    for (auto& nd : g.nodes) nd = RNode{};
    while (true) {
      ++visited;
      if (!fn(g)) return visited;
      int i = 0;
      for (; i < nodes; ++i) {
        auto& nd = g.nodes[i];
        if (++nd.c < c_size) break;
        nd.c = 0;
        if (++nd.b < b_size) break;
        nd.b = 0;
      }
      if (i == nodes) break;
    }
    int i = 0;
    for (; i < slots; ++i) {
      int& e = g.succ[i / labels][i % labels];
      if (++e < nodes) break;
      e = -1;
    }
    if (i == slots) break;
  }
  return visited;
}

LabeledGraph random_graph(std::mt19937_64& rng, int max_nodes, int labels, int c_size, const SuccessorSystem& sys,
                          int plant_depth, int fill_c) {
  auto uni = [&](int k) { return static_cast<int>(std::uniform_int_distribution<int>(0, k - 1)(rng)); };
  int N = 1 + uni(max_nodes);
  LabeledGraph g;
  long long cone = 1, layer = 1;
  for (int j = 0; j < plant_depth; ++j) {
    layer *= labels;
    cone += layer;
  }
  bool plant = uni(2) == 0 && cone <= max_nodes;
  if (plant) N = std::max<int>(N, static_cast<int>(cone));
  g.nodes.resize(N);
  g.succ.assign(N, std::vector<int>(labels, -1));
  for (int u = 0; u < N; ++u) {
    g.nodes[u] = {uni(c_size), uni(sys.b_size)};
    for (int s = 0; s < labels; ++s) g.succ[u][s] = uni(3) == 0 ? -1 : uni(N);
  }
  if (plant) {
    std::vector<int> rank0;
    for (int b = 0; b < sys.b_size; ++b)
      if (sys.rank[b] == 0) rank0.push_back(b);
    if (!rank0.empty()) {
      g.nodes[0].b = rank0[uni(static_cast<int>(rank0.size()))];
      int next = 1;
      std::vector<int> frontier{0};
      for (int j = 0; j < plant_depth; ++j) {
        std::vector<int> nf;
        for (int v : frontier)
          for (int s = 0; s < labels; ++s) {
            int w = next++;
            g.succ[v][s] = w;
            std::vector<int> cand;
            for (int b = 0; b < sys.b_size; ++b)
              if (sys.related(s, g.nodes[v].b, b) && sys.rank[b] == j + 1) cand.push_back(b);
            if (!cand.empty()) g.nodes[w].b = cand[uni(static_cast<int>(cand.size()))];
            g.nodes[w].c = fill_c;
            nf.push_back(w);
          }
        frontier = std::move(nf);
      }
      int perturb = uni(3);
      for (int k = 0; k < perturb; ++k) {
        int u = uni(N);
        switch (uni(4)) {
          case 0: g.nodes[u].c = uni(c_size); break;
          case 1: g.nodes[u].b = uni(sys.b_size); break;
          case 2: g.succ[u][uni(labels)] = uni(4) == 0 ? -1 : uni(N); break;
          default: g.nodes[u].c = fill_c; break;
        }
      }
    }
  }
  return g;
}

}  // namespace rwp
