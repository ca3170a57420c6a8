#include "rwp/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "rwp/formula_library.hpp"

namespace rwp {

AutWord RippleRealizer::realize(const RippleWord& w) {
  AutWord out;
  for (const auto& g : w.gens) {
    auto key = std::make_tuple(static_cast<int>(g.kind), g.pi.images(), g.kind == RippleKind::Phi ? g.c : 0,
                               g.kind == RippleKind::Beta ? g.ell : 0);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      RippleGen base = g;
      base.inverted = false;
      it = cache_.emplace(key, std::make_shared<const AutWord>(build_(base))).first;
    }
    AutWord piece = AutWord::block(it->second);
    out.append(g.inverted ? piece.inverse() : piece);
  }
  return out;
}

// ---------------------------------------------------------------- Z^D cones

ZdLayout zd_layout(int d, int k, int c_size) {
  if (d < 1 || k < 0 || k > 20) throw std::invalid_argument("zd_layout: need d >= 1 and 0 <= k <= 20");
  if (c_size < 6) throw std::invalid_argument("zd_layout: |C| must be at least 6");
  ZdLayout L;
  L.d = d;
  L.k = k;
  L.n = 1 << k;
  L.tracks = Tracks({c_size, 1 << d}, {"C", "B"});
  L.G = Group::zd(d + 1);
  return L;
}

namespace {

size_t cell_index(const PeriodicPoint& x, const std::vector<int>& v) {
  if (v.size() != x.periods.size()) throw std::invalid_argument("periodic point: dimension mismatch");
  size_t idx = 0, mul = 1;
  for (size_t i = 0; i < v.size(); ++i) {
    int p = x.periods[i];
    idx += static_cast<size_t>(((v[i] % p) + p) % p) * mul;
    mul *= static_cast<size_t>(p);
  }
  return idx;
}

std::vector<int> add(std::vector<int> a, const std::vector<int>& b) {
  for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

// All points of the fundamental domain, coordinate 0 fastest.
std::vector<std::vector<int>> domain_points(const std::vector<int>& periods) {
  std::vector<std::vector<int>> out;
  std::vector<int> v(periods.size(), 0);
  while (true) {
    out.push_back(v);
    size_t i = 0;
    for (; i < v.size(); ++i) {
      if (++v[i] < periods[i]) break;
      v[i] = 0;
    }
    if (i == v.size()) break;
  }
  return out;
}

}  // namespace

int cell(const PeriodicPoint& x, const std::vector<int>& v) { return x.values[cell_index(x, v)]; }

void set_cell(PeriodicPoint& x, const std::vector<int>& v, int sym) { x.values[cell_index(x, v)] = sym; }

std::optional<std::vector<int>> index_at(const ZdLayout& L, const PeriodicPoint& x, const std::vector<int>& v) {
  if (static_cast<int>(x.periods.size()) != L.dim() || static_cast<int>(v.size()) != L.dim())
    throw std::invalid_argument("index_at: configuration and point must live in Z^(d+1)");
  std::vector<int> comp(L.d, 0);
  std::vector<int> p = v;
  for (int j = 0; j <= L.k; ++j) {
    int bits = L.tracks.get(cell(x, p), L.b_track);
    for (int i = 0; i < L.d; ++i) comp[i] |= ((bits >> i) & 1) << j;
    ++p[L.d];
  }
  for (int c : comp)
    if (c > L.n) return std::nullopt;
  return comp;
}

std::vector<std::vector<int>> geometric_cone(int d, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> u(d, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == d) {
      out.push_back(u);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      u[i] = a;
      rec(i + 1, left - a);
    }
    u[i] = 0;
  };
  rec(0, n);
  return out;
}

bool is_self_indexing(const ZdLayout& L, const PeriodicPoint& x, const std::vector<int>& v, int n) {
  for (const auto& u : geometric_cone(L.d, n)) {
    std::vector<int> uu = u;
    uu.push_back(0);
    auto idx = index_at(L, x, add(v, uu));
    if (!idx || *idx != u) return false;
  }
  return true;
}

void lay_cone(const ZdLayout& L, PeriodicPoint& x, const std::vector<int>& v, int n) {
  for (const auto& u : geometric_cone(L.d, n)) {
    std::vector<int> p = v;
    for (int i = 0; i < L.d; ++i) p[i] += u[i];
    for (int j = 0; j <= L.k; ++j) {
      int bits = 0;
      for (int i = 0; i < L.d; ++i) bits |= ((u[i] >> j) & 1) << i;
      set_cell(x, p, L.tracks.set(cell(x, p), L.b_track, bits));
      ++p[L.d];
    }
  }
}

std::vector<std::vector<int>> zd_catcher_roots(const ZdLayout& L, const PeriodicPoint& x) {
  std::vector<std::vector<int>> roots;
  auto cone = geometric_cone(L.d, L.n);
  for (const auto& v : domain_points(x.periods)) {
    if (!is_self_indexing(L, x, v, L.n)) continue;
    bool zeros = true;
    for (const auto& u : cone) {
      if (std::all_of(u.begin(), u.end(), [](int a) { return a == 0; })) continue;
      std::vector<int> uu = u;
      uu.push_back(0);
      if (L.tracks.get(cell(x, add(v, uu)), L.c_track) != 0) zeros = false;
    }
    if (zeros) roots.push_back(v);
  }
  return roots;
}

PeriodicPoint zd_catcher_reference(const ZdLayout& L, const Perm& pi, const PeriodicPoint& x) {
  PeriodicPoint y = x;
  for (const auto& v : zd_catcher_roots(L, x)) {
    int sym = cell(x, v);
    set_cell(y, v, L.tracks.set(sym, L.c_track, pi(L.tracks.get(sym, L.c_track))));
  }
  return y;
}

ZdCatcher build_zd_catcher(int d, int k, const Perm& pi) {
  if (d != 1) throw std::invalid_argument("build_zd_catcher: only d = 1 is implemented");
  ZdCatcher z;
  z.layout = zd_layout(d, k, pi.size());
  z.pi = pi;
  z.ripple = build_catcher(z.layout.n, pi);
  const ZdLayout& L = z.layout;
  const Group& G = L.G;
  auto vec = [&](int a, int b) { return G.zd_vector({a, b}); };
  Positions I, J;
  for (int j = 0; j <= k; ++j) {
    I.push_back(j);
    J.push_back(k + 1 + j);
  }
  // successful: idx(v) < n and idx(v + e_1) = idx(v) + 1
  Formula succ = f_and(binary_increment_at(I, J, 0, 1), atom(k, 0));
  auto block = [&](const Perm& p, const Formula& f, int positions, const std::string& name) {
    auto cb = std::make_shared<ControlledBlock>();
    cb->word = compile(p, f, ControlSpace::uniform(positions, 2));
    for (int i = 0; i < positions; ++i) cb->offsets.push_back(vec(i <= k ? 0 : 1, i <= k ? i : i - k - 1));
    cb->control_tracks = {L.b_track};
    cb->target = L.c_track;
    cb->name = name;
    return AutWord::controlled(cb);
  };
  RippleRealizer rr([&](const RippleGen& g) -> AutWord {
    switch (g.kind) {
      case RippleKind::Phi: return build_phi_single(L.tracks, L.c_track, L.b_track, g.pi, g.c, vec(1, 0));
      case RippleKind::Gamma: return block(g.pi, succ, 2 * (k + 1), "gamma");
      case RippleKind::Beta: {
        std::vector<int> bits;
        for (int j = 0; j <= k; ++j) bits.push_back((g.ell >> j) & 1);
        if (g.ell > L.n) return AutWord{};
        return block(g.pi, fixed_word_at(I, bits), k + 1, "beta" + std::to_string(g.ell));
      }
    }
    return AutWord{};
  });
  z.word = rr.realize(z.ripple);
  z.distinct_blocks = rr.distinct();
  return z;
}

PeriodicPoint apply_zd_catcher(const ZdCatcher& z, const PeriodicPoint& x, BlockMode mode) {
  FiniteAction X = FiniteAction::torus(z.layout.G, x.periods);
  PeriodicPoint y = x;
  apply_on_action(z.word, X, z.layout.tracks, y.values, mode);
  return y;
}

// ---------------------------------------------------------------- lamplighter grids

GroupElement grid_element(const Group& L, const GroupElement& g, int n, int l, int m) {
  if (L.backend() != Backend::Lamplighter) throw std::invalid_argument("grid_element: lamplighter group required");
  if (n < 0 || n > 30 || l < 0 || m < 0 || l >= (1 << n) || m >= (1 << n))
    throw std::invalid_argument("grid_element: coordinates out of range");
  const GroupElement a = L.word("a"), b = L.word("b");
  GroupElement out = g;
  for (int i = 1; i <= n; ++i)
    if ((l >> (i - 1)) & 1) out = L.product({out, L.power(a, -i), b, L.power(a, i - 1)});
  for (int j = 1; j <= n; ++j)
    if ((m >> (j - 1)) & 1) out = L.product({out, L.power(a, j), L.inverse(b), L.power(a, -j + 1)});
  return out;
}

GridCheck check_grid(int n) {
  Group L = Group::lamplighter(2, 1);
  GridCheck r;
  const int N = 1 << n;
  std::vector<GroupElement> f;
  for (int l = 0; l < N; ++l)
    for (int m = 0; m < N; ++m) {
      f.push_back(grid_element(L, L.identity(), n, l, m));
      if (L.shift(f.back()) != 0 && r.zero_shift) {
        r.zero_shift = false;
        r.witness = "shift of f(" + std::to_string(l) + "," + std::to_string(m) + ") is " + std::to_string(L.shift(f.back()));
      }
    }
  std::set<GroupElement> distinct(f.begin(), f.end());
  if (distinct.size() != f.size()) {
    r.injective = false;
    if (r.witness.empty()) r.witness = "two grid points share an element";
  }
  for (size_t i = 0; i < f.size(); ++i)
    for (size_t j = i + 1; j < f.size(); ++j) {
      ++r.pairs;
      if (L.multiply(f[i], f[j]) != L.multiply(f[j], f[i]) && r.commute) {
        r.commute = false;
        if (r.witness.empty())
          r.witness = "f at indices " + std::to_string(i) + " and " + std::to_string(j) + " do not commute";
      }
    }
  return r;
}

// ---------------------------------------------------------------- thickets

int Thicket::index_of(const std::vector<int>& w) const {
  auto it = std::lower_bound(words.begin(), words.end(), w, [](const std::vector<int>& a, const std::vector<int>& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  if (it == words.end() || *it != w) return -1;
  return static_cast<int>(it - words.begin());
}

int Thicket::num_classes() const {
  std::set<int> s(cls.begin(), cls.end());
  return static_cast<int>(s.size());
}

Thicket build_thicket(int k, int s, const std::vector<std::vector<int>>& U) {
  if (s < 2 || k < 0 || k > 12) throw std::invalid_argument("build_thicket: need |S| >= 2 and 0 <= k <= 12");
  Thicket t;
  t.k = k;
  t.s = s;
  std::vector<std::vector<int>> layer{{}};
  for (int len = 0; len <= k; ++len) {
    t.words.insert(t.words.end(), layer.begin(), layer.end());
    std::vector<std::vector<int>> next;
    for (const auto& w : layer)
      for (int a = 0; a < s; ++a) {
        auto x = w;
        x.push_back(a);
        next.push_back(std::move(x));
      }
    layer = std::move(next);
  }
  std::vector<int> parent(t.words.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  auto unite = [&](int x, int y) {
    x = find(x);
    y = find(y);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  };
  for (const auto& u : U) {
    for (int a : u)
      if (a < 0 || a >= s) throw std::invalid_argument("build_thicket: letter out of range");
    if (static_cast<int>(u.size()) >= k) continue;
    for (const auto& w : t.words) {
      // w = u s0 v: identify with u s v for every s
      if (w.size() < u.size() + 1 || !std::equal(u.begin(), u.end(), w.begin()) || w[u.size()] != 0) continue;
      int base = t.index_of(w);
      for (int a = 1; a < s; ++a) {
        auto x = w;
        x[u.size()] = a;
        unite(base, t.index_of(x));
      }
    }
  }
  t.cls.resize(t.words.size());
  for (size_t i = 0; i < t.words.size(); ++i) t.cls[i] = find(static_cast<int>(i));
  return t;
}

std::vector<int> branching_counts(const Thicket& t) {
  std::vector<int> out;
  for (const auto& w : t.words) {
    if (static_cast<int>(w.size()) != t.k) continue;
    int count = 0;
    for (int len = 0; len < t.k; ++len) {
      std::vector<int> p(w.begin(), w.begin() + len);
      std::set<int> kids;
      for (int a = 0; a < t.s; ++a) {
        auto x = p;
        x.push_back(a);
        kids.insert(t.cls[t.index_of(x)]);
      }
      if (static_cast<int>(kids.size()) == t.s) ++count;
    }
    out.push_back(count);
  }
  return out;
}

bool is_thicket(const Thicket& t, int n) {
  auto c = branching_counts(t);
  return std::all_of(c.begin(), c.end(), [&](int x) { return x >= n; });
}

// ---------------------------------------------------------------- free monoid reduction

namespace {

std::vector<int> pad_pow2(const NDTM& m, std::vector<int> in) {
  size_t n = 1;
  while (n < in.size()) n *= 2;
  in.resize(n, m.blank);
  return in;
}

}  // namespace

MonoidLayout monoid_layout(const NDTM& t0, const NDTM& t1, const std::vector<int>& input, int c_size) {
  t0.validate();
  t1.validate();
  if (t0.num_states() != t1.num_states() || t0.num_symbols() != t1.num_symbols() || t0.init != t1.init ||
      t0.blank != t1.blank)
    throw std::invalid_argument("monoid_layout: machines must share states, alphabet, initial state and blank");
  if (input.empty()) throw std::invalid_argument("monoid_layout: empty input");
  MonoidLayout L;
  L.t0 = t0;
  L.t1 = t1;
  L.input = pad_pow2(t0, input);
  L.n = static_cast<int>(L.input.size());
  L.tracks = Tracks({c_size, 3, ConfigAlphabet(t0).size()}, {"C", "B", "W"});
  return L;
}

std::optional<std::vector<int>> monoid_node_color(const MonoidLayout& L, const FiniteAction& X, const std::vector<int>& x,
                                                  int g) {
  const auto& c = X.right_mult(L.G.word("c"));
  std::vector<int> u;
  bool seen_q = false;
  for (int i = 0, h = g; i < L.n; ++i, h = c[h]) {
    int b = L.tracks.get(x[h], L.b_track);
    if (b == MonoidLayout::kQ) seen_q = true;
    else if (seen_q) return std::nullopt;
    u.push_back(b);
  }
  return u;
}

MonoidGraph monoid_graph(const MonoidLayout& L, const FiniteAction& X, const std::vector<int>& x) {
  MonoidGraph mg;
  const int P = X.size();
  const auto& c = X.right_mult(L.G.word("c"));
  const ID init = initial_id(L.t0, L.input);
  std::vector<std::vector<int>> us(P), ws(P);
  mg.node_of.assign(P, -1);
  for (int g = 0; g < P; ++g) {
    auto u = monoid_node_color(L, X, x, g);
    if (!u) continue;
    ID w;
    for (int i = 0, h = g; i < L.n; ++i, h = c[h]) w.push_back(L.tracks.get(x[h], L.w_track));
    if (!is_valid_id(L.t0, w)) continue;
    int letters = static_cast<int>(std::count_if(u->begin(), u->end(), [](int b) { return b != MonoidLayout::kQ; }));
    if (letters == 0 && w != init) continue;
    if (letters == L.n && !is_final_id(L.t0, w)) continue;
    mg.node_of[g] = static_cast<int>(mg.point.size());
    mg.point.push_back(g);
    mg.rank.push_back(letters);
    us[g] = *u;
    ws[g] = w;
  }
  const int N = static_cast<int>(mg.point.size());
  mg.graph.nodes.resize(N);
  mg.graph.succ.assign(N, std::vector<int>(2, -1));
  mg.successful.assign(N, 0);
  const std::vector<int>* moves[2] = {&X.right_mult(L.G.word("a")), &X.right_mult(L.G.word("b"))};
  const NDTM* machines[2] = {&L.t0, &L.t1};
  for (int v = 0; v < N; ++v) {
    int g = mg.point[v];
    mg.graph.nodes[v].c = L.tracks.get(x[g], L.c_track);
    bool ok = mg.rank[v] < L.n;
    for (int t = 0; t < 2; ++t) {
      int h = (*moves[t])[g];
      int nv = mg.node_of[h];
      mg.graph.succ[v][t] = nv;
      if (nv < 0) {
        ok = false;
        continue;
      }
      if (!ok) continue;
      std::vector<int> want = us[g];
      want[mg.rank[v]] = t;
      if (us[h] != want || !is_step(*machines[t], ws[g], ws[h])) ok = false;
    }
    mg.successful[v] = ok;
  }
  return mg;
}

std::vector<int> monoid_reference(const MonoidLayout& L, const Perm& pi, const FiniteAction& X, const std::vector<int>& x) {
  MonoidGraph mg = monoid_graph(L, X, x);
  std::vector<int> y = x;
  for (int v : catcher_roots(L.n, mg.graph, mg.rank, mg.successful)) {
    int g = mg.point[v];
    y[g] = L.tracks.set(x[g], L.c_track, pi(L.tracks.get(x[g], L.c_track)));
  }
  return y;
}

namespace {

// Node conditions on one chain of (B, W) positions.
Formula node_formula(const MonoidLayout& L, const Positions& B, const Positions& W) {
  ConfigAlphabet ca(L.t0);
  SymbolSet tape, heads, final_heads;
  for (int s = 0; s < ca.S; ++s) tape.push_back(s);
  for (int q = 0; q < ca.Q; ++q)
    for (int s = 0; s < ca.S; ++s) {
      heads.push_back(ca.head(q, s));
      if (L.t0.is_final(q)) final_heads.push_back(ca.head(q, s));
    }
  std::vector<Formula> tail;
  for (size_t i = 0; i + 1 < B.size(); ++i)
    tail.push_back(f_or(in_set(B[i], {MonoidLayout::kA, MonoidLayout::kB}), atom(B[i + 1], MonoidLayout::kQ)));
  std::vector<Formula> fin;
  for (int p : W) fin.push_back(in_set(p, final_heads));
  Formula init = f_or(f_not(subalphabet(B, {MonoidLayout::kQ})), fixed_word_at(W, initial_id(L.t0, L.input)));
  Formula final = f_or(f_not(subalphabet(B, {MonoidLayout::kA, MonoidLayout::kB})), any_of(fin));
  return all_of({all_of(tail), exactly_one(W, heads, tape), init, final});
}

}  // namespace

TreeRegion tree_region(int n) {
  if (n < 1 || n > 10) throw std::invalid_argument("tree_region: n out of range");
  Group G = Group::free(3);
  std::vector<std::string> words{""};
  for (size_t i = 0; i < words.size(); ++i)
    if (static_cast<int>(words[i].size()) < n)
      for (char ch : {'a', 'b'}) words.push_back(words[i] + ch);
  std::map<std::string, int> wid;
  for (size_t i = 0; i < words.size(); ++i) wid[words[i]] = static_cast<int>(i);
  const int P = static_cast<int>(words.size()) * n;
  auto pt = [&](const std::string& w, int i) { return wid.at(w) * n + i; };
  auto complete = [&](std::vector<int> tbl) {
    std::vector<char> hit(P, 0);
    for (int x : tbl)
      if (x >= 0) hit[x] = 1;
    std::vector<int> free_targets;
    for (int y = 0; y < P; ++y)
      if (!hit[y]) free_targets.push_back(y);
    size_t k = 0;
    for (int& x : tbl)
      if (x < 0) x = free_targets[k++];
    return tbl;
  };
  auto inverse = [&](const std::vector<int>& tbl) {
    std::vector<int> inv(P);
    for (int x = 0; x < P; ++x) inv[tbl[x]] = x;
    return inv;
  };
  std::vector<int> ta(P, -1), tb(P, -1), tc(P);
  for (const auto& w : words) {
    if (static_cast<int>(w.size()) < n) {
      ta[pt(w, 0)] = pt(w + "a", 0);
      tb[pt(w, 0)] = pt(w + "b", 0);
    }
    for (int i = 0; i < n; ++i) tc[pt(w, i)] = pt(w, (i + 1) % n);
  }
  ta = complete(ta);
  tb = complete(tb);
  std::vector<std::vector<int>> tables(6);
  const auto& names = G.generator_names();
  for (size_t j = 0; j < names.size(); ++j) {
    const std::string& nm = names[j];
    const std::vector<int>& base = (nm == "a" || nm == "A") ? ta : (nm == "b" || nm == "B") ? tb : tc;
    tables[j] = std::isupper(static_cast<unsigned char>(nm[0])) ? inverse(base) : base;
  }
  TreeRegion R{FiniteAction(G, tables), {}};
  for (const auto& w : words)
    for (int i = 0; i < n; ++i) R.point[{w, i}] = pt(w, i);
  return R;
}

std::vector<int> encode_tree(const MonoidLayout& L, const TreeRegion& R, const std::vector<ID>& tree) {
  std::vector<int> x(R.X.size(), 0);
  for (const auto& [key, p] : R.point) {
    const auto& [w, i] = key;
    size_t h = 1;
    for (char ch : w) h = 2 * h + (ch == 'b');
    int b = i < static_cast<int>(w.size()) ? (w[i] == 'b' ? MonoidLayout::kB : MonoidLayout::kA) : MonoidLayout::kQ;
    x[p] = L.tracks.encode({0, b, tree.at(h).at(i)});
  }
  return x;
}

PspaceReduction build_pspace_reduction(const NDTM& t0, const NDTM& t1, const std::vector<int>& input) {
  PspaceReduction r;
  r.layout = monoid_layout(t0, t1, input);
  const MonoidLayout& L = r.layout;
  const Group& G = L.G;
  const int n = L.n;
  r.pi = Perm::cycle(L.tracks.radix[L.c_track], {0, 1, 2});
  r.ripple = build_catcher(n, r.pi);
  const int wsize = L.tracks.radix[L.w_track];

  // chain t (0: g, 1: ga, 2: gb) position i: B at 2(tn + i), W at 2(tn + i) + 1
  std::vector<GroupElement> offsets;
  std::vector<std::vector<int>> ptracks;
  std::vector<int> radix;
  Positions B[3], W[3];
  for (int t = 0; t < 3; ++t)
    for (int i = 0; i < n; ++i) {
      GroupElement o = G.multiply(t == 0 ? G.identity() : G.word(t == 1 ? "a" : "b"), G.power(G.word("c"), i));
      B[t].push_back(static_cast<int>(offsets.size()));
      offsets.push_back(o);
      ptracks.push_back({L.b_track});
      radix.push_back(3);
      W[t].push_back(static_cast<int>(offsets.size()));
      offsets.push_back(o);
      ptracks.push_back({L.w_track});
      radix.push_back(wsize);
    }
  SymbolSet letters{MonoidLayout::kA, MonoidLayout::kB};
  Formula successful = all_of({node_formula(L, B[0], W[0]), node_formula(L, B[1], W[1]), node_formula(L, B[2], W[2]),
                               tail_append_at(B[0], B[1], MonoidLayout::kA, MonoidLayout::kQ, letters),
                               tail_append_at(B[0], B[2], MonoidLayout::kB, MonoidLayout::kQ, letters),
                               step_formula(L.t0, W[0], W[1]), step_formula(L.t1, W[0], W[2])});
  auto block = [&](const Perm& p, const Formula& f, int chains, const std::string& name) {
    auto cb = std::make_shared<ControlledBlock>();
    const int m = 2 * n * chains;
    ControlSpace space{std::vector<int>(radix.begin(), radix.begin() + m)};
    cb->word = compile(p, f, space);
    cb->offsets.assign(offsets.begin(), offsets.begin() + m);
    cb->position_tracks.assign(ptracks.begin(), ptracks.begin() + m);
    cb->target = L.c_track;
    cb->name = name;
    r.max_block_length = std::max<long long>(r.max_block_length, static_cast<long long>(cb->word.length()));
    return AutWord::controlled(cb);
  };
  std::vector<GroupElement> S{G.word("a"), G.word("b")};
  RippleRealizer rr([&](const RippleGen& g) -> AutWord {
    switch (g.kind) {
      case RippleKind::Phi: return build_phi_set(L.tracks, L.c_track, L.b_track, g.pi, g.c, S);
      case RippleKind::Gamma: return block(g.pi, successful, 3, "gamma");
      case RippleKind::Beta: {
        if (g.ell > n) return AutWord{};
        Positions lo(B[0].begin(), B[0].begin() + g.ell), hi(B[0].begin() + g.ell, B[0].end());
        Formula f = all_of({node_formula(L, B[0], W[0]), subalphabet(lo, letters), subalphabet(hi, {MonoidLayout::kQ})});
        return block(g.pi, f, 1, "beta" + std::to_string(g.ell));
      }
    }
    return AutWord{};
  });
  r.word = rr.realize(r.ripple);
  return r;
}

ReductionVerdict decide_reduction(const PspaceReduction& r, const TreeRegion& R, size_t tree_limit,
                                  bool stop_at_witness) {
  const MonoidLayout& L = r.layout;
  ReductionVerdict v;
  v.verdict = Verdict::Trivial;
  for (const auto& tree : all_computation_trees(L.t0, L.t1, L.input, tree_limit)) {
    ++v.trees;
    auto x = encode_tree(L, R, tree);
    auto y = x;
    apply_on_action(r.word, R.X, L.tracks, y);
    if (y != monoid_reference(L, r.pi, R.X, x)) v.reference_agrees = false;
    if (y != x && v.verdict != Verdict::Nontrivial) {
      v.verdict = Verdict::Nontrivial;
      v.witness_tree = tree;
      if (stop_at_witness) break;
    }
  }
  return v;
}

}  // namespace rwp
