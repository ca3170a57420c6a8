#include "rwp/ca.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace rwp {

Tracks::Tracks(std::vector<int> r, std::vector<std::string> n) : radix(std::move(r)), names(std::move(n)) {
  for (int x : radix)
    if (x < 1) throw std::invalid_argument("Tracks: radix must be positive");
  if (names.empty())
    for (size_t i = 0; i < radix.size(); ++i) names.push_back("t" + std::to_string(i));
  if (names.size() != radix.size()) throw std::invalid_argument("Tracks: names and radices differ in length");
  if (alphabet_size() > (1 << 24)) throw std::invalid_argument("Tracks: alphabet too large");
}

int Tracks::alphabet_size() const {
  long long s = 1;
  for (int x : radix) {
    s *= x;
    if (s > (1 << 30)) return 1 << 30;
  }
  return static_cast<int>(s);
}

int Tracks::stride(int t) const {
  int s = 1;
  for (int i = 0; i < t; ++i) s *= radix[i];
  return s;
}

int Tracks::encode(const std::vector<int>& values) const {
  int sym = 0;
  for (int t = count() - 1; t >= 0; --t) sym = sym * radix[t] + values[t];
  return sym;
}

std::vector<int> Tracks::decode(int sym) const {
  std::vector<int> v(count());
  for (int t = 0; t < count(); ++t) {
    v[t] = sym % radix[t];
    sym /= radix[t];
  }
  return v;
}

int Tracks::index_of(const std::string& name) const {
  for (int t = 0; t < count(); ++t)
    if (names[t] == name) return t;
  throw std::invalid_argument("Tracks: unknown track " + name);
}

Perm symbol_perm_from(const Tracks& tr, const std::function<std::vector<int>(const std::vector<int>&)>& f) {
  std::vector<int> img(tr.alphabet_size());
  for (int s = 0; s < tr.alphabet_size(); ++s) img[s] = tr.encode(f(tr.decode(s)));
  return Perm(img);
}

Perm track_perm(const Tracks& tr, int target, const Perm& p, const std::function<bool(const std::vector<int>&)>& cond) {
  if (p.size() != tr.radix.at(target)) throw std::invalid_argument("track_perm: permutation size does not match track");
  return symbol_perm_from(tr, [&](std::vector<int> v) {
    if (!cond || cond(v)) v[target] = p(v[target]);
    return v;
  });
}

// ---------------------------------------------------------------- words

AutWord AutWord::shift(const GroupElement& g, int track, std::string name) {
  AutWord w;
  Letter l;
  l.kind = LetterKind::Shift;
  l.g = g;
  l.track = track;
  l.name = std::move(name);
  w.letters_.push_back(std::move(l));
  return w;
}

AutWord AutWord::symbol(const Perm& p, std::string name) {
  AutWord w;
  Letter l;
  l.kind = LetterKind::Perm;
  l.perm = std::make_shared<const Perm>(p);
  l.name = std::move(name);
  w.letters_.push_back(std::move(l));
  return w;
}

AutWord AutWord::block(std::shared_ptr<const AutWord> b, std::string name) {
  AutWord w;
  Letter l;
  l.kind = LetterKind::Block;
  l.block = std::move(b);
  l.name = std::move(name);
  w.letters_.push_back(std::move(l));
  return w;
}

AutWord AutWord::controlled(std::shared_ptr<const ControlledBlock> b) {
  AutWord w;
  Letter l;
  l.kind = LetterKind::Controlled;
  l.name = b->name;
  l.controlled = std::move(b);
  w.letters_.push_back(std::move(l));
  return w;
}

long long AutWord::flat_length() const {
  long long n = 0;
  for (const auto& l : letters_) {
    switch (l.kind) {
      case LetterKind::Shift:
      case LetterKind::Perm: ++n; break;
      case LetterKind::Block: n += l.block->flat_length(); break;
      case LetterKind::Controlled: {
        // sigma^-1 eta sigma per control track, eta alone at the identity offset
        const auto& cb = *l.controlled;
        for (const auto& g : cb.word.gens()) {
          const GroupElement& o = cb.offsets[g.position];
          bool at_identity = std::all_of(o.data.begin(), o.data.end(), [](int64_t x) { return x == 0; });
          n += at_identity ? 1 : 1 + 2 * static_cast<long long>(cb.tracks_at(g.position).size());
        }
        break;
      }
    }
  }
  return n;
}

AutWord AutWord::inverse() const {
  AutWord w;
  w.letters_.assign(letters_.rbegin(), letters_.rend());
  for (auto& l : w.letters_) l.inverted = !l.inverted;
  return w;
}

AutWord& AutWord::append(const AutWord& w) {
  letters_.insert(letters_.end(), w.letters_.begin(), w.letters_.end());
  return *this;
}

AutWord& AutWord::push(Letter l) {
  letters_.push_back(std::move(l));
  return *this;
}

AutWord operator*(const AutWord& a, const AutWord& b) {
  AutWord w = a;
  w.append(b);
  return w;
}

AutWord commutator(const AutWord& a, const AutWord& b) { return a.inverse() * b.inverse() * a * b; }

AutWord nested_commutator(const std::vector<AutWord>& ws) {
  if (ws.empty()) return AutWord{};
  AutWord acc = ws.back();
  for (size_t i = ws.size() - 1; i-- > 0;) acc = commutator(ws[i], acc);
  return acc;
}

AutWord conjugate(const AutWord& a, const AutWord& b) { return b.inverse() * a * b; }

AutWord power(const AutWord& a, int e) {
  AutWord base = e < 0 ? a.inverse() : a, out;
  for (int i = 0; i < std::abs(e); ++i) out.append(base);
  return out;
}

// ---------------------------------------------------------------- controlled blocks

const std::vector<int>& ControlledBlock::view_perm(long long u) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find(u);
  if (it != cache_.end()) return it->second;
  std::vector<int> uv = word.space().decode(u);
  const int C = word.c_size();
  std::vector<int> table(2 * C);
  std::vector<int> img = word.images(uv);
  for (int c = 0; c < C; ++c) {
    table[c] = img[c];
    table[C + img[c]] = c;
  }
  return cache_.emplace(u, std::move(table)).first->second;
}

std::shared_ptr<const AutWord> ControlledBlock::expand(const Group& G, const Tracks& tr) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (flat_) return flat_;
  if (tr.radix.at(target) != word.c_size()) throw std::invalid_argument("ControlledBlock: target track does not match |C|");
  if (!position_tracks.empty() && position_tracks.size() != offsets.size())
    throw std::invalid_argument("ControlledBlock: position_tracks must match offsets");
  for (int i = 0; i < word.space().n(); ++i) {
    int ctrl_size = 1;
    for (int t : tracks_at(i)) {
      if (t == target) throw std::invalid_argument("ControlledBlock: target is a control track");
      ctrl_size *= tr.radix.at(t);
    }
    if (word.space().radix[i] > ctrl_size) throw std::invalid_argument("ControlledBlock: control alphabet larger than control tracks");
  }
  std::map<std::tuple<int, bool, int, int>, std::shared_ptr<const Perm>> etas;
  auto out = std::make_shared<AutWord>();
  for (const auto& g : word.gens()) {
    const auto& cts = tracks_at(g.position);
    auto key = std::make_tuple(g.perm, g.inverted, g.symbol, position_tracks.empty() ? 0 : g.position);
    auto it = etas.find(key);
    if (it == etas.end()) {
      std::vector<int> want(cts.size());
      int a = g.symbol;
      for (size_t j = 0; j < cts.size(); ++j) {
        want[j] = a % tr.radix[cts[j]];
        a /= tr.radix[cts[j]];
      }
      Perm p = g.inverted ? word.perm(g.perm).inverse() : word.perm(g.perm);
      Perm eta = track_perm(tr, target, p, [&](const std::vector<int>& v) {
        for (size_t j = 0; j < cts.size(); ++j)
          if (v[cts[j]] != want[j]) return false;
        return true;
      });
      it = etas.emplace(key, std::make_shared<const Perm>(std::move(eta))).first;
    }
    const GroupElement& o = offsets.at(g.position);
    bool at_identity = o == G.identity();
    AutWord shifts;
    if (!at_identity)
      for (int t : cts) shifts.append(AutWord::shift(o, t));
    Letter eta;
    eta.kind = LetterKind::Perm;
    eta.perm = it->second;
    out->append(shifts.inverse());
    out->push(eta);
    out->append(shifts);
  }
  flat_ = out;
  return flat_;
}

// ---------------------------------------------------------------- flattening

namespace {

void flatten_into(const AutWord& w, bool inv, const Group& G, const Tracks& tr, std::vector<Letter>& out) {
  const auto& ls = w.letters();
  for (size_t k = 0; k < ls.size(); ++k) {
    const Letter& l = inv ? ls[ls.size() - 1 - k] : ls[k];
    bool li = l.inverted != inv;
    switch (l.kind) {
      case LetterKind::Shift:
      case LetterKind::Perm: {
        Letter c = l;
        c.inverted = li;
        out.push_back(std::move(c));
        break;
      }
      case LetterKind::Block: flatten_into(*l.block, li, G, tr, out); break;
      case LetterKind::Controlled: flatten_into(*l.controlled->expand(G, tr), li, G, tr, out); break;
    }
  }
}

int64_t element_norm(const Group& G, const GroupElement& g) {
  switch (G.backend()) {
    case Backend::Zd: {
      int64_t s = 0;
      for (int64_t x : g.data) s += std::abs(x);
      return s;
    }
    case Backend::Free: return static_cast<int64_t>(g.data.size());
    case Backend::Lamplighter: return G.norm(g);
  }
  return 0;
}

}  // namespace

std::vector<Letter> flatten(const AutWord& w, const Group& G, const Tracks& tr) {
  std::vector<Letter> out;
  flatten_into(w, false, G, tr, out);
  return out;
}

long long cumulative_radius(const AutWord& w, const Group& G, const Tracks& tr) {
  long long r = 0;
  for (const auto& l : flatten(w, G, tr))
    if (l.kind == LetterKind::Shift) r += element_norm(G, l.g);
  return r;
}

// ---------------------------------------------------------------- evaluation plans

namespace {

// deps[t] = input tracks on which output track t of the symbol permutation depends.
std::vector<std::vector<int>> perm_dependencies(const Perm& p, const Tracks& tr) {
  const int k = tr.count();
  std::vector<std::vector<int>> deps(k);
  for (int t = 0; t < k; ++t)
    for (int u = 0; u < k; ++u) {
      bool depends = false;
      for (int s = 0; s < tr.alphabet_size() && !depends; ++s)
        for (int v = 0; v < tr.radix[u] && !depends; ++v)
          if (tr.get(p(s), t) != tr.get(p(tr.set(s, u, v)), t)) depends = true;
      if (depends) deps[t].push_back(u);
    }
  return deps;
}

}  // namespace

EvalPlan::EvalPlan(const AutWord& w, const Group& G, const Tracks& tr, const std::vector<std::vector<GroupElement>>& extra)
    : tr_(tr), flat_(flatten(w, G, tr)) {
  const int k = tr.count();
  const size_t m = flat_.size();
  for (const auto& l : flat_)
    if (l.kind == LetterKind::Perm && l.perm->size() != tr.alphabet_size())
      throw std::invalid_argument("EvalPlan: symbol permutation does not match the alphabet");
  // The permutation each Perm letter applies (inverse for inverted letters).
  std::vector<const Perm*> applied(m, nullptr);
  std::map<const Perm*, std::shared_ptr<const Perm>> inverses;
  for (size_t i = 0; i < m; ++i) {
    const Letter& l = flat_[i];
    if (l.kind != LetterKind::Perm) continue;
    if (!l.inverted) {
      applied[i] = l.perm.get();
      continue;
    }
    auto& inv = inverses[l.perm.get()];
    if (!inv) {
      inv = std::make_shared<const Perm>(l.perm->inverse());
      perms_.push_back(inv);
    }
    applied[i] = inv.get();
  }
  std::map<const Perm*, std::vector<std::vector<int>>> dep_cache;
  auto deps_of = [&](const Perm* p) -> const std::vector<std::vector<int>>& {
    auto it = dep_cache.find(p);
    if (it == dep_cache.end()) it = dep_cache.emplace(p, perm_dependencies(*p, tr)).first;
    return it->second;
  };

  std::vector<std::vector<std::set<GroupElement>>> sets(m + 1, std::vector<std::set<GroupElement>>(k));
  for (int t = 0; t < k; ++t) sets[0][t].insert(G.identity());
  for (size_t i = 0; i < m; ++i) {
    const Letter& l = flat_[i];
    if (l.kind == LetterKind::Shift) {
      GroupElement g = l.inverted ? G.inverse(l.g) : l.g;
      for (int t = 0; t < k; ++t)
        for (const auto& h : sets[i][t]) sets[i + 1][t].insert(t == l.track ? G.multiply(h, g) : h);
    } else {
      const auto& deps = deps_of(applied[i]);
      for (int t = 0; t < k; ++t)
        for (int u : deps[t]) sets[i + 1][u].insert(sets[i][t].begin(), sets[i][t].end());
    }
  }
  for (int t = 0; t < k; ++t) sets[m][t].insert(G.identity());
  for (size_t t = 0; t < extra.size() && static_cast<int>(t) < k; ++t) sets[m][t].insert(extra[t].begin(), extra[t].end());

  domains_.resize(m + 1);
  std::vector<std::vector<std::map<GroupElement, int>>> index(m + 1, std::vector<std::map<GroupElement, int>>(k));
  for (size_t i = 0; i <= m; ++i) {
    domains_[i].resize(k);
    for (int t = 0; t < k; ++t) {
      domains_[i][t].assign(sets[i][t].begin(), sets[i][t].end());
      for (size_t j = 0; j < domains_[i][t].size(); ++j) index[i][t][domains_[i][t][j]] = static_cast<int>(j);
    }
  }
  steps_.resize(m);
  for (size_t i = 0; i < m; ++i) {
    const Letter& l = flat_[i];
    Step& st = steps_[i];
    st.kind = l.kind;
    st.track = l.track;
    if (l.kind == LetterKind::Shift) {
      GroupElement g = l.inverted ? G.inverse(l.g) : l.g;
      // gather per track flattened: track t cells follow in order
      for (int t = 0; t < k; ++t)
        for (const auto& h : domains_[i][t]) st.gather.push_back(index[i + 1][t].at(t == l.track ? G.multiply(h, g) : h));
    } else {
      st.perm = applied[i];
      st.perm_gather.resize(k);
      for (int t = 0; t < k; ++t)
        for (const auto& h : domains_[i][t]) {
          std::vector<int> src(k, -1);
          for (int u = 0; u < k; ++u) {
            auto it = index[i + 1][u].find(h);
            if (it != index[i + 1][u].end()) src[u] = it->second;
          }
          st.perm_gather[t].push_back(std::move(src));
        }
    }
  }
  identity_index_.resize(k);
  for (int t = 0; t < k; ++t) identity_index_[t] = index[m][t].at(G.identity());
}

double EvalPlan::log10_patterns() const {
  double s = 0;
  for (int t = 0; t < tr_.count(); ++t) s += input_domain()[t].size() * std::log10(tr_.radix[t]);
  return s;
}

long long EvalPlan::pattern_count() const {
  long long n = 1;
  for (int t = 0; t < tr_.count(); ++t)
    for (size_t j = 0; j < input_domain()[t].size(); ++j) {
      if (n > (1LL << 62) / tr_.radix[t]) return -1;
      n *= tr_.radix[t];
    }
  return n;
}

int EvalPlan::eval(const std::vector<std::vector<int>>& input) const {
  const int k = tr_.count();
  std::vector<std::vector<int>> cur = input, next(k);
  for (size_t i = steps_.size(); i-- > 0;) {
    const Step& st = steps_[i];
    for (int t = 0; t < k; ++t) next[t].assign(domains_[i][t].size(), 0);
    if (st.kind == LetterKind::Shift) {
      size_t pos = 0;
      for (int t = 0; t < k; ++t)
        for (size_t j = 0; j < next[t].size(); ++j) next[t][j] = cur[t][st.gather[pos++]];
    } else {
      for (int t = 0; t < k; ++t)
        for (size_t j = 0; j < next[t].size(); ++j) {
          const auto& src = st.perm_gather[t][j];
          int sym = 0;
          for (int u = 0; u < k; ++u)
            if (src[u] >= 0) sym += cur[u][src[u]] * tr_.stride(u);
          next[t][j] = tr_.get((*st.perm)(sym), t);
        }
    }
    std::swap(cur, next);
  }
  int sym = 0;
  for (int t = 0; t < k; ++t) sym += cur[t][0] * tr_.stride(t);
  return sym;
}

int EvalPlan::input_at_identity(const std::vector<std::vector<int>>& input) const {
  int sym = 0;
  for (int t = 0; t < tr_.count(); ++t) sym += input[t][identity_index_[t]] * tr_.stride(t);
  return sym;
}

std::vector<std::vector<int>> EvalPlan::from_pattern(const Pattern& p) const {
  std::vector<std::vector<int>> in(tr_.count());
  for (int t = 0; t < tr_.count(); ++t)
    for (const auto& h : input_domain()[t]) {
      auto it = p.values.find(h);
      in[t].push_back(it == p.values.end() ? 0 : tr_.get(it->second, t));
    }
  return in;
}

Pattern EvalPlan::to_pattern(const std::vector<std::vector<int>>& input) const {
  Pattern p;
  for (int t = 0; t < tr_.count(); ++t)
    for (size_t j = 0; j < input_domain()[t].size(); ++j) {
      int& sym = p.values[input_domain()[t][j]];
      sym = tr_.set(sym, t, input[t][j]);
    }
  return p;
}

std::vector<std::vector<int>> EvalPlan::decode_index(long long index) const {
  std::vector<std::vector<int>> in(tr_.count());
  for (int t = 0; t < tr_.count(); ++t)
    for (size_t j = 0; j < input_domain()[t].size(); ++j) {
      in[t].push_back(static_cast<int>(index % tr_.radix[t]));
      index /= tr_.radix[t];
    }
  return in;
}

namespace {

// Next input in mixed-radix order; false after the last one.
bool advance(std::vector<std::vector<int>>& in, const Tracks& tr) {
  for (int t = 0; t < tr.count(); ++t)
    for (auto& x : in[t]) {
      if (++x < tr.radix[t]) return true;
      x = 0;
    }
  return false;
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Trivial: return "trivial";
    case Verdict::Nontrivial: return "nontrivial";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

TrivialityResult is_trivial(const AutWord& w, const Group& G, const Tracks& tr, long long budget, uint64_t seed) {
  EvalPlan plan(w, G, tr);
  TrivialityResult res;
  const int k = tr.count();
  auto check = [&](const std::vector<std::vector<int>>& in) {
    ++res.tested;
    int before = plan.input_at_identity(in), after = plan.eval(in);
    if (before == after) return false;
    res.verdict = Verdict::Nontrivial;
    res.witness = plan.to_pattern(in);
    res.before = before;
    res.after = after;
    return true;
  };
  std::vector<std::vector<int>> in(k);
  for (int t = 0; t < k; ++t) in[t].assign(plan.input_domain()[t].size(), 0);
  long long count = plan.pattern_count();
  if (count >= 0 && count <= budget) {
    res.exhaustive = true;
    for (long long n = 0; n < count; ++n) {
      if (check(in)) return res;
      advance(in, tr);
    }
    res.verdict = Verdict::Trivial;
    return res;
  }
  // Sparse patterns: zero background with one or two nonzero entries.
  std::vector<std::pair<int, int>> slots;
  for (int t = 0; t < k; ++t)
    for (size_t j = 0; j < in[t].size(); ++j) slots.emplace_back(t, static_cast<int>(j));
  if (check(in)) return res;
  for (size_t a = 0; a < slots.size() && res.tested < budget; ++a)
    for (int va = 1; va < tr.radix[slots[a].first]; ++va) {
      in[slots[a].first][slots[a].second] = va;
      if (check(in)) return res;
      for (size_t b = a + 1; b < slots.size() && res.tested < budget / 2; ++b)
        for (int vb = 1; vb < tr.radix[slots[b].first]; ++vb) {
          in[slots[b].first][slots[b].second] = vb;
          if (check(in)) return res;
          in[slots[b].first][slots[b].second] = 0;
        }
      in[slots[a].first][slots[a].second] = 0;
    }
  std::mt19937_64 rng(seed);
  while (res.tested < budget) {
    for (int t = 0; t < k; ++t)
      for (auto& x : in[t]) x = static_cast<int>(rng() % tr.radix[t]);
    if (check(in)) return res;
  }
  res.verdict = Verdict::Unknown;
  return res;
}

ReferenceCheck check_against_reference(const AutWord& w, const Group& G, const Tracks& tr,
                                       const std::function<int(const Pattern&)>& ref,
                                       const std::vector<std::vector<GroupElement>>& ref_cells, long long exhaustive_limit,
                                       long long samples, uint64_t seed, int backgrounds) {
  EvalPlan plan(w, G, tr, ref_cells);
  ReferenceCheck res;
  auto test = [&](const std::vector<std::vector<int>>& in) {
    ++res.tested;
    Pattern p = plan.to_pattern(in);
    int got = plan.eval(in), want = ref(p);
    if (got == want) return true;
    res.ok = false;
    res.witness = std::move(p);
    res.got = got;
    res.want = want;
    return false;
  };
  std::vector<std::vector<int>> in(tr.count());
  for (int t = 0; t < tr.count(); ++t) in[t].assign(plan.input_domain()[t].size(), 0);
  long long count = plan.pattern_count();
  if (count >= 0 && count <= exhaustive_limit) {
    res.exhaustive = true;
    do {
      if (!test(in)) return res;
    } while (advance(in, tr));
    return res;
  }
  std::mt19937_64 rng(seed);
  // slots of the reference neighborhood inside the input domain
  std::vector<std::pair<int, int>> slots;
  long long nb_count = 1;
  for (size_t t = 0; t < ref_cells.size() && static_cast<int>(t) < tr.count(); ++t)
    for (const auto& h : ref_cells[t]) {
      const auto& dom = plan.input_domain()[t];
      auto it = std::lower_bound(dom.begin(), dom.end(), h);
      slots.emplace_back(static_cast<int>(t), static_cast<int>(it - dom.begin()));
      nb_count = nb_count > exhaustive_limit ? nb_count : nb_count * tr.radix[t];
    }
  if (nb_count * (1 + backgrounds) <= exhaustive_limit) {
    res.neighborhood_exhaustive = true;
    for (int bg = 0; bg <= backgrounds; ++bg) {
      for (int t = 0; t < tr.count(); ++t)
        for (auto& x : in[t]) x = bg == 0 ? 0 : static_cast<int>(rng() % tr.radix[t]);
      for (auto [t, j] : slots) in[t][j] = 0;
      while (true) {
        if (!test(in)) return res;
        size_t k = 0;
        for (; k < slots.size(); ++k) {
          auto [t, j] = slots[k];
          if (++in[t][j] < tr.radix[t]) break;
          in[t][j] = 0;
        }
        if (k == slots.size()) break;
      }
    }
  }
  for (long long n = 0; n < samples; ++n) {
    for (int t = 0; t < tr.count(); ++t)
      for (auto& x : in[t]) x = static_cast<int>(rng() % tr.radix[t]);
    if (!test(in)) return res;
  }
  return res;
}

int phi_reference(const Tracks& tr, int c_track, const Perm& pi, int c, const std::vector<GroupElement>& S, const Pattern& p,
                  const Group& G) {
  auto at = [&](const GroupElement& h) {
    auto it = p.values.find(h);
    return it == p.values.end() ? 0 : it->second;
  };
  int sym = at(G.identity());
  for (const auto& s : S)
    if (tr.get(at(s), c_track) != c) return sym;
  return tr.set(sym, c_track, pi(tr.get(sym, c_track)));
}

// ---------------------------------------------------------------- finite actions

std::vector<int> generator_path(const Group& G, const GroupElement& g) {
  std::vector<int> path;
  switch (G.backend()) {
    case Backend::Zd:
      for (int i = 0; i < G.rank(); ++i)
        for (int64_t j = 0; j < std::abs(g.data[i]); ++j) path.push_back(2 * i + (g.data[i] < 0 ? 1 : 0));
      return path;
    case Backend::Free:
      for (int64_t x : g.data) path.push_back(x > 0 ? 2 * static_cast<int>(x - 1) : 2 * static_cast<int>(-x - 1) + 1);
      return path;
    case Backend::Lamplighter: break;
  }
  throw std::invalid_argument("generator_path: lamplighter elements are not supported");
}

FiniteAction::FiniteAction(const Group& G, std::vector<std::vector<int>> gen_tables) : G_(G), gen_(std::move(gen_tables)) {
  if (gen_.size() != G.generators().size()) throw std::invalid_argument("FiniteAction: one table per generator expected");
  n_ = gen_.empty() ? 0 : static_cast<int>(gen_[0].size());
  for (size_t i = 0; i < gen_.size(); ++i) {
    Perm check(gen_[i]);  // throws unless a bijection
    (void)check;
    // generator 2j+1 is the inverse of 2j
    if (i % 2 == 1)
      for (int h = 0; h < n_; ++h)
        if (gen_[i][gen_[i - 1][h]] != h) throw std::invalid_argument("FiniteAction: inverse generator tables disagree");
  }
}

FiniteAction FiniteAction::torus(const Group& G, const std::vector<int>& periods) {
  if (G.backend() != Backend::Zd || static_cast<int>(periods.size()) != G.rank())
    throw std::invalid_argument("FiniteAction::torus: needs Z^d and d periods");
  int n = 1;
  for (int p : periods) {
    if (p < 1) throw std::invalid_argument("FiniteAction::torus: periods must be positive");
    n *= p;
  }
  std::vector<std::vector<int>> tables;
  int stride = 1;
  for (int i = 0; i < G.rank(); ++i) {
    std::vector<int> plus(n), minus(n);
    for (int h = 0; h < n; ++h) {
      int x = (h / stride) % periods[i];
      plus[h] = h + (((x + 1) % periods[i]) - x) * stride;
      minus[h] = h + (((x + periods[i] - 1) % periods[i]) - x) * stride;
    }
    tables.push_back(std::move(plus));
    tables.push_back(std::move(minus));
    stride *= periods[i];
  }
  FiniteAction X(G, std::move(tables));
  X.periods_ = periods;
  return X;
}

const std::vector<int>& FiniteAction::right_mult(const GroupElement& g) const {
  auto it = cache_.find(g);
  if (it != cache_.end()) return it->second;
  std::vector<int> table(n_);
  for (int h = 0; h < n_; ++h) table[h] = h;
  for (int s : generator_path(G_, g))
    for (int h = 0; h < n_; ++h) table[h] = gen_[s][table[h]];
  return cache_.emplace(g, std::move(table)).first->second;
}

namespace {

struct ApplyContext {
  std::vector<int> scratch;
  std::unordered_map<const Perm*, std::vector<int>> inverses;
};

void apply_letters(const AutWord& w, bool inv, const FiniteAction& X, const Tracks& tr, std::vector<int>& cfg, BlockMode mode,
                   ApplyContext& ctx) {
  std::vector<int>& scratch = ctx.scratch;
  const auto& ls = w.letters();
  const Group& G = X.group();
  for (size_t k = 0; k < ls.size(); ++k) {
    // acting order: last letter first; inverted words act first letter first with flipped flags
    const Letter& l = inv ? ls[k] : ls[ls.size() - 1 - k];
    bool li = l.inverted != inv;
    switch (l.kind) {
      case LetterKind::Shift: {
        const auto& tbl = X.right_mult(li ? G.inverse(l.g) : l.g);
        const int st = tr.stride(l.track), r = tr.radix[l.track];
        scratch = cfg;
        for (size_t h = 0; h < cfg.size(); ++h) {
          int mine = (scratch[h] / st) % r, theirs = (scratch[tbl[h]] / st) % r;
          cfg[h] = scratch[h] + (theirs - mine) * st;
        }
        break;
      }
      case LetterKind::Perm: {
        const Perm& p = *l.perm;
        if (li) {
          auto it = ctx.inverses.find(&p);
          if (it == ctx.inverses.end()) it = ctx.inverses.emplace(&p, p.inverse().images()).first;
          const auto& q = it->second;
          for (auto& x : cfg) x = q[x];
        } else {
          for (auto& x : cfg) x = p(x);
        }
        break;
      }
      case LetterKind::Block: apply_letters(*l.block, li, X, tr, cfg, mode, ctx); break;
      case LetterKind::Controlled: {
        const ControlledBlock& cb = *l.controlled;
        if (mode == BlockMode::Flat) {
          apply_letters(*cb.expand(G, tr), li, X, tr, cfg, mode, ctx);
          break;
        }
        const ControlSpace& sp = cb.word.space();
        std::vector<const std::vector<int>*> moves;
        for (const auto& o : cb.offsets) moves.push_back(&X.right_mult(o));
        const int C = cb.word.c_size();
        const int tst = tr.stride(cb.target), tr_r = tr.radix[cb.target];
        for (size_t h = 0; h < cfg.size(); ++h) {
          long long u = 0;
          for (int i = sp.n() - 1; i >= 0; --i) {
            int sym = cfg[(*moves[i])[h]], a = 0, mul = 1;
            for (int t : cb.tracks_at(i)) {
              a += tr.get(sym, t) * mul;
              mul *= tr.radix[t];
            }
            if (a >= sp.radix[i]) {
              u = -1;
              break;
            }
            u = u * sp.radix[i] + a;
          }
          // a control symbol outside the word's control alphabet matches no generator
          if (u < 0) continue;
          const auto& perm = cb.view_perm(u);
          int c = (cfg[h] / tst) % tr_r;
          int d = li ? perm[C + c] : perm[c];
          cfg[h] += (d - c) * tst;
        }
        break;
      }
    }
  }
}

}  // namespace

void apply_on_action(const AutWord& w, const FiniteAction& X, const Tracks& tr, std::vector<int>& config, BlockMode mode) {
  if (static_cast<int>(config.size()) != X.size()) throw std::invalid_argument("apply_on_action: configuration size mismatch");
  ApplyContext ctx;
  apply_letters(w, false, X, tr, config, mode, ctx);
}

PeriodicPoint act_on_periodic(const AutWord& w, const Group& G, const Tracks& tr, const PeriodicPoint& x) {
  long long R = cumulative_radius(w, G, tr);
  for (int p : x.periods)
    if (p < 2 * R + 1) throw std::invalid_argument("act_on_periodic: period too small for the word's radius");
  FiniteAction X = FiniteAction::torus(G, x.periods);
  PeriodicPoint y = x;
  apply_on_action(w, X, tr, y.values);
  return y;
}

PeriodicVerdict periodic_verdict(const AutWord& w, const Group& G, const Tracks& tr, int period, long long budget,
                                 uint64_t seed) {
  if (G.backend() != Backend::Zd) throw std::invalid_argument("periodic_verdict: Z^d only");
  const int d = G.rank();
  long long R = cumulative_radius(w, G, tr);
  if (period < 2 * R + 1) throw std::invalid_argument("periodic_verdict: period too small for the word's radius");
  FiniteAction X = FiniteAction::torus(G, std::vector<int>(d, period));
  const int cells = X.size();
  const int A = tr.alphabet_size();
  EvalPlan plan(w, G, tr);
  const auto& dom = plan.input_domain();
  // gather[t][j][h]: point index of h + dom[t][j]
  std::vector<std::vector<std::vector<int>>> gather(tr.count());
  for (int t = 0; t < tr.count(); ++t)
    for (const auto& g : dom[t]) gather[t].push_back(X.right_mult(g));
  PeriodicVerdict res;
  std::vector<int> x(cells, 0), y;
  std::vector<std::vector<int>> in(tr.count());
  auto test = [&]() {
    ++res.tested;
    y = x;
    apply_on_action(w, X, tr, y);
    for (int h = 0; h < cells; ++h) {
      for (int t = 0; t < tr.count(); ++t) {
        in[t].resize(dom[t].size());
        for (size_t j = 0; j < dom[t].size(); ++j) in[t][j] = tr.get(x[gather[t][j][h]], t);
      }
      if (plan.eval(in) != y[h]) ++res.rule_mismatches;
    }
    if (y != x && !res.witness) {
      res.witness = PeriodicPoint{std::vector<int>(d, period), x};
      res.verdict = Verdict::Nontrivial;
    }
  };
  double log_count = cells * std::log10(static_cast<double>(A));
  if (log_count <= std::log10(static_cast<double>(std::max<long long>(budget, 1)))) {
    res.exhaustive = true;
    while (true) {
      test();
      int i = 0;
      for (; i < cells; ++i) {
        if (++x[i] < A) break;
        x[i] = 0;
      }
      if (i == cells) break;
    }
  } else {
    std::mt19937_64 rng(seed);
    for (long long k = 0; k < budget; ++k) {
      for (int& v : x) v = static_cast<int>(rng() % A);
      test();
    }
  }
  if (!res.witness) res.verdict = Verdict::Trivial;
  return res;
}

// ---------------------------------------------------------------- gadgets

GadgetParts phi_single_parts(const Tracks& tr, int c_track, int b_track, const Perm& pi, int c, const GroupElement& s) {
  const int C = tr.radix.at(c_track), h = tr.radix.at(b_track);
  if (C < 4 || h < 2) throw std::invalid_argument("phi_single: needs |C| >= 4 and |B| >= 2");
  if (pi.size() != C || !pi.is_even() || pi.moves(c)) throw std::invalid_argument("phi_single: pi must be even on C and fix c");
  std::vector<Perm> parts = decompose_avoiding(pi, c, 2);
  GadgetParts g;
  g.pi0 = parts[0];
  g.pi1 = parts[1];
  auto theta_b = [&](int b, const Perm& p) {
    AutWord sh = AutWord::shift(s, b_track, "sigma");
    AutWord eta = AutWord::symbol(track_perm(tr, c_track, p, [&](const std::vector<int>& v) { return v[b_track] == b; }),
                                  "eta_b" + std::to_string(b));
    return sh.inverse() * eta * sh;
  };
  g.theta0 = theta_b(0, g.pi0);
  g.theta1 = theta_b(1, g.pi1);
  g.theta = AutWord::symbol(track_perm(tr, b_track, Perm::cycle(h, {0, 1}), [&](const std::vector<int>& v) { return v[c_track] == c; }),
                            "theta");
  std::vector<int> rot(h);
  for (int i = 0; i < h; ++i) rot[i] = i;
  g.theta_rot = AutWord::symbol(track_perm(tr, b_track, Perm::cycle(h, rot)), "theta_rot");
  return g;
}

AutWord build_phi_single(const Tracks& tr, int c_track, int b_track, const Perm& pi, int c, const GroupElement& s) {
  GadgetParts g = phi_single_parts(tr, c_track, b_track, pi, c, s);
  AutWord core = commutator(g.theta0, conjugate(g.theta1, g.theta));
  AutWord out;
  for (int i = 0; i < tr.radix[b_track]; ++i) out.append(conjugate(core, power(g.theta_rot, i)));
  return out;
}

AutWord build_phi_set(const Tracks& tr, int c_track, int b_track, const Perm& pi, int c, const std::vector<GroupElement>& S) {
  if (S.empty()) throw std::invalid_argument("build_phi_set: S must be nonempty");
  if (S.size() == 1) return build_phi_single(tr, c_track, b_track, pi, c, S[0]);
  if (tr.radix.at(c_track) < 6) throw std::invalid_argument("build_phi_set: needs |C| >= 6");
  std::vector<Perm> parts = decompose_avoiding(pi, c, static_cast<int>(S.size()));
  std::vector<AutWord> ws;
  for (size_t i = 0; i < S.size(); ++i) ws.push_back(build_phi_single(tr, c_track, b_track, parts[i], c, S[i]));
  return nested_commutator(ws);
}

}  // namespace rwp
