#include "rwp/barrington.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace rwp {

ControlSpace ControlSpace::uniform(int n, int alphabet) { return ControlSpace{std::vector<int>(n, alphabet)}; }

int ControlSpace::max_radix() const { return radix.empty() ? 0 : *std::max_element(radix.begin(), radix.end()); }

long long ControlSpace::count() const {
  long long c = 1;
  for (int r : radix) {
    if (c > (1LL << 62) / std::max(r, 1)) return -1;
    c *= r;
  }
  return c;
}

std::vector<int> ControlSpace::decode(long long index) const {
  std::vector<int> u(radix.size());
  for (size_t i = 0; i < radix.size(); ++i) {
    u[i] = static_cast<int>(index % radix[i]);
    index /= radix[i];
  }
  return u;
}

long long ControlSpace::encode(const std::vector<int>& u) const {
  long long idx = 0;
  for (size_t i = radix.size(); i-- > 0;) idx = idx * radix[i] + u[i];
  return idx;
}

PermWord::PermWord(int c_size, ControlSpace space) : c_size_(c_size), space_(std::move(space)) {}

Perm PermWord::perm_of(const CPGenerator& g) const { return g.inverted ? perms_[g.perm].inverse() : perms_[g.perm]; }

int PermWord::intern(const Perm& p) {
  if (p.size() != c_size_) throw std::invalid_argument("PermWord: permutation size differs from |C|");
  for (size_t i = 0; i < perms_.size(); ++i)
    if (perms_[i] == p) return static_cast<int>(i);
  perms_.push_back(p);
  Perm inv = p.inverse();
  for (int x = 0; x < c_size_; ++x) img_.push_back(p(x));
  for (int x = 0; x < c_size_; ++x) inv_.push_back(inv(x));
  return static_cast<int>(perms_.size() - 1);
}

void PermWord::push_id(int perm_id, int symbol, int position, bool inverted) {
  if (position < 0 || position >= space_.n()) throw std::out_of_range("PermWord: generator position out of range");
  if (symbol < 0 || symbol >= space_.radix[position]) throw std::out_of_range("PermWord: control symbol out of range");
  gens_.push_back(CPGenerator{perm_id, symbol, position, inverted});
}

void PermWord::push(const Perm& p, int symbol, int position, bool inverted) {
  push_id(intern(p), symbol, position, inverted);
}

void PermWord::append(const PermWord& w, bool inverted) {
  if (w.c_size_ != c_size_ || w.space_.radix != space_.radix) throw std::invalid_argument("PermWord::append: shape mismatch");
  std::vector<int> remap(w.perms_.size());
  for (size_t i = 0; i < w.perms_.size(); ++i) remap[i] = intern(w.perms_[i]);
  if (!inverted) {
    for (const auto& g : w.gens_) gens_.push_back(CPGenerator{remap[g.perm], g.symbol, g.position, g.inverted});
  } else {
    for (auto it = w.gens_.rbegin(); it != w.gens_.rend(); ++it)
      gens_.push_back(CPGenerator{remap[it->perm], it->symbol, it->position, !it->inverted});
  }
}

PermWord PermWord::inverse() const {
  PermWord out(c_size_, space_);
  out.append(*this, true);
  return out;
}

ControlledState eval_generator(const PermWord& w, const CPGenerator& g, const ControlledState& s) {
  if (static_cast<int>(s.u.size()) != w.space().n()) throw std::invalid_argument("eval_generator: control length mismatch");
  return ControlledState{w.apply(g, s.c, s.u), s.u};
}

int eval_word_c(const PermWord& w, int c, const std::vector<int>& u) {
  if (static_cast<int>(u.size()) != w.space().n()) throw std::invalid_argument("eval_word: control length mismatch");
  const auto& gs = w.gens();
  for (auto it = gs.rbegin(); it != gs.rend(); ++it) c = w.apply(*it, c, u);
  return c;
}

std::vector<int> PermWord::images(const std::vector<int>& u) const {
  if (static_cast<int>(u.size()) != space_.n()) throw std::invalid_argument("eval_word: control length mismatch");
  std::vector<int> cur(c_size_);
  for (int c = 0; c < c_size_; ++c) cur[c] = c;
  for (auto it = gens_.rbegin(); it != gens_.rend(); ++it) {
    if (u[it->position] != it->symbol) continue;
    const int* t = (it->inverted ? inv_ : img_).data() + static_cast<size_t>(it->perm) * c_size_;
    for (int& x : cur) x = t[x];
  }
  return cur;
}

std::vector<int> eval_word_table(const PermWord& w, const std::vector<int>& u) { return w.images(u); }

ControlledState eval_word(const PermWord& w, const ControlledState& s) { return ControlledState{eval_word_c(w, s.c, s.u), s.u}; }

PermWord word_unconditional(const Perm& p, const ControlSpace& space) {
  if (space.n() < 1) throw std::invalid_argument("word_unconditional: need n >= 1");
  PermWord w(p.size(), space);
  if (p.is_identity()) return w;
  int id = w.intern(p);
  for (int a = 0; a < space.radix[0]; ++a) w.push_id(id, a, 0);
  return w;
}

namespace {

struct Emitter {
  PermWord& out;
  PermWord uncond_cache;

  // Appends the word for p|f, or its formal inverse.
  void emit(const Perm& p, const Formula& f, bool inv) {
    if (p.is_identity()) return;
    switch (f->op) {
      case Op::False: return;
      case Op::True: {
        PermWord u = word_unconditional(p, out.space());
        out.append(u, inv);
        return;
      }
      case Op::Atom:
        out.push(p, f->sym, f->pos, inv);
        return;
      case Op::And: {
        auto [s1, s2] = ore_decompose(p);
        // [w1, w2] = w1^-1 w2^-1 w1 w2.
        struct Part { const Perm* p; const Formula* f; bool inv; };
        Part parts[4] = {{&s1, &f->a, true}, {&s2, &f->b, true}, {&s1, &f->a, false}, {&s2, &f->b, false}};
        if (!inv) {
          for (auto& pt : parts) emit(*pt.p, *pt.f, pt.inv);
        } else {
          for (int i = 3; i >= 0; --i) emit(*parts[i].p, *parts[i].f, !parts[i].inv);
        }
        return;
      }
      case Op::Or: {
        // p|X u Y = p|X . p|Y . p^-1|X n Y
        Perm pinv = p.inverse();
        Formula both = f_and(f->a, f->b);
        if (!inv) {
          emit(p, f->a, false);
          emit(p, f->b, false);
          emit(pinv, both, false);
        } else {
          emit(pinv, both, true);
          emit(p, f->b, true);
          emit(p, f->a, true);
        }
        return;
      }
      case Op::Not: {
        // p|not X = p . p^-1|X
        PermWord u = word_unconditional(p, out.space());
        if (!inv) {
          out.append(u, false);
          emit(p.inverse(), f->a, false);
        } else {
          emit(p.inverse(), f->a, true);
          out.append(u, true);
        }
        return;
      }
    }
  }
};

void check_formula(const Formula& f, const ControlSpace& space) {
  switch (f->op) {
    case Op::Atom:
      if (f->pos >= space.n()) throw std::invalid_argument("compile: atom position beyond control length");
      if (f->sym >= space.radix[f->pos]) throw std::invalid_argument("compile: atom symbol outside control alphabet");
      return;
    case Op::And:
    case Op::Or:
      check_formula(f->a, space);
      check_formula(f->b, space);
      return;
    case Op::Not: check_formula(f->a, space); return;
    default: return;
  }
}

}  // namespace

PermWord compile(const Perm& p, const Formula& f, const ControlSpace& space) {
  if (!p.is_even()) throw std::invalid_argument("compile: odd permutation " + p.str());
  if (p.size() < 5) throw std::invalid_argument("compile: |C| must be at least 5");
  check_formula(f, space);
  PermWord out(p.size(), space);
  Emitter e{out, PermWord()};
  e.emit(p, f, false);
  return out;
}

StateTable brute_oracle(const Perm& p, const Formula& f, const ControlSpace& space, long long budget) {
  long long cnt = space.count();
  if (cnt < 0 || cnt * p.size() > budget) throw std::runtime_error("brute_oracle: state space exceeds budget");
  StateTable t(static_cast<size_t>(cnt * p.size()));
  for (long long i = 0; i < cnt; ++i) {
    bool sat = eval(f, space.decode(i));
    for (int c = 0; c < p.size(); ++c) t[i * p.size() + c] = static_cast<int32_t>(i * p.size() + (sat ? p(c) : c));
  }
  return t;
}

StateTable word_table(const PermWord& w, long long budget) {
  long long cnt = w.space().count();
  const int cs = w.c_size();
  if (cnt < 0 || cnt * cs > budget) throw std::runtime_error("word_table: state space exceeds budget");
  StateTable t(static_cast<size_t>(cnt * cs));
  for (long long i = 0; i < cnt; ++i) {
    auto u = w.space().decode(i);
    for (int c = 0; c < cs; ++c) t[i * cs + c] = static_cast<int32_t>(i * cs + eval_word_c(w, c, u));
  }
  return t;
}

long long length_envelope(int depth, int alphabet) {
  long long base = 6 + alphabet, v = 1;
  for (int i = 0; i <= depth; ++i) {
    if (v > std::numeric_limits<long long>::max() / base) return std::numeric_limits<long long>::max();
    v *= base;
  }
  return v;
}

}  // namespace rwp
