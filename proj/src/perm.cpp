#include "rwp/perm.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace rwp {

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (int v : img_) {
    if (v < 0 || v >= size() || seen[v]) throw std::invalid_argument("Perm: images are not a bijection");
    seen[v] = 1;
  }
}

Perm Perm::identity(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  return Perm(std::move(img));
}

Perm Perm::cycle(int n, const std::vector<int>& pts) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  for (size_t i = 0; i < pts.size(); ++i) {
    int a = pts[i], b = pts[(i + 1) % pts.size()];
    if (a < 0 || a >= n) throw std::invalid_argument("Perm::cycle: point out of range");
    img[a] = b;
  }
  return Perm(std::move(img));
}

Perm Perm::parse(int n, const std::string& text) {
  Perm out = identity(n);
  size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) { ++i; continue; }
    if (text[i] != '(') throw std::invalid_argument("Perm::parse: expected '(' in \"" + text + "\"");
    size_t j = text.find(')', i);
    if (j == std::string::npos) throw std::invalid_argument("Perm::parse: unbalanced parenthesis");
    std::string body = text.substr(i + 1, j - i - 1);
    std::replace(body.begin(), body.end(), ',', ' ');
    std::istringstream in(body);
    std::vector<int> pts;
    int v;
    while (in >> v) pts.push_back(v);
    if (!in.eof()) throw std::invalid_argument("Perm::parse: bad cycle \"" + body + "\"");
    std::vector<int> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("Perm::parse: repeated point in cycle");
    if (!pts.empty()) out = out * cycle(n, pts);
    i = j + 1;
  }
  return out;
}

bool Perm::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

std::vector<std::vector<int>> Perm::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(img_.size(), 0);
  for (int i = 0; i < size(); ++i) {
    if (seen[i] || img_[i] == i) continue;
    std::vector<int> c;
    for (int x = i; !seen[x]; x = img_[x]) {
      seen[x] = 1;
      c.push_back(x);
    }
    out.push_back(std::move(c));
  }
  return out;
}

bool Perm::is_even() const {
  int transpositions = 0;
  for (const auto& c : cycles()) transpositions += static_cast<int>(c.size()) - 1;
  return transpositions % 2 == 0;
}

std::vector<int> Perm::support() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (img_[i] != i) out.push_back(i);
  return out;
}

std::vector<int> Perm::cycle_type() const {
  std::vector<int> out;
  for (const auto& c : cycles()) out.push_back(static_cast<int>(c.size()));
  std::sort(out.begin(), out.end());
  return out;
}

int Perm::order() const {
  int o = 1;
  for (const auto& c : cycles()) o = std::lcm(o, static_cast<int>(c.size()));
  return o;
}

Perm Perm::inverse() const {
  std::vector<int> inv(img_.size());
  for (int i = 0; i < size(); ++i) inv[img_[i]] = i;
  return Perm(std::move(inv));
}

std::string Perm::str() const {
  auto cs = cycles();
  if (cs.empty()) return "()";
  std::string s;
  for (const auto& c : cs) {
    s += '(';
    for (size_t i = 0; i < c.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(c[i]);
    }
    s += ')';
  }
  return s;
}

Perm compose(const Perm& p, const Perm& q) {
  if (p.size() != q.size()) throw std::invalid_argument("compose: domain size mismatch");
  std::vector<int> img(p.size());
  for (int x = 0; x < p.size(); ++x) img[x] = p(q(x));
  return Perm(std::move(img));
}

Perm operator*(const Perm& p, const Perm& q) { return compose(p, q); }

Perm commutator(const Perm& p, const Perm& q) {
  if (p.size() != q.size()) throw std::invalid_argument("commutator: domain size mismatch");
  return p.inverse() * q.inverse() * p * q;
}

Perm nested_commutator(const std::vector<Perm>& ps) {
  if (ps.empty()) throw std::invalid_argument("nested_commutator: empty sequence");
  Perm acc = ps.back();
  for (size_t i = ps.size() - 1; i-- > 0;) acc = commutator(ps[i], acc);
  return acc;
}

Perm conjugate(const Perm& a, const Perm& b) { return b.inverse() * a * b; }

std::vector<Perm> alternating_group(int n, const std::vector<int>& domain) {
  std::vector<int> d = domain;
  std::sort(d.begin(), d.end());
  std::vector<int> arr = d;
  std::vector<Perm> out;
  do {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    for (size_t i = 0; i < d.size(); ++i) img[d[i]] = arr[i];
    Perm p(std::move(img));
    if (p.is_even()) out.push_back(std::move(p));
  } while (std::next_permutation(arr.begin(), arr.end()));
  // next_permutation over the images of the sorted domain already yields
  // lexicographic order on full image vectors.
  return out;
}

std::vector<Perm> alternating_group(int n) {
  std::vector<int> d(n);
  std::iota(d.begin(), d.end(), 0);
  return alternating_group(n, d);
}

namespace {

std::mutex g_memo_mu;
std::map<std::pair<std::vector<int>, std::vector<int>>, std::vector<Perm>> g_alt_memo;
std::map<std::pair<std::vector<int>, std::vector<int>>, std::optional<std::pair<Perm, Perm>>> g_ore_memo;

const std::vector<Perm>& alt_cached(int n, const std::vector<int>& domain) {
  std::vector<int> key_n{n};
  std::lock_guard<std::mutex> lk(g_memo_mu);
  auto key = std::make_pair(key_n, domain);
  auto it = g_alt_memo.find(key);
  if (it == g_alt_memo.end()) it = g_alt_memo.emplace(key, alternating_group(n, domain)).first;
  return it->second;
}

bool fixes_outside(const Perm& p, const std::vector<int>& domain) {
  std::vector<char> in(p.size(), 0);
  for (int x : domain) in[x] = 1;
  for (int x = 0; x < p.size(); ++x)
    if (!in[x] && p(x) != x) return false;
  return true;
}

// All q in Alt(domain) with [a, q] = p, in lexicographic order.
std::vector<Perm> commutator_partners(const Perm& a, const Perm& p, const std::vector<int>& domain) {
  std::vector<Perm> out;
  // [a, q] = a^-1 q^-1 a q = p  <=>  q^-1 a q = a p.
  Perm t = a * p;
  if (t.cycle_type() != a.cycle_type()) return out;
  for (const Perm& q : alt_cached(p.size(), domain))
    if (conjugate(a, q) == t) out.push_back(q);
  return out;
}

std::optional<std::pair<Perm, Perm>> ore_in(const Perm& p, const std::vector<int>& domain) {
  auto key = std::make_pair(p.images(), domain);
  {
    std::lock_guard<std::mutex> lk(g_memo_mu);
    auto it = g_ore_memo.find(key);
    if (it != g_ore_memo.end()) return it->second;
  }
  std::optional<std::pair<Perm, Perm>> res;
  if (p.is_identity()) {
    res = std::make_pair(Perm::identity(p.size()), Perm::identity(p.size()));
  } else {
    for (const Perm& a : alt_cached(p.size(), domain)) {
      Perm t = a * p;
      if (t.cycle_type() != a.cycle_type()) continue;
      bool found = false;
      for (const Perm& q : alt_cached(p.size(), domain)) {
        if (conjugate(a, q) == t) {
          res = std::make_pair(a, q);
          found = true;
          break;
        }
      }
      if (found) break;
    }
  }
  std::lock_guard<std::mutex> lk(g_memo_mu);
  g_ore_memo.emplace(key, res);
  return res;
}

bool decompose_rec(const Perm& p, const std::vector<int>& domain, int k, std::vector<Perm>& out) {
  if (k == 1) {
    if (!fixes_outside(p, domain) || !p.is_even()) return false;
    out.push_back(p);
    return true;
  }
  if (p.is_identity()) {
    for (int i = 0; i < k; ++i) out.push_back(Perm::identity(p.size()));
    return true;
  }
  if (k == 2) {
    auto r = ore_in(p, domain);
    if (!r) return false;
    out.push_back(r->first);
    out.push_back(r->second);
    return true;
  }
  // Fast path: every even permutation on >= 5 points is a commutator.
  if (domain.size() >= 5) {
    auto r = ore_in(p, domain);
    if (!r) return false;
    out.push_back(r->first);
    return decompose_rec(r->second, domain, k - 1, out);
  }
  for (const Perm& a : alt_cached(p.size(), domain)) {
    for (const Perm& q : commutator_partners(a, p, domain)) {
      size_t mark = out.size();
      out.push_back(a);
      if (decompose_rec(q, domain, k - 1, out)) return true;
      out.resize(mark);
    }
  }
  return false;
}

}  // namespace

std::pair<Perm, Perm> ore_decompose(const Perm& p) {
  if (!p.is_even()) throw std::invalid_argument("ore_decompose: odd permutation " + p.str());
  if (p.size() < 5) throw std::invalid_argument("ore_decompose: domain size below 5");
  std::vector<int> d(p.size());
  std::iota(d.begin(), d.end(), 0);
  auto r = ore_in(p, d);
  if (!r) throw std::runtime_error("ore_decompose: no commutator pair for " + p.str());
  return *r;
}

std::vector<Perm> decompose_avoiding(const Perm& p, int avoid, int k) {
  if (k < 1) throw std::invalid_argument("decompose_avoiding: arity must be positive");
  if (!p.is_even()) throw std::invalid_argument("decompose_avoiding: odd permutation " + p.str());
  if (avoid >= 0 && avoid < p.size() && p.moves(avoid))
    throw std::runtime_error("decompose_avoiding: infeasible, " + p.str() + " moves " + std::to_string(avoid));
  std::vector<int> domain;
  for (int x = 0; x < p.size(); ++x)
    if (x != avoid) domain.push_back(x);
  std::vector<Perm> out;
  if (!decompose_rec(p, domain, k, out))
    throw std::runtime_error("decompose_avoiding: infeasible for " + p.str() + " avoiding " + std::to_string(avoid) +
                             " with arity " + std::to_string(k));
  return out;
}

std::vector<Perm> product_of_3cycles(const Perm& p) {
  if (!p.is_even()) throw std::invalid_argument("product_of_3cycles: odd permutation " + p.str());
  const int n = p.size();
  std::vector<Perm> out;
  Perm r = p;
  while (!r.is_identity()) {
    auto cs = r.cycles();
    auto longc = std::find_if(cs.begin(), cs.end(), [](const auto& c) { return c.size() >= 3; });
    if (longc != cs.end()) {
      int x = (*longc)[0], y = (*longc)[1], z = (*longc)[2];
      Perm t = Perm::cycle(n, {x, y, z});
      out.push_back(t);
      r = t.inverse() * r;
      continue;
    }
    // Only transpositions left; their number is even.
    int a = cs[0][0], b = cs[0][1], c = cs[1][0], d = cs[1][1];
    Perm t1 = Perm::cycle(n, {a, c, b});
    Perm t2 = Perm::cycle(n, {a, c, d});
    out.push_back(t1);
    out.push_back(t2);
    r = (t1 * t2).inverse() * r;
  }
  return out;
}

}  // namespace rwp
