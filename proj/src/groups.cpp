#include "rwp/groups.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace rwp {

size_t GroupElementHash::operator()(const GroupElement& g) const {
  uint64_t h = 1469598103934665603ULL;
  for (int64_t v : g.data) {
    h ^= static_cast<uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 1099511628211ULL;
  }
  return static_cast<size_t>(h);
}

namespace {

int64_t mod(int64_t a, int64_t q) { return ((a % q) + q) % q; }

// Lamp map view of a lamplighter payload.
using LampMap = std::map<int64_t, std::vector<int64_t>>;

LampMap lamps_of(const GroupElement& g, int r) {
  LampMap m;
  for (size_t i = 1; i < g.data.size(); i += 1 + r)
    m[g.data[i]] = std::vector<int64_t>(g.data.begin() + i + 1, g.data.begin() + i + 1 + r);
  return m;
}

GroupElement pack(int64_t shift, const LampMap& m, int q) {
  GroupElement g;
  g.data.push_back(shift);
  for (const auto& [pos, v] : m) {
    bool nz = false;
    for (int64_t x : v) nz |= mod(x, q) != 0;
    if (!nz) continue;
    g.data.push_back(pos);
    for (int64_t x : v) g.data.push_back(mod(x, q));
  }
  return g;
}

}  // namespace

Group Group::zd(int d) {
  if (d < 1) throw std::invalid_argument("Group::zd: d must be positive");
  Group G;
  G.kind_ = Backend::Zd;
  G.rank_ = d;
  for (int i = 0; i < d; ++i)
    for (int s : {1, -1}) {
      GroupElement e;
      e.data.assign(d, 0);
      e.data[i] = s;
      G.gens_.push_back(e);
      G.gen_names_.push_back(std::string(1, static_cast<char>(s > 0 ? 'a' + i : 'A' + i)));
    }
  return G;
}

Group Group::free(int k) {
  if (k < 1 || k > 26) throw std::invalid_argument("Group::free: rank must be in [1, 26]");
  Group G;
  G.kind_ = Backend::Free;
  G.rank_ = k;
  for (int i = 0; i < k; ++i)
    for (int s : {1, -1}) {
      G.gens_.push_back(GroupElement{{static_cast<int64_t>(s * (i + 1))}});
      G.gen_names_.push_back(std::string(1, static_cast<char>(s > 0 ? 'a' + i : 'A' + i)));
    }
  return G;
}

Group Group::lamplighter(int q, int r) {
  if (q < 2 || r < 1 || r > 25) throw std::invalid_argument("Group::lamplighter: need q >= 2 and 1 <= r <= 25");
  Group G;
  G.kind_ = Backend::Lamplighter;
  G.rank_ = r;
  G.q_ = q;
  GroupElement t{{1}};
  std::vector<GroupElement> base{t};
  for (int j = 0; j < r; ++j) {
    std::vector<int64_t> v(r, 0);
    v[j] = 1;
    base.push_back(G.multiply(t, G.lamp(0, v)));
  }
  for (size_t i = 0; i < base.size(); ++i) {
    G.gens_.push_back(base[i]);
    G.gen_names_.push_back(std::string(1, static_cast<char>('a' + i)));
    G.gens_.push_back(G.inverse(base[i]));
    G.gen_names_.push_back(std::string(1, static_cast<char>('A' + i)));
  }
  return G;
}

void Group::check(const GroupElement& g) const {
  switch (kind_) {
    case Backend::Zd:
      if (static_cast<int>(g.data.size()) != rank_) throw std::invalid_argument("Zd element has wrong dimension");
      return;
    case Backend::Free:
      for (int64_t x : g.data)
        if (x == 0 || x > rank_ || x < -rank_) throw std::invalid_argument("free group element has bad letter");
      return;
    case Backend::Lamplighter:
      if (g.data.empty() || (g.data.size() - 1) % (1 + rank_) != 0)
        throw std::invalid_argument("lamplighter element has malformed payload");
      return;
  }
}

GroupElement Group::identity() const {
  switch (kind_) {
    case Backend::Zd: return GroupElement{std::vector<int64_t>(rank_, 0)};
    case Backend::Free: return GroupElement{};
    case Backend::Lamplighter: return GroupElement{{0}};
  }
  return {};
}

GroupElement Group::multiply(const GroupElement& g, const GroupElement& h) const {
  check(g);
  check(h);
  switch (kind_) {
    case Backend::Zd: {
      GroupElement out = g;
      for (int i = 0; i < rank_; ++i) out.data[i] += h.data[i];
      return out;
    }
    case Backend::Free: {
      GroupElement out = g;
      for (int64_t x : h.data) {
        if (!out.data.empty() && out.data.back() == -x)
          out.data.pop_back();
        else
          out.data.push_back(x);
      }
      return out;
    }
    case Backend::Lamplighter: {
      LampMap m = lamps_of(g, rank_);
      const int64_t s1 = g.data[0];
      for (const auto& [pos, v] : lamps_of(h, rank_)) {
        auto& slot = m[pos + s1];
        if (slot.empty()) slot.assign(rank_, 0);
        for (int j = 0; j < rank_; ++j) slot[j] = mod(slot[j] + v[j], q_);
      }
      return pack(s1 + h.data[0], m, q_);
    }
  }
  return {};
}

GroupElement Group::inverse(const GroupElement& g) const {
  check(g);
  switch (kind_) {
    case Backend::Zd: {
      GroupElement out = g;
      for (auto& x : out.data) x = -x;
      return out;
    }
    case Backend::Free: {
      GroupElement out;
      for (auto it = g.data.rbegin(); it != g.data.rend(); ++it) out.data.push_back(-*it);
      return out;
    }
    case Backend::Lamplighter: {
      // (s, f)^-1 = (-s, -tau_{-s} f)
      const int64_t s = g.data[0];
      LampMap m;
      for (const auto& [pos, v] : lamps_of(g, rank_)) {
        std::vector<int64_t> w(rank_);
        for (int j = 0; j < rank_; ++j) w[j] = mod(-v[j], q_);
        m[pos - s] = w;
      }
      return pack(-s, m, q_);
    }
  }
  return {};
}

GroupElement Group::power(const GroupElement& g, int64_t e) const {
  GroupElement base = e < 0 ? inverse(g) : g, out = identity();
  for (int64_t i = 0; i < (e < 0 ? -e : e); ++i) out = multiply(out, base);
  return out;
}

GroupElement Group::product(const std::vector<GroupElement>& gs) const {
  GroupElement out = identity();
  for (const auto& g : gs) out = multiply(out, g);
  return out;
}

GroupElement Group::word(const std::string& letters) const {
  GroupElement out = identity();
  for (char ch : letters) {
    auto it = std::find(gen_names_.begin(), gen_names_.end(), std::string(1, ch));
    if (it == gen_names_.end()) throw std::invalid_argument(std::string("Group::word: unknown generator '") + ch + "'");
    out = multiply(out, gens_[it - gen_names_.begin()]);
  }
  return out;
}

GroupElement Group::zd_vector(const std::vector<int64_t>& v) const {
  if (kind_ != Backend::Zd || static_cast<int>(v.size()) != rank_) throw std::invalid_argument("zd_vector: bad backend or size");
  return GroupElement{v};
}

GroupElement Group::lamp(int64_t pos, const std::vector<int64_t>& value) const {
  if (kind_ != Backend::Lamplighter || static_cast<int>(value.size()) != rank_)
    throw std::invalid_argument("lamp: bad backend or lamp size");
  LampMap m;
  m[pos] = value;
  return pack(0, m, q_);
}

int64_t Group::shift(const GroupElement& g) const {
  if (kind_ != Backend::Lamplighter) throw std::invalid_argument("shift: not a lamplighter element");
  return g.data[0];
}

std::string Group::format(const GroupElement& g) const {
  check(g);
  std::ostringstream os;
  switch (kind_) {
    case Backend::Zd:
      for (size_t i = 0; i < g.data.size(); ++i) os << (i ? "," : "") << g.data[i];
      break;
    case Backend::Free:
      if (g.data.empty()) return "1";
      for (int64_t x : g.data) os << static_cast<char>(x > 0 ? 'a' + x - 1 : 'A' - x - 1);
      break;
    case Backend::Lamplighter: {
      os << "t^" << g.data[0] << "|lamps@{";
      bool first = true;
      for (const auto& [pos, v] : lamps_of(g, rank_)) {
        os << (first ? "" : ",") << pos;
        first = false;
        if (q_ != 2 || rank_ != 1) {
          os << "=";
          for (int j = 0; j < rank_; ++j) os << (j ? "." : "") << v[j];
        }
      }
      os << "}";
      break;
    }
  }
  return os.str();
}

GroupElement Group::parse(const std::string& text) const {
  switch (kind_) {
    case Backend::Zd: {
      std::vector<int64_t> v;
      std::stringstream ss(text);
      std::string tok;
      while (std::getline(ss, tok, ',')) v.push_back(std::stoll(tok));
      return zd_vector(v);
    }
    case Backend::Free: {
      if (text == "1" || text.empty()) return identity();
      GroupElement out;
      for (char ch : text) {
        int64_t x;
        if (ch >= 'a' && ch < 'a' + rank_) x = ch - 'a' + 1;
        else if (ch >= 'A' && ch < 'A' + rank_) x = -(ch - 'A' + 1);
        else throw std::invalid_argument(std::string("free group: bad letter '") + ch + "'");
        out = multiply(out, GroupElement{{x}});
      }
      return out;
    }
    case Backend::Lamplighter: {
      auto bar = text.find('|');
      if (text.rfind("t^", 0) != 0 || bar == std::string::npos) throw std::invalid_argument("lamplighter: expected t^s|lamps@{...}");
      int64_t s = std::stoll(text.substr(2, bar - 2));
      auto lb = text.find('{', bar), rb = text.find('}', bar);
      if (lb == std::string::npos || rb == std::string::npos) throw std::invalid_argument("lamplighter: missing braces");
      LampMap m;
      std::stringstream ss(text.substr(lb + 1, rb - lb - 1));
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        auto eq = tok.find('=');
        int64_t pos = std::stoll(tok.substr(0, eq));
        std::vector<int64_t> v(rank_, 0);
        if (eq == std::string::npos) {
          v[0] = 1;
        } else {
          std::stringstream vs(tok.substr(eq + 1));
          std::string x;
          for (int j = 0; j < rank_ && std::getline(vs, x, '.'); ++j) v[j] = std::stoll(x);
        }
        m[pos] = v;
      }
      return pack(s, m, q_);
    }
  }
  return {};
}

std::vector<GroupElement> Group::ball(int r, size_t budget) const {
  if (r < 0) throw std::invalid_argument("ball: negative radius");
  std::vector<GroupElement> out{identity()};
  std::unordered_set<GroupElement, GroupElementHash> seen{identity()};
  size_t frontier_begin = 0;
  for (int level = 0; level < r; ++level) {
    size_t frontier_end = out.size();
    for (size_t i = frontier_begin; i < frontier_end; ++i) {
      for (const auto& s : gens_) {
        GroupElement h = multiply(out[i], s);
        if (seen.insert(h).second) {
          if (out.size() >= budget) throw std::runtime_error("ball: budget exceeded at radius " + std::to_string(level + 1));
          out.push_back(std::move(h));
        }
      }
    }
    frontier_begin = frontier_end;
  }
  return out;
}

int Group::distance(const GroupElement& g, const GroupElement& h, size_t budget) const {
  GroupElement target = multiply(inverse(g), h);
  if (target == identity()) return 0;
  std::vector<GroupElement> frontier{identity()};
  std::unordered_set<GroupElement, GroupElementHash> seen{identity()};
  for (int level = 1;; ++level) {
    std::vector<GroupElement> next;
    for (const auto& x : frontier)
      for (const auto& s : gens_) {
        GroupElement y = multiply(x, s);
        if (y == target) return level;
        if (seen.insert(y).second) {
          if (seen.size() > budget) throw std::runtime_error("distance: budget exceeded");
          next.push_back(std::move(y));
        }
      }
    frontier = std::move(next);
  }
}

}  // namespace rwp
