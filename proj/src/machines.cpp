#include "rwp/machines.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rwp {

bool NDTM::is_final(int q) const { return std::find(accept.begin(), accept.end(), q) != accept.end(); }

void NDTM::validate() const {
  const int Q = num_states(), S = num_symbols();
  if (Q < 1 || S < 1) throw std::invalid_argument("NDTM: empty state set or alphabet");
  if (init < 0 || init >= Q) throw std::invalid_argument("NDTM: initial state out of range");
  if (blank < 0 || blank >= S) throw std::invalid_argument("NDTM: blank out of range");
  for (int q : accept)
    if (q < 0 || q >= Q) throw std::invalid_argument("NDTM: accepting state out of range");
  for (const auto& t : delta) {
    if (t.q < 0 || t.q >= Q || t.q2 < 0 || t.q2 >= Q || t.s < 0 || t.s >= S || t.s2 < 0 || t.s2 >= S ||
        t.d < -1 || t.d > 1)
      throw std::invalid_argument("NDTM: malformed quintuple");
  }
  for (const auto& st : states)
    if (std::find(alphabet.begin(), alphabet.end(), st) != alphabet.end())
      throw std::invalid_argument("NDTM: state and symbol names must be distinct: " + st);
}

namespace {

int lookup(const std::vector<std::string>& names, const nlohmann::json& v, const char* what) {
  if (v.is_number_integer()) return v.get<int>();
  auto s = v.get<std::string>();
  auto it = std::find(names.begin(), names.end(), s);
  if (it == names.end()) throw std::invalid_argument(std::string("machine json: unknown ") + what + " '" + s + "'");
  return static_cast<int>(it - names.begin());
}

}  // namespace

NDTM machine_from_json(const nlohmann::json& j) {
  NDTM m;
  m.states = j.at("states").get<std::vector<std::string>>();
  m.alphabet = j.at("alphabet").get<std::vector<std::string>>();
  m.blank = lookup(m.alphabet, j.at("blank"), "symbol");
  m.init = lookup(m.states, j.at("init"), "state");
  for (const auto& q : j.at("accept")) m.accept.push_back(lookup(m.states, q, "state"));
  for (const auto& t : j.at("delta")) {
    if (!t.is_array() || t.size() != 5) throw std::invalid_argument("machine json: delta entries are [q,s,q',s',d]");
    m.delta.push_back(Quintuple{lookup(m.states, t[0], "state"), lookup(m.alphabet, t[1], "symbol"),
                                lookup(m.states, t[2], "state"), lookup(m.alphabet, t[3], "symbol"), t[4].get<int>()});
  }
  m.validate();
  return m;
}

nlohmann::json machine_to_json(const NDTM& m) {
  nlohmann::json j;
  j["states"] = m.states;
  j["alphabet"] = m.alphabet;
  j["blank"] = m.alphabet[m.blank];
  j["init"] = m.states[m.init];
  nlohmann::json acc = nlohmann::json::array();
  for (int q : m.accept) acc.push_back(m.states[q]);
  j["accept"] = acc;
  nlohmann::json d = nlohmann::json::array();
  for (const auto& t : m.delta)
    d.push_back({m.states[t.q], m.alphabet[t.s], m.states[t.q2], m.alphabet[t.s2], t.d});
  j["delta"] = d;
  return j;
}

bool is_valid_id(const NDTM& m, const ID& id) {
  ConfigAlphabet ca(m);
  int heads = 0;
  for (int x : id) {
    if (x < 0 || x >= ca.size()) return false;
    heads += ca.is_head(x);
  }
  return heads == 1;
}

ID initial_id(const NDTM& m, const std::vector<int>& input) {
  ConfigAlphabet ca(m);
  ID id = input.empty() ? ID{m.blank} : input;
  id[0] = ca.head(m.init, id[0]);
  return id;
}

bool is_final_id(const NDTM& m, const ID& id) {
  ConfigAlphabet ca(m);
  for (int x : id)
    if (ca.is_head(x)) return m.is_final(ca.state_of(x));
  return false;
}

std::vector<ID> steps(const NDTM& m, const ID& id) {
  if (!is_valid_id(m, id)) throw std::invalid_argument("steps: malformed ID");
  ConfigAlphabet ca(m);
  const int n = static_cast<int>(id.size());
  int h = 0;
  while (!ca.is_head(id[h])) ++h;
  const int q = ca.state_of(id[h]), s = ca.symbol_of(id[h]);
  std::set<ID> out;
  for (const auto& t : m.delta) {
    if (t.q != q || t.s != s) continue;
    ID v = id;
    if (t.d == 0) {
      v[h] = ca.head(t.q2, t.s2);
    } else if (t.d == 1) {
      if (h + 1 >= n) continue;
      v[h] = t.s2;
      v[h + 1] = ca.head(t.q2, id[h + 1]);
    } else {
      if (h == 0) continue;
      v[h] = t.s2;
      v[h - 1] = ca.head(t.q2, id[h - 1]);
    }
    out.insert(std::move(v));
  }
  return {out.begin(), out.end()};
}

bool is_step(const NDTM& m, const ID& u, const ID& v) {
  if (!is_valid_id(m, u) || u.size() != v.size()) return false;
  auto s = steps(m, u);
  return std::binary_search(s.begin(), s.end(), v);
}

namespace {

struct TreeSearch {
  const NDTM& t0;
  const NDTM& t1;
  std::map<std::pair<ID, int>, bool> memo;

  bool accepts(const ID& id, int d) {
    if (d == 0) return is_final_id(t0, id);
    auto key = std::make_pair(id, d);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    auto any = [&](const NDTM& m) {
      for (const auto& c : steps(m, id))
        if (accepts(c, d - 1)) return true;
      return false;
    };
    bool ok = any(t0) && any(t1);
    memo.emplace(key, ok);
    return ok;
  }

  void build(const ID& id, int d, size_t node, std::vector<ID>& tree) {
    tree[node] = id;
    if (d == 0) return;
    for (const auto& c0 : steps(t0, id))
      if (accepts(c0, d - 1)) {
        build(c0, d - 1, 2 * node, tree);
        break;
      }
    for (const auto& c1 : steps(t1, id))
      if (accepts(c1, d - 1)) {
        build(c1, d - 1, 2 * node + 1, tree);
        break;
      }
  }
};

void check_pair(const NDTM& t0, const NDTM& t1) {
  if (t0.num_states() != t1.num_states() || t0.num_symbols() != t1.num_symbols() || t0.init != t1.init ||
      t0.blank != t1.blank)
    throw std::invalid_argument("tree_accepts: machines must share states, alphabet, initial state and blank");
}

std::vector<int> pad_input(const NDTM& m, std::vector<int> input) {
  size_t n = 1;
  while (n < input.size()) n *= 2;
  input.resize(n, m.blank);
  return input;
}

}  // namespace

bool tree_accepts(const NDTM& t0, const NDTM& t1, const std::vector<int>& input) {
  check_pair(t0, t1);
  auto in = pad_input(t0, input);
  TreeSearch ts{t0, t1, {}};
  return ts.accepts(initial_id(t0, in), static_cast<int>(in.size()));
}

std::optional<std::vector<ID>> accepting_tree(const NDTM& t0, const NDTM& t1, const std::vector<int>& input) {
  check_pair(t0, t1);
  auto in = pad_input(t0, input);
  const int n = static_cast<int>(in.size());
  TreeSearch ts{t0, t1, {}};
  ID root = initial_id(t0, in);
  if (!ts.accepts(root, n)) return std::nullopt;
  std::vector<ID> tree(size_t{2} << n);
  ts.build(root, n, 1, tree);
  return tree;
}

std::vector<std::vector<ID>> all_computation_trees(const NDTM& t0, const NDTM& t1, const std::vector<int>& input,
                                                   size_t limit) {
  check_pair(t0, t1);
  auto in = pad_input(t0, input);
  const int n = static_cast<int>(in.size());
  // Subtrees of depth d rooted at id, as flat heap-ordered arrays of size 2^(d+1).
  std::function<std::vector<std::vector<ID>>(const ID&, int)> rec = [&](const ID& id, int d) {
    std::vector<std::vector<ID>> out;
    if (d == 0) {
      out.push_back({ID{}, id});
      return out;
    }
    std::vector<std::vector<ID>> left, right;
    for (const auto& c : steps(t0, id)) {
      auto sub = rec(c, d - 1);
      left.insert(left.end(), sub.begin(), sub.end());
    }
    for (const auto& c : steps(t1, id)) {
      auto sub = rec(c, d - 1);
      right.insert(right.end(), sub.begin(), sub.end());
    }
    if (left.size() * right.size() > limit) throw std::runtime_error("all_computation_trees: more trees than limit");
    const size_t sz = size_t{2} << d;
    for (const auto& l : left)
      for (const auto& r : right) {
        std::vector<ID> t(sz);
        t[1] = id;
        // Copy level by level: node k at depth j of a subtree lands at 2^j + k' under the new root.
        for (int j = 0; j < d; ++j) {
          size_t w = size_t{1} << j;
          for (size_t k = 0; k < w; ++k) {
            t[2 * w + k] = l[w + k];
            t[2 * w + w + k] = r[w + k];
          }
        }
        out.push_back(std::move(t));
      }
    return out;
  };
  return rec(initial_id(t0, in), n);
}

std::pair<NDTM, NDTM> toy_machine_pair() {
  NDTM t0;
  t0.states = {"q", "f"};
  t0.alphabet = {"0", "1"};
  t0.accept = {1};
  NDTM t1 = t0;
  t0.delta = {{0, 0, 0, 0, 1}, {0, 0, 0, 0, 0}, {0, 1, 1, 1, 0}, {1, 0, 1, 0, 0}, {1, 1, 1, 1, 0}};
  t1.delta = {{0, 0, 1, 0, 0}, {0, 1, 1, 1, 0}, {1, 0, 1, 0, 0}, {1, 1, 1, 1, 0}};
  return {t0, t1};
}

std::string id_to_string(const NDTM& m, const ID& id) {
  ConfigAlphabet ca(m);
  std::string s;
  for (size_t i = 0; i < id.size(); ++i) {
    if (i) s += ' ';
    if (ca.is_head(id[i])) s += m.states[ca.state_of(id[i])] + ' ';
    s += m.alphabet[ca.symbol_of(id[i])];
  }
  return s;
}

ID id_from_string(const NDTM& m, const std::string& text) {
  ConfigAlphabet ca(m);
  std::istringstream in(text);
  std::string tok;
  ID id;
  int pending = -1;
  while (in >> tok) {
    auto qs = std::find(m.states.begin(), m.states.end(), tok);
    if (qs != m.states.end()) {
      if (pending >= 0) throw std::invalid_argument("id_from_string: two states in a row");
      pending = static_cast<int>(qs - m.states.begin());
      continue;
    }
    auto ss = std::find(m.alphabet.begin(), m.alphabet.end(), tok);
    if (ss == m.alphabet.end()) throw std::invalid_argument("id_from_string: unknown token '" + tok + "'");
    int s = static_cast<int>(ss - m.alphabet.begin());
    id.push_back(pending >= 0 ? ca.head(pending, s) : s);
    pending = -1;
  }
  if (pending >= 0) throw std::invalid_argument("id_from_string: state without symbol");
  if (!is_valid_id(m, id)) throw std::invalid_argument("id_from_string: not exactly one head");
  return id;
}

}  // namespace rwp
