#include "rwp/io.hpp"

#include <stdexcept>

namespace rwp {

using nlohmann::json;

json graph_to_json(const LabeledGraph& g) {
  json nodes = json::array(), edges = json::array();
  for (int v = 0; v < g.size(); ++v) {
    nodes.push_back({{"id", v}, {"c", g.nodes[v].c}, {"b", g.nodes[v].b}});
    for (int s = 0; s < g.labels(); ++s)
      if (g.succ[v][s] >= 0) edges.push_back({{"from", v}, {"to", g.succ[v][s]}, {"label", s}});
  }
  return {{"nodes", nodes}, {"edges", edges}};
}

LabeledGraph graph_from_json(const json& j, int labels) {
  LabeledGraph g;
  const auto& nodes = j.at("nodes");
  g.nodes.resize(nodes.size());
  std::vector<char> seen(nodes.size(), 0);
  for (const auto& n : nodes) {
    int id = n.at("id").get<int>();
    if (id < 0 || id >= static_cast<int>(nodes.size()) || seen[id])
      throw std::invalid_argument("graph JSON: node ids must be 0..n-1 without repeats");
    seen[id] = 1;
    g.nodes[id] = {n.at("c").get<int>(), n.at("b").get<int>()};
  }
  for (const auto& e : j.value("edges", json::array())) labels = std::max(labels, e.at("label").get<int>() + 1);
  g.succ.assign(g.nodes.size(), std::vector<int>(labels, -1));
  for (const auto& e : j.value("edges", json::array())) {
    int from = e.at("from").get<int>(), to = e.at("to").get<int>(), s = e.at("label").get<int>();
    if (from < 0 || from >= g.size() || to < 0 || to >= g.size() || s < 0)
      throw std::invalid_argument("graph JSON: edge out of range");
    if (g.succ[from][s] >= 0 && g.succ[from][s] != to)
      throw std::invalid_argument("graph JSON: two edges with one label leave node " + std::to_string(from));
    g.succ[from][s] = to;
  }
  return g;
}

json system_to_json(const SuccessorSystem& s) {
  json rel = json::array();
  for (int l = 0; l < s.labels; ++l) {
    json pairs = json::array();
    for (int b = 0; b < s.b_size; ++b)
      for (int b2 = 0; b2 < s.b_size; ++b2)
        if (s.related(l, b, b2)) pairs.push_back({b, b2});
    rel.push_back(pairs);
  }
  return {{"labels", s.labels}, {"b_size", s.b_size}, {"rank", s.rank}, {"relations", rel}};
}

SuccessorSystem system_from_json(const json& j) {
  SuccessorSystem s;
  s.labels = j.at("labels").get<int>();
  s.b_size = j.at("b_size").get<int>();
  s.rank = j.at("rank").get<std::vector<int>>();
  if (static_cast<int>(s.rank.size()) != s.b_size) throw std::invalid_argument("system JSON: rank table size");
  s.rel.assign(s.labels, std::vector<std::vector<char>>(s.b_size, std::vector<char>(s.b_size, 0)));
  const auto& rel = j.at("relations");
  if (static_cast<int>(rel.size()) != s.labels) throw std::invalid_argument("system JSON: one relation per label");
  for (int l = 0; l < s.labels; ++l)
    for (const auto& p : rel[l]) {
      int b = p.at(0).get<int>(), b2 = p.at(1).get<int>();
      if (b < 0 || b >= s.b_size || b2 < 0 || b2 >= s.b_size) throw std::invalid_argument("system JSON: pair out of range");
      s.rel[l][b][b2] = 1;
    }
  return s;
}

json permword_to_json(const PermWord& w) {
  json out = json::array();
  for (const auto& g : w.gens())
    out.push_back({{"perm", w.perm(g.perm).str()}, {"symbol", g.symbol}, {"position", g.position}, {"inverted", g.inverted}});
  return out;
}

PermWord permword_from_json(const json& j, int c_size, const ControlSpace& space) {
  PermWord w(c_size, space);
  for (const auto& g : j) {
    int pos = g.at("position").get<int>(), sym = g.at("symbol").get<int>();
    if (pos < 0 || pos >= space.n() || sym < 0 || sym >= space.radix[pos])
      throw std::invalid_argument("PermWord JSON: generator outside the control space");
    w.push(Perm::parse(c_size, g.at("perm").get<std::string>()), sym, pos, g.value("inverted", false));
  }
  return w;
}

json pattern_to_json(const Group& G, const Pattern& p) {
  json support = json::array(), values = json::array();
  for (const auto& [g, v] : p.values) {
    support.push_back(G.format(g));
    values.push_back(v);
  }
  return {{"support", support}, {"values", values}};
}

Pattern pattern_from_json(const Group& G, const json& j) {
  const auto& support = j.at("support");
  const auto& values = j.at("values");
  if (support.size() != values.size()) throw std::invalid_argument("pattern JSON: support and values differ in length");
  Pattern p;
  for (size_t i = 0; i < support.size(); ++i) p.values[G.parse(support[i].get<std::string>())] = values[i].get<int>();
  return p;
}

json periodic_to_json(const PeriodicPoint& x) { return {{"periods", x.periods}, {"values", x.values}}; }

PeriodicPoint periodic_from_json(const json& j) {
  PeriodicPoint x{j.at("periods").get<std::vector<int>>(), j.at("values").get<std::vector<int>>()};
  long long cells = 1;
  for (int p : x.periods) {
    if (p < 1) throw std::invalid_argument("periodic JSON: periods must be positive");
    cells *= p;
  }
  if (cells != static_cast<long long>(x.values.size())) throw std::invalid_argument("periodic JSON: value count");
  return x;
}

json id_tree_to_json(const NDTM& m, const std::vector<ID>& tree) {
  json out = json::array();
  for (size_t h = 1; h < tree.size(); ++h) out.push_back(id_to_string(m, tree[h]));
  return out;
}

}  // namespace rwp
