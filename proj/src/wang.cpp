#include <map>
#include <stdexcept>
#include <tuple>

#include "rwp/machines.hpp"

namespace rwp {

namespace {

struct Palette {
  const NDTM& m;
  ConfigAlphabet ca;
  std::vector<std::string> names;
  // Vertical colors: config symbols 0..ca.size()-1, then the tail.
  int tail() const { return ca.size(); }
  // Horizontal colors follow.
  int none(int f) const { return ca.size() + 1 + f; }
  int right(int q, int f) const { return ca.size() + 3 + 2 * q + f; }
  int left(int q, int f) const { return ca.size() + 3 + 2 * ca.Q + 2 * q + f; }
  int box() const { return ca.size() + 3 + 4 * ca.Q; }

  explicit Palette(const NDTM& mm) : m(mm), ca(mm) {
    for (int x = 0; x < ca.size(); ++x) {
      names.push_back(ca.is_head(x) ? m.states[ca.state_of(x)] + ":" + m.alphabet[ca.symbol_of(x)]
                                    : m.alphabet[x]);
    }
    names.push_back("tail");
    names.push_back("-0");
    names.push_back("-1");
    for (int q = 0; q < ca.Q; ++q)
      for (int f = 0; f < 2; ++f) names.push_back(">" + m.states[q] + "/" + std::to_string(f));
    for (int q = 0; q < ca.Q; ++q)
      for (int f = 0; f < 2; ++f) names.push_back("<" + m.states[q] + "/" + std::to_string(f));
    names.push_back("box");
  }
  bool is_arrow(int c) const { return c >= right(0, 0) && c < box(); }
};

using Key = std::tuple<int, int, int, int>;

std::map<Key, int> tile_index(const WangTileset& ts) {
  std::map<Key, int> idx;
  for (size_t i = 0; i < ts.tiles.size(); ++i) {
    const auto& t = ts.tiles[i];
    idx.emplace(Key{t.north, t.south, t.west, t.east}, static_cast<int>(i));
  }
  return idx;
}

}  // namespace

WangTileset wang_tiles_from_tm(const NDTM& m) {
  m.validate();
  Palette P(m);
  WangTileset ts;
  ts.colors = P.names;
  ts.blank_color = P.box();
  std::map<Key, int> seen;
  auto add = [&](int n, int s, int w, int e, int f, const std::string& label) {
    Key k{n, s, w, e};
    if (seen.count(k)) return;
    seen.emplace(k, static_cast<int>(ts.tiles.size()));
    ts.tiles.push_back(WangTile{n, s, w, e, f, label});
    // Variant closing the tape before the blank tail.
    if (e == P.none(f)) {
      Key k2{n, s, w, P.box()};
      if (!seen.count(k2)) {
        seen.emplace(k2, static_cast<int>(ts.tiles.size()));
        ts.tiles.push_back(WangTile{n, s, w, P.box(), f, label + "|end"});
      }
    }
  };
  ts.blank_tile = 0;
  ts.tiles.push_back(WangTile{P.tail(), P.tail(), P.box(), P.box(), -1, "blank"});
  seen.emplace(Key{P.tail(), P.tail(), P.box(), P.box()}, 0);
  const auto& ca = P.ca;
  for (int f = 0; f < 2; ++f)
    for (int a = 0; a < ca.S; ++a) add(a, a, P.none(f), P.none(f), f, "pass " + m.alphabet[a]);
  for (const auto& t : m.delta) {
    const int f = m.is_final(t.q2) ? 1 : 0;
    const int src = ca.head(t.q, t.s);
    if (t.d == 0) {
      add(ca.head(t.q2, t.s2), src, P.none(f), P.none(f), f, "stay");
    } else if (t.d == 1) {
      add(t.s2, src, P.none(f), P.right(t.q2, f), f, "send right");
      for (int a = 0; a < ca.S; ++a) add(ca.head(t.q2, a), a, P.right(t.q2, f), P.none(f), f, "receive from left");
    } else {
      add(t.s2, src, P.left(t.q2, f), P.none(f), f, "send left");
      for (int a = 0; a < ca.S; ++a) add(ca.head(t.q2, a), a, P.none(f), P.left(t.q2, f), f, "receive from right");
    }
  }
  return ts;
}

TilingCheck validate_rectangle(const WangTileset& ts, const std::vector<std::vector<int>>& grid) {
  const int H = static_cast<int>(grid.size());
  if (H == 0) return {false, -1, -1, "empty rectangle"};
  const int W = static_cast<int>(grid[0].size());
  const int T = static_cast<int>(ts.tiles.size());
  // Arrow colors are exactly the horizontal colors other than the two plain ones and the box.
  auto is_arrow = [&](int c) {
    const std::string& nm = ts.colors[c];
    return !nm.empty() && (nm[0] == '>' || nm[0] == '<');
  };
  for (int y = 0; y < H; ++y) {
    if (static_cast<int>(grid[y].size()) != W) return {false, 0, y, "ragged row"};
    for (int x = 0; x < W; ++x) {
      int id = grid[y][x];
      if (id < 0 || id >= T) return {false, x, y, "unknown tile"};
      const auto& t = ts.tiles[id];
      if (x == 0 && is_arrow(t.west)) return {false, x, y, "head arrow crosses the west border"};
      if (x == W - 1 && is_arrow(t.east)) return {false, x, y, "head arrow crosses the east border"};
      if (x > 0 && ts.tiles[grid[y][x - 1]].east != t.west) return {false, x, y, "west/east mismatch"};
      if (y > 0 && ts.tiles[grid[y - 1][x]].north != t.south) return {false, x, y, "south/north mismatch"};
    }
  }
  return {};
}

std::vector<std::vector<int>> render_computation(const WangTileset& ts, const NDTM& m, const std::vector<ID>& comp,
                                                 int tail) {
  if (comp.size() < 2) throw std::invalid_argument("render_computation: need at least one step");
  Palette P(m);
  const auto& ca = P.ca;
  auto idx = tile_index(ts);
  const int n = static_cast<int>(comp[0].size());
  std::vector<std::vector<int>> grid;
  for (size_t r = 0; r + 1 < comp.size(); ++r) {
    const ID& u = comp[r];
    const ID& v = comp[r + 1];
    if (!is_step(m, u, v)) throw std::invalid_argument("render_computation: consecutive IDs are not a step");
    int h = 0, h2 = 0;
    while (!ca.is_head(u[h])) ++h;
    while (!ca.is_head(v[h2])) ++h2;
    const int q2 = ca.state_of(v[h2]);
    const int f = m.is_final(q2) ? 1 : 0;
    std::vector<int> hor(n + 1, P.none(f));
    if (h2 == h + 1) hor[h + 1] = P.right(q2, f);
    if (h2 == h - 1) hor[h] = P.left(q2, f);
    if (tail > 0) hor[n] = P.box();
    std::vector<int> row;
    for (int x = 0; x < n; ++x) {
      auto it = idx.find(Key{v[x], u[x], hor[x], hor[x + 1]});
      if (it == idx.end()) throw std::logic_error("render_computation: missing tile");
      row.push_back(it->second);
    }
    for (int k = 0; k < tail; ++k) row.push_back(ts.blank_tile);
    grid.push_back(std::move(row));
  }
  return grid;
}

std::optional<std::vector<ID>> decode_rectangle(const WangTileset& ts, const NDTM& m,
                                                const std::vector<std::vector<int>>& grid) {
  if (grid.empty() || !validate_rectangle(ts, grid).ok) return std::nullopt;
  ConfigAlphabet ca(m);
  auto width = [&](const std::vector<int>& row) {
    int w = 0;
    while (w < static_cast<int>(row.size()) && row[w] != ts.blank_tile) ++w;
    for (int x = w; x < static_cast<int>(row.size()); ++x)
      if (row[x] != ts.blank_tile) return -1;
    return w;
  };
  const int w = width(grid[0]);
  if (w <= 0) return std::nullopt;
  std::vector<ID> out;
  ID bottom;
  for (int x = 0; x < w; ++x) bottom.push_back(ts.tiles[grid[0][x]].south);
  out.push_back(bottom);
  for (const auto& row : grid) {
    if (width(row) != w) return std::nullopt;
    ID id;
    for (int x = 0; x < w; ++x) id.push_back(ts.tiles[row[x]].north);
    out.push_back(id);
  }
  for (const auto& id : out)
    for (int x : id)
      if (x >= ca.size()) return std::nullopt;
  for (const auto& id : out)
    if (!is_valid_id(m, id)) return std::nullopt;
  return out;
}

bool top_row_accepts(const WangTileset& ts, const std::vector<std::vector<int>>& grid) {
  if (grid.empty()) return false;
  bool any = false;
  for (int id : grid.back()) {
    if (id == ts.blank_tile) continue;
    if (ts.tiles[id].signal != 1) return false;
    any = true;
  }
  return any;
}

}  // namespace rwp
