#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace rwp {

struct Quintuple {
  int q, s, q2, s2, d;
  bool operator==(const Quintuple&) const = default;
};

// Nondeterministic Turing machine on a finite tape.
struct NDTM {
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  int blank = 0;
  int init = 0;
  std::vector<int> accept;
  std::vector<Quintuple> delta;

  int num_states() const { return static_cast<int>(states.size()); }
  int num_symbols() const { return static_cast<int>(alphabet.size()); }
  bool is_final(int q) const;
  void validate() const;
};

NDTM machine_from_json(const nlohmann::json& j);
nlohmann::json machine_to_json(const NDTM& m);

// ID symbols: tape symbol s is s; head symbol (q, s) is |S| + q|S| + s.
struct ConfigAlphabet {
  int S = 0, Q = 0;
  explicit ConfigAlphabet(const NDTM& m) : S(m.num_symbols()), Q(m.num_states()) {}
  ConfigAlphabet(int s, int q) : S(s), Q(q) {}
  int size() const { return S + Q * S; }
  int hash() const { return size(); }  // '#' separator, used only with a separator layout
  int head(int q, int s) const { return S + q * S + s; }
  bool is_head(int x) const { return x >= S && x < size(); }
  int state_of(int x) const { return (x - S) / S; }
  int symbol_of(int x) const { return x < S ? x : (x - S) % S; }
};

using ID = std::vector<int>;

bool is_valid_id(const NDTM& m, const ID& id);
// Initial ID (q_init, a)v for input av.
ID initial_id(const NDTM& m, const std::vector<int>& input);
bool is_final_id(const NDTM& m, const ID& id);
// All IDs one step away, sorted and unique. Moves off the tape are dropped.
std::vector<ID> steps(const NDTM& m, const ID& id);
// Whether (u, v) is one step of m.
bool is_step(const NDTM& m, const ID& u, const ID& v);

// Tree problem for two machines sharing states and alphabet: depth |u| binary tree of IDs,
// root initial_id(u), T0 steps on 0-edges, T1 steps on 1-edges, all leaves final.
bool tree_accepts(const NDTM& t0, const NDTM& t1, const std::vector<int>& input);
// A witnessing tree in heap order (node 1 is the root, children 2k, 2k+1), if one exists.
std::optional<std::vector<ID>> accepting_tree(const NDTM& t0, const NDTM& t1, const std::vector<int>& input);
// Every tree of IDs (heap order, depth n) whose edges are machine steps, capped at `limit`.
std::vector<std::vector<ID>> all_computation_trees(const NDTM& t0, const NDTM& t1, const std::vector<int>& input,
                                                   size_t limit = 100000);

// Fixed pair over {0, 1} with states {q, f}, f final. T0 in q on 0 either waits or moves right,
// on 1 it turns final; T1 turns final at once. Both idle in f.
std::pair<NDTM, NDTM> toy_machine_pair();

std::string id_to_string(const NDTM& m, const ID& id);
ID id_from_string(const NDTM& m, const std::string& text);

// Wang tiles. Colors are small integers; names are kept for serialization.
struct WangTile {
  int north, south, west, east;
  int signal = -1;  // accept bit carried along the row; -1 on the blank tile
  std::string label;
};

struct WangTileset {
  std::vector<WangTile> tiles;
  std::vector<std::string> colors;
  int blank_tile = 0;
  int blank_color = 0;
};

struct TilingCheck {
  bool ok = true;
  int x = -1, y = -1;  // first offending cell; y counts rows from the bottom
  std::string reason;
};

// Head-arrow construction. Row r of a rectangle holds ID r of a computation, read west to east,
// followed by a blank tail; the top row of an accepting computation carries an accept signal.
WangTileset wang_tiles_from_tm(const NDTM& m);
// grid[y][x], y = 0 is the bottom row.
TilingCheck validate_rectangle(const WangTileset& ts, const std::vector<std::vector<int>>& grid);
// Renders a computation (IDs of equal length) as a rectangle, padding `tail` blank columns.
std::vector<std::vector<int>> render_computation(const WangTileset& ts, const NDTM& m, const std::vector<ID>& comp,
                                                 int tail = 1);
// Reads the IDs back from a rectangle; nullopt if some row does not decode.
std::optional<std::vector<ID>> decode_rectangle(const WangTileset& ts, const NDTM& m,
                                                const std::vector<std::vector<int>>& grid);
// Whether the top row carries the accept signal.
bool top_row_accepts(const WangTileset& ts, const std::vector<std::vector<int>>& grid);

}  // namespace rwp
