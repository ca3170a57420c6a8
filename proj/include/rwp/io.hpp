#pragma once

#include <vector>

#include "json.hpp"
#include "rwp/barrington.hpp"
#include "rwp/ca.hpp"
#include "rwp/groups.hpp"
#include "rwp/machines.hpp"
#include "rwp/ripple.hpp"

namespace rwp {

// nodes [{id, c, b}], edges [{from, to, label}]
nlohmann::json graph_to_json(const LabeledGraph& g);
// `labels` fixes |S| when no edge mentions the largest label.
LabeledGraph graph_from_json(const nlohmann::json& j, int labels = 0);

// {labels, b_size, rank, relations: [[[b, b'], ...] per label]}
nlohmann::json system_to_json(const SuccessorSystem& s);
SuccessorSystem system_from_json(const nlohmann::json& j);

// Array of {perm, symbol, position, inverted}, perm in cycle notation.
nlohmann::json permword_to_json(const PermWord& w);
PermWord permword_from_json(const nlohmann::json& j, int c_size, const ControlSpace& space);

// {support: [element text], values: [symbol]}
nlohmann::json pattern_to_json(const Group& G, const Pattern& p);
Pattern pattern_from_json(const Group& G, const nlohmann::json& j);
nlohmann::json periodic_to_json(const PeriodicPoint& x);
PeriodicPoint periodic_from_json(const nlohmann::json& j);

// Heap-ordered tree of IDs as text, index 0 omitted.
nlohmann::json id_tree_to_json(const NDTM& m, const std::vector<ID>& tree);

}  // namespace rwp
