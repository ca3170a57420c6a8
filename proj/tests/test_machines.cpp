#include <doctest.h>

#include <random>

#include "rwp/machines.hpp"

using namespace rwp;

namespace {

NDTM random_machine(std::mt19937_64& rng, int states, int symbols) {
  NDTM m;
  for (int q = 0; q < states; ++q) m.states.push_back("q" + std::to_string(q));
  for (int s = 0; s < symbols; ++s) m.alphabet.push_back(std::to_string(s));
  m.accept = {states - 1};
  std::bernoulli_distribution keep(0.3);
  for (int q = 0; q < states; ++q)
    for (int s = 0; s < symbols; ++s)
      for (int q2 = 0; q2 < states; ++q2)
        for (int s2 = 0; s2 < symbols; ++s2)
          for (int d = -1; d <= 1; ++d)
            if (keep(rng)) m.delta.push_back({q, s, q2, s2, d});
  return m;
}

// Accepting iff some full-depth tree of steps has only final leaves.
bool accepts_by_enumeration(const NDTM& t0, const NDTM& t1, const std::vector<int>& input) {
  for (const auto& tree : all_computation_trees(t0, t1, input)) {
    const size_t leaves = tree.size() / 2;
    bool ok = true;
    for (size_t h = leaves; h < tree.size(); ++h) ok = ok && is_final_id(t0, tree[h]);
    if (ok) return true;
  }
  return false;
}

bool accepts_from(const NDTM& t0, const NDTM& t1, const ID& id, int depth) {
  if (depth == 0) return is_final_id(t0, id);
  bool left = false, right = false;
  for (const auto& c : steps(t0, id)) left = left || accepts_from(t0, t1, c, depth - 1);
  for (const auto& c : steps(t1, id)) right = right || accepts_from(t0, t1, c, depth - 1);
  return left && right;
}

std::vector<int> bits(unsigned x, int len) {
  std::vector<int> v;
  for (int i = 0; i < len; ++i) v.push_back((x >> i) & 1);
  return v;
}

}  // namespace

TEST_CASE("ID text and steps of the toy pair") {
  auto [t0, t1] = toy_machine_pair();
  ID a = id_from_string(t0, "q 0 1");
  CHECK(id_to_string(t0, a) == "q 0 1");
  CHECK(a == initial_id(t0, {0, 1}));
  auto s = steps(t0, a);
  REQUIRE(s.size() == 2);
  CHECK(std::find(s.begin(), s.end(), id_from_string(t0, "0 q 1")) != s.end());
  CHECK(std::find(s.begin(), s.end(), a) != s.end());
  CHECK(steps(t1, a) == std::vector<ID>{id_from_string(t0, "f 0 1")});
  // moving right off the tape is dropped, waiting stays
  CHECK(steps(t0, id_from_string(t0, "0 q 0")) == std::vector<ID>{id_from_string(t0, "0 q 0")});
  CHECK(is_step(t0, id_from_string(t0, "0 q 1"), id_from_string(t0, "0 f 1")));
  CHECK_FALSE(is_step(t0, a, id_from_string(t0, "f 0 1")));
  CHECK(is_final_id(t0, id_from_string(t0, "1 f 0")));
  CHECK_FALSE(is_valid_id(t0, {0, 1}));
  CHECK_THROWS(id_from_string(t0, "q f 0"));
}

TEST_CASE("tree acceptance of the toy pair") {
  auto [t0, t1] = toy_machine_pair();
  CHECK_FALSE(tree_accepts(t0, t1, {0, 0}));
  CHECK(tree_accepts(t0, t1, {0, 1}));
  CHECK(tree_accepts(t0, t1, {1, 0}));
  CHECK(tree_accepts(t0, t1, {1, 1}));
  CHECK_FALSE(tree_accepts(t0, t1, {0, 0, 0, 0}));
  CHECK(tree_accepts(t0, t1, {0, 0, 0, 1}));
  // length 3 is padded with the blank to length 4
  CHECK(tree_accepts(t0, t1, {0, 0, 0}) == tree_accepts(t0, t1, {0, 0, 0, 0}));
  auto tree = accepting_tree(t0, t1, {0, 1});
  REQUIRE(tree);
  CHECK(tree->size() == 8);
  CHECK((*tree)[1] == initial_id(t0, {0, 1}));
  for (size_t h = 1; h < 4; ++h) {
    CHECK(is_step(t0, (*tree)[h], (*tree)[2 * h]));
    CHECK(is_step(t1, (*tree)[h], (*tree)[2 * h + 1]));
  }
  CHECK_FALSE(accepting_tree(t0, t1, {0, 0}));
}

TEST_CASE("tree acceptance agrees with enumeration and plain recursion on random machines") {
  std::mt19937_64 rng(11);
  int positives = 0, total = 0;
  for (int trial = 0; trial < 60; ++trial) {
    NDTM t0 = random_machine(rng, 2, 2);
    NDTM t1 = random_machine(rng, 2, 2);
    for (int len : {1, 2, 4})
      for (unsigned x = 0; x < (1u << len); ++x) {
        auto in = bits(x, len);
        bool fast = tree_accepts(t0, t1, in);
        if (len <= 2) CHECK(fast == accepts_by_enumeration(t0, t1, in));
        CHECK(fast == accepts_from(t0, t1, initial_id(t0, in), len));
        positives += fast;
        ++total;
      }
  }
  CHECK(positives > 0);
  CHECK(positives < total);
}

TEST_CASE("adding transitions never loses acceptance") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    NDTM t0 = random_machine(rng, 3, 2), t1 = random_machine(rng, 3, 2);
    NDTM more = t0;
    NDTM extra = random_machine(rng, 3, 2);
    more.delta.insert(more.delta.end(), extra.delta.begin(), extra.delta.end());
    for (unsigned x = 0; x < 4; ++x)
      if (tree_accepts(t0, t1, bits(x, 2))) CHECK(tree_accepts(more, t1, bits(x, 2)));
  }
}

TEST_CASE("machine JSON round trip and validation") {
  auto [t0, t1] = toy_machine_pair();
  NDTM back = machine_from_json(machine_to_json(t0));
  CHECK(back.states == t0.states);
  CHECK(back.alphabet == t0.alphabet);
  CHECK(back.delta == t0.delta);
  CHECK(back.accept == t0.accept);
  NDTM bad = t0;
  bad.delta.push_back({0, 0, 5, 0, 0});
  CHECK_THROWS(bad.validate());
}

TEST_CASE("Wang tiles encode computations") {
  auto [t0, t1] = toy_machine_pair();
  auto ts = wang_tiles_from_tm(t0);
  std::vector<ID> comp{initial_id(t0, {0, 0, 1}), id_from_string(t0, "0 q 0 1"), id_from_string(t0, "0 0 q 1"),
                       id_from_string(t0, "0 0 f 1")};
  for (size_t i = 0; i + 1 < comp.size(); ++i) REQUIRE(is_step(t0, comp[i], comp[i + 1]));
  auto grid = render_computation(ts, t0, comp, 2);
  CHECK(validate_rectangle(ts, grid).ok);
  CHECK(top_row_accepts(ts, grid));
  auto back = decode_rectangle(ts, t0, grid);
  REQUIRE(back);
  CHECK(*back == comp);

  // a non-final top row carries no accept signal
  auto partial = render_computation(ts, t0, {comp[0], comp[1]}, 1);
  CHECK(validate_rectangle(ts, partial).ok);
  CHECK_FALSE(top_row_accepts(ts, partial));

  // swapping two rows breaks a vertical match
  auto swapped = grid;
  std::swap(swapped[1], swapped[2]);
  auto check = validate_rectangle(ts, swapped);
  CHECK_FALSE(check.ok);
  CHECK(check.y >= 1);
}
