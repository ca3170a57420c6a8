#include <random>

#include "doctest.h"
#include "rwp/io.hpp"
#include "rwp/report.hpp"
#include "rwp/suites.hpp"

using namespace rwp;

TEST_CASE("graph and successor system JSON round trip") {
  auto sys = SuccessorSystem::counter(2, 3);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    LabeledGraph g = random_graph(rng, 7, 2, 6, sys, 2);
    CHECK(graph_from_json(graph_to_json(g), 2) == g);
  }
  SuccessorSystem back = system_from_json(system_to_json(sys));
  CHECK(back.rel == sys.rel);
  CHECK(back.rank == sys.rank);
}

TEST_CASE("permutation word JSON round trip keeps the table") {
  ControlSpace sp = ControlSpace::uniform(3, 2);
  Formula f = parse_formula("(or (atom 0 1) (and (atom 1 0) (not (atom 2 1))))");
  PermWord w = compile(Perm::parse(5, "(0 1 2)"), f, sp);
  PermWord back = permword_from_json(permword_to_json(w), 5, sp);
  CHECK(word_table(back) == word_table(w));
  CHECK(word_length(back) == word_length(w));
}

TEST_CASE("pattern and periodic point JSON round trip") {
  Group Z2 = Group::zd(2);
  Pattern p;
  p.values[Z2.parse("0,0")] = 3;
  p.values[Z2.parse("1,-2")] = 1;
  Pattern back = pattern_from_json(Z2, pattern_to_json(Z2, p));
  CHECK(back.values == p.values);
  PeriodicPoint x{{3, 2}, {0, 1, 2, 3, 4, 5}};
  CHECK(periodic_from_json(periodic_to_json(x)) == x);
}

TEST_CASE("reports are deterministic for a fixed seed") {
  SuiteOptions o{7, 0};
  auto a = suite_grid(2, o).to_json();
  auto b = suite_grid(2, o).to_json();
  CHECK(a.dump() == b.dump());
  CHECK_FALSE(a.contains("wall_seconds"));
  RunReport r;
  for (int i = 0; i < 8; ++i) r.fail({{"i", i}});
  CHECK(r.failures == 8);
  CHECK(r.witnesses.size() == 5);
  CHECK_FALSE(r.passed());
}
