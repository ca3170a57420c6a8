#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rwp/report.hpp"

namespace rwp {

struct SuiteOptions {
  uint64_t seed = 0;
  long long budget = 0;  // 0: the suite's own default
};

// Random formulas with depth <= max_depth over n binary positions (deterministic in seed).
struct FormulaCorpusSpec {
  int count = 500, max_depth = 3, n = 4;
};

RunReport suite_oracle_equiv(const FormulaCorpusSpec& spec, const SuiteOptions& o);
RunReport suite_lengths(const FormulaCorpusSpec& spec, const std::vector<int>& increment_sizes, const SuiteOptions& o);
RunReport suite_restriction(int instances, int max_n, const SuiteOptions& o);

struct GraphSweepSpec {
  int exhaustive_nodes = 2;  // every good graph up to this size
  int required_nodes = 6;    // size the sweep is asked to cover
  int random_graphs = 1000;
  int random_max_nodes = 12;
};
RunReport suite_psi(const GraphSweepSpec& spec, const SuiteOptions& o);
RunReport suite_catcher(int n, const GraphSweepSpec& spec, int max_length_n, const SuiteOptions& o);

RunReport suite_gadgets(long long exhaustive_limit, long long samples, const SuiteOptions& o);
RunReport suite_wp_consistency(int words, const SuiteOptions& o);
RunReport suite_turing_step(int max_length, const SuiteOptions& o);
RunReport suite_grid(int max_n, const SuiteOptions& o);
RunReport suite_cone(int k, int random_configs, const SuiteOptions& o);
RunReport suite_reduce(int sampled_length4, const SuiteOptions& o);
RunReport suite_split(int max_free_radius, int max_pentagon_k, const SuiteOptions& o);

// Acceptance criterion k (1..12) with its pinned parameters, and its wall-time limit in seconds.
RunReport run_criterion(int k, const SuiteOptions& o);
double criterion_time_limit(int k);
std::string criterion_title(int k);

}  // namespace rwp
