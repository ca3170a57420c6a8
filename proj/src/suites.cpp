#include "rwp/suites.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include "rwp/barrington.hpp"
#include "rwp/ca.hpp"
#include "rwp/constructions.hpp"
#include "rwp/formula_library.hpp"
#include "rwp/io.hpp"
#include "rwp/machines.hpp"
#include "rwp/ripple.hpp"
#include "rwp/splitting.hpp"

namespace rwp {

using nlohmann::json;

namespace {

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

Formula random_formula(int depth, int n, int alphabet, std::mt19937_64& rng) {
  if (depth == 0 || rng() % 4 == 0) return atom(static_cast<int>(rng() % n), static_cast<int>(rng() % alphabet));
  switch (rng() % 3) {
    case 0: return f_and(random_formula(depth - 1, n, alphabet, rng), random_formula(depth - 1, n, alphabet, rng));
    case 1: return f_or(random_formula(depth - 1, n, alphabet, rng), random_formula(depth - 1, n, alphabet, rng));
    default: return f_not(random_formula(depth - 1, n, alphabet, rng));
  }
}

std::vector<Formula> formula_corpus(const FormulaCorpusSpec& spec, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Formula> out;
  for (int i = 0; i < spec.count; ++i) out.push_back(random_formula(spec.max_depth, spec.n, 2, rng));
  return out;
}

json corpus_params(const FormulaCorpusSpec& spec) {
  return {{"corpus", spec.count}, {"max_depth", spec.max_depth}, {"n", spec.n}, {"c_size", 5}, {"pi", "(0 1 2)"}};
}

std::vector<int> c_values(const LabeledGraph& g) {
  std::vector<int> c;
  for (const auto& nd : g.nodes) c.push_back(nd.c);
  return c;
}

// Least squares slope and intercept of y against x.
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope, (sy - slope * sx) / n};
}

struct PsiCase {
  const char* pi;
  int c;
};

// c outside the support, c inside with a fixed point, and fixed-point-free permutations.
const std::vector<PsiCase> kPsiCases = {{"(0 1 2)", 5},       {"(0 1 2)", 0},        {"(0 1)(2 3)", 3},
                                        {"(0 1 2 3 4)", 2},   {"(0 1 2)(3 4 5)", 4}, {"(1 2 3 4 5)", 0},
                                        {"(0 1)(2 3)", 5}};

}  // namespace

// ---------------------------------------------------------------- Barrington

RunReport suite_oracle_equiv(const FormulaCorpusSpec& spec, const SuiteOptions& o) {
  Timer timer;
  RunReport r;
  r.suite = "oracle-equiv";
  r.params = corpus_params(spec);
  r.params["seed"] = o.seed;
  if (spec.n < 1 || spec.n > 16 || spec.max_depth < 0) throw std::invalid_argument("oracle-equiv: n in [1, 16], depth >= 0");
  const Perm pi = Perm::parse(5, "(0 1 2)");
  const ControlSpace sp = ControlSpace::uniform(spec.n, 2);
  long long total_length = 0;
  for (const auto& f : formula_corpus(spec, o.seed)) {
    PermWord w = compile(pi, f, sp);
    total_length += word_length(w);
    StateTable got = word_table(w), want = brute_oracle(pi, f, sp);
    r.cases += static_cast<long long>(want.size());
    for (size_t i = 0; i < want.size(); ++i)
      if (got[i] != want[i]) {
        r.fail({{"formula", to_sexpr(f)}, {"state", i}, {"word", got[i]}, {"oracle", want[i]}});
        break;
      }
  }
  r.stats["total_word_length"] = total_length;
  r.wall_seconds = timer.seconds();
  return r;
}

RunReport suite_lengths(const FormulaCorpusSpec& spec, const std::vector<int>& sizes, const SuiteOptions& o) {
  Timer timer;
  RunReport r;
  r.suite = "lengths";
  r.params = corpus_params(spec);
  r.params["seed"] = o.seed;
  r.params["increment_sizes"] = sizes;
  const Perm pi = Perm::parse(5, "(0 1 2)");
  const ControlSpace sp = ControlSpace::uniform(spec.n, 2);
  long long worst_slack = -1;
  for (const auto& f : formula_corpus(spec, o.seed)) {
    ++r.cases;
    long long len = word_length(compile(pi, f, sp)), bound = length_envelope(depth(f), 2);
    if (len > bound) r.fail({{"formula", to_sexpr(f)}, {"length", len}, {"bound", bound}});
    if (worst_slack < 0 || bound - len < worst_slack) worst_slack = bound - len;
  }
  r.stats["min_envelope_slack"] = worst_slack;
  std::vector<double> lx, ly;
  json table = json::array();
  for (int m : sizes) {
    Formula f = formula_binary_increment(m);
    long long len = word_length(compile(pi, f, ControlSpace::uniform(2 * m, 2)));
    table.push_back({{"m", m}, {"length", len}, {"depth", depth(f)}});
    lx.push_back(std::log(static_cast<double>(m)));
    ly.push_back(std::log(static_cast<double>(len)));
  }
  r.stats["binary_increment"] = table;
  if (sizes.size() >= 2) {
    auto [slope, icpt] = fit_line(lx, ly);
    r.stats["fitted_exponent"] = slope;
    r.stats["fitted_log_constant"] = icpt;
    ++r.cases;
    if (slope > 4.0) r.fail({{"fitted_exponent", slope}, {"limit", 4.0}});
  }
  r.wall_seconds = timer.seconds();
  return r;
}

RunReport suite_restriction(int instances, int max_n, const SuiteOptions& o) {
  Timer timer;
  RunReport r;
  r.suite = "restriction";
  r.params = {{"instances", instances}, {"max_n", max_n}, {"seed", o.seed}, {"c_size", 5}};
  std::mt19937_64 rng(o.seed);
  const auto a5 = alternating_group(5);
  auto check = [&](const char* identity, const PermWord& lhs, const StateTable& rhs, const Formula& X, const Formula& Y) {
    ++r.cases;
    if (word_table(lhs) != rhs) r.fail({{"identity", identity}, {"X", to_sexpr(X)}, {"Y", to_sexpr(Y)}});
  };
  for (int i = 0; i < instances; ++i) {
    const int n = 1 + static_cast<int>(rng() % max_n);
    const ControlSpace sp = ControlSpace::uniform(n, 2);
    Formula X = random_formula(3, n, 2, rng), Y = random_formula(3, n, 2, rng);
    Perm p1 = a5[rng() % a5.size()], p2 = a5[rng() % a5.size()], p = a5[rng() % a5.size()];
    PermWord wx = compile(p1, X, sp), wy = compile(p2, Y, sp);
    // [p1|X, p2|Y] = [p1, p2]|X and Y
    PermWord comm(5, sp);
    comm.append(wx, true);
    comm.append(wy, true);
    comm.append(wx);
    comm.append(wy);
    check("intersection", comm, brute_oracle(commutator(p1, p2), f_and(X, Y), sp), X, Y);
    // p|not X = p o p^-1|X
    PermWord comp = word_unconditional(p, sp);
    comp.append(compile(p.inverse(), X, sp));
    check("complement", comp, brute_oracle(p, f_not(X), sp), X, Y);
    // p|X or Y = p|X o p|Y o p^-1|X and Y
    PermWord uni = compile(p, X, sp);
    uni.append(compile(p, Y, sp));
    uni.append(compile(p.inverse(), f_and(X, Y), sp));
    check("union", uni, brute_oracle(p, f_or(X, Y), sp), X, Y);
    // (p|X)^-1 = p^-1|X
    check("inverse", wx.inverse(), brute_oracle(p1.inverse(), X, sp), X, Y);
  }
  r.wall_seconds = timer.seconds();
  return r;
}

// ---------------------------------------------------------------- ripple groups

RunReport suite_psi(const GraphSweepSpec& spec, const SuiteOptions& o) {
  Timer timer;
  RunReport r;
  r.suite = "psi-verify";
  r.params = {{"exhaustive_nodes", spec.exhaustive_nodes}, {"required_nodes", spec.required_nodes},
              {"random_graphs", spec.random_graphs},       {"random_max_nodes", spec.random_max_nodes},
              {"labels", 2},                               {"c_size", 6},
              {"ranks", "0..2 and bottom"},                {"seed", o.seed}};
  const auto sys = SuccessorSystem::counter(2, 2);
  struct Built {
    Perm pi;
    int ell, c;
    CompiledRipple w;
  };
  std::vector<Built> words;
  json cases = json::array();
  for (const auto& cs : kPsiCases)
    for (int ell = 0; ell <= 2; ++ell) {
      Perm pi = Perm::parse(6, cs.pi);
      words.push_back({pi, ell, cs.c, CompiledRipple(build_psi(pi, ell, cs.c))});
      cases.push_back({{"pi", cs.pi}, {"c", cs.c}, {"ell", ell}});
    }
  r.params["psi"] = cases;
  long long fired = 0;
  auto compare = [&](const Built& b, const LabeledGraph& g) {
    ++r.cases;
    auto want = psi_reference(b.pi, b.ell, b.c, g, sys);
    auto got = b.w.apply(g, sys);
    if (want != g) ++fired;
    if (got != want)
      r.fail({{"pi", b.pi.str()}, {"c", b.c}, {"ell", b.ell}, {"graph", graph_to_json(g)},
              {"got", c_values(got)}, {"want", c_values(want)}});
  };
  long long graphs = 0;
  for (int N = 1; N <= spec.exhaustive_nodes; ++N)
    graphs += for_each_good_graph(N, 2, 6, sys.b_size, [&](const LabeledGraph& g) {
      for (const auto& b : words) compare(b, g);
      return true;
    });
  // One size further with C restricted to {0, 1}.
  long long partial = for_each_good_graph(spec.exhaustive_nodes + 1, 2, 2, sys.b_size, [&](const LabeledGraph& g) {
    for (const auto& b : words)
      if (b.c <= 1) compare(b, g);
    return true;
  });
  r.stats["partial_next_size_graphs"] = partial;
  std::mt19937_64 rng(o.seed);
  for (int t = 0; t < spec.random_graphs; ++t) {
    const auto& b = words[t % words.size()];
    compare(b, random_graph(rng, spec.random_max_nodes, 2, 6, sys, 1, t % 2 == 0 ? b.c : 0));
  }
  r.stats["exhaustive_graphs"] = graphs;
  r.stats["fired"] = fired;
  json needed = json::object();
  for (int N = spec.exhaustive_nodes + 1; N <= spec.required_nodes; ++N)
    needed[std::to_string(N)] = good_graph_count(N, 2, 6, sys.b_size);
  r.stats["good_graphs_per_size_not_swept"] = needed;
  r.stats["graph_counts_saturate_at"] = 1LL << 62;
  if (fired == 0) r.fail_requirement("no comparison had a qualifying node");
  if (spec.exhaustive_nodes < spec.required_nodes)
    r.fail_requirement("exhaustive sweep covers good graphs with at most " + std::to_string(spec.exhaustive_nodes) +
                       " nodes; " + std::to_string(spec.required_nodes) + " requested (see stats for the counts)");
  r.wall_seconds = timer.seconds();
  return r;
}

RunReport suite_catcher(int n, const GraphSweepSpec& spec, int max_length_n, const SuiteOptions& o) {
  Timer timer;
  RunReport r;
  r.suite = "ripple-verify";
  r.params = {{"n", n},
              {"exhaustive_nodes", spec.exhaustive_nodes},
              {"required_nodes", spec.required_nodes},
              {"random_graphs", spec.random_graphs},
              {"random_max_nodes", spec.random_max_nodes},
              {"labels", 2},
              {"c_size", 6},
              {"pi", "(0 1 2 3 4)"},
              {"seed", o.seed}};
  const Perm pi = Perm::parse(6, "(0 1 2 3 4)");
  const auto sys = SuccessorSystem::counter(2, n + 1);
  CompiledRipple w(build_catcher(n, pi));
  long long fired = 0;
  auto compare = [&](const LabeledGraph& g) {
    ++r.cases;
    auto want = oracle_catcher(n, pi, g, sys);
    auto got = w.apply(g, sys);
    if (want != g) ++fired;
    if (got != want) r.fail({{"graph", graph_to_json(g)}, {"got", c_values(got)}, {"want", c_values(want)}});
    return true;
  };
  long long graphs = 0;
  for (int N = 1; N <= spec.exhaustive_nodes; ++N) graphs += for_each_good_graph(N, 2, 6, sys.b_size, compare);
  // One size further with C restricted to {0, 1} and B to ranks 0..2.
  long long partial = for_each_good_graph(spec.exhaustive_nodes + 1, 2, 2, std::min(3, sys.b_size), compare);
  std::mt19937_64 rng(o.seed);
  for (int t = 0; t < spec.random_graphs; ++t) compare(random_graph(rng, spec.random_max_nodes, 2, 6, sys, n));
  r.stats["exhaustive_graphs"] = graphs;
  r.stats["partial_next_size_graphs"] = partial;
  r.stats["fired"] = fired;
  json needed = json::object();
  for (int N = spec.exhaustive_nodes + 1; N <= spec.required_nodes; ++N)
    needed[std::to_string(N)] = good_graph_count(N, 2, 6, sys.b_size);
  r.stats["good_graphs_per_size_not_swept"] = needed;
  r.stats["graph_counts_saturate_at"] = 1LL << 62;
  if (fired == 0) r.fail_requirement("no comparison had a catcher root");

  // Generator count a n + b.
  if (max_length_n >= 2) {
    std::vector<long long> len;
    for (int m = 1; m <= max_length_n; ++m) len.push_back(static_cast<long long>(build_catcher(m, pi).size()));
    const long long a = len[1] - len[0], b = len[0] - a;
    r.stats["length_a"] = a;
    r.stats["length_b"] = b;
    r.stats["lengths"] = len;
    for (int m = 1; m <= max_length_n; ++m) {
      ++r.cases;
      if (len[m - 1] != a * m + b) r.fail({{"n", m}, {"length", len[m - 1]}, {"affine", a * m + b}});
    }
  }
  if (spec.exhaustive_nodes < spec.required_nodes)
    r.fail_requirement("exhaustive sweep covers good graphs with at most " + std::to_string(spec.exhaustive_nodes) +
                       " nodes; " + std::to_string(spec.required_nodes) + " requested (see stats for the counts)");
  r.wall_seconds = timer.seconds();
  return r;
}

// ---------------------------------------------------------------- PAut gadgets and word problem

RunReport suite_gadgets(long long exhaustive_limit, long long samples, const SuiteOptions& o) {
  Timer timer;
  RunReport r;
  r.suite = "gadgets";
  r.params = {{"exhaustive_limit", exhaustive_limit}, {"samples", samples}, {"seed", o.seed}, {"group", "Z^2"}};
  const Group Z2 = Group::zd(2);
  const std::vector<GroupElement> S{Z2.parse("1,0"), Z2.parse("0,1")};
  json runs = json::array();
  auto run = [&](const std::string& kind, const Tracks& tr, const Perm& pi, int c, const std::vector<GroupElement>& offs) {
    AutWord w = offs.size() == 1 ? build_phi_single(tr, 0, 1, pi, c, offs[0]) : build_phi_set(tr, 0, 1, pi, c, offs);
    auto ref = [&](const Pattern& p) { return phi_reference(tr, 0, pi, c, offs, p, Z2); };
    std::vector<GroupElement> cells{Z2.identity()};
    cells.insert(cells.end(), offs.begin(), offs.end());
    ReferenceCheck rc = check_against_reference(w, Z2, tr, ref, {cells, {}}, exhaustive_limit, samples, o.seed);
    ++r.cases;
    EvalPlan plan(w, Z2, tr);
    runs.push_back({{"gadget", kind},
                    {"pi", pi.str()},
                    {"c", c},
                    {"B", tr.radix[1]},
                    {"patterns_log10", plan.log10_patterns()},
                    {"exhaustive", rc.exhaustive},
                    {"neighborhood_exhaustive", rc.neighborhood_exhaustive},
                    {"tested", rc.tested}});
    if (!rc.ok)
      r.fail({{"gadget", kind}, {"pi", pi.str()}, {"c", c}, {"pattern", pattern_to_json(Z2, *rc.witness)},
              {"got", rc.got}, {"want", rc.want}});
  };
  for (int b : {2, 3}) {
    Tracks tr({6, b}, {"C", "B"});
    run("phi_single", tr, Perm::parse(6, "(0 1 2)"), 5, {S[0]});
    run("phi_single", tr, Perm::parse(6, "(0 1)(2 3)"), 4, {S[1]});
    run("phi_set", tr, Perm::parse(6, "(0 1 2)"), 5, S);
    run("phi_set", tr, Perm::parse(6, "(0 1 2 3 4)"), 5, S);
  }
  r.stats["runs"] = runs;
  r.wall_seconds = timer.seconds();
  return r;
}

RunReport suite_wp_consistency(int words, const SuiteOptions& o) {
  Timer timer;
  RunReport r;
  r.suite = "wp";
  const long long pattern_budget = 10'000'000;
  const long long point_budget = o.budget > 0 ? o.budget : 1500;
  r.params = {{"words", words},
              {"max_length", 4},
              {"max_alphabet", 4},
              {"radius", 1},
              {"pattern_budget", pattern_budget},
              {"periodic_budget", point_budget},
              {"seed", o.seed}};
  std::mt19937_64 rng(o.seed);
  const std::vector<std::vector<int>> track_sets{{2}, {3}, {4}, {2, 2}};
  long long trivial = 0, nontrivial = 0, exhaustive_points = 0;
  for (int i = 0; i < words; ++i) {
    const int d = 1 + i % 2;
    const Group G = Group::zd(d);
    const Tracks tr(track_sets[rng() % track_sets.size()]);
    const int A = tr.alphabet_size();
    auto letter = [&]() {
      if (rng() % 2 == 0) {
        std::vector<int64_t> v(d, 0);
        v[rng() % d] = rng() % 2 ? 1 : -1;
        return AutWord::shift(G.zd_vector(v), static_cast<int>(rng() % tr.count()));
      }
      std::vector<int> img(A);
      for (int a = 0; a < A; ++a) img[a] = a;
      std::shuffle(img.begin(), img.end(), rng);
      return AutWord::symbol(Perm(img));
    };
    AutWord w;
    switch (rng() % 4) {
      case 0: {  // u u^-1
        AutWord u = letter();
        if (rng() % 2) u.append(letter());
        w = u * u.inverse();
        break;
      }
      case 1: {  // commutator of two letters
        AutWord a = letter();
        AutWord b = letter();
        w = commutator(a, b);
        break;
      }
      default:
        for (int k = 1 + static_cast<int>(rng() % 4); k > 0; --k) w.append(letter());
    }
    const int period = 3 * static_cast<int>(w.size());
    ++r.cases;
    TrivialityResult pat = is_trivial(w, G, tr, pattern_budget, o.seed);
    PeriodicVerdict per = periodic_verdict(w, G, tr, period, point_budget, o.seed + i);
    exhaustive_points += per.exhaustive;
    (pat.verdict == Verdict::Trivial ? trivial : nontrivial) += 1;
    json info{{"word", i}, {"d", d}, {"tracks", tr.radix}, {"length", w.size()}, {"period", period},
              {"pattern", verdict_name(pat.verdict)}, {"periodic", verdict_name(per.verdict)}};
    auto with = [&](json extra) {
      json j = info;
      j.update(extra);
      return j;
    };
    if (!pat.exhaustive) r.fail(with({{"reason", "pattern sweep not exhaustive"}}));
    else if (pat.verdict != per.verdict) r.fail(with({{"reason", "verdicts differ"}}));
    else if (per.rule_mismatches != 0)
      r.fail(with({{"reason", "torus action differs from the local rule"}, {"cells", per.rule_mismatches}}));
  }
  r.stats["trivial_words"] = trivial;
  r.stats["nontrivial_words"] = nontrivial;
  r.stats["periodic_exhaustive_words"] = exhaustive_points;
  r.wall_seconds = timer.seconds();
  return r;
}

// ---------------------------------------------------------------- machines

RunReport suite_turing_step(int max_length, const SuiteOptions& o) {
  Timer timer;
  RunReport r;
  r.suite = "tm-step";
  r.params = {{"max_length", max_length}, {"machines", "toy pair"}, {"seed", o.seed}};
  auto [t0, t1] = toy_machine_pair();
  long long steps_found = 0;
  for (const NDTM* m : {&t0, &t1}) {
    ConfigAlphabet ca(*m);
    const int W = ca.size();
    for (int L = 1; L <= max_length; ++L) {
      Formula f = formula_turing_step(*m, 2 * L + 1);
      std::vector<int> w(2 * L + 1, 0);
      w[L] = ca.hash();
      long long total = 1;
      for (int i = 0; i < 2 * L; ++i) total *= W;
      for (long long idx = 0; idx < total; ++idx) {
        long long t = idx;
        ID u(L), v(L);
        for (int i = 0; i < L; ++i, t /= W) u[i] = static_cast<int>(t % W);
        for (int i = 0; i < L; ++i, t /= W) v[i] = static_cast<int>(t % W);
        std::copy(u.begin(), u.end(), w.begin());
        std::copy(v.begin(), v.end(), w.begin() + L + 1);
        bool want = is_step(*m, u, v);
        steps_found += want;
        ++r.cases;
        if (eval(f, w) != want)
          r.fail({{"machine", m == &t0 ? "T0" : "T1"}, {"u", u}, {"v", v}, {"formula", !want}, {"steps", want}});
      }
    }
  }
  r.stats["step_pairs"] = steps_found;
  r.wall_seconds = timer.seconds();
  return r;
}

// ---------------------------------------------------------------- constructions

RunReport suite_grid(int max_n, const SuiteOptions& o) {
  Timer timer;
  RunReport r;
  r.suite = "grid";
  r.params = {{"max_n", max_n}, {"group", "Z_2 wr Z"}, {"seed", o.seed}};
  for (int n = 1; n <= max_n; ++n) {
    GridCheck g = check_grid(n);
    r.cases += g.pairs;
    if (!g.commute || !g.injective || !g.zero_shift)
      r.fail({{"n", n}, {"commute", g.commute}, {"injective", g.injective}, {"zero_shift", g.zero_shift},
              {"witness", g.witness}});
  }
  r.wall_seconds = timer.seconds();
  return r;
}

RunReport suite_cone(int k, int random_configs, const SuiteOptions& o) {
  Timer timer;
  RunReport r;
  r.suite = "cone-verify";
  const Perm pi = Perm::parse(6, "(0 1 2)");
  r.params = {{"d", 1}, {"D", 2}, {"k", k}, {"random", random_configs}, {"pi", pi.str()}, {"seed", o.seed}};
  ZdCatcher z = build_zd_catcher(1, k, pi);
  const ZdLayout& L = z.layout;
  long long positives = 0, fired = 0;
  auto compare = [&](const PeriodicPoint& x, const std::string& label, BlockMode mode = BlockMode::Cellwise) {
    ++r.cases;
    auto want = zd_catcher_reference(L, pi, x);
    auto got = apply_zd_catcher(z, x, mode);
    if (got != x) ++fired;
    if (got != want) r.fail({{"case", label}, {"point", periodic_to_json(x)}});
    return want != x;
  };
  auto blank = [&](int p0, int p1) {
    PeriodicPoint x{{p0, p1}, std::vector<int>(static_cast<size_t>(p0) * p1, 0)};
    return x;
  };
  auto set_c = [&](PeriodicPoint& x, std::vector<int> v, int c) {
    set_cell(x, v, L.tracks.set(cell(x, v), L.c_track, c));
  };
  const int P0 = L.n + 3, P1 = L.k + 2;
  // crafted positives: a cone at every position of the domain, each nonzero root value
  for (int a = 0; a < P0; ++a)
    for (int c = 1; c < 6; ++c) {
      PeriodicPoint x = blank(P0, P1);
      lay_cone(L, x, {a, 0}, L.n);
      set_c(x, {a, 0}, c);
      positives += compare(x, "cone");
    }
  // crafted negatives: one C value below the root, one corrupted index bit, a period too short
  for (int j = 1; j <= L.n; ++j) {
    PeriodicPoint x = blank(P0, P1);
    lay_cone(L, x, {0, 0}, L.n);
    set_c(x, {0, 0}, 1);
    set_c(x, {j, 0}, 3);
    if (compare(x, "nonzero below root")) r.fail({{"case", "nonzero below root"}, {"reason", "reference fires"}});
  }
  for (int j = 0; j <= L.n; ++j)
    for (int bit = 0; bit <= L.k; ++bit) {
      PeriodicPoint x = blank(P0, P1);
      lay_cone(L, x, {0, 0}, L.n);
      set_c(x, {0, 0}, 1);
      int sym = cell(x, {j, bit});
      set_cell(x, {j, bit}, L.tracks.set(sym, L.b_track, 1 - L.tracks.get(sym, L.b_track)));
      compare(x, "flipped index bit");
    }
  {
    PeriodicPoint x = blank(L.n, P1);
    lay_cone(L, x, {0, 0}, L.n);
    set_c(x, {0, 0}, 1);
    if (compare(x, "short period")) r.fail({{"case", "short period"}, {"reason", "reference fires"}});
  }
  // random configurations, some with a planted and perturbed cone
  std::mt19937_64 rng(o.seed);
  for (int t = 0; t < random_configs; ++t) {
    std::uniform_int_distribution<int> p0(L.n + 1, L.n + 5), p1(L.k + 1, L.k + 3), coin(0, 1);
    PeriodicPoint x = blank(p0(rng), p1(rng));
    std::uniform_int_distribution<int> cd(0, 5), bd(0, L.tracks.radix[L.b_track] - 1);
    std::bernoulli_distribution zero(0.7);
    for (int& s : x.values) s = L.tracks.encode({zero(rng) ? 0 : cd(rng), bd(rng)});
    if (coin(rng)) {
      std::vector<int> v{std::uniform_int_distribution<int>(0, x.periods[0] - 1)(rng),
                         std::uniform_int_distribution<int>(0, x.periods[1] - 1)(rng)};
      lay_cone(L, x, v, L.n);
      for (int j = 1; j <= L.n; ++j) set_c(x, {v[0] + j, v[1]}, 0);
      if (coin(rng))
        set_cell(x, {v[0] + std::uniform_int_distribution<int>(0, L.n)(rng), v[1] + std::uniform_int_distribution<int>(0, L.k)(rng)},
                 L.tracks.encode({cd(rng), bd(rng)}));
    }
    positives += compare(x, "random " + std::to_string(t), t < 5 ? BlockMode::Flat : BlockMode::Cellwise);
  }
  r.stats["reference_positives"] = positives;
  r.stats["word_moved"] = fired;
  r.stats["ripple_generators"] = z.ripple.size();
  r.stats["distinct_blocks"] = z.distinct_blocks;
  if (positives == 0) r.fail_requirement("no configuration had a catcher root");
  r.wall_seconds = timer.seconds();
  return r;
}

RunReport suite_reduce(int sampled_length4, const SuiteOptions& o) {
  Timer timer;
  RunReport r;
  r.suite = "reduce";
  r.params = {{"machines", "toy pair"}, {"length2", "all"}, {"length4_sampled", sampled_length4}, {"seed", o.seed}};
  auto [t0, t1] = toy_machine_pair();
  std::vector<std::vector<int>> inputs;
  for (int x = 0; x < 4; ++x) inputs.push_back({x & 1, (x >> 1) & 1});
  // length 4: sample both verdict classes (classified by tree_accepts) when both exist
  {
    std::vector<std::vector<int>> acc, rej;
    for (int x = 0; x < 16; ++x) {
      std::vector<int> in{x & 1, (x >> 1) & 1, (x >> 2) & 1, (x >> 3) & 1};
      (tree_accepts(t0, t1, in) ? acc : rej).push_back(in);
    }
    std::mt19937_64 rng(o.seed);
    std::shuffle(acc.begin(), acc.end(), rng);
    std::shuffle(rej.begin(), rej.end(), rng);
    size_t ia = 0, ir = 0;
    for (int k = 0; k < sampled_length4; ++k) {
      bool take_rej = (k % 2 == 0 && ir < rej.size()) || ia >= acc.size();
      if (take_rej && ir < rej.size()) inputs.push_back(rej[ir++]);
      else if (ia < acc.size()) inputs.push_back(acc[ia++]);
    }
  }
  json rows = json::array();
  std::map<int, TreeRegion> regions;
  for (const auto& in : inputs) {
    ++r.cases;
    PspaceReduction red = build_pspace_reduction(t0, t1, in);
    auto it = regions.find(red.layout.n);
    if (it == regions.end()) it = regions.emplace(red.layout.n, tree_region(red.layout.n)).first;
    bool accepts = tree_accepts(t0, t1, in);
    ReductionVerdict v = decide_reduction(red, it->second, 100000, true);
    bool nontrivial = v.verdict == Verdict::Nontrivial;
    json row{{"input", in},
             {"tree_accepts", accepts},
             {"verdict", verdict_name(v.verdict)},
             {"trees_tested", v.trees},
             {"max_block_length", red.max_block_length},
             {"word_generators", red.ripple.size()},
             {"reference_agrees", v.reference_agrees}};
    if (v.witness_tree) row["witness"] = id_tree_to_json(t0, *v.witness_tree);
    rows.push_back(row);
    if (nontrivial != accepts || !v.reference_agrees) r.fail(row);
  }
  r.stats["inputs"] = rows;
  r.wall_seconds = timer.seconds();
  return r;
}

RunReport suite_split(int max_free_radius, int max_pentagon_k, const SuiteOptions& o) {
  Timer timer;
  RunReport r;
  r.suite = "verify-split";
  r.params = {{"free_radius", max_free_radius}, {"pentagon_k", max_pentagon_k}, {"free_alpha", "2/3"},
              {"pentagon_alpha", "3/4"},       {"seed", o.seed}};
  json rows = json::array();
  const Group F2 = Group::free(2);
  for (int rad = 0; rad <= max_free_radius; ++rad) {
    ++r.cases;
    FiniteGraph g = ball_graph(F2, rad);
    SplitTree t = split_free(g, {2, 3});
    SplitCheck c = verify_splitting_scheme(t, g, {2, 3}, 1);
    rows.push_back({{"scheme", "free"}, {"r", rad}, {"vertices", g.size()}, {"depth", t.depth()}, {"max_cut", t.max_cut()}});
    if (!c.ok) r.fail({{"scheme", "free"}, {"r", rad}, {"node", c.node}, {"reason", c.reason}});
  }
  for (int k = 0; k <= max_pentagon_k; ++k) {
    ++r.cases;
    FiniteGraph g = pentagon_region(k);
    try {
      SplitTree t = split_pentagon(k, g, {3, 4});
      SplitCheck c = verify_splitting_scheme(t, g, {3, 4}, static_cast<size_t>(k + 1));
      rows.push_back({{"scheme", "pentagon"}, {"k", k}, {"vertices", g.size()}, {"depth", t.depth()}, {"max_cut", t.max_cut()}});
      if (!c.ok) r.fail({{"scheme", "pentagon"}, {"k", k}, {"node", c.node}, {"reason", c.reason}});
    } catch (const std::runtime_error& e) {
      r.fail({{"scheme", "pentagon"}, {"k", k}, {"reason", e.what()}});
    }
  }
  r.stats["schemes"] = rows;
  r.wall_seconds = timer.seconds();
  return r;
}

// ---------------------------------------------------------------- acceptance criteria

double criterion_time_limit(int k) {
  static const double limits[] = {30, 60, 30, 120, 300, 300, 120, 60, 10, 120, 600, 60};
  if (k < 1 || k > 12) throw std::invalid_argument("criterion must be 1..12");
  return limits[k - 1];
}

std::string criterion_title(int k) {
  static const char* titles[] = {"Barrington soundness",
                                 "length bounds",
                                 "restriction calculus",
                                 "psi identity",
                                 "ripple catching",
                                 "PAut gadgets",
                                 "word-problem oracle consistency",
                                 "Turing-step formula",
                                 "lamplighter grid",
                                 "Z^D cone element",
                                 "reduction soundness",
                                 "splitting schemes"};
  if (k < 1 || k > 12) throw std::invalid_argument("criterion must be 1..12");
  return titles[k - 1];
}

RunReport run_criterion(int k, const SuiteOptions& o) {
  RunReport r;
  switch (k) {
    case 1: r = suite_oracle_equiv({500, 3, 4}, o); break;
    case 2: r = suite_lengths({500, 3, 4}, {2, 4, 8, 16}, o); break;
    case 3: r = suite_restriction(1000, 4, o); break;
    case 4: r = suite_psi({2, 6, 1000, 12}, o); break;
    case 5: r = suite_catcher(2, {2, 7, 1000, 15}, 8, o); break;
    case 6: r = suite_gadgets(10'000'000, 100'000, o); break;
    case 7: r = suite_wp_consistency(200, o); break;
    case 8: r = suite_turing_step(4, o); break;
    case 9: r = suite_grid(3, o); break;
    case 10: r = suite_cone(1, 1000, o); break;
    case 11: r = suite_reduce(4, o); break;
    case 12: r = suite_split(6, 8, o); break;
    default: throw std::invalid_argument("criterion must be 1..12");
  }
  r.params["criterion"] = k;
  const double limit = criterion_time_limit(k);
  r.stats["time_limit_seconds"] = limit;
  if (r.wall_seconds >= limit) r.fail_requirement("wall time over the limit of " + std::to_string(static_cast<int>(limit)) + " s");
  return r;
}

}  // namespace rwp
