// rwp: command-line entry point. Every subcommand emits RunReport JSON on stdout (one report,
// or an array for `all`) and a one-line summary per report on stderr. Exit status is 0 iff
// every report passes.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rwp/barrington.hpp"
#include "rwp/ca.hpp"
#include "rwp/constructions.hpp"
#include "rwp/io.hpp"
#include "rwp/machines.hpp"
#include "rwp/ripple.hpp"
#include "rwp/splitting.hpp"
#include "rwp/suites.hpp"

using namespace rwp;
using nlohmann::json;

namespace {

struct Globals {
  uint64_t seed = 0;
  long long budget = 0;
  std::string json_path;
  bool timing = false;
};

SuiteOptions options(const Globals& g) { return SuiteOptions{g.seed, g.budget}; }

// "zd:2", "free:2", "lamplighter:2"
Group parse_group(const std::string& text) {
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  int arg = colon == std::string::npos ? 1 : std::stoi(text.substr(colon + 1));
  if (kind == "zd" || kind == "Z") return Group::zd(arg);
  if (kind == "free" || kind == "F") return Group::free(arg);
  if (kind == "lamplighter") return Group::lamplighter(arg, 1);
  throw CLI::ValidationError("--group", "expected zd:D, free:K or lamplighter:Q");
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

// Letters separated by whitespace: shift:<track>:<element> or perm:<cycles>, optional ^-1.
AutWord parse_autword(const std::string& text, const Group& G, const Tracks& tr) {
  AutWord w;
  std::string rest = text;
  size_t pos = 0;
  while (pos < rest.size()) {
    while (pos < rest.size() && std::isspace(static_cast<unsigned char>(rest[pos]))) ++pos;
    if (pos >= rest.size()) break;
    size_t end = pos;
    int depth = 0;
    while (end < rest.size() && (depth > 0 || !std::isspace(static_cast<unsigned char>(rest[end])))) {
      if (rest[end] == '(') ++depth;
      if (rest[end] == ')') --depth;
      ++end;
    }
    std::string tok = rest.substr(pos, end - pos);
    pos = end;
    bool inv = false;
    if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
      inv = true;
      tok.resize(tok.size() - 3);
    }
    AutWord l;
    if (tok.rfind("shift:", 0) == 0) {
      auto second = tok.find(':', 6);
      if (second == std::string::npos) throw std::invalid_argument("word: shift:<track>:<element>");
      int track = std::stoi(tok.substr(6, second - 6));
      if (track < 0 || track >= tr.count()) throw std::invalid_argument("word: track out of range");
      l = AutWord::shift(G.parse(tok.substr(second + 1)), track);
    } else if (tok.rfind("perm:", 0) == 0) {
      l = AutWord::symbol(Perm::parse(tr.alphabet_size(), tok.substr(5)));
    } else {
      throw std::invalid_argument("word: unknown letter '" + tok + "'");
    }
    w.append(inv ? l.inverse() : l);
  }
  return w;
}

NDTM load_machine(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open machine file " + path);
  return machine_from_json(json::parse(in));
}

std::pair<NDTM, NDTM> machines(const std::string& p0, const std::string& p1) {
  auto pair = toy_machine_pair();
  if (!p0.empty()) pair.first = load_machine(p0);
  if (!p1.empty()) pair.second = load_machine(p1);
  return pair;
}

// Whitespace-separated symbol names, or one character per symbol when there is no space.
std::vector<int> parse_input(const NDTM& m, const std::string& text) {
  std::vector<std::string> toks;
  if (text.find(' ') != std::string::npos) {
    std::stringstream ss(text);
    std::string t;
    while (ss >> t) toks.push_back(t);
  } else {
    for (char c : text) toks.emplace_back(1, c);
  }
  std::vector<int> out;
  for (const auto& t : toks) {
    auto it = std::find(m.alphabet.begin(), m.alphabet.end(), t);
    if (it == m.alphabet.end()) throw std::invalid_argument("input symbol '" + t + "' not in the alphabet");
    out.push_back(static_cast<int>(it - m.alphabet.begin()));
  }
  return out;
}

// "e" is the empty word; letters are digits.
std::vector<std::vector<int>> parse_words(const std::string& text) {
  std::vector<std::vector<int>> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::vector<int> w;
    if (tok != "e")
      for (char c : tok) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("--U: words are digit strings or e");
        w.push_back(c - '0');
      }
    out.push_back(w);
  }
  return out;
}

int emit(const Globals& g, const std::vector<RunReport>& reports, bool as_array) {
  json out = json::array();
  bool ok = true;
  for (const auto& r : reports) {
    out.push_back(r.to_json(g.timing));
    std::cerr << r.summary() << "\n";
    ok = ok && r.passed();
  }
  const json& doc = as_array ? out : out[0];
  std::cout << doc.dump(2) << "\n";
  if (!g.json_path.empty()) {
    std::ofstream f(g.json_path);
    if (!f) throw std::runtime_error("cannot write " + g.json_path);
    f << doc.dump(2) << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controlled permutations, PAut words and ripple constructions"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "random seed (default 0)");
  app.add_option("--budget", g.budget, "search budget; 0 keeps each suite's default");
  app.add_option("--json", g.json_path, "also write the report JSON to this path");
  app.add_flag("--timing", g.timing, "include wall time in the JSON");
  std::function<std::vector<RunReport>()> action;
  bool as_array = false;

  // compile
  auto* compile_cmd = app.add_subcommand("compile", "compile a formula to a controlled permutation word");
  std::string formula_text, perm_text = "(0 1 2)";
  int c_size = 5, n_ctrl = 0, alphabet = 2;
  compile_cmd->add_option("--formula", formula_text, "s-expression, e.g. (and (atom 0 1) (not (atom 2 0)))")->required();
  compile_cmd->add_option("--perm", perm_text, "even permutation in cycle notation");
  compile_cmd->add_option("--c-size", c_size, "|C| (at least 5)");
  compile_cmd->add_option("--n", n_ctrl, "control positions (default: formula's largest + 1)");
  compile_cmd->add_option("--alphabet", alphabet, "control alphabet size");
  compile_cmd->callback([&] {
    action = [&] {
      Formula f = parse_formula(formula_text);
      int n = n_ctrl > 0 ? n_ctrl : max_position(f) + 1;
      ControlSpace sp = ControlSpace::uniform(n, alphabet);
      Perm p = Perm::parse(c_size, perm_text);
      PermWord w = compile(p, f, sp);
      RunReport r;
      r.suite = "compile";
      r.params = {{"formula", to_sexpr(f)}, {"perm", p.str()}, {"c_size", c_size}, {"n", n}, {"alphabet", alphabet}};
      r.stats["length"] = word_length(w);
      r.stats["depth"] = depth(f);
      r.stats["envelope"] = length_envelope(depth(f), alphabet);
      if (word_length(w) <= 5000) r.stats["word"] = permword_to_json(w);
      StateTable got = word_table(w), want = brute_oracle(p, f, sp);
      r.cases = static_cast<long long>(want.size());
      for (size_t i = 0; i < want.size(); ++i)
        if (got[i] != want[i]) r.fail({{"state", i}, {"word", got[i]}, {"oracle", want[i]}});
      return std::vector<RunReport>{r};
    };
  });

  // oracle-equiv, lengths, restriction
  FormulaCorpusSpec corpus;
  std::string sizes_text = "2,4,8,16";
  auto* oe = app.add_subcommand("oracle-equiv", "compiled words against the brute oracle on a random corpus");
  oe->add_option("--depth", corpus.max_depth, "maximal formula depth");
  oe->add_option("--n", corpus.n, "binary control positions");
  oe->add_option("--corpus", corpus.count, "number of formulas");
  oe->callback([&] { action = [&] { return std::vector<RunReport>{suite_oracle_equiv(corpus, options(g))}; }; });
  auto* lengths = app.add_subcommand("lengths", "length envelope on a corpus and the binary increment power law");
  lengths->add_option("--depth", corpus.max_depth, "maximal formula depth");
  lengths->add_option("--n", corpus.n, "binary control positions");
  lengths->add_option("--corpus", corpus.count, "number of formulas");
  lengths->add_option("--sizes", sizes_text, "binary increment sizes m");
  lengths->callback([&] {
    action = [&] { return std::vector<RunReport>{suite_lengths(corpus, parse_ints(sizes_text), options(g))}; };
  });
  int instances = 1000, max_n = 4;
  auto* restr = app.add_subcommand("restriction", "intersection, complement, union and inverse identities");
  restr->add_option("--instances", instances, "sampled instances");
  restr->add_option("--max-n", max_n, "largest control length");
  restr->callback([&] { action = [&] { return std::vector<RunReport>{suite_restriction(instances, max_n, options(g))}; }; });

  // ball, split, verify-split
  std::string group_text = "free:2";
  int radius = 2;
  auto* ball = app.add_subcommand("ball", "ball of the word metric");
  ball->add_option("--group", group_text, "zd:D, free:K or lamplighter:Q");
  ball->add_option("--radius", radius, "radius");
  ball->callback([&] {
    action = [&] {
      Group G = parse_group(group_text);
      auto elems = G.ball(radius, g.budget > 0 ? static_cast<size_t>(g.budget) : 5'000'000);
      RunReport r;
      r.suite = "ball";
      r.params = {{"group", group_text}, {"radius", radius}};
      r.cases = static_cast<long long>(elems.size());
      r.stats["size"] = elems.size();
      if (elems.size() <= 2000) {
        json list = json::array();
        for (const auto& e : elems) list.push_back(G.format(e));
        r.stats["elements"] = list;
      }
      return std::vector<RunReport>{r};
    };
  });
  std::string scheme = "free";
  int pent_k = 3;
  auto* split = app.add_subcommand("split", "build and verify one splitting scheme");
  split->add_option("--scheme", scheme, "free or pentagon")->check(CLI::IsMember({"free", "pentagon"}));
  split->add_option("--radius", radius, "ball radius in F_2 (free)");
  split->add_option("--k", pent_k, "region size (pentagon)");
  split->callback([&] {
    action = [&] {
      RunReport r;
      r.suite = "split";
      FiniteGraph graph = scheme == "free" ? ball_graph(Group::free(2), radius) : pentagon_region(pent_k);
      Ratio alpha = scheme == "free" ? Ratio{2, 3} : Ratio{3, 4};
      size_t bound = scheme == "free" ? 1 : static_cast<size_t>(pent_k + 1);
      r.params = {{"scheme", scheme}, {"alpha", std::to_string(alpha.num) + "/" + std::to_string(alpha.den)},
                  {"cut_bound", bound}};
      if (scheme == "free") r.params["radius"] = radius;
      else r.params["k"] = pent_k;
      SplitTree t = scheme == "free" ? split_free(graph, alpha) : split_pentagon(pent_k, graph, alpha);
      SplitCheck c = verify_splitting_scheme(t, graph, alpha, bound);
      r.cases = 1;
      r.stats = {{"vertices", graph.size()}, {"tree_nodes", t.nodes.size()}, {"depth", t.depth()}, {"max_cut", t.max_cut()}};
      json cuts = json::array();
      for (int v : t.nodes[t.root].cut) cuts.push_back(graph.labels.empty() ? std::to_string(v) : graph.labels[v]);
      r.stats["root_cut"] = cuts;
      if (!c.ok) r.fail({{"node", c.node}, {"reason", c.reason}, {"u", c.u}, {"v", c.v}});
      return std::vector<RunReport>{r};
    };
  });
  int free_radius = 6, pentagon_k = 8;
  auto* vsplit = app.add_subcommand("verify-split", "free scheme for radii up to R and pentagon scheme for k up to K");
  vsplit->add_option("--free-radius", free_radius, "largest F_2 radius");
  vsplit->add_option("--pentagon-k", pentagon_k, "largest pentagon k");
  vsplit->callback([&] {
    action = [&] { return std::vector<RunReport>{suite_split(free_radius, pentagon_k, options(g))}; };
  });

  // wp
  std::string word_text, tracks_text = "2", mode = "exhaustive";
  int period = 0, wp_words = 200;
  auto* wp = app.add_subcommand("wp", "word problem of a PAut word, or the oracle consistency sweep without --word");
  wp->add_option("--group", group_text, "zd:D, free:K or lamplighter:Q");
  wp->add_option("--tracks", tracks_text, "track radices, e.g. 2,2");
  wp->add_option("--word", word_text, "letters shift:<track>:<element> or perm:<cycles>, each optionally ^-1");
  wp->add_option("--mode", mode, "exhaustive, periodic or search")->check(CLI::IsMember({"exhaustive", "periodic", "search"}));
  wp->add_option("--period", period, "period for --mode periodic (default (2r+1)|w|)");
  wp->add_option("--words", wp_words, "words in the consistency sweep");
  wp->callback([&] {
    action = [&] {
      if (word_text.empty()) return std::vector<RunReport>{suite_wp_consistency(wp_words, options(g))};
      Group G = parse_group(group_text);
      Tracks tr(parse_ints(tracks_text));
      AutWord w = parse_autword(word_text, G, tr);
      RunReport r;
      r.suite = "wp";
      r.params = {{"group", group_text}, {"tracks", tr.radix}, {"word", word_text}, {"mode", mode}, {"seed", g.seed}};
      r.cases = 1;
      if (mode == "periodic") {
        long long rad = 0;
        for (const auto& l : flatten(w, G, tr))
          if (l.kind == LetterKind::Shift) rad = std::max<long long>(rad, G.norm(l.g));
        int p = period > 0 ? period : static_cast<int>((2 * rad + 1) * std::max<size_t>(w.size(), 1));
        PeriodicVerdict v = periodic_verdict(w, G, tr, p, g.budget > 0 ? g.budget : 100000, g.seed);
        r.params["period"] = p;
        r.stats = {{"word_verdict", verdict_name(v.verdict)}, {"tested", v.tested}, {"exhaustive", v.exhaustive}};
        if (v.witness) r.stats["witness"] = periodic_to_json(*v.witness);
        if (v.rule_mismatches) r.fail({{"reason", "torus action differs from the local rule"}, {"cells", v.rule_mismatches}});
      } else {
        long long budget = g.budget > 0 ? g.budget : (mode == "exhaustive" ? 10'000'000 : 1'000'000);
        EvalPlan plan(w, G, tr);
        if (mode == "search") budget = std::min(budget, std::max<long long>(plan.pattern_count() < 0 ? budget : plan.pattern_count() - 1, 1));
        TrivialityResult v = is_trivial(w, G, tr, budget, g.seed);
        r.stats = {{"word_verdict", verdict_name(v.verdict)},
                   {"tested", v.tested},
                   {"exhaustive", v.exhaustive},
                   {"patterns_log10", plan.log10_patterns()}};
        if (v.witness) {
          r.stats["witness"] = pattern_to_json(G, *v.witness);
          r.stats["before"] = v.before;
          r.stats["after"] = v.after;
        }
        if (v.verdict == Verdict::Unknown) r.verdict = "unknown";
      }
      return std::vector<RunReport>{r};
    };
  });

  // ripple-verify, psi-verify
  GraphSweepSpec sweep;
  int ripple_n = 2;
  std::string graph_path, system_path;
  bool exhaustive_flag = false;
  auto* rv = app.add_subcommand("ripple-verify", "catcher word against the catching oracle");
  rv->add_option("--n", ripple_n, "catcher depth");
  rv->add_option("--max-nodes", sweep.random_max_nodes, "largest random graph");
  rv->add_option("--random", sweep.random_graphs, "random graphs");
  rv->add_option("--exhaustive-nodes", sweep.exhaustive_nodes, "every good graph up to this size");
  rv->add_flag("--exhaustive", exhaustive_flag, "sweep only (no random graphs)");
  rv->add_option("--graph", graph_path, "apply to this graph JSON instead of sweeping");
  rv->add_option("--system", system_path, "successor system JSON for --graph (default: counter up to n + 1)");
  rv->callback([&] {
    action = [&] {
      if (graph_path.empty()) {
        GraphSweepSpec s = sweep;
        s.required_nodes = s.exhaustive_nodes;
        if (exhaustive_flag) s.random_graphs = 0;
        return std::vector<RunReport>{suite_catcher(ripple_n, s, 8, options(g))};
      }
      std::ifstream gin(graph_path);
      if (!gin) throw std::invalid_argument("cannot open " + graph_path);
      LabeledGraph G = graph_from_json(json::parse(gin), 2);
      SuccessorSystem sys = SuccessorSystem::counter(G.labels(), ripple_n + 1);
      if (!system_path.empty()) {
        std::ifstream sin(system_path);
        sys = system_from_json(json::parse(sin));
      }
      Perm pi = Perm::parse(6, "(0 1 2 3 4)");
      RunReport r;
      r.suite = "ripple-verify";
      r.params = {{"n", ripple_n}, {"graph", graph_path}, {"pi", pi.str()}};
      r.cases = 1;
      auto got = CompiledRipple(build_catcher(ripple_n, pi)).apply(G, sys);
      auto want = oracle_catcher(ripple_n, pi, G, sys);
      r.stats["result"] = graph_to_json(got);
      r.stats["roots"] = catcher_roots(ripple_n, G, sys);
      if (got != want) r.fail({{"oracle", graph_to_json(want)}});
      return std::vector<RunReport>{r};
    };
  });
  auto* pv = app.add_subcommand("psi-verify", "psi words against their direct semantics");
  GraphSweepSpec psi_sweep;
  pv->add_option("--exhaustive-nodes", psi_sweep.exhaustive_nodes, "every good graph up to this size");
  pv->add_option("--random", psi_sweep.random_graphs, "random graphs");
  pv->add_option("--max-nodes", psi_sweep.random_max_nodes, "largest random graph");
  pv->callback([&] {
    action = [&] {
      GraphSweepSpec s = psi_sweep;
      s.required_nodes = s.exhaustive_nodes;
      return std::vector<RunReport>{suite_psi(s, options(g))};
    };
  });
  long long gadget_limit = 10'000'000, gadget_samples = 100'000;
  auto* gadgets = app.add_subcommand("gadgets", "phi gadgets on Z^2 against their reference rules");
  gadgets->add_option("--exhaustive-limit", gadget_limit, "largest exhaustive pattern count");
  gadgets->add_option("--samples", gadget_samples, "random patterns otherwise");
  gadgets->callback([&] {
    action = [&] { return std::vector<RunReport>{suite_gadgets(gadget_limit, gadget_samples, options(g))}; };
  });

  // tm
  auto* tm = app.add_subcommand("tm", "Turing machine tools (toy pair unless machine files are given)");
  tm->require_subcommand(1);
  std::string tm0_path, tm1_path, id_text, input_text;
  int step_len = 4;
  auto* tm_step = tm->add_subcommand("step", "successor IDs");
  tm_step->add_option("--machine", tm0_path, "machine JSON");
  tm_step->add_option("--id", id_text, "ID text, e.g. \"q 0 1\"")->required();
  tm_step->callback([&] {
    action = [&] {
      auto [m, unused] = machines(tm0_path, "");
      ID id = id_from_string(m, id_text);
      RunReport r;
      r.suite = "tm-step";
      r.params = {{"id", id_text}};
      json succ = json::array();
      for (const auto& s : steps(m, id)) succ.push_back(id_to_string(m, s));
      r.cases = 1;
      r.stats = {{"steps", succ}, {"final", is_final_id(m, id)}};
      return std::vector<RunReport>{r};
    };
  });
  auto* tm_tree = tm->add_subcommand("tree-accepts", "two-machine tree acceptance");
  tm_tree->add_option("--tm0", tm0_path, "machine JSON for 0-edges");
  tm_tree->add_option("--tm1", tm1_path, "machine JSON for 1-edges");
  tm_tree->add_option("--input", input_text, "input word")->required();
  tm_tree->callback([&] {
    action = [&] {
      auto [t0, t1] = machines(tm0_path, tm1_path);
      auto in = parse_input(t0, input_text);
      RunReport r;
      r.suite = "tm-tree";
      r.params = {{"input", input_text}};
      r.cases = 1;
      auto tree = accepting_tree(t0, t1, in);
      r.stats["accepts"] = tree.has_value();
      if (tree) r.stats["tree"] = id_tree_to_json(t0, *tree);
      return std::vector<RunReport>{r};
    };
  });
  auto* tm_tiles = tm->add_subcommand("tiles", "Wang tiles of a machine and a rendered computation");
  tm_tiles->add_option("--machine", tm0_path, "machine JSON");
  tm_tiles->add_option("--input", input_text, "input word; renders its first computation path");
  tm_tiles->callback([&] {
    action = [&] {
      auto [m, unused] = machines(tm0_path, "");
      WangTileset ts = wang_tiles_from_tm(m);
      RunReport r;
      r.suite = "tm-tiles";
      r.params = {{"input", input_text}};
      r.stats["tiles"] = ts.tiles.size();
      r.stats["colors"] = ts.colors.size();
      if (!input_text.empty()) {
        std::vector<ID> comp{initial_id(m, parse_input(m, input_text))};
        for (int i = 0; i < 32 && !is_final_id(m, comp.back()); ++i) {
          auto s = steps(m, comp.back());
          if (s.empty()) break;
          comp.push_back(s.front());
        }
        auto grid = render_computation(ts, m, comp);
        TilingCheck c = validate_rectangle(ts, grid);
        r.cases = 1;
        r.stats["grid"] = grid;
        r.stats["accept_signal"] = top_row_accepts(ts, grid);
        if (!c.ok) r.fail({{"x", c.x}, {"y", c.y}, {"reason", c.reason}});
      }
      return std::vector<RunReport>{r};
    };
  });
  auto* tm_formula = tm->add_subcommand("verify-step", "Turing-step formula against the step relation");
  tm_formula->add_option("--max-length", step_len, "largest ID length");
  tm_formula->callback([&] { action = [&] { return std::vector<RunReport>{suite_turing_step(step_len, options(g))}; }; });

  // grid, cone-verify, thicket, reduce
  int grid_n = 3;
  std::string checks = "commute,inject,zero-shift";
  auto* grid = app.add_subcommand("grid", "commuting grid in the lamplighter group");
  grid->add_option("--n", grid_n, "grid side 2^n");
  grid->add_option("--check", checks, "subset of commute,inject,zero-shift");
  grid->callback([&] {
    action = [&] {
      RunReport r;
      r.suite = "grid";
      r.params = {{"n", grid_n}, {"check", checks}};
      GridCheck c = check_grid(grid_n);
      r.cases = c.pairs;
      r.stats = {{"commute", c.commute}, {"injective", c.injective}, {"zero_shift", c.zero_shift}};
      bool bad = (checks.find("commute") != std::string::npos && !c.commute) ||
                 (checks.find("inject") != std::string::npos && !c.injective) ||
                 (checks.find("zero-shift") != std::string::npos && !c.zero_shift);
      if (bad) r.fail({{"witness", c.witness}});
      return std::vector<RunReport>{r};
    };
  });
  int cone_k = 1, cone_random = 1000;
  auto* cone = app.add_subcommand("cone-verify", "Z^2 catcher (d = 1) against direct semantics");
  cone->add_option("--k", cone_k, "index bits minus one (n = 2^k)");
  cone->add_option("--random", cone_random, "random configurations");
  cone->callback([&] { action = [&] { return std::vector<RunReport>{suite_cone(cone_k, cone_random, options(g))}; }; });
  int th_k = 3, th_s = 2, th_n = 1;
  std::string th_u;
  auto* thicket = app.add_subcommand("thicket", "quotient word tree and its branching counts");
  thicket->add_option("--k", th_k, "depth");
  thicket->add_option("--s", th_s, "|S|");
  thicket->add_option("--U", th_u, "comma-separated digit words, e for the empty word");
  thicket->add_option("--n", th_n, "required branching prefixes per leaf");
  thicket->callback([&] {
    action = [&] {
      auto U = th_u.empty() ? std::vector<std::vector<int>>{} : parse_words(th_u);
      Thicket t = build_thicket(th_k, th_s, U);
      RunReport r;
      r.suite = "thicket";
      r.params = {{"k", th_k}, {"s", th_s}, {"U", th_u}, {"n", th_n}};
      auto counts = branching_counts(t);
      r.cases = static_cast<long long>(counts.size());
      r.stats = {{"vertices", t.num_classes()}, {"branching_counts", counts}, {"is_thicket", is_thicket(t, th_n)}};
      if (!is_thicket(t, th_n)) r.fail({{"min_branching", *std::min_element(counts.begin(), counts.end())}});
      return std::vector<RunReport>{r};
    };
  });
  int sampled4 = 4;
  auto* reduce = app.add_subcommand("reduce", "free monoid reduction against tree acceptance");
  reduce->add_option("--tm0", tm0_path, "machine JSON for 0-edges");
  reduce->add_option("--tm1", tm1_path, "machine JSON for 1-edges");
  reduce->add_option("--input", input_text, "one input; without it the toy pair sweep runs");
  reduce->add_option("--sampled", sampled4, "length-4 inputs in the sweep");
  reduce->callback([&] {
    action = [&] {
      if (input_text.empty() && tm0_path.empty() && tm1_path.empty())
        return std::vector<RunReport>{suite_reduce(sampled4, options(g))};
      auto [t0, t1] = machines(tm0_path, tm1_path);
      auto in = parse_input(t0, input_text);
      PspaceReduction red = build_pspace_reduction(t0, t1, in);
      TreeRegion R = tree_region(red.layout.n);
      ReductionVerdict v = decide_reduction(red, R, g.budget > 0 ? static_cast<size_t>(g.budget) : 100000, true);
      bool accepts = tree_accepts(t0, t1, in);
      RunReport r;
      r.suite = "reduce";
      r.params = {{"input", input_text}};
      r.cases = 1;
      r.stats = {{"verdict", verdict_name(v.verdict)}, {"tree_accepts", accepts}, {"trees_tested", v.trees},
                 {"max_block_length", red.max_block_length}, {"word_generators", red.ripple.size()}};
      if (v.witness_tree) r.stats["witness"] = id_tree_to_json(t0, *v.witness_tree);
      if ((v.verdict == Verdict::Nontrivial) != accepts || !v.reference_agrees)
        r.fail({{"verdict", verdict_name(v.verdict)}, {"tree_accepts", accepts}, {"reference_agrees", v.reference_agrees}});
      return std::vector<RunReport>{r};
    };
  });

  // criterion, all
  int crit = 1;
  auto* criterion = app.add_subcommand("criterion", "one acceptance criterion with its pinned parameters");
  criterion->add_option("k", crit, "criterion number")->required()->check(CLI::Range(1, 12));
  criterion->callback([&] { action = [&] { return std::vector<RunReport>{run_criterion(crit, options(g))}; }; });
  auto* all = app.add_subcommand("all", "every acceptance criterion");
  all->callback([&] {
    as_array = true;
    action = [&] {
      std::vector<RunReport> out;
      for (int k = 1; k <= 12; ++k) out.push_back(run_criterion(k, options(g)));
      return out;
    };
  });

  CLI11_PARSE(app, argc, argv);
  try {
    return emit(g, action(), as_array);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
