#pragma once

// Command-line front end. `run` takes the arguments after the program name and
// writes results to `out`, diagnostics to `err`.
//
// Exit codes: 0 success, 1 usage or input error, 2 size guard tripped or a
// check failed (invalid decomposition, failing selftest), 3 internal error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mint/dpsolver.hpp"
#include "mint/error.hpp"
#include "mint/generators.hpp"
#include "mint/interdiction.hpp"
#include "mint/io.hpp"
#include "mint/reductions.hpp"
#include "mint/testing/acceptance.hpp"
#include "mint/treedecomp.hpp"

namespace mint::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kFailed = 2, kInternal = 3 };

namespace detail {

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

/// Writes to `path`, or to `fallback` when the path is empty or "-".
template <class Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& write) {
  if (path.empty() || path == "-") {
    write(fallback);
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  write(out);
}

inline ParseError located(const ParseError& e, const std::string& path) {
  return ParseError(e.line(), path + ": " + e.what());
}

inline Instance load_instance(const std::string& path) {
  auto in = open_input(path);
  try {
    return io::read_instance(in);
  } catch (const ParseError& e) {
    throw located(e, path);
  }
}

inline io::ParsedDecomposition load_decomposition(const std::string& path) {
  auto in = open_input(path);
  try {
    return io::parse_decomposition(in);
  } catch (const ParseError& e) {
    throw located(e, path);
  }
}

inline NiceTreeDecomposition nice_for(const Graph& g, const std::string& decomp_path) {
  if (decomp_path.empty()) return default_nice_decomposition(g);
  auto parsed = load_decomposition(decomp_path);
  if (parsed.nice) return *parsed.nice;
  return to_nice(parsed.plain, g);
}

struct SolveArgs {
  std::string instance;
  std::string method = "dp";
  std::int64_t budget = -1;
  std::int64_t threshold = 0;
  std::string decomp;
  std::string prune = "off";
  bool emit_witness = false;
  bool timing = false;
  std::size_t max_removable = BruteForceOptions{}.max_removable_edges;
};

inline void add_solver_options(CLI::App* cmd, SolveArgs& a) {
  cmd->add_option("instance", a.instance, "instance file")->required();
  cmd->add_option("--method", a.method, "solver")->check(CLI::IsMember({"dp", "brute"}))->capture_default_str();
  cmd->add_option("--budget", a.budget, "override the budget from the file")->check(CLI::NonNegativeNumber);
  cmd->add_option("--decomp", a.decomp, "tree decomposition file (heuristic otherwise)");
  cmd->add_option("--prune", a.prune, "drop dominated table entries")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  cmd->add_option("--max-removable", a.max_removable, "brute-force guard on removable edges")->capture_default_str();
}

inline Instance with_override(const Instance& inst, std::int64_t budget) {
  return budget >= 0 ? inst.with_budget(budget) : inst;
}

inline Solution solve_with(const SolveArgs& a, const Instance& inst) {
  if (a.method == "brute") return solve_brute_force(inst, BruteForceOptions{a.max_removable});
  return solve_dp(inst, nice_for(inst.graph(), a.decomp), DPOptions{a.prune == "on"});
}

inline bool decide_with(const SolveArgs& a, const Instance& inst) {
  if (a.method == "brute") return decide_mint(inst, a.threshold, BruteForceOptions{a.max_removable});
  return decide_dp(inst, nice_for(inst.graph(), a.decomp), a.threshold, DPOptions{a.prune == "on"});
}

inline std::vector<KnapsackItem> parse_items(const std::string& text) {
  std::vector<KnapsackItem> items;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok.empty()) continue;
    auto colon = tok.find(':');
    if (colon == std::string::npos) throw InputError("item '" + tok + "' is not size:value");
    try {
      std::size_t used_a = 0, used_b = 0;
      const std::string a = tok.substr(0, colon), b = tok.substr(colon + 1);
      KnapsackItem it{std::stoll(a, &used_a), std::stoll(b, &used_b)};
      if (used_a != a.size() || used_b != b.size() || it.size < 0 || it.value < 0) throw std::invalid_argument(tok);
      items.push_back(it);
    } catch (const std::logic_error&) {
      throw InputError("item '" + tok + "' is not size:value with non-negative integers");
    }
  }
  return items;
}

inline void write_names(std::ostream& out, const std::vector<std::string>& names) {
  for (std::size_t v = 0; v < names.size(); ++v) out << "v " << v << ' ' << names[v] << '\n';
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matching interdiction solver and reduction toolkit", "mint"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "expand help for all subcommands");

  // solve
  detail::SolveArgs solve_args;
  bool solve_has_threshold = false;
  auto* solve = app.add_subcommand("solve", "compute the interdiction value");
  detail::add_solver_options(solve, solve_args);
  auto* solve_decide = solve->add_option("--decide", solve_args.threshold, "also report whether the value is <= K");
  solve->add_flag("--emit-witness", solve_args.emit_witness, "print the interdiction set and matching");
  solve->add_flag("--timing", solve_args.timing, "print the solve time");

  // decide
  detail::SolveArgs decide_args;
  auto* decide = app.add_subcommand("decide", "answer yes/no: is the interdiction value <= K");
  detail::add_solver_options(decide, decide_args);
  decide->add_option("--decide", decide_args.threshold, "threshold K")->required();

  // decomp
  auto* decomp = app.add_subcommand("decomp", "tree decomposition utilities");
  decomp->require_subcommand(1);
  std::string d_graph, d_td, d_out;
  auto* d_validate = decomp->add_subcommand("validate", "check a decomposition against a graph");
  d_validate->add_option("instance", d_graph, "instance file")->required();
  d_validate->add_option("decomposition", d_td, "decomposition file")->required();
  auto* d_heur = decomp->add_subcommand("heuristic", "min-degree elimination decomposition");
  d_heur->add_option("instance", d_graph, "instance file")->required();
  d_heur->add_option("-o,--output", d_out, "output file (stdout otherwise)");
  auto* d_nice = decomp->add_subcommand("nice", "nice decomposition from a plain one (heuristic otherwise)");
  d_nice->add_option("instance", d_graph, "instance file")->required();
  d_nice->add_option("decomposition", d_td, "plain decomposition file");
  d_nice->add_option("-o,--output", d_out, "output file (stdout otherwise)");

  // reduce
  auto* reduce = app.add_subcommand("reduce", "build reduction instances");
  reduce->require_subcommand(1);
  std::string r_in, r_out, r_map;
  auto add_reduce = [&](const std::string& name, const std::string& help, const std::string& input_help) {
    auto* cmd = reduce->add_subcommand(name, help);
    cmd->add_option("input", r_in, input_help)->required();
    cmd->add_option("-o,--output", r_out, "instance output file (stdout otherwise)");
    cmd->add_option("--map", r_map, "sidecar file naming every vertex");
    return cmd;
  };
  auto* r_knap = add_reduce("knapsack", "knapsack to isolated-edge instance", "knapsack file ('k n Z K' + 'i s v')");
  auto* r_clique = add_reduce("clique", "clique question to non-removable-edge instance", "graph file plus 'r <r>'");
  auto* r_nmintu = add_reduce("nmintu", "replace non-removable edges by gadgets", "unit instance with 'n' lines");

  // gen
  auto* gen = app.add_subcommand("gen", "generate instances");
  gen->require_subcommand(1);
  std::size_t g_n = 4, g_k = 2, g_m = 0;
  std::uint64_t g_seed = 1;
  bool g_unit = false;
  Weight g_max = 4;
  std::int64_t g_budget = 0;
  std::string g_items, g_out;
  auto add_gen = [&](const std::string& name, const std::string& help) {
    auto* cmd = gen->add_subcommand(name, help);
    cmd->add_option("--seed", g_seed, "random seed")->capture_default_str();
    cmd->add_option("--budget", g_budget, "budget written to the file")->check(CLI::NonNegativeNumber);
    cmd->add_option("-o,--output", g_out, "output file (stdout otherwise)");
    return cmd;
  };
  auto add_weights = [&](CLI::App* cmd) {
    cmd->add_flag("--unit", g_unit, "unit weights and costs");
    cmd->add_option("--max-weight", g_max, "weights and costs drawn from 1..max")->check(CLI::PositiveNumber);
  };
  auto* g_path = add_gen("path", "path on n vertices");
  g_path->add_option("--n", g_n, "vertices")->required();
  add_weights(g_path);
  auto* g_cycle = add_gen("cycle", "cycle on n vertices");
  g_cycle->add_option("--n", g_n, "vertices")->required();
  add_weights(g_cycle);
  auto* g_ktree = add_gen("ktree", "random k-tree");
  g_ktree->add_option("--n", g_n, "vertices")->required();
  g_ktree->add_option("--k", g_k, "clique size minus one")->required();
  add_weights(g_ktree);
  auto* g_random = add_gen("random", "random simple graph");
  g_random->add_option("--n", g_n, "vertices")->required();
  g_random->add_option("--m", g_m, "edges")->required();
  add_weights(g_random);
  auto* g_iso = add_gen("isolated", "isolated edges from knapsack items");
  g_iso->add_option("--items", g_items, "comma-separated size:value pairs")->required();
  auto* g_lemma = add_gen("lemma1", "bipartite graph with |Y| = C(k,2) degree-2 vertices and no 4-cycle");
  g_lemma->add_option("--k", g_k, "k >= 2")->required();

  // selftest
  std::vector<int> criteria;
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_option("--criterion", criteria, "run only these criteria")->check(CLI::Range(1, 9));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    for (const CLI::App* sub : app.get_subcommands()) {
      err << "run '" << sub->get_name() << " --help' for usage\n";
      break;
    }
    return kUsage;
  }
  solve_has_threshold = solve_decide->count() > 0;

  try {
    if (*solve) {
      const auto& a = solve_args;
      const Instance inst = detail::with_override(detail::load_instance(a.instance), a.budget);
      const auto t0 = std::chrono::steady_clock::now();
      const Solution s = detail::solve_with(a, inst);
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      io::write_solution(out, s, a.emit_witness);
      if (solve_has_threshold) out << "decision " << (s.value <= a.threshold ? "yes" : "no") << '\n';
      if (a.timing) out << "timing " << std::fixed << std::setprecision(3) << ms << " ms\n";
      return kOk;
    }
    if (*decide) {
      const auto& a = decide_args;
      const Instance inst = detail::with_override(detail::load_instance(a.instance), a.budget);
      out << (detail::decide_with(a, inst) ? "yes" : "no") << '\n';
      return kOk;
    }
    if (*decomp) {
      const Instance inst = detail::load_instance(d_graph);
      const Graph& g = inst.graph();
      if (*d_validate) {
        auto parsed = detail::load_decomposition(d_td);
        std::vector<Violation> problems = parsed.nice ? validate_nice(*parsed.nice, g) : validate(parsed.plain, g);
        if (problems.empty()) {
          out << "ok width=" << width(parsed.plain) << '\n';
          return kOk;
        }
        for (const Violation& v : problems) out << "violation " << describe(v) << '\n';
        return kFailed;
      }
      if (*d_heur) {
        const TreeDecomposition td = heuristic_decomposition(g);
        detail::emit(d_out, out, [&](std::ostream& o) { io::write_decomposition(o, td); });
        return kOk;
      }
      if (*d_nice) {
        TreeDecomposition td = d_td.empty() ? heuristic_decomposition(g) : detail::load_decomposition(d_td).plain;
        const NiceTreeDecomposition ntd = to_nice(td, g);
        detail::emit(d_out, out, [&](std::ostream& o) { io::write_nice_decomposition(o, ntd); });
        return kOk;
      }
    }
    if (*reduce) {
      auto in = detail::open_input(r_in);
      Instance result;
      Weight threshold = 0;
      std::string threshold_name = "threshold";
      std::vector<std::string> names;
      try {
        if (*r_knap) {
          const KnapsackReduction red = knapsack_to_mint(io::parse_knapsack(in));
          result = red.instance;
          threshold = red.threshold;
          for (VertexId v = 0; v < result.graph().vertex_count(); ++v)
            names.push_back((v % 2 ? "b" : "a") + std::to_string(v / 2));
        } else if (*r_clique) {
          const io::ParsedInstance parsed = io::parse_instance(in, {"r"});
          auto it = parsed.extras.find("r");
          if (it == parsed.extras.end() || it->second.size() != 1) throw InputError(r_in + ": expected one 'r <r>' line");
          if (it->second[0] < 1) throw InputError(r_in + ": r must be at least 1");
          const CliqueReduction red =
              clique_to_nmintu(CliqueInstance{parsed.instance.graph(), static_cast<std::size_t>(it->second[0])});
          result = red.instance;
          threshold = red.threshold;
          names = red.vertex_names;
        } else if (*r_nmintu) {
          const NmintuReduction red = nmintu_to_mintu(io::read_instance(in));
          result = red.instance;
          threshold = red.offset;
          threshold_name = "offset";
          names = red.vertex_names;
        }
      } catch (const ParseError& e) {
        throw detail::located(e, r_in);
      }
      detail::emit(r_out, out, [&](std::ostream& o) {
        o << "# " << threshold_name << ' ' << threshold << '\n';
        io::write_instance(o, result);
      });
      if (!r_map.empty())
        detail::emit(r_map, out, [&](std::ostream& o) {
          o << threshold_name << ' ' << threshold << '\n';
          detail::write_names(o, names);
        });
      return kOk;
    }
    if (*gen) {
      std::mt19937_64 rng(g_seed);
      const gen::WeightSpec spec{g_unit, g_max};
      Graph g;
      std::string header;
      if (*g_path) {
        g = gen::path(g_n, rng, spec);
      } else if (*g_cycle) {
        g = gen::cycle(g_n, rng, spec);
      } else if (*g_ktree) {
        g = gen::ktree(g_k, g_n, rng, spec);
      } else if (*g_random) {
        g = gen::random_simple(g_n, g_m, rng, spec);
      } else if (*g_iso) {
        g = gen::isolated(detail::parse_items(g_items));
      } else if (*g_lemma) {
        const BipartiteGraph bg = random_lemma1_graph(g_k, rng);
        g = bg.graph;
        std::ostringstream ss;
        ss << "# x";
        for (VertexId x : bg.x_side) ss << ' ' << x;
        ss << "\n# y";
        for (VertexId y : bg.y_side) ss << ' ' << y;
        ss << '\n';
        header = ss.str();
      }
      const Instance inst(std::move(g), g_budget);
      detail::emit(g_out, out, [&](std::ostream& o) {
        o << header;
        io::write_instance(o, inst);
      });
      return kOk;
    }
    if (*selftest) return testing::run_acceptance(out, criteria) ? kOk : kFailed;
  } catch (const SizeError& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace mint::cli
