#pragma once

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "meanset/error.hpp"
#include "meanset/experiments.hpp"
#include "meanset/free_group.hpp"
#include "meanset/graph.hpp"
#include "meanset/graph_io.hpp"
#include "meanset/invariants.hpp"
#include "meanset/json_io.hpp"
#include "meanset/meanset.hpp"
#include "meanset/measure.hpp"
#include "meanset/multivertex.hpp"
#include "meanset/random_instances.hpp"

// meanset-lab: command-line front end. Kept in a header so tests can drive it
// in-process through run().

namespace meanset::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct GraphOptions {
  std::string graph_file;
  int free_rank = 0;
  bool line = false;
  std::string measure_file;
  std::size_t sphere = 0;  // free group only: use mu_L instead of a measure file

  void attach(CLI::App* cmd, bool allow_sphere = false) {
    auto* g = cmd->add_option("--graph", graph_file, "edge-list file (one 'u v' pair per line)");
    auto* f = cmd->add_option("--free-rank", free_rank, "Cayley graph of the free group of this rank")->check(CLI::Range(1, 1000));
    auto* l = cmd->add_flag("--line", line, "the integer line");
    g->excludes(f)->excludes(l);
    f->excludes(l);
    auto* m = cmd->add_option("--measure", measure_file, "measure file ('vertex mass' per line)");
    if (allow_sphere) {
      auto* s = cmd->add_option("--sphere", sphere, "uniform measure on the sphere of this radius (with --free-rank)");
      s->excludes(m)->needs(f);
    }
  }
};

/// Calls fn(graph, measure) with the graph and measure selected on the command
/// line.
template <class F>
int with_instance(const GraphOptions& o, F&& fn) {
  const int sources = !o.graph_file.empty() + (o.free_rank > 0) + o.line;
  if (sources != 1) throw CLI::ValidationError("exactly one of --graph, --free-rank, --line is required");
  if (o.measure_file.empty() && o.sphere == 0) throw CLI::ValidationError("--measure is required");
  if (!o.graph_file.empty()) {
    const auto g = load_edge_list(o.graph_file);
    return fn(g, load_measure<IntVertex>(o.measure_file, parse_int_vertex));
  }
  if (o.line) return fn(LineGraph{}, load_measure<IntVertex>(o.measure_file, parse_int_vertex));
  const FreeGroupCayley g(o.free_rank);
  if (o.sphere) return fn(g, sphere_measure(o.free_rank, o.sphere));
  const int rank = o.free_rank;
  return fn(g, load_measure<ReducedWord>(o.measure_file, [rank](const std::string& s) { return parse_word(s, rank); }));
}

inline std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty() || !detail::all_digits(item)) throw CLI::ValidationError("not a list of counts: '" + text + "'");
    out.push_back(std::stoull(item));
  }
  if (out.empty()) throw CLI::ValidationError("empty list");
  return out;
}

template <class V>
V parse_vertex_for(const std::string& text, const std::optional<int>& rank) {
  if constexpr (std::is_same_v<V, ReducedWord>) {
    return parse_word(text, *rank);
  } else {
    return parse_int_vertex(text);
  }
}

/// Writes to `path`, or to `out` when path is empty or "-".
inline void emit(std::ostream& out, const std::string& path, const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(ErrorCode::invalid_input, "cannot write '" + path + "'");
  write(file);
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mean-sets of measures on graphs and free groups"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  // meanset
  GraphOptions ms_graph;
  int ms_class = 2;
  std::string ms_method = "auto";
  auto* ms = app.add_subcommand("meanset", "exact mean-set of a measure");
  ms_graph.attach(ms);
  ms->add_option("--class", ms_class, "weight class")->check(CLI::IsMember({1, 2}));
  ms->add_option("--method", ms_method, "solver")->check(CLI::IsMember({"auto", "exact", "descent", "tree", "bounded"}));

  // walk
  GraphOptions walk_graph;
  std::uint64_t walk_steps = 100000, walk_seed = 42;
  std::string walk_base;
  bool walk_trace = false;
  auto* walk = app.add_subcommand("walk", "associated random walk of a multi-vertex mean-set");
  walk_graph.attach(walk);
  walk->add_option("--steps", walk_steps, "walk length")->check(CLI::PositiveNumber);
  walk->add_option("--seed", walk_seed, "master seed");
  walk->add_option("--base", walk_base, "base vertex (default: smallest mean-set vertex)");
  walk->add_flag("--trace", walk_trace, "include every 100th state");

  // table-f4
  TableConfig table;
  std::string table_lengths = "5,10,20,50", table_samples = "2,4,6,8,10,12,14,16", table_out, table_format = "csv";
  auto* tab = app.add_subcommand("table-f4", "sphere-sample convergence table on a free group");
  tab->add_option("--rank", table.rank, "free group rank")->check(CLI::Range(1, 1000));
  tab->add_option("--lengths", table_lengths, "comma-separated sphere radii");
  tab->add_option("--samples", table_samples, "comma-separated sample sizes");
  tab->add_option("--trials", table.trials, "trials per cell")->check(CLI::PositiveNumber);
  tab->add_option("--seed", table.seed, "master seed");
  tab->add_option("--workers", table.workers, "worker threads")->check(CLI::PositiveNumber);
  tab->add_option("--out", table_out, "output path (default stdout)");
  tab->add_option("--format", table_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  // decay
  GraphOptions decay_graph;
  DecayConfig decay;
  std::string decay_samples = "2,4,8,16,32", decay_out, decay_format = "csv";
  auto* dec = app.add_subcommand("decay", "miss rate of the sample mean-set against n");
  decay_graph.attach(dec, true);
  dec->add_option("--samples", decay_samples, "comma-separated sample sizes");
  dec->add_option("--trials", decay.trials, "trials per sample size")->check(CLI::PositiveNumber);
  dec->add_option("--seed", decay.seed, "master seed");
  dec->add_option("--class", decay.weight_class, "weight class")->check(CLI::IsMember({1, 2}));
  dec->add_flag("--containment", decay.containment, "count S_n not contained in E as a miss");
  dec->add_option("--workers", decay.workers, "worker threads")->check(CLI::PositiveNumber);
  dec->add_option("--out", decay_out, "output path (default stdout)");
  dec->add_option("--format", decay_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  // slln
  GraphOptions slln_graph;
  std::uint64_t slln_steps = 100000, slln_after = 1000, slln_seed = 42;
  auto* sl = app.add_subcommand("slln", "track the sample mean-set along one long sample");
  slln_graph.attach(sl, true);
  sl->add_option("--steps", slln_steps, "sample length")->check(CLI::PositiveNumber);
  sl->add_option("--after", slln_after, "only record n beyond this");
  sl->add_option("--seed", slln_seed, "master seed");

  // check
  std::vector<std::string> check_suites;
  std::uint64_t check_seed = 42;
  bool check_fault = false;
  std::optional<std::uint64_t> check_case_seed;
  std::optional<std::size_t> check_cases;
  std::string check_format = "text";
  auto* chk = app.add_subcommand("check", "randomized invariant suites");
  chk->add_option("--suite", check_suites, "suite name or 'all' (repeatable)")->delimiter(',');
  chk->add_option("--seed", check_seed, "master seed");
  chk->add_flag("--inject-fault", check_fault, "translate words without free reduction (negative control)");
  chk->add_option("--case-seed", check_case_seed, "rerun a single case of one suite");
  chk->add_option("--cases", check_cases, "cases per suite (default: suite size)");
  chk->add_option("--format", check_format, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::vector<const char*> argv{"meanset-lab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (ms->parsed()) {
      return with_instance(ms_graph, [&](const auto& g, const auto& mu) {
        using G = std::decay_t<decltype(g)>;
        MeanSetResult<vertex_t<G>> r;
        if (ms_method == "auto") {
          r = mean_set(g, mu, ms_class);
        } else if (ms_method == "exact") {
          if constexpr (EnumerableGraph<G>) {
            r = mean_set_exact(g, mu, ms_class);
          } else {
            throw Error(ErrorCode::infinite_graph, "exact method needs a finite graph");
          }
        } else if (ms_method == "descent") {
          r = mean_set_descent(g, mu, ms_class);
        } else if (ms_method == "tree") {
          r = mean_set_tree(g, mu, ms_class);
        } else {
          r = mean_set_bounded(g, mu, ms_class);
        }
        out << to_json(r).dump() << '\n';
        return kExitOk;
      });
    }

    if (walk->parsed()) {
      return with_instance(walk_graph, [&](const auto& g, const auto& mu) {
        using V = vertex_t<std::decay_t<decltype(g)>>;
        const auto e = mean_set(g, mu, 2).vertices;
        std::optional<int> rank;
        if constexpr (std::is_same_v<V, ReducedWord>) rank = walk_graph.free_rank;
        const V base = walk_base.empty() ? e.front() : parse_vertex_for<V>(walk_base, rank);
        const auto others = detail::others_of(e, base);
        const auto incs = increments(g, mu, base, others);
        auto rng = make_stream(walk_seed, {0});
        const auto report = simulate_walk(incs, walk_steps, rng);

        Json mean_set_json = Json::array();
        for (const auto& v : e) mean_set_json.push_back(vertex_json(v));
        Json inc_json = Json::array();
        for (const auto& inc : incs) inc_json.push_back(to_json(inc));
        Json doc = {{"mean_set", mean_set_json},
                    {"base", vertex_json(base)},
                    {"dimension", genuine_dimension(incs)},
                    {"increments", inc_json},
                    {"first_moment", to_json(first_moment(incs))},
                    {"second_moment", to_json(second_moment(incs))},
                    {"second_moment_bound", to_json(second_moment_bound(g, mu, base, others))},
                    {"hypotheses", to_json(positivity_hypotheses(g, mu, e, base))},
                    {"dimension_invariant", e.size() >= 2 ? Json(dimension_invariance_check(g, mu, e)) : Json(nullptr)},
                    {"orthant_visits", report.orthant_visits},
                    {"last_visit", report.last_visit ? Json(*report.last_visit) : Json(nullptr)},
                    {"walk", to_json(report, walk_trace)}};
        out << doc.dump() << '\n';
        return kExitOk;
      });
    }

    if (tab->parsed()) {
      table.lengths = parse_size_list(table_lengths);
      table.samples = parse_size_list(table_samples);
      const auto cells = run_table_experiment(table);
      emit(out, table_out, [&](std::ostream& o) {
        if (table_format == "json") {
          o << to_json(cells).dump(2) << '\n';
        } else {
          write_table_csv(o, cells);
        }
      });
      return kExitOk;
    }

    if (dec->parsed()) {
      decay.samples = parse_size_list(decay_samples);
      return with_instance(decay_graph, [&](const auto& g, const auto& mu) {
        const auto points = run_decay_experiment(g, mu, decay);
        emit(out, decay_out, [&](std::ostream& o) {
          if (decay_format == "json") {
            o << to_json(points).dump(2) << '\n';
          } else {
            write_decay_csv(o, points);
          }
        });
        return kExitOk;
      });
    }

    if (sl->parsed()) {
      return with_instance(slln_graph, [&](const auto& g, const auto& mu) {
        auto rng = make_stream(slln_seed, {0});
        const auto trace = run_slln_trace(g, mu, slln_steps, slln_after, rng);
        Json truth = Json::array();
        for (const auto& v : trace.truth) truth.push_back(vertex_json(v));
        Json appearances = Json::array();
        for (const auto& [v, count] : trace.appearances) appearances.push_back({{"vertex", vertex_json(v)}, {"count", count}});
        Json sets = Json::array();
        for (const auto& [s, count] : trace.set_counts) {
          Json vs = Json::array();
          for (const auto& v : s) vs.push_back(vertex_json(v));
          sets.push_back({{"set", vs}, {"count", count}});
        }
        out << Json{{"steps", trace.steps}, {"after", trace.after}, {"mean_set", truth},
                    {"appearances", appearances}, {"sample_sets", sets}}
                   .dump()
            << '\n';
        return kExitOk;
      });
    }

    // check
    std::vector<std::string> names;
    for (const auto& s : check_suites) {
      if (s != "all") names.push_back(s);
    }
    for (const auto& n : names) find_suite(n);
    const CaseOptions opts{check_fault};
    if (check_case_seed) {
      if (names.size() != 1) throw CLI::ValidationError("--case-seed needs exactly one --suite");
      auto outcome = run_case(find_suite(names.front()), *check_case_seed, opts);
      out << (outcome ? "FAIL " + *outcome : std::string("ok")) << '\n';
      return outcome ? kExitFailure : kExitOk;
    }
    const auto report = run_invariant_sweep(check_seed, names, opts, check_cases);
    if (check_format == "json") {
      out << to_json(report).dump(2) << '\n';
    } else {
      write_sweep_report(out, report);
    }
    return report.passed() ? kExitOk : kExitFailure;
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace meanset::cli
