#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "meanset/error.hpp"
#include "meanset/free_group.hpp"
#include "meanset/graph.hpp"
#include "meanset/measure.hpp"
#include "meanset/meanset.hpp"
#include "meanset/multivertex.hpp"
#include "meanset/random.hpp"
#include "meanset/random_instances.hpp"

// Randomized invariant suites. Each case is a pure function of its case seed,
// so a failure is reproduced by rerunning that single seed.

namespace meanset {

struct CaseOptions {
  bool inject_fault = false;  // shift suite: translate without free reduction
};

/// Empty on success, otherwise a description of the violation.
using CaseOutcome = std::optional<std::string>;

namespace detail {

template <class V>
std::string join_vertices(const std::vector<V>& vs) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out << ',';
    if constexpr (std::is_same_v<V, ReducedWord>) {
      out << to_string(vs[i]);
    } else {
      out << vs[i];
    }
  }
  out << '}';
  return out.str();
}

inline ExplicitGraph path_graph(std::size_t n) {
  std::vector<ExplicitGraph::Edge> edges;
  for (std::size_t i = 1; i < n; ++i) edges.emplace_back(IntVertex(i - 1), IntVertex(i));
  return ExplicitGraph::from_edges(edges, {0});
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Individual cases

/// mean_set(g mu) = g mean_set(mu) on F_2.
inline CaseOutcome shift_case(std::uint64_t seed, const CaseOptions& opts = {}) {
  RandomStream rng(seed);
  constexpr int rank = 2;
  const auto mu = random_word_measure(rng, rank, 6, 6, 10);
  const auto g = random_word(rng, rank, 6);
  const FreeGroupCayley cayley(rank);

  AtomicMeasure<ReducedWord> shifted = shift(mu, g);
  if (opts.inject_fault) {
    std::vector<std::pair<ReducedWord, Integer>> masses;
    for (const auto& a : mu.atoms()) {
      std::vector<Letter> letters(g.letters().begin(), g.letters().end());
      letters.insert(letters.end(), a.vertex.letters().begin(), a.vertex.letters().end());
      masses.emplace_back(ReducedWord::assume_reduced(rank, std::move(letters)), a.mass);
    }
    shifted = AtomicMeasure<ReducedWord>::from_masses(masses);
  }

  const auto base = mean_set(cayley, mu).vertices;
  std::vector<ReducedWord> expected;
  for (const auto& w : base) expected.push_back(multiply(g, w));
  std::sort(expected.begin(), expected.end());
  const auto actual = mean_set(cayley, shifted).vertices;
  if (actual == expected) return std::nullopt;
  return "g=" + to_string(g) + " expected " + detail::join_vertices(expected) + " got " +
         detail::join_vertices(actual);
}

/// Tree solver agrees with the full scan; at most two minimizers, adjacent.
inline CaseOutcome tree_case(std::uint64_t seed, const CaseOptions& = {}) {
  RandomStream rng(seed);
  const auto tree = random_tree(rng, uniform_index(rng, 1, 40));
  const auto mu = random_measure(rng, tree.vertices(), 8, 20);
  const auto exact = mean_set_exact(tree, mu).vertices;
  const auto fast = mean_set_tree(tree, mu).vertices;
  if (fast != exact) return "tree solver " + detail::join_vertices(fast) + " != exact " + detail::join_vertices(exact);
  if (exact.size() > 2) return "mean-set of size " + std::to_string(exact.size());
  if (exact.size() == 2) {
    const auto& nb = tree.neighbors(exact[0]);
    if (!std::binary_search(nb.begin(), nb.end(), exact[1])) return "non-adjacent pair " + detail::join_vertices(exact);
  }
  return std::nullopt;
}

/// Random connected graph on at most 12 vertices that has a cut-point.
inline ExplicitGraph random_graph_with_cut_point(RandomStream& rng) {
  for (;;) {
    auto g = random_connected_graph(rng, uniform_index(rng, 3, 12), 0.12);
    for (IntVertex v : g.vertices()) {
      if (is_cut_point(g, v)) return g;
    }
  }
}

/// Exhaustive cut-point inequality over (v0, v1, v2, s), plus the weight
/// consequence not(M(v0) >= M(v1) and M(v0) >= M(v2)) for one random measure.
inline CaseOutcome cut_point_case(std::uint64_t seed, const CaseOptions& = {}) {
  RandomStream rng(seed);
  const auto g = random_graph_with_cut_point(rng);
  const auto mu = random_measure(rng, g.vertices(), g.vertex_count(), 20);

  std::map<IntVertex, std::map<IntVertex, std::size_t>> d;
  for (IntVertex v : g.vertices()) d[v] = bfs_distances(g, v);
  WeightEvaluator<ExplicitGraph> eval(g, mu, 2);

  for (IntVertex v0 : g.vertices()) {
    const auto parts = components_without(g, {v0});
    if (parts.size() < 2) continue;
    for (std::size_t a = 0; a < parts.size(); ++a) {
      for (std::size_t b = 0; b < parts.size(); ++b) {
        if (a == b) continue;
        for (IntVertex v1 : parts[a]) {
          for (IntVertex v2 : parts[b]) {
            const Integer d1 = d[v0][v1], d2 = d[v0][v2];
            const Integer rhs = d2 * d1 * (d1 + d2);
            for (IntVertex s : g.vertices()) {
              const Integer a1 = d[v1][s], a2 = d[v2][s], a0 = d[v0][s];
              const Integer lhs = d2 * (a1 * a1 - a0 * a0) + d1 * (a2 * a2 - a0 * a0);
              if (lhs < rhs) {
                return "inequality fails at v0=" + std::to_string(v0) + " v1=" + std::to_string(v1) +
                       " v2=" + std::to_string(v2) + " s=" + std::to_string(s);
              }
            }
            const Integer m0 = eval.numerator(v0);
            if (m0 >= eval.numerator(v1) && m0 >= eval.numerator(v2)) {
              return "M(v0) >= M(v1), M(v2) at v0=" + std::to_string(v0) + " v1=" + std::to_string(v1) +
                     " v2=" + std::to_string(v2);
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

/// Path v1 - v0 - v2 (ids 1, 0, 2) with random masses, some possibly zero:
/// the mean-set is never {v1, v2}.
inline CaseOutcome path_pair_case(std::uint64_t seed, const CaseOptions& = {}) {
  RandomStream rng(seed);
  static const ExplicitGraph path = ExplicitGraph::from_edges({{1, 0}, {0, 2}}, {});
  std::uniform_int_distribution<int> mass(0, 20);
  std::vector<std::pair<IntVertex, Integer>> masses;
  while (masses.empty()) {
    for (IntVertex v : {0, 1, 2}) {
      if (int m = mass(rng); m > 0) masses.emplace_back(v, Integer(m));
    }
  }
  const auto mu = AtomicMeasure<IntVertex>::from_masses(masses);
  const auto e = mean_set_exact(path, mu).vertices;
  if (e == std::vector<IntVertex>{1, 2}) return "mean-set is {v1,v2}";
  return std::nullopt;
}

struct MultiVertexInstance {
  ExplicitGraph graph;
  AtomicMeasure<IntVertex> measure;
  std::vector<IntVertex> mean_set;
};

/// Rejection-samples small graphs and measures until the class-2 mean-set has
/// at least two vertices.
inline MultiVertexInstance random_multivertex_instance(RandomStream& rng) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const std::size_t n = uniform_index(rng, 2, 8);
    auto g = random_connected_graph(rng, n, 0.3);
    auto mu = random_measure(rng, g.vertices(), n, 3);
    auto e = mean_set_exact(g, mu).vertices;
    if (e.size() >= 2) return {std::move(g), std::move(mu), std::move(e)};
  }
  throw Error(ErrorCode::non_termination_guard, "no multi-vertex instance found");
}

/// First moment zero, probabilities summing to 1, second moment under its
/// bound, and the same genuine dimension from every base.
inline CaseOutcome dimension_case(std::uint64_t seed, const CaseOptions& = {}) {
  RandomStream rng(seed);
  const auto inst = random_multivertex_instance(rng);
  const std::size_t k = inst.mean_set.size();
  std::optional<std::size_t> dim;
  for (IntVertex base : inst.mean_set) {
    auto others = detail::others_of(inst.mean_set, base);
    const auto incs = increments(inst.graph, inst.measure, base, others);
    Rational total = 0;
    for (const auto& inc : incs) total += inc.probability;
    if (total != 1) return "probabilities sum to " + to_fraction_string(total);
    for (const auto& m : first_moment(incs)) {
      if (m != 0) return "nonzero first moment at base " + std::to_string(base);
    }
    const Rational m2 = second_moment(incs);
    const Rational bound = second_moment_bound(inst.graph, inst.measure, base, others);
    if (m2 > bound) return "m2 " + to_fraction_string(m2) + " exceeds " + to_fraction_string(bound);
    const std::size_t d = genuine_dimension(incs);
    if (d > k - 1) return "dimension " + std::to_string(d) + " exceeds k-1";
    if (dim && *dim != d) return "dimension depends on base";
    dim = d;
  }
  if (!dimension_invariance_check(inst.graph, inst.measure, inst.mean_set)) return "invariance check disagrees";
  return std::nullopt;
}

/// On the integer line, 1 <= |E| <= 2 and every v in E is within 1/2 of the
/// classical mean.
inline CaseOutcome classical_case(std::uint64_t seed, const CaseOptions& = {}) {
  RandomStream rng(seed);
  std::vector<IntVertex> candidates;
  for (IntVertex v = -30; v <= 30; ++v) candidates.push_back(v);
  const auto mu = random_measure(rng, candidates, 8, 50);
  const auto cmp = classical_mean_gap(mu);
  if (cmp.mean_set.empty() || cmp.mean_set.size() > 2) return "mean-set of size " + std::to_string(cmp.mean_set.size());
  if (cmp.gap > Rational(1, 2)) return "gap " + to_fraction_string(cmp.gap);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Sweep driver

struct SuiteSpec {
  std::string name;
  std::size_t cases;
  std::function<CaseOutcome(std::uint64_t, const CaseOptions&)> run;
};

inline const std::vector<SuiteSpec>& invariant_suites() {
  static const std::vector<SuiteSpec> suites{
      {"shift", 500, shift_case},          {"tree", 200, tree_case},
      {"cutpoint", 100, cut_point_case},   {"path3", 10000, path_pair_case},
      {"dimension", 200, dimension_case},  {"classical", 500, classical_case},
  };
  return suites;
}

inline const SuiteSpec& find_suite(const std::string& name) {
  for (const auto& s : invariant_suites()) {
    if (s.name == name) return s;
  }
  throw Error(ErrorCode::invalid_input, "unknown suite '" + name + "'");
}

struct SuiteReport {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::optional<std::uint64_t> first_failure_seed;
  std::string first_failure;
};

struct SweepReport {
  std::uint64_t seed = 0;
  bool inject_fault = false;
  std::vector<SuiteReport> suites;

  bool passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.failures == 0; });
  }
};

inline std::uint64_t case_seed(std::uint64_t master, const std::string& suite, std::uint64_t index) {
  std::uint64_t tag = 0;
  for (unsigned char ch : suite) tag = splitmix64(tag ^ ch);
  return derive_seed(master, {tag, index});
}

/// Runs one case; exceptions count as failures.
inline CaseOutcome run_case(const SuiteSpec& suite, std::uint64_t seed, const CaseOptions& opts) {
  try {
    return suite.run(seed, opts);
  } catch (const std::exception& e) {
    return std::string("exception: ") + e.what();
  }
}

/// `names` empty means every suite. `cases` overrides the per-suite count.
inline SweepReport run_invariant_sweep(std::uint64_t master, const std::vector<std::string>& names = {},
                                       const CaseOptions& opts = {}, std::optional<std::size_t> cases = {}) {
  SweepReport report{master, opts.inject_fault, {}};
  std::vector<const SuiteSpec*> selected;
  if (names.empty()) {
    for (const auto& s : invariant_suites()) selected.push_back(&s);
  } else {
    for (const auto& n : names) selected.push_back(&find_suite(n));
  }
  for (const SuiteSpec* suite : selected) {
    SuiteReport r{suite->name, cases.value_or(suite->cases), 0, std::nullopt, {}};
    for (std::uint64_t i = 0; i < r.cases; ++i) {
      const std::uint64_t seed = case_seed(master, suite->name, i);
      if (auto failure = run_case(*suite, seed, opts)) {
        if (!r.failures) {
          r.first_failure_seed = seed;
          r.first_failure = *failure;
        }
        ++r.failures;
      }
    }
    report.suites.push_back(std::move(r));
  }
  return report;
}

inline void write_sweep_report(std::ostream& out, const SweepReport& report) {
  out << "seed " << report.seed << (report.inject_fault ? " (fault injected)" : "") << '\n';
  for (const auto& s : report.suites) {
    out << (s.failures ? "FAIL " : "ok   ") << s.name << ": " << s.cases << " cases, " << s.failures << " failures";
    if (s.first_failure_seed) out << "; first at case seed " << *s.first_failure_seed << ": " << s.first_failure;
    out << '\n';
  }
  out << (report.passed() ? "all suites passed" : "suite failures") << '\n';
}

}  // namespace meanset
