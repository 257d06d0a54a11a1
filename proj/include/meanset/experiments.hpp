#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
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
#include "meanset/parallel.hpp"
#include "meanset/random.hpp"

namespace meanset {

namespace detail {

inline void require_strictly_increasing(const std::vector<std::size_t>& values, const char* what) {
  if (values.empty()) throw Error(ErrorCode::invalid_input, std::string(what) + " list is empty");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= values[i - 1]) throw Error(ErrorCode::invalid_input, std::string(what) + " must be strictly increasing");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Sphere-sample convergence table on F_r

struct TableConfig {
  int rank = 4;
  std::vector<std::size_t> lengths{5, 10, 20, 50};
  std::vector<std::size_t> samples{2, 4, 6, 8, 10, 12, 14, 16};
  std::size_t trials = 1000;
  std::uint64_t seed = 42;
  std::size_t workers = default_worker_count();
};

/// Histograms of the displacement of S_n from the true center (the identity).
/// `histogram` uses the farthest element of S_n, `histogram_min` the nearest.
struct CellResult {
  int rank = 0;
  std::size_t length = 0;
  std::size_t sample_size = 0;
  std::size_t trials = 0;
  std::map<std::size_t, std::size_t> histogram;
  std::map<std::size_t, std::size_t> histogram_min;

  std::size_t count(std::size_t displacement) const {
    auto it = histogram.find(displacement);
    return it == histogram.end() ? 0 : it->second;
  }
};

struct Displacement {
  std::size_t max = 0;
  std::size_t min = 0;
};

/// One trial: n words from mu_L, sample mean-set by tree descent, distance of
/// S_n from the identity. The trial's stream is keyed by (L, n, trial).
inline Displacement table_trial(int rank, std::size_t length, std::size_t n, std::uint64_t seed, std::uint64_t trial) {
  auto rng = make_stream(seed, {length, n, trial});
  Sample<ReducedWord> sample;
  for (std::size_t i = 0; i < n; ++i) sample.add(sample_sphere(rank, length, rng));
  auto result = mean_set_tree(FreeGroupCayley(rank), empirical(sample), 2);
  Displacement d{0, std::numeric_limits<std::size_t>::max()};
  for (const auto& w : result.vertices) {
    d.max = std::max(d.max, w.length());
    d.min = std::min(d.min, w.length());
  }
  return d;
}

/// Cells in (L, n) order; counts are independent of worker scheduling.
inline std::vector<CellResult> run_table_experiment(const TableConfig& cfg) {
  if (cfg.trials == 0) throw Error(ErrorCode::invalid_input, "trials must be >= 1");
  if (cfg.rank < 1) throw Error(ErrorCode::invalid_input, "rank must be >= 1");
  detail::require_strictly_increasing(cfg.lengths, "lengths");
  detail::require_strictly_increasing(cfg.samples, "sample sizes");
  if (cfg.samples.front() == 0) throw Error(ErrorCode::invalid_input, "sample sizes must be >= 1");

  std::vector<CellResult> cells;
  for (std::size_t length : cfg.lengths) {
    for (std::size_t n : cfg.samples) {
      std::vector<Displacement> outcomes(cfg.trials);
      parallel_for(
          cfg.trials, [&](std::size_t t) { outcomes[t] = table_trial(cfg.rank, length, n, cfg.seed, t); },
          cfg.workers);
      CellResult cell{cfg.rank, length, n, cfg.trials, {}, {}};
      for (const auto& d : outcomes) {
        ++cell.histogram[d.max];
        ++cell.histogram_min[d.min];
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

/// CSV with one row per cell; histograms flattened as d0,d1,d2,d3plus.
inline void write_table_csv(std::ostream& out, const std::vector<CellResult>& cells) {
  auto bucket = [](const std::map<std::size_t, std::size_t>& h, std::size_t d) {
    std::size_t total = 0;
    for (const auto& [k, v] : h) {
      if (k == d || (d == 3 && k >= 3)) total += v;
    }
    return total;
  };
  out << "rank,L,n,trials,d0,d1,d2,d3plus,min_d0,min_d1,min_d2,min_d3plus\n";
  for (const auto& c : cells) {
    out << c.rank << ',' << c.length << ',' << c.sample_size << ',' << c.trials;
    for (std::size_t d = 0; d < 4; ++d) out << ',' << bucket(c.histogram, d);
    for (std::size_t d = 0; d < 4; ++d) out << ',' << bucket(c.histogram_min, d);
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Miss-rate decay of the sample mean-set

struct DecayConfig {
  std::vector<std::size_t> samples{2, 4, 8, 16, 32};
  std::size_t trials = 1000;
  std::uint64_t seed = 42;
  bool containment = false;  // count S_n not contained in E instead of S_n != E
  int weight_class = 2;
  std::size_t workers = default_worker_count();
};

struct DecayPoint {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::size_t misses = 0;

  double miss_rate() const { return static_cast<double>(misses) / static_cast<double>(trials); }
  double n_times_rate() const { return static_cast<double>(n) * miss_rate(); }
  /// -inf when there were no misses.
  double log_rate() const { return misses ? std::log(miss_rate()) : -std::numeric_limits<double>::infinity(); }
};

template <LocallyFiniteGraph G>
std::vector<DecayPoint> run_decay_experiment(const G& g, const AtomicMeasure<vertex_t<G>>& mu, const DecayConfig& cfg) {
  using V = vertex_t<G>;
  if (cfg.trials == 0) throw Error(ErrorCode::invalid_input, "trials must be >= 1");
  detail::require_strictly_increasing(cfg.samples, "sample sizes");
  if (cfg.samples.front() == 0) throw Error(ErrorCode::invalid_input, "sample sizes must be >= 1");

  const auto truth = mean_set(g, mu, cfg.weight_class).vertices;
  if (truth.size() > 1 && !cfg.containment) {
    throw Error(ErrorCode::non_singleton_truth,
                "mean-set has " + std::to_string(truth.size()) + " vertices; use containment mode");
  }
  const MeasureSampler<V> sampler(mu);

  std::vector<DecayPoint> points;
  for (std::size_t n : cfg.samples) {
    std::vector<char> missed(cfg.trials, 0);
    parallel_for(
        cfg.trials,
        [&](std::size_t t) {
          auto rng = make_stream(cfg.seed, {n, t});
          auto sample_set = sample_mean_set(g, sampler.draw(n, rng), cfg.weight_class).vertices;
          const bool miss = cfg.containment
                                ? !std::includes(truth.begin(), truth.end(), sample_set.begin(), sample_set.end())
                                : sample_set != truth;
          missed[t] = miss ? 1 : 0;
        },
        cfg.workers);
    DecayPoint p{n, cfg.trials, 0};
    for (char m : missed) p.misses += static_cast<std::size_t>(m);
    points.push_back(p);
  }
  return points;
}

inline void write_decay_csv(std::ostream& out, const std::vector<DecayPoint>& points) {
  out << "n,trials,misses,miss_rate,n_times_rate,log_rate\n";
  out << std::setprecision(10);
  for (const auto& p : points) {
    out << p.n << ',' << p.trials << ',' << p.misses << ',' << p.miss_rate() << ',' << p.n_times_rate() << ',';
    if (p.misses) out << p.log_rate();
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Long-run sample mean-set trace

template <class V>
struct SllnTrace {
  std::uint64_t steps = 0;
  std::uint64_t after = 0;
  std::vector<V> truth;
  std::map<V, std::uint64_t> appearances;              // n > after with v in S_n
  std::map<std::vector<V>, std::uint64_t> set_counts;  // n > after with S_n equal to the key

  bool appeared(const V& v) const { return appearances.contains(v); }
};

/// Draws one i.i.d. sequence of length `steps` and records S_n for every
/// n > after.
template <LocallyFiniteGraph G>
SllnTrace<vertex_t<G>> run_slln_trace(const G& g, const AtomicMeasure<vertex_t<G>>& mu, std::uint64_t steps,
                                      std::uint64_t after, RandomStream& rng, int c = 2) {
  using V = vertex_t<G>;
  if (steps == 0) throw Error(ErrorCode::invalid_input, "steps must be >= 1");
  SllnTrace<V> trace;
  trace.steps = steps;
  trace.after = after;
  trace.truth = mean_set(g, mu, c).vertices;
  const MeasureSampler<V> sampler(mu);
  Sample<V> sample;
  for (std::uint64_t n = 1; n <= steps; ++n) {
    sample.add(sampler(rng));
    if (n <= after) continue;
    auto s = sample_mean_set(g, sample, c).vertices;
    for (const auto& v : s) ++trace.appearances[v];
    ++trace.set_counts[s];
  }
  return trace;
}

}  // namespace meanset
