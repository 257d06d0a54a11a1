#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "meanset/free_group.hpp"
#include "meanset/graph.hpp"
#include "meanset/measure.hpp"
#include "meanset/random.hpp"

// Generators for randomized checks. Vertex labels are shuffled so that the
// id order carries no structural information.

namespace meanset {

inline std::size_t uniform_index(RandomStream& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline std::vector<IntVertex> shuffled_labels(RandomStream& rng, std::size_t n) {
  std::vector<IntVertex> labels(n);
  std::iota(labels.begin(), labels.end(), IntVertex{0});
  std::shuffle(labels.begin(), labels.end(), rng);
  return labels;
}

/// Uniform random recursive tree on n vertices (vertex i attaches to a
/// uniformly chosen earlier vertex), relabeled at random.
inline ExplicitGraph random_tree(RandomStream& rng, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_input, "tree needs at least one vertex");
  auto labels = shuffled_labels(rng, n);
  std::vector<ExplicitGraph::Edge> edges;
  for (std::size_t i = 1; i < n; ++i) edges.emplace_back(labels[i], labels[uniform_index(rng, 0, i - 1)]);
  return ExplicitGraph::from_edges(edges, {labels[0]});
}

/// Random spanning tree plus each remaining pair independently with
/// probability `extra_edge_probability`. Always connected.
inline ExplicitGraph random_connected_graph(RandomStream& rng, std::size_t n, double extra_edge_probability) {
  if (n == 0) throw Error(ErrorCode::invalid_input, "graph needs at least one vertex");
  auto labels = shuffled_labels(rng, n);
  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  std::vector<ExplicitGraph::Edge> edges;
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t j = uniform_index(rng, 0, i - 1);
    used[i][j] = used[j][i] = true;
    edges.emplace_back(labels[i], labels[j]);
  }
  std::bernoulli_distribution coin(extra_edge_probability);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!used[i][j] && coin(rng)) edges.emplace_back(labels[i], labels[j]);
    }
  }
  return ExplicitGraph::from_edges(edges, {labels[0]});
}

/// Masses uniform in [1, max_mass] on a random subset of `candidates` of size
/// between 1 and max_support.
template <class V>
AtomicMeasure<V> random_measure(RandomStream& rng, std::vector<V> candidates, std::size_t max_support,
                                std::uint64_t max_mass) {
  std::shuffle(candidates.begin(), candidates.end(), rng);
  const std::size_t k = uniform_index(rng, 1, std::min(max_support, candidates.size()));
  std::uniform_int_distribution<std::uint64_t> mass(1, max_mass);
  std::vector<std::pair<V, Integer>> masses;
  for (std::size_t i = 0; i < k; ++i) masses.emplace_back(candidates[i], Integer(mass(rng)));
  return AtomicMeasure<V>::from_masses(masses);
}

/// Word of uniformly random length in [0, max_length], uniform on its sphere.
inline ReducedWord random_word(RandomStream& rng, int rank, std::size_t max_length) {
  return sample_sphere(rank, uniform_index(rng, 0, max_length), rng);
}

inline AtomicMeasure<ReducedWord> random_word_measure(RandomStream& rng, int rank, std::size_t max_support,
                                                      std::size_t max_length, std::uint64_t max_mass) {
  const std::size_t k = uniform_index(rng, 1, max_support);
  std::uniform_int_distribution<std::uint64_t> mass(1, max_mass);
  std::vector<std::pair<ReducedWord, Integer>> masses;
  for (std::size_t i = 0; i < k; ++i) masses.emplace_back(random_word(rng, rank, max_length), Integer(mass(rng)));
  return AtomicMeasure<ReducedWord>::from_masses(masses);
}

/// Uniform measure mu_L on the sphere of radius L in F_r.
inline AtomicMeasure<ReducedWord> sphere_measure(int rank, std::size_t length) {
  return AtomicMeasure<ReducedWord>::uniform(enumerate_sphere(rank, length));
}

}  // namespace meanset
