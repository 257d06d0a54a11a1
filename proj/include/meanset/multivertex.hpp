#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "meanset/error.hpp"
#include "meanset/graph.hpp"
#include "meanset/measure.hpp"
#include "meanset/meanset.hpp"
#include "meanset/random.hpp"
#include "meanset/rational.hpp"

namespace meanset {

/// One step of the walk associated with a base mean-set vertex v_1:
/// coords[i] = d^2(v_{i+2}, s) - d^2(v_1, s) for the atoms s that produce it.
template <class V>
struct IncrementVector {
  std::vector<Integer> coords;
  V source_atom;  // smallest atom producing these coordinates
  Rational probability;
};

using IntegerMatrix = std::vector<std::vector<Integer>>;

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
inline std::size_t integer_rank(IntegerMatrix rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  Integer previous_pivot = 1;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        rows[r][c] = (rows[rank][col] * rows[r][c] - rows[r][col] * rows[rank][c]) / previous_pivot;
      }
      rows[r][col] = 0;
    }
    previous_pivot = rows[rank][col];
    ++rank;
  }
  return rank;
}

namespace detail {

template <class V>
std::vector<V> others_of(const std::vector<V>& mean_set, const V& base) {
  std::vector<V> others;
  for (const V& v : mean_set) {
    if (v != base) others.push_back(v);
  }
  if (others.size() + 1 != mean_set.size()) {
    throw Error(ErrorCode::not_mean_set, "base vertex is not a member of the mean-set");
  }
  return others;
}

}  // namespace detail

/// Increment distribution of the walk R(n) for `base` against `others`.
/// {base} + others must be exactly the class-2 mean-set of mu; this is
/// re-derived with the exact solver unless `validate` is false.
/// Equal coordinate vectors are merged and their probabilities added.
template <LocallyFiniteGraph G>
std::vector<IncrementVector<vertex_t<G>>> increments(const G& g, const AtomicMeasure<vertex_t<G>>& mu,
                                                     const vertex_t<G>& base,
                                                     const std::vector<vertex_t<G>>& others,
                                                     bool validate = true) {
  using V = vertex_t<G>;
  if (validate) {
    std::vector<V> claimed(others);
    claimed.push_back(base);
    std::sort(claimed.begin(), claimed.end());
    if (std::adjacent_find(claimed.begin(), claimed.end()) != claimed.end()) {
      throw Error(ErrorCode::not_mean_set, "duplicate vertex in the claimed mean-set");
    }
    if (mean_set(g, mu, 2).vertices != claimed) {
      throw Error(ErrorCode::not_mean_set, "claimed vertices differ from the computed mean-set");
    }
  }
  if (others.empty()) return {};

  DistanceCache<G> distances(g);
  std::map<std::vector<Integer>, std::pair<V, Integer>> grouped;
  for (const auto& atom : mu.atoms()) {
    const std::size_t d_base = distances(atom.vertex, base);
    std::vector<Integer> coords;
    coords.reserve(others.size());
    for (const V& other : others) {
      const std::size_t d = distances(atom.vertex, other);
      coords.push_back(Integer(d * d) - Integer(d_base * d_base));
    }
    auto [it, inserted] = grouped.try_emplace(std::move(coords), atom.vertex, Integer(0));
    it->second.second += atom.mass;
  }
  std::vector<IncrementVector<V>> out;
  out.reserve(grouped.size());
  for (auto& [coords, entry] : grouped) {
    out.push_back({coords, entry.first, Rational(entry.second, mu.total_mass())});
  }
  return out;
}

/// Rank of the subgroup of Z^(k-1) generated by the increment vectors.
template <class V>
std::size_t genuine_dimension(std::span<const IncrementVector<V>> incs) {
  IntegerMatrix rows;
  rows.reserve(incs.size());
  for (const auto& inc : incs) rows.push_back(inc.coords);
  return integer_rank(std::move(rows));
}

template <class V>
std::size_t genuine_dimension(const std::vector<IncrementVector<V>>& incs) {
  return genuine_dimension(std::span<const IncrementVector<V>>(incs));
}

template <class V>
std::vector<Rational> first_moment(const std::vector<IncrementVector<V>>& incs) {
  if (incs.empty()) return {};
  std::vector<Rational> m(incs.front().coords.size(), Rational(0));
  for (const auto& inc : incs) {
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += inc.probability * inc.coords[i];
  }
  return m;
}

/// m_2 = sum |x|^2 P(0, x).
template <class V>
Rational second_moment(const std::vector<IncrementVector<V>>& incs) {
  Rational m2 = 0;
  for (const auto& inc : incs) {
    Integer norm = 0;
    for (const auto& x : inc.coords) norm += x * x;
    m2 += inc.probability * norm;
  }
  return m2;
}

/// sum_i d^2(v_1, v_{i+1}) (4 M(v_1) + 4 M(v_{i+1})), an upper bound for m_2.
template <LocallyFiniteGraph G>
Rational second_moment_bound(const G& g, const AtomicMeasure<vertex_t<G>>& mu, const vertex_t<G>& base,
                             const std::vector<vertex_t<G>>& others) {
  WeightEvaluator<G> eval(g, mu, 2);
  const Rational m_base = eval.weight(base);
  Rational bound = 0;
  for (const auto& other : others) {
    const std::size_t d = distance(g, base, other);
    bound += Rational(d * d) * (4 * m_base + 4 * eval.weight(other));
  }
  return bound;
}

/// True iff the walks based at every mean-set vertex have the same genuine
/// dimension.
template <LocallyFiniteGraph G>
bool dimension_invariance_check(const G& g, const AtomicMeasure<vertex_t<G>>& mu,
                                const std::vector<vertex_t<G>>& mean_set_vertices) {
  if (mean_set_vertices.size() < 2) throw Error(ErrorCode::invalid_input, "needs a mean-set of size >= 2");
  std::optional<std::size_t> dim;
  for (const auto& base : mean_set_vertices) {
    auto others = detail::others_of(mean_set_vertices, base);
    const std::size_t d = genuine_dimension(increments(g, mu, base, others, false));
    if (dim && *dim != d) return false;
    dim = d;
  }
  return true;
}

enum class Verdict { yes, no, unknown };

constexpr const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::unknown: return "unknown";
  }
  return "unknown";
}

struct PositiveVectorSearch {
  Verdict verdict = Verdict::unknown;
  std::vector<Integer> witness;  // set when verdict == yes
};

inline constexpr int kDefaultCoefficientBound = 5;
inline constexpr std::uint64_t kPositiveSearchBudget = 2'000'000;

/// Looks for a strictly positive vector in the lattice spanned by `generators`
/// using integer coefficients in [-bound, bound]. "no" is reported only when a
/// coordinate vanishes on every generator; an exhausted search is "unknown".
inline PositiveVectorSearch search_positive_vector(const IntegerMatrix& generators, int bound = kDefaultCoefficientBound) {
  if (generators.empty()) return {Verdict::no, {}};
  const std::size_t dim = generators.front().size();
  if (dim == 0) return {Verdict::yes, {}};
  for (std::size_t j = 0; j < dim; ++j) {
    if (std::all_of(generators.begin(), generators.end(), [j](const auto& row) { return row[j] == 0; })) {
      return {Verdict::no, {}};
    }
  }
  auto positive = [](const std::vector<Integer>& v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x > 0; });
  };
  for (const auto& row : generators) {
    if (positive(row)) return {Verdict::yes, row};
  }

  // Odometer over coefficient tuples, with the running combination kept up to date.
  const std::size_t m = generators.size();
  std::vector<int> coeff(m, -bound);
  std::vector<Integer> combo(dim, Integer(0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < dim; ++j) combo[j] -= bound * generators[i][j];
  }
  for (std::uint64_t budget = kPositiveSearchBudget; budget > 0; --budget) {
    if (positive(combo)) return {Verdict::yes, combo};
    std::size_t i = 0;
    while (i < m && coeff[i] == bound) {
      for (std::size_t j = 0; j < dim; ++j) combo[j] -= 2 * bound * generators[i][j];
      coeff[i] = -bound;
      ++i;
    }
    if (i == m) break;
    ++coeff[i];
    for (std::size_t j = 0; j < dim; ++j) combo[j] += generators[i][j];
  }
  return {Verdict::unknown, {}};
}

struct PositivityReport {
  Verdict has_positive_vector = Verdict::unknown;
  bool mu_base_positive = false;
  std::vector<Integer> witness;
};

/// Checks the two sufficient conditions for the orthant to be visited
/// infinitely often: a strictly positive vector in the increment lattice, and
/// mu(base) > 0 (which itself supplies the positive vector of d^2(v_i, base)).
template <LocallyFiniteGraph G>
PositivityReport positivity_hypotheses(const G& g, const AtomicMeasure<vertex_t<G>>& mu,
                                       const std::vector<vertex_t<G>>& mean_set_vertices,
                                       const vertex_t<G>& base, int coefficient_bound = kDefaultCoefficientBound) {
  auto others = detail::others_of(mean_set_vertices, base);
  auto incs = increments(g, mu, base, others);
  IntegerMatrix rows;
  for (const auto& inc : incs) rows.push_back(inc.coords);
  PositivityReport report;
  report.mu_base_positive = mu.mass(base) > 0;
  if (others.empty()) {
    report.has_positive_vector = Verdict::yes;
    return report;
  }
  auto search = search_positive_vector(rows, coefficient_bound);
  report.has_positive_vector = search.verdict;
  report.witness = std::move(search.witness);
  return report;
}

struct WalkState {
  std::vector<Integer> position;
  std::uint64_t step_count = 0;
};

struct WalkReport {
  std::uint64_t steps = 0;
  std::uint64_t orthant_visits = 0;          // steps n >= 1 with every coordinate >= 0
  std::optional<std::uint64_t> last_visit;  // last such n
  WalkState final_state;
  std::vector<WalkState> trace;  // every `trace_stride`-th state
};

inline constexpr std::uint64_t kDefaultTraceStride = 100;

/// Runs the walk for `steps` steps from the origin, counting visits to the
/// closed nonnegative orthant. Purely descriptive: recurrence is asymptotic.
template <class V>
WalkReport simulate_walk(const std::vector<IncrementVector<V>>& incs, std::uint64_t steps, RandomStream& rng,
                         std::uint64_t trace_stride = kDefaultTraceStride) {
  if (steps == 0) throw Error(ErrorCode::invalid_input, "walk needs at least one step");
  WalkReport report;
  report.steps = steps;
  const std::size_t dim = incs.empty() ? 0 : incs.front().coords.size();
  report.final_state.position.assign(dim, Integer(0));

  std::optional<DiscreteSampler> pick;
  if (!incs.empty()) {
    Integer common = 1;
    for (const auto& inc : incs) {
      common = boost::multiprecision::lcm(common, boost::multiprecision::denominator(inc.probability));
    }
    std::vector<Integer> masses;
    for (const auto& inc : incs) {
      masses.push_back(boost::multiprecision::numerator(inc.probability) *
                       (common / boost::multiprecision::denominator(inc.probability)));
    }
    pick.emplace(masses);
  }

  auto& position = report.final_state.position;
  for (std::uint64_t n = 1; n <= steps; ++n) {
    if (pick) {
      const auto& step = incs[(*pick)(rng)].coords;
      for (std::size_t i = 0; i < dim; ++i) position[i] += step[i];
    }
    if (std::all_of(position.begin(), position.end(), [](const Integer& x) { return x >= 0; })) {
      ++report.orthant_visits;
      report.last_visit = n;
    }
    if (trace_stride && n % trace_stride == 0) report.trace.push_back({position, n});
  }
  report.final_state.step_count = steps;
  return report;
}

}  // namespace meanset
