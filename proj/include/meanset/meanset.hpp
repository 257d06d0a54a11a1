#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "meanset/descent.hpp"
#include "meanset/error.hpp"
#include "meanset/graph.hpp"
#include "meanset/measure.hpp"
#include "meanset/rational.hpp"

namespace meanset {

/// Minimizers of the class-c weight function, with the exact minimum.
template <class V>
struct MeanSetResult {
  std::vector<V> vertices;  // ascending, nonempty
  Rational min_weight;
  int class_c = 2;
  std::string method;
  std::size_t steps = 0;
  bool certified = true;  // false only for descent on a graph that is not a tree
};

inline void require_weight_class(int c) {
  if (c != 1 && c != 2) throw Error(ErrorCode::invalid_input, "weight class must be 1 or 2");
}

namespace detail {

template <class Cache, class V>
std::size_t atom_distance(Cache& distances, const V& atom, const V& v) {
  try {
    return distances(atom, v);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::unreachable) throw;
    throw Error(ErrorCode::unreachable_atom, "atom not reachable from evaluation vertex");
  }
}

}  // namespace detail

/// Evaluates M^(c)(v) = sum_s d(v,s)^c mu(s) as an integer numerator over the
/// measure's total mass. All comparisons between vertices happen on the
/// numerators, which share that denominator.
template <LocallyFiniteGraph G>
class WeightEvaluator {
 public:
  using V = vertex_t<G>;

  WeightEvaluator(const G& g, const AtomicMeasure<V>& mu, int c) : mu_(&mu), c_(c), distances_(g) {
    require_weight_class(c);
  }

  Integer numerator(const V& v) {
    Integer sum = 0;
    for (const auto& atom : mu_->atoms()) {
      const std::size_t d = detail::atom_distance(distances_, atom.vertex, v);
      if (d == 0) continue;
      sum += atom.mass * (c_ == 2 ? d * d : d);
    }
    return sum;
  }

  Rational weight(const V& v) { return Rational(numerator(v), mu_->total_mass()); }
  const Integer& denominator() const { return mu_->total_mass(); }
  std::size_t distance(const V& atom, const V& v) { return distances_(atom, v); }

 private:
  const AtomicMeasure<V>* mu_;
  int c_;
  DistanceCache<G> distances_;
};

template <LocallyFiniteGraph G>
Rational weight(const G& g, const AtomicMeasure<vertex_t<G>>& mu, const vertex_t<G>& v, int c = 2) {
  return WeightEvaluator<G>(g, mu, c).weight(v);
}

namespace detail {

template <class V>
MeanSetResult<V> single_atom_result(const AtomicMeasure<V>& mu, int c, std::string method) {
  return {{mu.atoms().front().vertex}, Rational(0), c, std::move(method), 0, true};
}

template <class G>
void require_support_in(const G& g, const AtomicMeasure<vertex_t<G>>& mu) {
  if constexpr (EnumerableGraph<G>) {
    for (const auto& a : mu.atoms()) {
      if (!g.contains(a.vertex)) throw Error(ErrorCode::unreachable_atom, "atom is not a vertex of the graph");
    }
  }
}

/// Collects every vertex connected to `seed` through neighbors of equal weight.
template <LocallyFiniteGraph G>
std::vector<vertex_t<G>> equal_weight_plateau(const G& g, WeightEvaluator<G>& eval, const vertex_t<G>& seed,
                                              const Integer& value) {
  using V = vertex_t<G>;
  std::set<V> plateau{seed};
  std::vector<V> stack{seed};
  while (!stack.empty()) {
    V x = stack.back();
    stack.pop_back();
    for (const V& u : g.neighbors(x)) {
      if (plateau.contains(u)) continue;
      if (eval.numerator(u) == value) {
        plateau.insert(u);
        stack.push_back(u);
      }
    }
  }
  return {plateau.begin(), plateau.end()};
}

}  // namespace detail

/// Exhaustive argmin over every vertex of a finite graph.
template <EnumerableGraph G>
MeanSetResult<vertex_t<G>> mean_set_exact(const G& g, const AtomicMeasure<vertex_t<G>>& mu, int c = 2) {
  using V = vertex_t<G>;
  require_weight_class(c);
  detail::require_support_in(g, mu);
  if (mu.support_size() == 1) return detail::single_atom_result(mu, c, "exact");

  WeightEvaluator<G> eval(g, mu, c);
  std::optional<Integer> best;
  std::vector<V> argmin;
  for (const V& v : g.vertices()) {
    Integer value = eval.numerator(v);
    if (!best || value < *best) {
      best = std::move(value);
      argmin.assign({v});
    } else if (value == *best) {
      argmin.push_back(v);
    }
  }
  std::sort(argmin.begin(), argmin.end());
  return {std::move(argmin), Rational(*best, mu.total_mass()), c, "exact", g.vertex_count(), true};
}

/// Radius certificate: sum over atoms s outside B_{v0}(r/2) of d(v0,s) mu(s),
/// minus (r/2) mu(v0), is strictly negative. When it holds every vertex
/// outside B_{v0}(r) has weight strictly above M(v0).
template <LocallyFiniteGraph G>
bool certify_radius(const G& g, const AtomicMeasure<vertex_t<G>>& mu, const vertex_t<G>& v0, std::size_t r) {
  if (r == 0) throw Error(ErrorCode::invalid_input, "certificate radius must be positive");
  DistanceCache<G> distances(g);
  // Scaled by 2 * total mass to stay integral.
  Integer lhs = -Integer(r) * mu.mass(v0);
  for (const auto& atom : mu.atoms()) {
    const std::size_t d = detail::atom_distance(distances, atom.vertex, v0);
    if (2 * d > r) lhs += 2 * Integer(d) * atom.mass;
  }
  return lhs < 0;
}

/// Smallest r with (1/2) M(v) <= sum over B_v(r) of d^c(v,i) mu(i).
template <LocallyFiniteGraph G>
std::size_t half_mass_radius(const G& g, const AtomicMeasure<vertex_t<G>>& mu, const vertex_t<G>& v, int c = 2) {
  require_weight_class(c);
  DistanceCache<G> distances(g);
  std::vector<std::pair<std::size_t, Integer>> terms;
  Integer total = 0;
  for (const auto& atom : mu.atoms()) {
    const std::size_t d = detail::atom_distance(distances, atom.vertex, v);
    Integer term = atom.mass * (c == 2 ? d * d : d);
    total += term;
    terms.emplace_back(d, std::move(term));
  }
  std::sort(terms.begin(), terms.end());
  Integer partial = 0;
  std::size_t r = 0;
  for (const auto& [d, term] : terms) {
    if (2 * partial >= total) break;
    partial += term;
    r = d;
  }
  return r;
}

/// Mean-set on an arbitrary locally finite graph by scanning a certified ball.
///
/// Centers at the heaviest atom v, takes the half-mass radius r, and scans
/// B_v(3r) for class 2. For class 1 the same argument only bounds weights
/// from below by M(v), so the scan widens to B_v(4r) to keep ties inside.
template <LocallyFiniteGraph G>
MeanSetResult<vertex_t<G>> mean_set_bounded(const G& g, const AtomicMeasure<vertex_t<G>>& mu, int c = 2) {
  using V = vertex_t<G>;
  require_weight_class(c);
  detail::require_support_in(g, mu);
  if (mu.support_size() == 1) return detail::single_atom_result(mu, c, "bounded");

  const V& center = mu.heaviest_atom();
  const std::size_t r = half_mass_radius(g, mu, center, c);
  const std::size_t scan_radius = (c == 2 ? 3 : 4) * r;

  WeightEvaluator<G> eval(g, mu, c);
  std::optional<Integer> best;
  std::vector<V> argmin;
  const auto region = bfs_distances(g, center, scan_radius);
  for (const auto& [v, d] : region) {
    Integer value = eval.numerator(v);
    if (!best || value < *best) {
      best = std::move(value);
      argmin.assign({v});
    } else if (value == *best) {
      argmin.push_back(v);
    }
  }
  std::sort(argmin.begin(), argmin.end());
  return {std::move(argmin), Rational(*best, mu.total_mass()), c, "bounded", region.size(), true};
}

/// Direct descent on M^(c) followed by collection of the equal-weight
/// neighbors of the minimizer. Certified only on trees.
template <LocallyFiniteGraph G>
MeanSetResult<vertex_t<G>> mean_set_descent(const G& g, const AtomicMeasure<vertex_t<G>>& mu, int c,
                                            std::optional<vertex_t<G>> start = std::nullopt,
                                            std::size_t max_steps = kDefaultDescentGuard) {
  using V = vertex_t<G>;
  require_weight_class(c);
  detail::require_support_in(g, mu);
  const bool tree = g.is_tree();
  if (mu.support_size() == 1) {
    auto result = detail::single_atom_result(mu, c, "descent");
    result.certified = true;
    return result;
  }

  WeightEvaluator<G> eval(g, mu, c);
  const V origin = start ? *start : mu.heaviest_atom();
  auto found = direct_descent(g, [&eval](const V& v) { return eval.numerator(v); }, origin, max_steps);
  auto plateau = detail::equal_weight_plateau(g, eval, found.vertex, found.value);
  return {std::move(plateau), Rational(found.value, mu.total_mass()), c, "descent", found.steps, tree};
}

/// Mean-set on a tree: descent from `start` (default: heaviest atom) is exact
/// there, and the minimizers form one vertex or an adjacent pair for class 2.
template <LocallyFiniteGraph G>
MeanSetResult<vertex_t<G>> mean_set_tree(const G& g, const AtomicMeasure<vertex_t<G>>& mu, int c = 2,
                                         std::optional<vertex_t<G>> start = std::nullopt,
                                         std::size_t max_steps = kDefaultDescentGuard) {
  if (!g.is_tree()) throw Error(ErrorCode::invalid_input, "mean_set_tree needs a tree");
  return mean_set_descent(g, mu, c, std::move(start), max_steps);
}

/// Picks the exact solver for the graph: full scan on finite graphs, descent
/// on trees, certified ball scan otherwise.
template <LocallyFiniteGraph G>
MeanSetResult<vertex_t<G>> mean_set(const G& g, const AtomicMeasure<vertex_t<G>>& mu, int c = 2) {
  if constexpr (EnumerableGraph<G>) {
    if (g.is_finite()) return mean_set_exact(g, mu, c);
  }
  if (g.is_tree()) return mean_set_tree(g, mu, c);
  return mean_set_bounded(g, mu, c);
}

template <LocallyFiniteGraph G>
MeanSetResult<vertex_t<G>> sample_mean_set(const G& g, const Sample<vertex_t<G>>& s, int c = 2) {
  return mean_set(g, empirical(s), c);
}

struct ClassicalMeanComparison {
  Rational classical_mean;
  std::vector<IntVertex> mean_set;
  Rational gap;  // max over the mean-set of |classical_mean - v|
};

/// Compares the class-2 mean-set on the integer line with the classical mean.
inline ClassicalMeanComparison classical_mean_gap(const AtomicMeasure<IntVertex>& mu) {
  Rational m = 0;
  for (const auto& a : mu.atoms()) m += Rational(a.mass * a.vertex, mu.total_mass());
  auto result = mean_set_tree(LineGraph{}, mu, 2);
  Rational gap = 0;
  for (IntVertex v : result.vertices) {
    Rational diff = m - v;
    if (diff < 0) diff = -diff;
    gap = std::max(gap, diff);
  }
  return {m, std::move(result.vertices), gap};
}

}  // namespace meanset
