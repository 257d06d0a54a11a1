#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "meanset/error.hpp"
#include "meanset/graph.hpp"

namespace meanset {

inline constexpr std::size_t kDefaultDescentGuard = 1'000'000;

template <class V, class T>
struct DescentResult {
  V vertex;
  T value;
  std::size_t steps = 0;
};

/// Direct descent: move to a strictly better neighbor until none exists.
///
/// Among strictly better neighbors the one with the smallest value wins,
/// remaining ties go to the smallest vertex id. Returns a local minimum of f;
/// when f is locally decreasing and locally finite it is a global minimizer.
/// Throws NON_TERMINATION_GUARD after `max_steps` moves.
template <LocallyFiniteGraph G, class F>
auto direct_descent(const G& g, F&& f, const vertex_t<G>& start,
                    std::size_t max_steps = kDefaultDescentGuard)
    -> DescentResult<vertex_t<G>, std::decay_t<decltype(f(start))>> {
  using V = vertex_t<G>;
  using T = std::decay_t<decltype(f(start))>;

  V current = start;
  T current_value = f(current);
  std::size_t steps = 0;
  while (true) {
    std::optional<std::pair<T, V>> best;
    for (const V& u : g.neighbors(current)) {
      T value = f(u);
      if (!(value < current_value)) continue;
      if (!best || value < best->first || (value == best->first && u < best->second)) {
        best.emplace(std::move(value), u);
      }
    }
    if (!best) return {current, current_value, steps};
    if (steps == max_steps) {
      throw Error(ErrorCode::non_termination_guard,
                  "descent exceeded " + std::to_string(max_steps) + " steps");
    }
    ++steps;
    current_value = std::move(best->first);
    current = std::move(best->second);
  }
}

}  // namespace meanset
