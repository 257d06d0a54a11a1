#pragma once

#include <algorithm>
#include <array>
#include <concepts>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <ranges>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "meanset/error.hpp"

namespace meanset {

using IntVertex = std::int64_t;

/// A connected, locally finite, undirected graph exposed through a neighbor
/// oracle. Vertex identifiers must be totally ordered; that order is used for
/// every deterministic tie-break in the library.
template <class G>
concept LocallyFiniteGraph = requires(const G& g, const typename G::vertex_type& v) {
  requires std::totally_ordered<typename G::vertex_type>;
  { g.neighbors(v) } -> std::ranges::input_range;
  { g.is_finite() } -> std::convertible_to<bool>;
  { g.is_tree() } -> std::convertible_to<bool>;
};

/// Graphs whose geodesic metric has a closed form (lines, grids, Cayley trees).
template <class G>
concept ClosedFormMetric = LocallyFiniteGraph<G> &&
    requires(const G& g, const typename G::vertex_type& v) {
      { g.distance(v, v) } -> std::convertible_to<std::size_t>;
    };

/// Finite graphs with an explicit vertex list.
template <class G>
concept EnumerableGraph = LocallyFiniteGraph<G> &&
    requires(const G& g, const typename G::vertex_type& v) {
      { g.vertices() } -> std::ranges::input_range;
      { g.contains(v) } -> std::convertible_to<bool>;
    };

template <class G>
using vertex_t = typename G::vertex_type;

// ---------------------------------------------------------------------------
// Concrete graphs

/// Finite graph stored as sorted adjacency lists. Always connected, simple,
/// and with nonnegative vertex ids.
class ExplicitGraph {
 public:
  using vertex_type = IntVertex;
  using Edge = std::pair<IntVertex, IntVertex>;

  /// Builds and validates a graph. `extra_vertices` allows isolated-looking
  /// singletons such as the one-vertex graph.
  static ExplicitGraph from_edges(const std::vector<Edge>& edges,
                                  const std::vector<IntVertex>& extra_vertices = {}) {
    ExplicitGraph g;
    for (IntVertex v : extra_vertices) {
      if (v < 0) throw Error(ErrorCode::invalid_input, "negative vertex id " + std::to_string(v));
      g.adjacency_[v];
    }
    for (const auto& [a, b] : edges) {
      if (a < 0 || b < 0) {
        throw Error(ErrorCode::invalid_input,
                    "negative vertex id in edge " + std::to_string(a) + " " + std::to_string(b));
      }
      if (a == b) throw Error(ErrorCode::invalid_input, "self-loop at " + std::to_string(a));
      auto& na = g.adjacency_[a];
      if (std::find(na.begin(), na.end(), b) != na.end()) {
        throw Error(ErrorCode::invalid_input,
                    "parallel edge " + std::to_string(a) + " " + std::to_string(b));
      }
      na.push_back(b);
      g.adjacency_[b].push_back(a);
      ++g.edge_count_;
    }
    if (g.adjacency_.empty()) throw Error(ErrorCode::invalid_input, "graph has no vertices");
    for (auto& [v, list] : g.adjacency_) {
      std::sort(list.begin(), list.end());
      g.vertices_.push_back(v);
    }
    if (!g.connected()) throw Error(ErrorCode::disconnected_graph, "explicit graphs must be connected");
    return g;
  }

  const std::vector<IntVertex>& vertices() const { return vertices_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  bool contains(IntVertex v) const { return adjacency_.contains(v); }
  bool is_finite() const { return true; }
  bool is_tree() const { return edge_count_ + 1 == vertices_.size(); }

  const std::vector<IntVertex>& neighbors(IntVertex v) const {
    auto it = adjacency_.find(v);
    if (it == adjacency_.end()) throw Error(ErrorCode::invalid_input, "unknown vertex " + std::to_string(v));
    return it->second;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (const auto& [v, list] : adjacency_) {
      for (IntVertex u : list) {
        if (v < u) out.emplace_back(v, u);
      }
    }
    return out;
  }

 private:
  bool connected() const {
    std::set<IntVertex> seen{vertices_.front()};
    std::vector<IntVertex> stack{vertices_.front()};
    while (!stack.empty()) {
      IntVertex v = stack.back();
      stack.pop_back();
      for (IntVertex u : adjacency_.at(v)) {
        if (seen.insert(u).second) stack.push_back(u);
      }
    }
    return seen.size() == vertices_.size();
  }

  std::map<IntVertex, std::vector<IntVertex>> adjacency_;
  std::vector<IntVertex> vertices_;
  std::size_t edge_count_ = 0;
};

/// Graph known only through a neighbor oracle. Connectivity and (optionally)
/// tree-ness are a contract of the caller; they are not checked.
template <std::totally_ordered V>
class ImplicitGraph {
 public:
  using vertex_type = V;
  using Oracle = std::function<std::vector<V>(const V&)>;

  explicit ImplicitGraph(Oracle oracle, bool tree = false)
      : oracle_(std::move(oracle)), tree_(tree) {}

  std::vector<V> neighbors(const V& v) const { return oracle_(v); }
  bool is_finite() const { return false; }
  bool is_tree() const { return tree_; }

 private:
  Oracle oracle_;
  bool tree_;
};

/// Hides the vertex list of an explicit graph so that solvers treat it as an
/// oracle-only graph.
inline ImplicitGraph<IntVertex> as_implicit(const ExplicitGraph& g) {
  return ImplicitGraph<IntVertex>(
      [g](const IntVertex& v) { return g.neighbors(v); }, g.is_tree());
}

/// The integer line Z with edges n -- n+1.
class LineGraph {
 public:
  using vertex_type = IntVertex;

  std::vector<IntVertex> neighbors(IntVertex v) const { return {v - 1, v + 1}; }
  std::size_t distance(IntVertex a, IntVertex b) const {
    return static_cast<std::size_t>(a > b ? a - b : b - a);
  }
  bool is_finite() const { return false; }
  bool is_tree() const { return true; }
};

/// The grid Z^D with unit steps along each axis (L1 metric).
template <std::size_t D>
class GridGraph {
 public:
  using vertex_type = std::array<IntVertex, D>;

  std::vector<vertex_type> neighbors(const vertex_type& v) const {
    std::vector<vertex_type> out;
    out.reserve(2 * D);
    for (std::size_t axis = 0; axis < D; ++axis) {
      for (IntVertex step : {IntVertex{-1}, IntVertex{1}}) {
        vertex_type u = v;
        u[axis] += step;
        out.push_back(u);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  std::size_t distance(const vertex_type& a, const vertex_type& b) const {
    std::size_t total = 0;
    for (std::size_t axis = 0; axis < D; ++axis) {
      total += static_cast<std::size_t>(a[axis] > b[axis] ? a[axis] - b[axis] : b[axis] - a[axis]);
    }
    return total;
  }
  bool is_finite() const { return false; }
  bool is_tree() const { return D == 1; }
};

// ---------------------------------------------------------------------------
// Metric

namespace detail {

template <LocallyFiniteGraph G>
bool has_vertex(const G& g, const vertex_t<G>& v) {
  if constexpr (EnumerableGraph<G>) {
    return g.contains(v);
  } else {
    (void)g;
    (void)v;
    return true;
  }
}

}  // namespace detail

/// Geodesic distance. Closed-form metrics are used directly; otherwise a
/// bidirectional BFS runs until the two searches meet.
template <LocallyFiniteGraph G>
std::size_t distance(const G& g, const vertex_t<G>& u, const vertex_t<G>& v) {
  using V = vertex_t<G>;
  if (!detail::has_vertex(g, u) || !detail::has_vertex(g, v)) {
    throw Error(ErrorCode::unreachable, "vertex not in graph");
  }
  if constexpr (ClosedFormMetric<G>) {
    return g.distance(u, v);
  } else {
    if (u == v) return 0;
    std::map<V, std::size_t> seen_u{{u, 0}}, seen_v{{v, 0}};
    std::vector<V> front_u{u}, front_v{v};
    std::size_t radius_u = 0, radius_v = 0;
    while (!front_u.empty() && !front_v.empty()) {
      const bool from_u = front_u.size() <= front_v.size();
      auto& front = from_u ? front_u : front_v;
      auto& seen = from_u ? seen_u : seen_v;
      const auto& other = from_u ? seen_v : seen_u;
      std::size_t& radius = from_u ? radius_u : radius_v;

      std::size_t best = std::numeric_limits<std::size_t>::max();
      std::vector<V> next;
      for (const V& x : front) {
        for (const V& y : g.neighbors(x)) {
          if (!seen.emplace(y, radius + 1).second) continue;
          if (auto it = other.find(y); it != other.end()) best = std::min(best, radius + 1 + it->second);
          next.push_back(y);
        }
      }
      if (best != std::numeric_limits<std::size_t>::max()) return best;
      ++radius;
      front = std::move(next);
    }
    throw Error(ErrorCode::unreachable, "search exhausted a finite component");
  }
}

/// BFS distances from `source`. Infinite graphs require a radius limit.
template <LocallyFiniteGraph G>
std::map<vertex_t<G>, std::size_t> bfs_distances(const G& g, const vertex_t<G>& source,
                                                 std::optional<std::size_t> radius = std::nullopt) {
  using V = vertex_t<G>;
  if (!radius && !g.is_finite()) {
    throw Error(ErrorCode::infinite_graph, "unbounded BFS on an infinite graph");
  }
  if (!detail::has_vertex(g, source)) throw Error(ErrorCode::unreachable, "source not in graph");
  std::map<V, std::size_t> dist{{source, 0}};
  std::vector<V> frontier{source};
  for (std::size_t level = 0; !frontier.empty() && (!radius || level < *radius); ++level) {
    std::vector<V> next;
    for (const V& x : frontier) {
      for (const V& y : g.neighbors(x)) {
        if (dist.emplace(y, level + 1).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  return dist;
}

/// B_v(r): all vertices within distance r of v, in ascending vertex order.
template <LocallyFiniteGraph G>
std::vector<vertex_t<G>> ball(const G& g, const vertex_t<G>& v, std::size_t r) {
  auto dist = bfs_distances(g, v, r);
  std::vector<vertex_t<G>> out;
  out.reserve(dist.size());
  for (const auto& [u, d] : dist) out.push_back(u);
  return out;
}

/// Memoized single-source distances. Each source keeps its BFS frontier, so
/// repeated queries from a few sources (the atoms of a measure) to many
/// targets cost one incremental BFS per source. Not thread-safe: use one
/// cache per worker.
template <LocallyFiniteGraph G>
class DistanceCache {
 public:
  using V = vertex_t<G>;

  explicit DistanceCache(const G& g) : graph_(&g) {}

  const G& graph() const { return *graph_; }

  std::size_t operator()(const V& source, const V& target) {
    if constexpr (ClosedFormMetric<G>) {
      return graph_->distance(source, target);
    } else {
      if (!detail::has_vertex(*graph_, source) || !detail::has_vertex(*graph_, target)) {
        throw Error(ErrorCode::unreachable, "vertex not in graph");
      }
      auto [it, inserted] = sources_.try_emplace(source);
      Search& s = it->second;
      if (inserted) {
        s.dist.emplace(source, 0);
        s.frontier.push_back(source);
      }
      while (true) {
        if (auto found = s.dist.find(target); found != s.dist.end()) return found->second;
        if (s.frontier.empty()) throw Error(ErrorCode::unreachable, "target not reachable from source");
        std::vector<V> next;
        for (const V& x : s.frontier) {
          for (const V& y : graph_->neighbors(x)) {
            if (s.dist.emplace(y, s.radius + 1).second) next.push_back(y);
          }
        }
        ++s.radius;
        s.frontier = std::move(next);
      }
    }
  }

 private:
  struct Search {
    std::map<V, std::size_t> dist;
    std::vector<V> frontier;
    std::size_t radius = 0;
  };

  const G* graph_;
  std::map<V, Search> sources_;
};

// ---------------------------------------------------------------------------
// Cut structure (finite graphs only)

/// Connected components of the graph with the vertices in `cut` removed,
/// each sorted, listed by smallest member.
template <LocallyFiniteGraph G>
std::vector<std::vector<vertex_t<G>>> components_without(const G& g,
                                                         const std::set<vertex_t<G>>& cut) {
  using V = vertex_t<G>;
  if constexpr (!EnumerableGraph<G>) {
    (void)g;
    (void)cut;
    throw Error(ErrorCode::infinite_graph, "component analysis needs a finite explicit graph");
  } else {
    if (!g.is_finite()) throw Error(ErrorCode::infinite_graph, "component analysis needs a finite graph");
    std::set<V> seen(cut.begin(), cut.end());
    std::vector<std::vector<V>> components;
    for (const V& start : g.vertices()) {
      if (!seen.insert(start).second) continue;
      std::vector<V> component{start};
      std::vector<V> stack{start};
      while (!stack.empty()) {
        V x = stack.back();
        stack.pop_back();
        for (const V& y : g.neighbors(x)) {
          if (seen.insert(y).second) {
            component.push_back(y);
            stack.push_back(y);
          }
        }
      }
      std::sort(component.begin(), component.end());
      components.push_back(std::move(component));
    }
    return components;
  }
}

template <LocallyFiniteGraph G>
bool is_cut_point(const G& g, const vertex_t<G>& v) {
  if constexpr (EnumerableGraph<G>) {
    if (g.is_finite() && !g.contains(v)) throw Error(ErrorCode::invalid_input, "vertex not in graph");
  }
  return components_without(g, std::set<vertex_t<G>>{v}).size() > 1;
}

}  // namespace meanset
