#pragma once

// Test-only reference implementations. None of these call into the library's
// algorithms; they only share the value types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "meanset/rational.hpp"

namespace oracle {

using meanset::Integer;
using meanset::Rational;
using Vertex = std::int64_t;
using Edge = std::pair<Vertex, Vertex>;

inline constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 4;

/// All-pairs distances by Floyd-Warshall over the vertex list.
struct AllPairs {
  std::vector<Vertex> vertices;
  std::map<Vertex, std::size_t> index;
  std::vector<std::vector<std::size_t>> d;

  std::size_t operator()(Vertex a, Vertex b) const { return d[index.at(a)][index.at(b)]; }
};

inline AllPairs floyd_warshall(std::vector<Vertex> vertices, const std::vector<Edge>& edges) {
  std::sort(vertices.begin(), vertices.end());
  AllPairs ap;
  ap.vertices = vertices;
  for (std::size_t i = 0; i < vertices.size(); ++i) ap.index[vertices[i]] = i;
  const std::size_t n = vertices.size();
  ap.d.assign(n, std::vector<std::size_t>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) ap.d[i][i] = 0;
  for (const auto& [u, v] : edges) {
    ap.d[ap.index[u]][ap.index[v]] = 1;
    ap.d[ap.index[v]][ap.index[u]] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (ap.d[i][k] + ap.d[k][j] < ap.d[i][j]) ap.d[i][j] = ap.d[i][k] + ap.d[k][j];
  return ap;
}

/// Argmin of sum_s d(v,s)^c p(s) computed with rationals over every vertex.
struct BruteForceResult {
  std::vector<Vertex> argmin;
  Rational min_weight;
};

inline BruteForceResult brute_force_mean_set(const AllPairs& ap, const std::map<Vertex, Rational>& p, int c) {
  BruteForceResult out;
  bool first = true;
  for (Vertex v : ap.vertices) {
    Rational w = 0;
    for (const auto& [s, ps] : p) {
      Rational d = static_cast<long long>(ap(v, s));
      w += (c == 2 ? d * d : d) * ps;
    }
    if (first || w < out.min_weight) {
      out.min_weight = w;
      out.argmin = {v};
      first = false;
    } else if (w == out.min_weight) {
      out.argmin.push_back(v);
    }
  }
  return out;
}

/// Weighted-median-style scan on the integer line over [lo, hi].
inline std::vector<Vertex> line_mean_set(const std::map<Vertex, Rational>& p, int c, Vertex lo, Vertex hi) {
  std::vector<Vertex> argmin;
  Rational best = -1;
  for (Vertex v = lo; v <= hi; ++v) {
    Rational w = 0;
    for (const auto& [s, ps] : p) {
      Rational d = static_cast<long long>(v > s ? v - s : s - v);
      w += (c == 2 ? d * d : d) * ps;
    }
    if (best < 0 || w < best) {
      best = w;
      argmin = {v};
    } else if (w == best) {
      argmin.push_back(v);
    }
  }
  return argmin;
}

/// Union-find components of the graph with `removed` deleted.
inline std::size_t component_count(const std::vector<Vertex>& vertices, const std::vector<Edge>& edges,
                                   const std::set<Vertex>& removed) {
  std::map<Vertex, Vertex> parent;
  for (Vertex v : vertices)
    if (!removed.contains(v)) parent[v] = v;
  std::function<Vertex(Vertex)> find = [&](Vertex x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& [u, v] : edges) {
    if (removed.contains(u) || removed.contains(v)) continue;
    parent[find(u)] = find(v);
  }
  std::set<Vertex> roots;
  for (const auto& [v, _] : parent) roots.insert(find(v));
  return roots.size();
}

/// Component label of every vertex once `removed` is deleted (union-find).
inline std::map<Vertex, Vertex> component_labels(const std::vector<Vertex>& vertices, const std::vector<Edge>& edges,
                                                 const std::set<Vertex>& removed) {
  std::map<Vertex, Vertex> parent;
  for (Vertex v : vertices)
    if (!removed.contains(v)) parent[v] = v;
  std::function<Vertex(Vertex)> find = [&](Vertex x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& [u, v] : edges) {
    if (removed.contains(u) || removed.contains(v)) continue;
    parent[find(u)] = find(v);
  }
  std::map<Vertex, Vertex> label;
  for (const auto& [v, _] : parent) label[v] = find(v);
  return label;
}

/// Rank over the rationals by plain Gaussian elimination.
inline std::size_t rational_rank(const std::vector<std::vector<Integer>>& rows) {
  if (rows.empty()) return 0;
  std::vector<std::vector<Rational>> m;
  for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
  const std::size_t cols = m.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][col] == 0) continue;
      Rational f = m[r][col] / m[rank][col];
      for (std::size_t j = col; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

/// Free reduction with an explicit stack, letters as +-i.
inline std::vector<int> reduce(const std::vector<int>& letters) {
  std::vector<int> out;
  for (int l : letters) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

/// Every reduced word of length exactly `length` over rank r, by filtering all
/// (2r)^length letter strings.
inline std::set<std::vector<int>> reduced_words_by_filter(int rank, std::size_t length) {
  std::vector<int> alphabet;
  for (int i = 1; i <= rank; ++i) {
    alphabet.push_back(i);
    alphabet.push_back(-i);
  }
  std::set<std::vector<int>> out;
  std::vector<std::size_t> digits(length, 0);
  for (;;) {
    std::vector<int> w;
    for (std::size_t d : digits) w.push_back(alphabet[d]);
    if (reduce(w).size() == length) out.insert(w);
    std::size_t i = 0;
    while (i < length && ++digits[i] == alphabet.size()) digits[i++] = 0;
    if (i == length) break;
  }
  return out;
}

/// Pearson chi-square statistic of observed counts against equal expectation.
inline double chi_square_uniform(const std::vector<std::size_t>& counts) {
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  const double expected = total / static_cast<double>(counts.size());
  double chi = 0;
  for (std::size_t c : counts) chi += (c - expected) * (c - expected) / expected;
  return chi;
}

/// Wilson-Hilferty upper quantile of chi-square with k degrees of freedom.
inline double chi_square_upper(double k, double z) {
  const double a = 2.0 / (9.0 * k);
  return k * std::pow(1.0 - a + z * std::sqrt(a), 3.0);
}

/// Spearman rank correlation with average ranks for ties.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      for (std::size_t k = i; k <= j; ++k) r[idx[k]] = (i + j) / 2.0 + 1;
      i = j + 1;
    }
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / rx.size();
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / ry.size();
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxx == 0 || syy == 0 ? 0.0 : sxy / std::sqrt(sxx * syy);
}


/// P(S_m = k) for the simple +-1 walk.
inline double walk_pmf(std::uint64_t steps, std::int64_t k) {
  const std::int64_t n = static_cast<std::int64_t>(steps);
  if (k < -n || k > n || (n + k) % 2 != 0) return 0.0;
  return std::exp(std::lgamma(n + 1.0) - std::lgamma((n + k) / 2 + 1.0) - std::lgamma((n - k) / 2 + 1.0) -
                  n * std::log(2.0));
}

/// P(S_j < 0 for every j in (m, n]) for the simple walk started at 0, by the
/// reflection principle: from -k the walk stays below 0 for N steps with
/// probability 1 - P(S_N >= k) - P(S_N >= k + 1).
inline double walk_stays_negative(std::uint64_t m, std::uint64_t n) {
  const std::uint64_t steps = n - m;
  std::vector<double> tail(steps + 2, 0.0);  // tail[k] = P(S_steps >= k)
  for (std::int64_t k = static_cast<std::int64_t>(steps); k >= 0; --k) tail[k] = tail[k + 1] + walk_pmf(steps, k);
  double total = 0;
  for (std::uint64_t k = 1; k <= m; ++k) {
    const double p = walk_pmf(m, -static_cast<std::int64_t>(k));
    if (p == 0.0) continue;
    const double up_k = k <= steps ? tail[k] : 0.0;
    const double up_k1 = k + 1 <= steps ? tail[k + 1] : 0.0;
    total += p * (1.0 - up_k - up_k1);
  }
  return total;
}

/// P(X >= k) for X ~ Binomial(n, p).
inline double binomial_upper_tail(std::uint64_t n, std::uint64_t k, double p) {
  double total = 0;
  for (std::uint64_t j = k; j <= n; ++j) {
    total += std::exp(std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0) + j * std::log(p) +
                      (n - j) * std::log1p(-p));
  }
  return total;
}

}  // namespace oracle
