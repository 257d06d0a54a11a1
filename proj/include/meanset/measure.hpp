#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/integer/common_factor.hpp>

#include "meanset/error.hpp"
#include "meanset/free_group.hpp"
#include "meanset/graph_io.hpp"
#include "meanset/random.hpp"
#include "meanset/rational.hpp"

namespace meanset {

template <std::totally_ordered V>
struct Atom {
  V vertex;
  Integer mass;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finitely supported probability measure with exact weights.
///
/// Stored as positive integer masses over a total; the masses are divided by
/// their gcd, so two measures with equal probabilities compare equal.
template <std::totally_ordered V>
class AtomicMeasure {
 public:
  using vertex_type = V;

  /// Unnormalized positive masses; duplicate vertices accumulate.
  static AtomicMeasure from_masses(const std::vector<std::pair<V, Integer>>& masses) {
    std::map<V, Integer> merged;
    for (const auto& [v, m] : masses) {
      if (m <= 0) throw Error(ErrorCode::invalid_input, "atom masses must be positive");
      merged[v] += m;
    }
    if (merged.empty()) throw Error(ErrorCode::invalid_input, "measure needs at least one atom");
    AtomicMeasure mu;
    Integer g = 0;
    for (const auto& [v, m] : merged) g = boost::multiprecision::gcd(g, m);
    for (auto& [v, m] : merged) {
      mu.atoms_.push_back({v, m / g});
      mu.total_ += m / g;
    }
    return mu;
  }

  /// Exact probabilities; they must sum to exactly 1.
  static AtomicMeasure from_probabilities(const std::vector<std::pair<V, Rational>>& weights) {
    Rational sum = 0;
    Integer common = 1;
    for (const auto& [v, p] : weights) {
      sum += p;
      common = boost::multiprecision::lcm(common, boost::multiprecision::denominator(p));
    }
    if (sum != 1) throw Error(ErrorCode::invalid_input, "probabilities sum to " + to_fraction_string(sum));
    std::vector<std::pair<V, Integer>> masses;
    for (const auto& [v, p] : weights) {
      if (p == 0) continue;
      if (p < 0) throw Error(ErrorCode::invalid_input, "negative probability");
      masses.emplace_back(v, boost::multiprecision::numerator(p) * (common / boost::multiprecision::denominator(p)));
    }
    return from_masses(masses);
  }

  static AtomicMeasure point_mass(const V& v) { return from_masses({{v, Integer(1)}}); }

  static AtomicMeasure uniform(const std::vector<V>& support) {
    std::vector<std::pair<V, Integer>> masses;
    masses.reserve(support.size());
    for (const auto& v : support) masses.emplace_back(v, Integer(1));
    return from_masses(masses);
  }

  /// Atoms in ascending vertex order.
  const std::vector<Atom<V>>& atoms() const { return atoms_; }
  const Integer& total_mass() const { return total_; }
  std::size_t support_size() const { return atoms_.size(); }

  std::vector<V> support() const {
    std::vector<V> out;
    out.reserve(atoms_.size());
    for (const auto& a : atoms_) out.push_back(a.vertex);
    return out;
  }

  Integer mass(const V& v) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), v,
                               [](const Atom<V>& a, const V& x) { return a.vertex < x; });
    return it != atoms_.end() && it->vertex == v ? it->mass : Integer(0);
  }

  Rational probability(const V& v) const { return Rational(mass(v), total_); }

  /// The atom of largest mass; ties go to the smallest vertex.
  const V& heaviest_atom() const {
    const Atom<V>* best = &atoms_.front();
    for (const auto& a : atoms_) {
      if (a.mass > best->mass) best = &a;
    }
    return best->vertex;
  }

  friend bool operator==(const AtomicMeasure&, const AtomicMeasure&) = default;

 private:
  AtomicMeasure() = default;

  std::vector<Atom<V>> atoms_;
  Integer total_ = 0;
};

/// Multiset of observed vertices.
template <std::totally_ordered V>
class Sample {
 public:
  using vertex_type = V;

  Sample() = default;

  static Sample from_counts(const std::vector<std::pair<V, std::uint64_t>>& counts) {
    Sample s;
    for (const auto& [v, c] : counts) s.add(v, c);
    return s;
  }

  void add(const V& v, std::uint64_t count = 1) {
    if (count == 0) throw Error(ErrorCode::invalid_input, "sample counts must be positive");
    auto it = std::lower_bound(counts_.begin(), counts_.end(), v,
                               [](const auto& entry, const V& x) { return entry.first < x; });
    if (it != counts_.end() && it->first == v) {
      it->second += count;
    } else {
      counts_.insert(it, {v, count});
    }
    size_ += count;
  }

  const std::vector<std::pair<V, std::uint64_t>>& counts() const { return counts_; }
  std::uint64_t size() const { return size_; }

  friend bool operator==(const Sample&, const Sample&) = default;

 private:
  std::vector<std::pair<V, std::uint64_t>> counts_;
  std::uint64_t size_ = 0;
};

/// Reusable i.i.d. sampler for one measure.
template <std::totally_ordered V>
class MeasureSampler {
 public:
  explicit MeasureSampler(const AtomicMeasure<V>& mu) : measure_(&mu), pick_(masses_of(mu)) {}

  const V& operator()(RandomStream& rng) const { return measure_->atoms()[pick_(rng)].vertex; }

  Sample<V> draw(std::uint64_t n, RandomStream& rng) const {
    if (n == 0) throw Error(ErrorCode::invalid_input, "sample size must be >= 1");
    std::vector<std::uint64_t> counts(measure_->support_size(), 0);
    for (std::uint64_t i = 0; i < n; ++i) ++counts[pick_(rng)];
    Sample<V> s;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      if (counts[k]) s.add(measure_->atoms()[k].vertex, counts[k]);
    }
    return s;
  }

 private:
  static std::vector<Integer> masses_of(const AtomicMeasure<V>& mu) {
    std::vector<Integer> out;
    for (const auto& a : mu.atoms()) out.push_back(a.mass);
    return out;
  }

  const AtomicMeasure<V>* measure_;
  DiscreteSampler pick_;
};

/// n i.i.d. draws from mu, aggregated into counts.
template <std::totally_ordered V>
Sample<V> draw(const AtomicMeasure<V>& mu, std::uint64_t n, RandomStream& rng) {
  return MeasureSampler<V>(mu).draw(n, rng);
}

/// Relative-frequency measure mu_n(u) = count(u) / n.
template <std::totally_ordered V>
AtomicMeasure<V> empirical(const Sample<V>& s) {
  if (s.size() == 0) throw Error(ErrorCode::invalid_input, "empirical measure of an empty sample");
  std::vector<std::pair<V, Integer>> masses;
  masses.reserve(s.counts().size());
  for (const auto& [v, c] : s.counts()) masses.emplace_back(v, Integer(c));
  return AtomicMeasure<V>::from_masses(masses);
}

/// Left translation h -> g h of every atom.
inline AtomicMeasure<ReducedWord> shift(const AtomicMeasure<ReducedWord>& mu, const ReducedWord& g) {
  std::vector<std::pair<ReducedWord, Integer>> masses;
  masses.reserve(mu.support_size());
  for (const auto& a : mu.atoms()) masses.emplace_back(multiply(g, a.vertex), a.mass);
  return AtomicMeasure<ReducedWord>::from_masses(masses);
}

// ---------------------------------------------------------------------------
// Measure files: lines "vertex mass". The mass is the last field; the vertex
// is everything before it (word tokens like "g3 G7" may contain spaces).
// Masses are positive exact numbers and are normalized by their total.

template <std::totally_ordered V>
AtomicMeasure<V> parse_measure(std::istream& in, const std::function<V(const std::string&)>& parse_vertex) {
  std::vector<std::pair<V, Rational>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = detail::strip_comment(line);
    if (body.empty()) continue;
    auto split = body.find_last_of(" \t");
    if (split == std::string::npos) {
      throw Error(ErrorCode::invalid_input, "line " + std::to_string(line_no) + ": expected 'vertex mass'");
    }
    std::string vertex_text = detail::strip_comment(body.substr(0, split));
    Rational mass = parse_exact_number(body.substr(split + 1));
    if (mass <= 0) throw Error(ErrorCode::invalid_input, "line " + std::to_string(line_no) + ": mass must be positive");
    entries.emplace_back(parse_vertex(vertex_text), mass);
  }
  Integer common = 1;
  for (const auto& [v, q] : entries) common = boost::multiprecision::lcm(common, boost::multiprecision::denominator(q));
  std::vector<std::pair<V, Integer>> masses;
  for (const auto& [v, q] : entries) {
    masses.emplace_back(v, boost::multiprecision::numerator(q) * (common / boost::multiprecision::denominator(q)));
  }
  return AtomicMeasure<V>::from_masses(masses);
}

inline IntVertex parse_int_vertex(const std::string& text) {
  bool negative = !text.empty() && text[0] == '-';
  if (!detail::all_digits(negative ? std::string_view(text).substr(1) : std::string_view(text))) {
    throw Error(ErrorCode::invalid_input, "not an integer vertex: '" + text + "'");
  }
  return static_cast<IntVertex>(std::stoll(text));
}

template <std::totally_ordered V>
AtomicMeasure<V> load_measure(const std::string& path, const std::function<V(const std::string&)>& parse_vertex) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_input, "cannot open measure file '" + path + "'");
  return parse_measure<V>(in, parse_vertex);
}

}  // namespace meanset
