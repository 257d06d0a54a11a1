#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>
#include <vector>

#include <boost/random/uniform_int_distribution.hpp>

#include "meanset/error.hpp"
#include "meanset/rational.hpp"

namespace meanset {

using RandomStream = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stream seed for a (master, index, index, ...) path. Distinct paths give
/// statistically independent streams; the same path always gives the same seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t part : path) h = splitmix64(h ^ splitmix64(part + 0x632be59bd9b4e019ULL));
  return h;
}

inline RandomStream make_stream(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  return RandomStream(derive_seed(master, path));
}

/// Exact inversion sampler over positive integer masses. Draws k with
/// probability masses[k] / sum(masses).
class DiscreteSampler {
 public:
  explicit DiscreteSampler(const std::vector<Integer>& masses) {
    if (masses.empty()) throw Error(ErrorCode::invalid_input, "sampler needs at least one mass");
    Integer running = 0;
    cumulative_.reserve(masses.size());
    for (const auto& m : masses) {
      if (m <= 0) throw Error(ErrorCode::invalid_input, "sampler masses must be positive");
      running += m;
      cumulative_.push_back(running);
    }
    total_ = running;
    small_ = total_ <= Integer(std::numeric_limits<std::uint64_t>::max());
    if (small_) {
      for (const auto& c : cumulative_) small_cumulative_.push_back(static_cast<std::uint64_t>(c));
    }
  }

  std::size_t size() const { return cumulative_.size(); }

  std::size_t operator()(RandomStream& rng) const {
    if (small_) {
      std::uniform_int_distribution<std::uint64_t> pick(0, small_cumulative_.back() - 1);
      std::uint64_t u = pick(rng);
      auto it = std::upper_bound(small_cumulative_.begin(), small_cumulative_.end(), u);
      return static_cast<std::size_t>(it - small_cumulative_.begin());
    }
    boost::random::uniform_int_distribution<Integer> pick(Integer(0), total_ - 1);
    Integer u = pick(rng);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return static_cast<std::size_t>(it - cumulative_.begin());
  }

 private:
  std::vector<Integer> cumulative_;
  std::vector<std::uint64_t> small_cumulative_;
  Integer total_;
  bool small_ = false;
};

}  // namespace meanset
