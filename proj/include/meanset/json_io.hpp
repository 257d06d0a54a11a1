#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "json.hpp"

#include "meanset/experiments.hpp"
#include "meanset/free_group.hpp"
#include "meanset/invariants.hpp"
#include "meanset/meanset.hpp"
#include "meanset/multivertex.hpp"
#include "meanset/rational.hpp"

namespace meanset {

using Json = nlohmann::ordered_json;

/// Numbers when they fit in int64, decimal strings otherwise.
inline Json to_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(x);
  }
  return x.str();
}

inline Json to_json(const Rational& q) { return to_fraction_string(q); }
inline Json vertex_json(IntVertex v) { return v; }
inline Json vertex_json(const ReducedWord& w) { return to_string(w); }

template <std::size_t D>
Json vertex_json(const std::array<IntVertex, D>& v) {
  Json out = Json::array();
  for (IntVertex x : v) out.push_back(x);
  return out;
}

template <class V>
Json to_json(const MeanSetResult<V>& r) {
  Json vertices = Json::array();
  for (const auto& v : r.vertices) vertices.push_back(vertex_json(v));
  return {{"vertices", vertices},
          {"min_weight", to_json(r.min_weight)},
          {"class", r.class_c},
          {"method", r.method},
          {"steps", r.steps},
          {"certified", r.certified}};
}

inline Json to_json(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

inline Json to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

template <class V>
Json to_json(const IncrementVector<V>& inc) {
  return {{"coords", to_json(inc.coords)}, {"source_atom", vertex_json(inc.source_atom)},
          {"probability", to_json(inc.probability)}};
}

inline Json to_json(const PositivityReport& r) {
  Json out = {{"has_positive_vector", to_string(r.has_positive_vector)}, {"mu_base_positive", r.mu_base_positive}};
  if (!r.witness.empty()) out["witness"] = to_json(r.witness);
  return out;
}

/// Walk report without the thinned trace unless `with_trace`.
inline Json to_json(const WalkReport& r, bool with_trace = false) {
  Json out = {{"steps", r.steps},
              {"orthant_visits", r.orthant_visits},
              {"last_visit", r.last_visit ? Json(*r.last_visit) : Json(nullptr)},
              {"final_position", to_json(r.final_state.position)}};
  if (with_trace) {
    Json trace = Json::array();
    for (const auto& s : r.trace) trace.push_back({{"step", s.step_count}, {"position", to_json(s.position)}});
    out["trace"] = trace;
  }
  return out;
}

inline Json histogram_json(const std::map<std::size_t, std::size_t>& h) {
  Json out = Json::object();
  for (const auto& [d, count] : h) out[std::to_string(d)] = count;
  return out;
}

inline Json to_json(const std::vector<CellResult>& cells) {
  Json rows = Json::array();
  for (const auto& c : cells) {
    rows.push_back({{"rank", c.rank},
                    {"L", c.length},
                    {"n", c.sample_size},
                    {"trials", c.trials},
                    {"histogram", histogram_json(c.histogram)},
                    {"histogram_min", histogram_json(c.histogram_min)}});
  }
  return {{"displacement", "max distance from the identity over S_n; histogram_min uses the nearest element"},
          {"cells", rows}};
}

inline Json to_json(const std::vector<DecayPoint>& points) {
  Json rows = Json::array();
  for (const auto& p : points) {
    rows.push_back({{"n", p.n},
                    {"trials", p.trials},
                    {"misses", p.misses},
                    {"miss_rate", p.miss_rate()},
                    {"n_times_rate", p.n_times_rate()},
                    {"log_rate", p.misses ? Json(p.log_rate()) : Json(nullptr)}});
  }
  return rows;
}

inline Json to_json(const SweepReport& r) {
  Json suites = Json::array();
  for (const auto& s : r.suites) {
    Json row = {{"suite", s.name}, {"cases", s.cases}, {"failures", s.failures}};
    if (s.first_failure_seed) {
      row["first_failure_seed"] = *s.first_failure_seed;
      row["first_failure"] = s.first_failure;
    }
    suites.push_back(row);
  }
  return {{"seed", r.seed}, {"inject_fault", r.inject_fault}, {"passed", r.passed()}, {"suites", suites}};
}

}  // namespace meanset
