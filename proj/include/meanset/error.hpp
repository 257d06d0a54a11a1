#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace meanset {

enum class ErrorCode {
  unreachable,
  unreachable_atom,
  infinite_graph,
  rank_mismatch,
  non_termination_guard,
  not_mean_set,
  non_singleton_truth,
  disconnected_graph,
  invalid_input,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::unreachable: return "UNREACHABLE";
    case ErrorCode::unreachable_atom: return "UNREACHABLE_ATOM";
    case ErrorCode::infinite_graph: return "INFINITE_GRAPH";
    case ErrorCode::rank_mismatch: return "RANK_MISMATCH";
    case ErrorCode::non_termination_guard: return "NON_TERMINATION_GUARD";
    case ErrorCode::not_mean_set: return "NOT_MEAN_SET";
    case ErrorCode::non_singleton_truth: return "NON_SINGLETON_TRUTH";
    case ErrorCode::disconnected_graph: return "DISCONNECTED_GRAPH";
    case ErrorCode::invalid_input: return "INVALID_INPUT";
  }
  return "UNKNOWN";
}

/// Library failure carrying a machine-readable code; what() is "CODE: detail".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace meanset
