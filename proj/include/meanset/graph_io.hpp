#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>

#include "meanset/error.hpp"
#include "meanset/graph.hpp"
#include "meanset/rational.hpp"

namespace meanset {

namespace detail {

inline std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  std::string body = hash == std::string::npos ? line : line.substr(0, hash);
  auto first = body.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  auto last = body.find_last_not_of(" \t\r");
  return body.substr(first, last - first + 1);
}

inline IntVertex parse_vertex_id(const std::string& token, std::size_t line_no) {
  if (!all_digits(token)) {
    throw Error(ErrorCode::invalid_input,
                "line " + std::to_string(line_no) + ": vertex id must be a nonnegative integer, got '" +
                    token + "'");
  }
  try {
    return static_cast<IntVertex>(std::stoll(token));
  } catch (const std::out_of_range&) {
    throw Error(ErrorCode::invalid_input, "line " + std::to_string(line_no) + ": vertex id out of range");
  }
}

}  // namespace detail

/// Edge-list text: one "u v" pair per line, '#' starts a comment, blank lines
/// are skipped. Vertices are the union of the endpoints.
inline ExplicitGraph parse_edge_list(std::istream& in) {
  std::vector<ExplicitGraph::Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = detail::strip_comment(line);
    if (body.empty()) continue;
    std::istringstream fields(body);
    std::string a, b, extra;
    if (!(fields >> a >> b) || (fields >> extra)) {
      throw Error(ErrorCode::invalid_input,
                  "line " + std::to_string(line_no) + ": expected exactly two vertex ids");
    }
    edges.emplace_back(detail::parse_vertex_id(a, line_no), detail::parse_vertex_id(b, line_no));
  }
  return ExplicitGraph::from_edges(edges);
}

inline ExplicitGraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_input, "cannot open graph file '" + path + "'");
  return parse_edge_list(in);
}

}  // namespace meanset
