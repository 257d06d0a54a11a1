#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "meanset/error.hpp"
#include "meanset/random.hpp"
#include "meanset/rational.hpp"

namespace meanset {

/// Signed generator index: +i is x_i, -i is x_i^{-1}, with 1 <= i <= rank.
using Letter = std::int32_t;

/// An element of the free group F_r as a freely reduced word.
///
/// Words are ordered by rank, then lexicographically with every inverse
/// letter before every generator (x_1^{-1} < ... < x_r^{-1} < x_1 < ... < x_r)
/// and prefixes first. For rank <= 26 this is exactly the byte order of the
/// letter syntax ("A" < "B" < "a" < "ab").
class ReducedWord {
 public:
  explicit ReducedWord(int rank = 1) : rank_(rank) {
    if (rank < 1) throw Error(ErrorCode::invalid_input, "free group rank must be >= 1");
  }

  /// Freely reduces `letters`.
  static ReducedWord from_letters(int rank, std::span<const Letter> letters) {
    ReducedWord w(rank);
    for (Letter l : letters) {
      if (l == 0 || l > rank || l < -rank) {
        throw Error(ErrorCode::invalid_input,
                    "letter " + std::to_string(l) + " outside rank " + std::to_string(rank));
      }
      w.push_reduced(l);
    }
    return w;
  }

  /// No reduction and no checks. Only for building deliberately broken words
  /// in fault-injection runs.
  static ReducedWord assume_reduced(int rank, std::vector<Letter> letters) {
    ReducedWord w(rank);
    w.letters_ = std::move(letters);
    return w;
  }

  int rank() const { return rank_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }
  std::span<const Letter> letters() const { return letters_; }

  ReducedWord inverse() const {
    ReducedWord w(rank_);
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(-*it);
    return w;
  }

  /// Right multiplication by a single letter (one Cayley-graph edge).
  ReducedWord times_letter(Letter l) const {
    ReducedWord w = *this;
    w.push_reduced(l);
    return w;
  }

  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;

  friend std::strong_ordering operator<=>(const ReducedWord& a, const ReducedWord& b) {
    if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
    const std::size_t n = std::min(a.letters_.size(), b.letters_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (auto c = order_key(a.letters_[i], a.rank_) <=> order_key(b.letters_[i], b.rank_); c != 0) return c;
    }
    return a.letters_.size() <=> b.letters_.size();
  }

 private:
  static Letter order_key(Letter l, int rank) { return l < 0 ? -l : rank + l; }

  void push_reduced(Letter l) {
    if (!letters_.empty() && letters_.back() == -l) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }

  int rank_;
  std::vector<Letter> letters_;
};

inline void require_same_rank(const ReducedWord& a, const ReducedWord& b) {
  if (a.rank() != b.rank()) {
    throw Error(ErrorCode::rank_mismatch,
                "ranks " + std::to_string(a.rank()) + " and " + std::to_string(b.rank()));
  }
}

inline ReducedWord multiply(const ReducedWord& a, const ReducedWord& b) {
  require_same_rank(a, b);
  std::vector<Letter> letters(a.letters().begin(), a.letters().end());
  letters.insert(letters.end(), b.letters().begin(), b.letters().end());
  return ReducedWord::from_letters(a.rank(), letters);
}

/// Word metric d(a, b) = |a^{-1} b|, computed from the common prefix.
inline std::size_t fg_distance(const ReducedWord& a, const ReducedWord& b) {
  require_same_rank(a, b);
  auto la = a.letters();
  auto lb = b.letters();
  std::size_t common = 0;
  const std::size_t n = std::min(la.size(), lb.size());
  while (common < n && la[common] == lb[common]) ++common;
  return la.size() + lb.size() - 2 * common;
}

/// |S_L| = 2r (2r-1)^(L-1) for L >= 1.
inline Integer sphere_size(int rank, std::size_t length) {
  if (rank < 1) throw Error(ErrorCode::invalid_input, "free group rank must be >= 1");
  if (length == 0) return 1;
  Integer size = 2 * rank;
  for (std::size_t i = 1; i < length; ++i) size *= (2 * rank - 1);
  return size;
}

namespace detail {

inline Letter symbol_to_letter(int symbol, int rank) {
  return symbol < rank ? static_cast<Letter>(symbol + 1) : static_cast<Letter>(-(symbol - rank + 1));
}

inline int letter_to_symbol(Letter l, int rank) { return l > 0 ? l - 1 : rank + (-l) - 1; }

}  // namespace detail

/// Uniform element of the sphere S_L: the first letter is uniform over the 2r
/// symbols, every later letter uniform over the 2r-1 symbols that do not
/// cancel its predecessor.
inline ReducedWord sample_sphere(int rank, std::size_t length, RandomStream& rng) {
  if (rank < 1) throw Error(ErrorCode::invalid_input, "free group rank must be >= 1");
  std::vector<Letter> letters;
  letters.reserve(length);
  if (length == 0) return ReducedWord(rank);
  std::uniform_int_distribution<int> first(0, 2 * rank - 1);
  letters.push_back(detail::symbol_to_letter(first(rng), rank));
  std::uniform_int_distribution<int> next(0, 2 * rank - 2);
  for (std::size_t i = 1; i < length; ++i) {
    const int forbidden = detail::letter_to_symbol(-letters.back(), rank);
    int symbol = next(rng);
    if (symbol >= forbidden) ++symbol;
    letters.push_back(detail::symbol_to_letter(symbol, rank));
  }
  return ReducedWord::assume_reduced(rank, std::move(letters));
}

/// All words of length exactly L, ascending.
inline std::vector<ReducedWord> enumerate_sphere(int rank, std::size_t length) {
  std::vector<ReducedWord> layer{ReducedWord(rank)};
  for (std::size_t step = 0; step < length; ++step) {
    std::vector<ReducedWord> next;
    for (const auto& w : layer) {
      for (int symbol = 0; symbol < 2 * rank; ++symbol) {
        Letter l = detail::symbol_to_letter(symbol, rank);
        if (!w.is_identity() && w.letters().back() == -l) continue;
        next.push_back(w.times_letter(l));
      }
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

/// The 2r words at distance one from w, ascending.
inline std::vector<ReducedWord> cayley_neighbors(const ReducedWord& w) {
  std::vector<ReducedWord> out;
  out.reserve(2 * static_cast<std::size_t>(w.rank()));
  for (int symbol = 0; symbol < 2 * w.rank(); ++symbol) {
    out.push_back(w.times_letter(detail::symbol_to_letter(symbol, w.rank())));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Text syntax: "abA" = x1 x2 x1^{-1} for rank <= 26, tokens "g3 G7" otherwise,
// "e" for the identity.

inline std::string to_string(const ReducedWord& w) {
  if (w.is_identity()) return "e";
  auto letters = w.letters();
  // "e" alone would read back as the identity, so x5 by itself uses a token.
  const bool letter_syntax = w.rank() <= 26 && !(letters.size() == 1 && letters[0] == 5);
  std::string out;
  if (letter_syntax) {
    for (Letter l : letters) out.push_back(l > 0 ? static_cast<char>('a' + l - 1) : static_cast<char>('A' - l - 1));
    return out;
  }
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) out.push_back(' ');
    out.push_back(letters[i] > 0 ? 'g' : 'G');
    out += std::to_string(letters[i] > 0 ? letters[i] : -letters[i]);
  }
  return out;
}

inline ReducedWord parse_word(std::string_view text, int rank) {
  auto first = text.find_first_not_of(" \t");
  if (first == std::string_view::npos) throw Error(ErrorCode::invalid_input, "empty word text (use 'e')");
  text = text.substr(first, text.find_last_not_of(" \t") - first + 1);
  if (text == "e") return ReducedWord(rank);

  std::vector<Letter> letters;
  const bool token_syntax = std::any_of(text.begin(), text.end(), [](char ch) {
    return std::isdigit(static_cast<unsigned char>(ch)) || ch == ' ' || ch == '\t';
  });
  if (token_syntax) {
    std::istringstream tokens{std::string(text)};
    std::string token;
    while (tokens >> token) {
      if (token.size() < 2 || (token[0] != 'g' && token[0] != 'G') ||
          !detail::all_digits(std::string_view(token).substr(1))) {
        throw Error(ErrorCode::invalid_input, "bad generator token '" + token + "'");
      }
      const long index = std::stol(token.substr(1));
      if (index < 1 || index > rank) throw Error(ErrorCode::invalid_input, "generator out of range in '" + token + "'");
      letters.push_back(static_cast<Letter>(token[0] == 'g' ? index : -index));
    }
  } else {
    for (char ch : text) {
      Letter l = 0;
      if (ch >= 'a' && ch <= 'z') l = ch - 'a' + 1;
      else if (ch >= 'A' && ch <= 'Z') l = -(ch - 'A' + 1);
      else throw Error(ErrorCode::invalid_input, std::string("bad letter '") + ch + "'");
      if ((l > 0 ? l : -l) > rank) {
        throw Error(ErrorCode::invalid_input, std::string("letter '") + ch + "' outside rank " + std::to_string(rank));
      }
      letters.push_back(l);
    }
  }
  return ReducedWord::from_letters(rank, letters);
}

/// Cayley graph of F_r with respect to its free basis: a 2r-regular tree.
class FreeGroupCayley {
 public:
  using vertex_type = ReducedWord;

  explicit FreeGroupCayley(int rank) : rank_(rank) {
    if (rank < 1) throw Error(ErrorCode::invalid_input, "free group rank must be >= 1");
  }

  int rank() const { return rank_; }
  ReducedWord identity() const { return ReducedWord(rank_); }

  std::vector<ReducedWord> neighbors(const ReducedWord& w) const {
    if (w.rank() != rank_) throw Error(ErrorCode::rank_mismatch, "word rank differs from graph rank");
    return cayley_neighbors(w);
  }
  std::size_t distance(const ReducedWord& a, const ReducedWord& b) const { return fg_distance(a, b); }
  bool is_finite() const { return false; }
  bool is_tree() const { return true; }

 private:
  int rank_;
};

}  // namespace meanset
