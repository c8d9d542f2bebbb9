#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kbonacci/errors.hpp"

namespace kbonacci {

/// A letter of the alphabet {0, ..., k-1}.
using Letter = std::uint8_t;

/// A finite word. The empty vector is the empty word.
using Word = std::vector<Letter>;

/// Largest alphabet that the digit-based text formats can express.
inline constexpr std::size_t max_text_alphabet = 10;

inline std::size_t occurrences(std::span<const Letter> w, Letter a) {
  return static_cast<std::size_t>(std::count(w.begin(), w.end(), a));
}

/// True iff `u` occurs contiguously in `v`. The empty word is a factor of every word.
inline bool is_factor(std::span<const Letter> u, std::span<const Letter> v) {
  if (u.empty()) return true;
  return std::search(v.begin(), v.end(), u.begin(), u.end()) != v.end();
}

inline bool is_prefix(std::span<const Letter> u, std::span<const Letter> v) {
  return u.size() <= v.size() && std::equal(u.begin(), u.end(), v.begin());
}

inline bool is_suffix(std::span<const Letter> u, std::span<const Letter> v) {
  return u.size() <= v.size() &&
         std::equal(u.begin(), u.end(), v.end() - static_cast<std::ptrdiff_t>(u.size()));
}

inline Word concat(std::span<const Letter> u, std::span<const Letter> v) {
  Word out;
  out.reserve(u.size() + v.size());
  out.insert(out.end(), u.begin(), u.end());
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

/// Parses a digit string such as "0102" over the alphabet {0, ..., k-1}.
inline Word parse_word(std::string_view digits, std::size_t k) {
  if (k > max_text_alphabet) {
    throw precondition_error("digit word format supports alphabets of at most 10 letters");
  }
  Word w;
  w.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '9' || static_cast<std::size_t>(c - '0') >= k) {
      throw precondition_error("invalid letter '" + std::string(1, c) + "' for alphabet of size " +
                               std::to_string(k));
    }
    w.push_back(static_cast<Letter>(c - '0'));
  }
  return w;
}

inline std::string to_string(std::span<const Letter> w) {
  std::string out;
  out.reserve(w.size());
  for (Letter a : w) out.push_back(static_cast<char>('0' + a));
  return out;
}

/// Base-k code of a short word, most significant letter first.
inline std::uint64_t word_code(std::span<const Letter> w, std::size_t k) {
  std::uint64_t code = 0;
  for (Letter a : w) code = code * k + a;
  return code;
}

inline Word word_from_code(std::uint64_t code, std::size_t length, std::size_t k) {
  Word w(length);
  for (std::size_t i = length; i-- > 0;) {
    w[i] = static_cast<Letter>(code % k);
    code /= k;
  }
  return w;
}

/// FNV-1a over the letters; for unordered containers keyed by Word.
struct WordHash {
  std::size_t operator()(std::span<const Letter> w) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (Letter a : w) {
      h ^= a;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ w.size());
  }
  std::size_t operator()(const Word& w) const noexcept { return (*this)(std::span<const Letter>(w)); }
};

}  // namespace kbonacci
