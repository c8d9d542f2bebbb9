#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "kbonacci/detail/suffix_automaton.hpp"
#include "kbonacci/errors.hpp"
#include "kbonacci/substitution.hpp"
#include "kbonacci/word.hpp"

namespace kbonacci {

struct SpecialWords {
  std::vector<Word> left;
  std::vector<Word> right;
  std::vector<Word> bispecial;
};

/// The factors of length at most `depth` of the language of a primitive
/// substitution.
///
/// Construction: the two-letter factors L_2 are the closure of the factors of
/// the letter images under bc -> factors of s(bc). With m the least power such
/// that every s^m(c) has length >= depth, every factor of length <= depth of
/// any s^M(a) lies inside some s^m(bc) with bc in L_2. Those words form the
/// witness text, indexed by a suffix automaton.
///
/// Words longer than `depth` are reported as members when they occur in the
/// witness text; a negative answer beyond `depth` is not decidable from the
/// index and raises index_depth_error. Immutable after construction.
class LanguageIndex {
 public:
  LanguageIndex(const Substitution& s, std::size_t depth) : s_(s), depth_(depth) {
    if (!s.is_primitive()) throw precondition_error("language index needs a primitive substitution");
    const std::size_t k = s.alphabet_size();
    const std::set<Word> pairs = two_letter_factors(s);

    unsigned m = 1;
    auto shortest = [&](unsigned p) {
      std::uint64_t best = UINT64_MAX;
      for (std::size_t a = 0; a < k; ++a) best = std::min(best, s.image_length(p, static_cast<Letter>(a)));
      return best;
    };
    while (shortest(m) < std::max<std::size_t>(depth, 1)) {
      if (++m > 4096) throw precondition_error("letter images do not grow under iteration");
    }

    std::uint64_t total = 0;
    for (const Word& bc : pairs) total = detail::checked_add(total, s.image_length(m, bc) + 1);
    for (std::size_t a = 0; a < k; ++a) total = detail::checked_add(total, s.image_length(m, static_cast<Letter>(a)) + 1);
    if (total > s.budget()) throw budget_error("language witness text exceeds the budget");

    const char separator = static_cast<char>(k);
    text_.reserve(total);
    auto append = [&](std::span<const Letter> w) {
      for (Letter a : w) text_.push_back(static_cast<char>(a));
      text_.push_back(separator);
    };
    for (const Word& bc : pairs) append(s.power_apply(m, bc));
    for (std::size_t a = 0; a < k; ++a) append(s.power_image(m, static_cast<Letter>(a)));
    automaton_ = detail::SuffixAutomaton(text_, k + 1);
  }

  const Substitution& substitution() const { return s_; }
  std::size_t alphabet_size() const { return s_.alphabet_size(); }
  std::size_t depth() const { return depth_; }

  /// Length p of the longest prefix of `w` in the language. When p < |w| the
  /// answer is certified only if p + 1 <= depth; otherwise index_depth_error.
  std::size_t longest_prefix(std::span<const Letter> w) const {
    const std::size_t p = automaton_.match_length(w);
    if (p < w.size() && p + 1 > depth_) {
      throw index_depth_error("language index of depth " + std::to_string(depth_) +
                              " cannot decide a word of length " + std::to_string(p + 1));
    }
    return p;
  }

  bool contains(std::span<const Letter> w) const { return longest_prefix(w) == w.size(); }

  /// All factors of length n in lexicographic order.
  std::vector<Word> factors(std::size_t n) const {
    require_depth(n);
    std::unordered_set<std::string_view> seen;
    const std::string_view text(text_);
    const char separator = static_cast<char>(alphabet_size());
    std::size_t run = 0;  // letters since the last separator
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == separator) {
        run = 0;
        continue;
      }
      ++run;
      if (run >= n) seen.insert(text.substr(i + 1 - n, n));
    }
    if (n == 0) seen.insert(std::string_view());
    std::vector<Word> out;
    out.reserve(seen.size());
    for (std::string_view v : seen) out.emplace_back(v.begin(), v.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t complexity(std::size_t n) const { return factors(n).size(); }

  bool is_right_special(std::span<const Letter> w) const { return extension_count(w, false) >= 2; }
  bool is_left_special(std::span<const Letter> w) const { return extension_count(w, true) >= 2; }
  bool is_bispecial(std::span<const Letter> w) const {
    return contains(w) && is_left_special(w) && is_right_special(w);
  }

  /// Classifies every factor of length n; needs depth >= n + 1.
  SpecialWords special_words(std::size_t n) const {
    require_depth(n + 1);
    std::unordered_map<Word, unsigned, WordHash> right_mask, left_mask;
    for (const Word& u : factors(n + 1)) {
      right_mask[Word(u.begin(), u.end() - 1)] |= 1u << u.back();
      left_mask[Word(u.begin() + 1, u.end())] |= 1u << u.front();
    }
    SpecialWords out;
    for (const Word& w : factors(n)) {
      const bool r = std::popcount(right_mask[w]) >= 2;
      const bool l = std::popcount(left_mask[w]) >= 2;
      if (r) out.right.push_back(w);
      if (l) out.left.push_back(w);
      if (r && l) out.bispecial.push_back(w);
    }
    return out;
  }

  /// The witness text (letters as chars, separator = alphabet size).
  std::string_view witness_text() const { return text_; }

 private:
  static std::set<Word> two_letter_factors(const Substitution& s) {
    std::set<Word> pairs;
    std::vector<Word> frontier;
    auto harvest = [&](const Word& w) {
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        Word bc{w[i], w[i + 1]};
        if (pairs.insert(bc).second) frontier.push_back(std::move(bc));
      }
    };
    for (const Word& img : s.images()) harvest(img);
    while (!frontier.empty()) {
      const Word bc = frontier.back();
      frontier.pop_back();
      harvest(s.apply(bc));
    }
    return pairs;
  }

  void require_depth(std::size_t n) const {
    if (n > depth_) {
      throw index_depth_error("length " + std::to_string(n) + " exceeds index depth " + std::to_string(depth_));
    }
  }

  std::size_t extension_count(std::span<const Letter> w, bool left) const {
    require_depth(w.size() + 1);
    std::size_t count = 0;
    Word u(w.size() + 1);
    for (std::size_t a = 0; a < alphabet_size(); ++a) {
      if (left) {
        u[0] = static_cast<Letter>(a);
        std::copy(w.begin(), w.end(), u.begin() + 1);
      } else {
        std::copy(w.begin(), w.end(), u.begin());
        u.back() = static_cast<Letter>(a);
      }
      if (contains(u)) ++count;
    }
    return count;
  }

  Substitution s_;
  std::size_t depth_;
  std::string text_;
  detail::SuffixAutomaton automaton_;
};

inline LanguageIndex build_language(const Substitution& s, std::size_t depth) { return LanguageIndex(s, depth); }

}  // namespace kbonacci
