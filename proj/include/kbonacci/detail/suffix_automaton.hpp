#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "kbonacci/word.hpp"

namespace kbonacci::detail {

// Suffix automaton with dense transition rows; answers "longest prefix of q
// occurring in the text" in O(|q|).
class SuffixAutomaton {
 public:
  SuffixAutomaton() = default;

  SuffixAutomaton(std::string_view text, std::size_t alphabet) : alphabet_(alphabet) {
    const std::size_t max_states = 2 * text.size() + 2;
    next_.reserve(max_states * alphabet_);
    link_.reserve(max_states);
    len_.reserve(max_states);
    new_state(0, -1);
    std::int32_t last = 0;
    for (char ch : text) {
      const auto c = static_cast<std::size_t>(static_cast<unsigned char>(ch));
      const std::int32_t cur = new_state(len_[last] + 1, -1);
      std::int32_t p = last;
      while (p != -1 && at(p, c) == -1) {
        at(p, c) = cur;
        p = link_[p];
      }
      if (p == -1) {
        link_[cur] = 0;
      } else {
        const std::int32_t q = at(p, c);
        if (len_[p] + 1 == len_[q]) {
          link_[cur] = q;
        } else {
          const std::int32_t clone = new_state(len_[p] + 1, link_[q]);
          for (std::size_t a = 0; a < alphabet_; ++a) at(clone, a) = at(q, a);
          while (p != -1 && at(p, c) == q) {
            at(p, c) = clone;
            p = link_[p];
          }
          link_[q] = clone;
          link_[cur] = clone;
        }
      }
      last = cur;
    }
  }

  std::size_t match_length(std::span<const Letter> q) const {
    if (len_.empty()) return 0;
    std::int32_t st = 0;
    std::size_t i = 0;
    for (; i < q.size(); ++i) {
      if (q[i] >= alphabet_) break;
      const std::int32_t nx = next_[static_cast<std::size_t>(st) * alphabet_ + q[i]];
      if (nx < 0) break;
      st = nx;
    }
    return i;
  }

  std::size_t state_count() const { return len_.size(); }

 private:
  std::int32_t new_state(std::int32_t len, std::int32_t link) {
    len_.push_back(len);
    link_.push_back(link);
    next_.resize(next_.size() + alphabet_, -1);
    return static_cast<std::int32_t>(len_.size() - 1);
  }

  std::int32_t& at(std::int32_t state, std::size_t c) {
    return next_[static_cast<std::size_t>(state) * alphabet_ + c];
  }

  std::size_t alphabet_ = 0;
  std::vector<std::int32_t> next_;
  std::vector<std::int32_t> link_;
  std::vector<std::int32_t> len_;
};

}  // namespace kbonacci::detail
