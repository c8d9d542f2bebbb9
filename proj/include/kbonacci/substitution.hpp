#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kbonacci/errors.hpp"
#include "kbonacci/word.hpp"

namespace kbonacci {

namespace detail {

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw budget_error("integer overflow in word-length arithmetic");
  return r;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw budget_error("integer overflow in word-length arithmetic");
  return r;
}

}  // namespace detail

/// Square matrix of nonnegative integers; entry (i, j) of an incidence matrix
/// counts the letter i in the image of j.
class IncidenceMatrix {
 public:
  explicit IncidenceMatrix(std::size_t k) : k_(k), entries_(k * k, 0) {}

  static IncidenceMatrix identity(std::size_t k) {
    IncidenceMatrix m(k);
    for (std::size_t i = 0; i < k; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t size() const { return k_; }
  std::uint64_t& operator()(std::size_t i, std::size_t j) { return entries_[i * k_ + j]; }
  std::uint64_t operator()(std::size_t i, std::size_t j) const { return entries_[i * k_ + j]; }

  IncidenceMatrix operator*(const IncidenceMatrix& o) const {
    IncidenceMatrix r(k_);
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t l = 0; l < k_; ++l) {
        const std::uint64_t a = (*this)(i, l);
        if (a == 0) continue;
        for (std::size_t j = 0; j < k_; ++j)
          r(i, j) = detail::checked_add(r(i, j), detail::checked_mul(a, o(l, j)));
      }
    return r;
  }

  IncidenceMatrix power(unsigned n) const {
    IncidenceMatrix result = identity(k_);
    IncidenceMatrix base = *this;
    while (n > 0) {
      if (n & 1u) result = result * base;
      n >>= 1u;
      if (n > 0) base = base * base;
    }
    return result;
  }

  std::vector<std::uint64_t> column_sums() const {
    std::vector<std::uint64_t> sums(k_, 0);
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = 0; j < k_; ++j) sums[j] = detail::checked_add(sums[j], (*this)(i, j));
    return sums;
  }

  bool operator==(const IncidenceMatrix&) const = default;

 private:
  std::size_t k_;
  std::vector<std::uint64_t> entries_;
};

/// Primitivity test: some power has all entries positive. It suffices to look
/// at the power (k-1)^2 + 1 (Wielandt's bound), done over booleans.
inline bool is_primitive(const IncidenceMatrix& m) {
  const std::size_t k = m.size();
  if (k == 0) return false;
  using Bool = std::vector<char>;
  Bool base(k * k), acc(k * k);
  for (std::size_t i = 0; i < k * k; ++i) base[i] = m(i / k, i % k) > 0;
  acc = base;
  const std::size_t exponent = (k - 1) * (k - 1) + 1;
  for (std::size_t e = 1; e < exponent; ++e) {
    Bool next(k * k, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t l = 0; l < k; ++l)
        if (acc[i * k + l])
          for (std::size_t j = 0; j < k; ++j) next[i * k + j] |= base[l * k + j];
    acc.swap(next);
  }
  return std::all_of(acc.begin(), acc.end(), [](char c) { return c != 0; });
}

namespace detail {

struct PowerCache {
  std::mutex mutex;
  std::map<std::pair<unsigned, Letter>, Word> images;  // node-stable storage
  std::uint64_t cached_letters = 0;
  std::vector<std::vector<std::uint64_t>> lengths;  // lengths[n][a] = |s^n(a)|
};

}  // namespace detail

/// A non-erasing morphism of the free monoid over {0, ..., k-1}.
///
/// Iterated images s^n(a) are memoized. Copies share the cache, which is
/// guarded by a mutex, so a Substitution may be used from several threads.
/// The total number of cached letters, and the length of any single
/// materialized word, is capped by `budget`; exceeding it raises budget_error.
class Substitution {
 public:
  static constexpr std::uint64_t default_budget = 100'000'000;

  explicit Substitution(std::vector<Word> images, std::uint64_t budget = default_budget)
      : images_(std::move(images)), budget_(budget), cache_(std::make_shared<detail::PowerCache>()) {
    if (images_.empty()) throw precondition_error("substitution needs a nonempty alphabet");
    if (images_.size() > 255) throw precondition_error("alphabet too large");
    for (const Word& w : images_) {
      if (w.empty()) throw precondition_error("substitution must be non-erasing");
      for (Letter a : w)
        if (a >= images_.size()) throw precondition_error("image letter outside the alphabet");
    }
  }

  std::size_t alphabet_size() const { return images_.size(); }
  const Word& image(Letter a) const { return images_.at(a); }
  const std::vector<Word>& images() const { return images_; }
  std::uint64_t budget() const { return budget_; }

  /// Same images, fresh cache with a different budget.
  Substitution with_budget(std::uint64_t budget) const { return Substitution(images_, budget); }

  Word apply(std::span<const Letter> w) const {
    std::uint64_t total = 0;
    for (Letter a : w) total = detail::checked_add(total, images_.at(a).size());
    check_length(total);
    Word out;
    out.reserve(total);
    for (Letter a : w) out.insert(out.end(), images_[a].begin(), images_[a].end());
    return out;
  }

  /// |s^n(a)|, from the row vector 1^T S^n (no words are materialized).
  std::uint64_t image_length(unsigned n, Letter a) const {
    std::lock_guard lock(cache_->mutex);
    auto& table = cache_->lengths;
    if (table.empty()) table.emplace_back(images_.size(), 1);
    while (table.size() <= n) {
      const auto& prev = table.back();
      std::vector<std::uint64_t> next(images_.size(), 0);
      for (std::size_t b = 0; b < images_.size(); ++b)
        for (Letter c : images_[b]) next[b] = detail::checked_add(next[b], prev[c]);
      table.push_back(std::move(next));
    }
    return table[n].at(a);
  }

  /// Length of s^n(w).
  std::uint64_t image_length(unsigned n, std::span<const Letter> w) const {
    std::uint64_t total = 0;
    for (Letter a : w) total = detail::checked_add(total, image_length(n, a));
    return total;
  }

  /// s^n(a), memoized. The reference stays valid for the lifetime of every
  /// Substitution sharing this cache.
  const Word& power_image(unsigned n, Letter a) const {
    if (a >= images_.size()) throw precondition_error("letter outside the alphabet");
    {
      std::lock_guard lock(cache_->mutex);
      auto it = cache_->images.find({n, a});
      if (it != cache_->images.end()) return it->second;
    }
    const std::uint64_t len = image_length(n, a);
    check_length(len);
    Word w;
    w.reserve(len);
    if (n == 0) {
      w.push_back(a);
    } else {
      for (Letter b : images_[a]) {
        const Word& sub = power_image(n - 1, b);
        w.insert(w.end(), sub.begin(), sub.end());
      }
    }
    std::lock_guard lock(cache_->mutex);
    if (cache_->cached_letters + len > budget_) {
      throw budget_error("power-image cache would exceed the budget of " + std::to_string(budget_) +
                         " letters");
    }
    auto [it, inserted] = cache_->images.emplace(std::pair{n, a}, std::move(w));
    if (inserted) cache_->cached_letters += len;
    return it->second;
  }

  /// s^n(w) as a fresh word.
  Word power_apply(unsigned n, std::span<const Letter> w) const {
    check_length(image_length(n, w));
    Word out;
    for (Letter a : w) {
      const Word& img = power_image(n, a);
      out.insert(out.end(), img.begin(), img.end());
    }
    return out;
  }

  IncidenceMatrix incidence() const {
    IncidenceMatrix m(images_.size());
    for (std::size_t j = 0; j < images_.size(); ++j)
      for (Letter i : images_[j]) ++m(i, j);
    return m;
  }

  bool is_primitive() const { return kbonacci::is_primitive(incidence()); }

  bool is_kbonacci() const {
    const std::size_t k = images_.size();
    if (k < 2) return false;
    for (std::size_t a = 0; a + 1 < k; ++a)
      if (images_[a] != Word{0, static_cast<Letter>(a + 1)}) return false;
    return images_[k - 1] == Word{0};
  }

  bool operator==(const Substitution& o) const { return images_ == o.images_; }

  void check_length(std::uint64_t len) const {
    if (len > budget_) {
      throw budget_error("word of length " + std::to_string(len) + " exceeds the budget of " +
                         std::to_string(budget_) + " letters");
    }
  }

 private:

  std::vector<Word> images_;
  std::uint64_t budget_;
  std::shared_ptr<detail::PowerCache> cache_;
};

/// a -> 0(a+1) for a < k-1 and k-1 -> 0.
inline Substitution kbonacci(std::size_t k, std::uint64_t budget = Substitution::default_budget) {
  if (k < 2) throw precondition_error("k-bonacci substitution needs k >= 2");
  if (k > 255) throw precondition_error("alphabet too large");
  std::vector<Word> images(k);
  for (std::size_t a = 0; a + 1 < k; ++a) images[a] = {0, static_cast<Letter>(a + 1)};
  images[k - 1] = {0};
  return Substitution(std::move(images), budget);
}

/// Checks s^{n+k}(0) = s^{n+k-1}(0) s^{n+k-2}(0) ... s^n(0) letter by letter.
inline bool check_recurrence(const Substitution& s, unsigned n) {
  if (!s.is_kbonacci()) throw precondition_error("recurrence check needs a k-bonacci substitution");
  const auto k = static_cast<unsigned>(s.alphabet_size());
  const Word& lhs = s.power_image(n + k, 0);
  Word rhs;
  rhs.reserve(lhs.size());
  for (unsigned i = 1; i <= k; ++i) {
    const Word& part = s.power_image(n + k - i, 0);
    rhs.insert(rhs.end(), part.begin(), part.end());
  }
  return lhs == rhs;
}

/// The one-sided fixed point omega = lim s^n(seed), produced on demand.
/// Requires s(seed) to start with seed and to have length at least 2.
class FixedPointStream {
 public:
  explicit FixedPointStream(Substitution s, Letter seed = 0) : s_(std::move(s)), seed_(seed) {
    const Word& img = s_.image(seed);
    if (img.front() != seed || img.size() < 2)
      throw precondition_error("seed image must start with the seed and be longer than one letter");
  }

  const Substitution& substitution() const { return s_; }
  Letter seed() const { return seed_; }

  /// The length-L prefix. The span stays valid while this stream is alive.
  std::span<const Letter> prefix(std::size_t length) const {
    unsigned n = 0;
    while (s_.image_length(n, seed_) < length) {
      if (++n > 4096) throw budget_error("fixed point does not grow");
    }
    return std::span<const Letter>(s_.power_image(n, seed_)).first(length);
  }

  Letter at(std::size_t i) const { return prefix(i + 1)[i]; }

 private:
  Substitution s_;
  Letter seed_;
};

/// Text format: k on the first line, then one image per line as digits.
inline Substitution parse_substitution(std::istream& in,
                                       std::uint64_t budget = Substitution::default_budget) {
  std::string line;
  std::size_t k = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream(line) >> k;
    break;
  }
  if (k == 0) throw precondition_error("substitution file: missing alphabet size");
  std::vector<Word> images;
  while (images.size() < k && std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    images.push_back(parse_word(line, k));
  }
  if (images.size() != k) throw precondition_error("substitution file: expected " + std::to_string(k) + " images");
  return Substitution(std::move(images), budget);
}

inline std::string format_substitution(const Substitution& s) {
  std::string out = std::to_string(s.alphabet_size()) + "\n";
  for (const Word& w : s.images()) out += to_string(w) + "\n";
  return out;
}

}  // namespace kbonacci
