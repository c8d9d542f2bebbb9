#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kbonacci/configuration.hpp"
#include "kbonacci/errors.hpp"
#include "kbonacci/language.hpp"
#include "kbonacci/substitution.hpp"
#include "kbonacci/word.hpp"

namespace kbonacci {

/// Length of the longest prefix of a configuration lying in the language;
/// infinite exactly on the subshift.
class Delta {
 public:
  explicit Delta(std::uint64_t value) : value_(value) {}
  static Delta infinite() {
    Delta d(0);
    d.infinite_ = true;
    return d;
  }

  bool is_infinite() const { return infinite_; }
  std::uint64_t value() const {
    if (infinite_) throw precondition_error("delta is infinite");
    return value_;
  }
  bool operator==(const Delta&) const = default;

 private:
  std::uint64_t value_;
  bool infinite_ = false;
};

/// delta(x) read off the head. The head must contain the exit from the
/// language (a prefix of length p + 1 outside it); the head is never extended.
inline Delta delta(const LanguageIndex& lang, const Configuration& x) {
  if (x.in_subshift()) return Delta::infinite();
  const Word& head = x.head();
  const std::size_t p = lang.longest_prefix(head);
  if (p == head.size()) {
    throw uncertified_configuration("head '" + to_string(head) + "' lies in the language; the break is beyond it");
  }
  return Delta(p);
}

/// The same point with a head long enough to certify delta, found by
/// materializing the tail. Orbit points are returned unchanged.
inline Configuration certify(const LanguageIndex& lang, const Configuration& x) {
  if (x.in_subshift()) return x;
  std::size_t length = std::max<std::size_t>(x.head().size(), 8);
  const std::size_t limit = 4 * lang.depth() + 64;
  while (true) {
    Configuration y = x.with_head_length(length);
    if (lang.longest_prefix(y.head()) < y.head().size()) return y;
    if (length > limit) throw index_depth_error("configuration stays in the language beyond the index depth");
    length *= 2;
  }
}

/// delta after explicit certification; used by brute-force paths.
inline Delta delta_extending(const LanguageIndex& lang, const Configuration& x) { return delta(lang, certify(lang, x)); }

namespace detail {

inline void require_kbonacci(const Substitution& s) {
  if (!s.is_kbonacci()) throw precondition_error("operation is specific to k-bonacci substitutions");
}

inline Word delta_prefix(const LanguageIndex& lang, const Configuration& x) {
  const Delta d = delta(lang, x);
  if (d.is_infinite()) throw precondition_error("configuration lies in the subshift (delta infinite)");
  return x.prefix(static_cast<std::size_t>(d.value()));
}

}  // namespace detail

/// sum_{l<n} |s^l(0)|.
inline std::uint64_t zero_image_length_sum(const Substitution& s, unsigned n) {
  std::uint64_t total = 0;
  for (unsigned l = 0; l < n; ++l) total = detail::checked_add(total, s.image_length(l, 0));
  return total;
}

/// s^n(w) s^{n-1}(0) ... s(0) 0, for w = x[0, delta(x)).
inline Word maximal_prefix_after_power(const Substitution& s, std::span<const Letter> w, unsigned n) {
  detail::require_kbonacci(s);
  if (n < 1) throw precondition_error("power must be at least 1");
  Word out = s.power_apply(n, w);
  for (unsigned l = n; l-- > 0;) {
    const Word& img = s.power_image(l, 0);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

inline Word maximal_prefix_after_power(const LanguageIndex& lang, const Configuration& x, unsigned n) {
  return maximal_prefix_after_power(lang.substitution(), detail::delta_prefix(lang, x), n);
}

/// delta(s^n x) = sum_j |s^n(j)| |w|_j + sum_{l<n} |s^l(0)|, with w = x[0, delta(x)).
inline std::uint64_t delta_after_power(const Substitution& s, std::span<const Letter> w, unsigned n) {
  detail::require_kbonacci(s);
  if (n < 1) throw precondition_error("power must be at least 1");
  std::uint64_t total = zero_image_length_sum(s, n);
  for (std::size_t j = 0; j < s.alphabet_size(); ++j) {
    const auto count = occurrences(w, static_cast<Letter>(j));
    total = detail::checked_add(total, detail::checked_mul(count, s.image_length(n, static_cast<Letter>(j))));
  }
  return total;
}

inline std::uint64_t delta_after_power(const LanguageIndex& lang, const Configuration& x, unsigned n) {
  return delta_after_power(lang.substitution(), detail::delta_prefix(lang, x), n);
}

/// delta(shift^j s^n x) = delta(s^n x) - j, valid for n >= k and j < |s^n(x_0)|.
inline std::uint64_t delta_shifted(const Substitution& s, std::span<const Letter> w, unsigned n, std::uint64_t j) {
  detail::require_kbonacci(s);
  if (n < s.alphabet_size()) throw precondition_error("shifted closed form needs n >= k");
  if (w.empty()) throw precondition_error("delta is at least 1");
  if (j >= s.image_length(n, w[0])) throw precondition_error("shift must stay inside the image of the first letter");
  return delta_after_power(s, w, n) - j;
}

inline std::uint64_t delta_shifted(const LanguageIndex& lang, const Configuration& x, unsigned n, std::uint64_t j) {
  return delta_shifted(lang.substitution(), detail::delta_prefix(lang, x), n, j);
}

/// delta(shift^j y) for j < count, by materializing one prefix of y long
/// enough to hold every break and scanning it against the language.
inline std::vector<std::uint64_t> delta_scan(const LanguageIndex& lang, const Configuration& y, std::uint64_t count) {
  if (y.in_subshift()) throw precondition_error("configuration lies in the subshift");
  std::size_t length = static_cast<std::size_t>(count) + std::max<std::size_t>(y.head().size(), 8);
  const std::size_t limit = static_cast<std::size_t>(count) + 4 * lang.depth() + 64;
  while (true) {
    const Word z = y.prefix(length);
    std::vector<std::uint64_t> out;
    out.reserve(count);
    bool complete = true;
    for (std::uint64_t j = 0; j < count; ++j) {
      const auto rest = std::span<const Letter>(z).subspan(static_cast<std::size_t>(j));
      const std::size_t p = lang.longest_prefix(rest);
      if (p == rest.size()) {
        complete = false;
        break;
      }
      out.push_back(p);
    }
    if (complete) return out;
    if (length > limit) throw index_depth_error("configuration stays in the language beyond the index depth");
    length *= 2;
  }
}

/// Longest-common-prefix distance to the subshift, found by matching prefixes
/// of x against the enumerated factor sets.
inline double distance_to_subshift(const LanguageIndex& lang, const Configuration& x) {
  if (x.in_subshift()) return 0.0;
  std::size_t best = 0;
  for (std::size_t n = 1; n <= lang.depth(); ++n) {
    const auto fs = lang.factors(n);
    const Word pre = x.prefix(n);
    if (!std::binary_search(fs.begin(), fs.end(), pre)) return std::ldexp(1.0, -static_cast<int>(best));
    best = n;
  }
  throw index_depth_error("no break within the index depth");
}

struct CutPointSet {
  unsigned n = 0;
  std::size_t window = 0;
  std::vector<std::uint64_t> points;  // strictly increasing, starts with 0
};

/// Block boundaries |s^n(omega[0, q))| of omega = s^n(omega) inside [0, window).
inline CutPointSet cut_points(const FixedPointStream& omega, unsigned n, std::size_t window) {
  CutPointSet out{n, window, {}};
  if (window == 0) return out;
  const Substitution& s = omega.substitution();
  const auto letters = omega.prefix(window);
  std::uint64_t pos = 0;
  out.points.push_back(0);
  for (std::size_t i = 0; i < letters.size(); ++i) {
    pos = detail::checked_add(pos, s.image_length(n, letters[i]));
    if (pos >= window) break;
    out.points.push_back(pos);
  }
  return out;
}

/// Start positions of every (possibly overlapping) occurrence of `pattern` in `text`.
inline std::vector<std::uint64_t> occurrence_positions(std::span<const Letter> text, std::span<const Letter> pattern) {
  std::vector<std::uint64_t> out;
  if (pattern.empty() || pattern.size() > text.size()) return out;
  const std::boyer_moore_horspool_searcher searcher(pattern.begin(), pattern.end());
  auto it = text.begin();
  while (true) {
    const auto found = std::search(it, text.end(), searcher);
    if (found == text.end()) break;
    out.push_back(static_cast<std::uint64_t>(found - text.begin()));
    it = found + 1;
  }
  return out;
}

struct RecognizabilityReport {
  unsigned n = 0;
  std::size_t window = 0;
  std::vector<std::uint64_t> occurrences;  // starts of s^n(0) fully inside the window
  std::vector<std::uint64_t> cuts;         // cut points d with d + |s^n(0)| <= window
  std::vector<std::uint64_t> unexpected;   // occurrences that are not cut points
  std::vector<std::uint64_t> missing;      // cut points not starting an occurrence
  bool holds() const { return unexpected.empty() && missing.empty(); }
};

/// Scans omega[0, window): s^n(0) should occur exactly at the cut points of D^n.
inline RecognizabilityReport verify_recognizability(const FixedPointStream& omega, unsigned n, std::size_t window) {
  const Substitution& s = omega.substitution();
  detail::require_kbonacci(s);
  if (n < s.alphabet_size()) throw precondition_error("recognizability is stated for n >= k");
  const Word& block = s.power_image(n, 0);
  RecognizabilityReport r;
  r.n = n;
  r.window = window;
  for (std::uint64_t d : cut_points(omega, n, window).points)
    if (d + block.size() <= window) r.cuts.push_back(d);
  if (r.cuts.size() < 2) throw inconclusive_error("window holds fewer than two cut points");
  r.occurrences = occurrence_positions(omega.prefix(window), block);
  std::set_difference(r.occurrences.begin(), r.occurrences.end(), r.cuts.begin(), r.cuts.end(),
                      std::back_inserter(r.unexpected));
  std::set_difference(r.cuts.begin(), r.cuts.end(), r.occurrences.begin(), r.occurrences.end(),
                      std::back_inserter(r.missing));
  return r;
}

/// Number of words v with s(v) = w (saturating at UINT64_MAX).
inline std::uint64_t count_preimages(const Substitution& s, std::span<const Letter> w) {
  std::vector<std::uint64_t> ways(w.size() + 1, 0);
  ways[w.size()] = 1;
  for (std::size_t i = w.size(); i-- > 0;) {
    std::uint64_t total = 0;
    for (const Word& img : s.images()) {
      if (i + img.size() <= w.size() && std::equal(img.begin(), img.end(), w.begin() + static_cast<std::ptrdiff_t>(i))) {
        const std::uint64_t add = ways[i + img.size()];
        total = (total > UINT64_MAX - add) ? UINT64_MAX : total + add;
      }
    }
    ways[i] = total;
  }
  return ways[0];
}

/// The preimage of w when it exists and is unique.
inline std::optional<Word> desubstitute(const Substitution& s, std::span<const Letter> w) {
  if (count_preimages(s, w) != 1) return std::nullopt;
  Word v;
  std::size_t i = 0;
  while (i < w.size()) {
    for (std::size_t a = 0; a < s.alphabet_size(); ++a) {
      const Word& img = s.image(static_cast<Letter>(a));
      if (i + img.size() <= w.size() &&
          std::equal(img.begin(), img.end(), w.begin() + static_cast<std::ptrdiff_t>(i)) &&
          count_preimages(s, w.subspan(i + img.size())) > 0) {
        v.push_back(static_cast<Letter>(a));
        i += img.size();
        break;
      }
    }
  }
  return v;
}

struct DesubstitutionReport {
  std::size_t words_checked = 0;
  std::vector<Word> not_unique;         // qualifying words without exactly one preimage
  std::vector<Word> preimage_outside;   // unique preimage not in the language
  bool passed() const { return not_unique.empty() && preimage_outside.empty(); }
};

/// Every factor of length <= max_length that starts with 0 and ends with a
/// nonzero letter has exactly one preimage, and that preimage is a factor.
inline DesubstitutionReport check_unique_desubstitution(const LanguageIndex& lang, std::size_t max_length) {
  const Substitution& s = lang.substitution();
  detail::require_kbonacci(s);
  DesubstitutionReport r;
  for (std::size_t n = 1; n <= max_length; ++n) {
    for (const Word& w : lang.factors(n)) {
      if (w.front() != 0 || w.back() == 0) continue;
      ++r.words_checked;
      const auto v = desubstitute(s, w);
      if (!v) {
        r.not_unique.push_back(w);
      } else if (!lang.contains(*v)) {
        r.preimage_outside.push_back(w);
      }
    }
  }
  return r;
}

struct AppendixReport {
  DesubstitutionReport desubstitution;
  bool contains_000 = true;
  bool contains_001 = false;
  bool contains_002 = true;
  bool passed() const { return desubstitution.passed() && !contains_000 && contains_001 && !contains_002; }
};

/// Tribonacci: unique de-substitution up to `max_length`, and 001 is the only
/// three-letter factor starting with 00.
inline AppendixReport tribonacci_appendix_checks(std::size_t max_length = 30) {
  const LanguageIndex lang(kbonacci(3), std::max<std::size_t>(max_length, 3));
  AppendixReport r;
  r.desubstitution = check_unique_desubstitution(lang, max_length);
  r.contains_000 = lang.contains(Word{0, 0, 0});
  r.contains_001 = lang.contains(Word{0, 0, 1});
  r.contains_002 = lang.contains(Word{0, 0, 2});
  return r;
}

}  // namespace kbonacci
