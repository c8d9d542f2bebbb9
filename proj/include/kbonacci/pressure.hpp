#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <set>
#include <span>
#include <thread>
#include <unordered_map>
#include <vector>

#include "kbonacci/errors.hpp"
#include "kbonacci/language.hpp"
#include "kbonacci/potential.hpp"
#include "kbonacci/spectral.hpp"
#include "kbonacci/substitution.hpp"
#include "kbonacci/summation.hpp"
#include "kbonacci/word.hpp"

namespace kbonacci {

inline constexpr std::uint64_t max_cylinders = 10'000'000;

/// Lower and upper Birkhoff sums S_n V over each cylinder [w], w in A^n,
/// indexed by base-k code.
struct CylinderSums {
  std::size_t k = 0;
  std::size_t n = 0;
  std::vector<double> lower;
  std::vector<double> upper;
};

namespace detail {

/// min/max of the numerator over all completions of a word shorter than m.
struct CompletionBounds {
  std::vector<std::vector<double>> lo, hi;  // [r][code of r letters]

  explicit CompletionBounds(const Potential& v) {
    const std::size_t k = v.alphabet_size(), m = v.order();
    lo.resize(m + 1);
    hi.resize(m + 1);
    const LocalTable num = v.g + v.h;
    lo[m] = hi[m] = num.values();
    for (std::size_t r = m; r-- > 0;) {
      const std::size_t size = lo[r + 1].size() / k;
      lo[r].assign(size, std::numeric_limits<double>::infinity());
      hi[r].assign(size, 0.0);
      for (std::size_t c = 0; c < lo[r + 1].size(); ++c) {
        lo[r][c / k] = std::min(lo[r][c / k], lo[r + 1][c]);
        hi[r][c / k] = std::max(hi[r][c / k], hi[r + 1][c]);
      }
    }
  }
};

inline void cylinder_kernel(const LanguageIndex& lang, const Potential& v, const CompletionBounds& cb, std::size_t n,
                            std::uint64_t begin, std::uint64_t end, CylinderSums& out) {
  const std::size_t k = lang.alphabet_size(), m = v.order();
  for (std::uint64_t code = begin; code < end; ++code) {
    const Word w = word_from_code(code, n, k);
    CompensatedSum lo, hi;
    for (std::size_t i = 0; i < n; ++i) {
      const std::span<const Letter> u = std::span<const Letter>(w).subspan(i);
      const std::size_t r = std::min(m, u.size());
      const std::uint64_t c = word_code(u.first(r), k);
      const std::size_t p = lang.longest_prefix(u);
      if (p < u.size()) {
        const double scale = std::pow(static_cast<double>(p), -v.alpha);
        lo.add(cb.lo[r][c] * scale);
        hi.add(cb.hi[r][c] * scale);
      } else {
        // some completion stays in the subshift (V = 0); otherwise delta >= |u|
        hi.add(cb.hi[r][c] * std::pow(static_cast<double>(u.size()), -v.alpha));
      }
    }
    out.lower[code] = lo.value();
    out.upper[code] = hi.value();
  }
}

}  // namespace detail

/// Needs a language index of depth > n. The sweep splits the codes into
/// contiguous per-thread ranges, so the result does not depend on `threads`.
inline CylinderSums cylinder_sums(const LanguageIndex& lang, const Potential& v, std::size_t n, unsigned threads = 1) {
  const std::size_t k = lang.alphabet_size();
  if (n < v.order()) throw precondition_error("depth below the potential order");
  if (lang.depth() < n + 1) throw precondition_error("language index too shallow for this depth");
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= k;
    if (total > max_cylinders) throw budget_error("k^n exceeds 10^7 cylinders");
  }
  CylinderSums out{k, n, std::vector<double>(total), std::vector<double>(total)};
  const detail::CompletionBounds cb(v);
  threads = std::max(1u, threads);
  if (threads == 1) {
    detail::cylinder_kernel(lang, v, cb, n, 0, total, out);
    return out;
  }
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (total + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t b = std::min(total, t * chunk), e = std::min(total, b + chunk);
    pool.emplace_back([&, b, e] { detail::cylinder_kernel(lang, v, cb, n, b, e, out); });
  }
  for (auto& th : pool) th.join();
  return out;
}

struct PressureBounds {
  double low;
  double high;
};

namespace detail {

inline double log_sum_exp_scaled(const std::vector<double>& sums, double beta) {
  double top = -std::numeric_limits<double>::infinity();
  for (double s : sums) top = std::max(top, -beta * s);
  CompensatedSum acc;
  for (double s : sums) acc.add(std::exp(-beta * s - top));
  return top + std::log(acc.value());
}

}  // namespace detail

/// (1/n) log sum_w exp(-beta S_w) with S_w replaced by its upper (low) and
/// lower (high) bound. At beta = 0 both are log k exactly; the lower
/// estimate is clamped at 0, which P attains through the measure on the
/// subshift.
inline PressureBounds pressure_bounds(const CylinderSums& sums, double beta) {
  if (beta == 0.0) return {std::log(static_cast<double>(sums.k)), std::log(static_cast<double>(sums.k))};
  const double n = static_cast<double>(sums.n);
  const double low = detail::log_sum_exp_scaled(sums.upper, beta) / n;
  const double high = detail::log_sum_exp_scaled(sums.lower, beta) / n;
  return {std::max(0.0, low), high};
}

inline PressureBounds pressure_bounds(const LanguageIndex& lang, const Potential& v, double beta, std::size_t n) {
  return pressure_bounds(cylinder_sums(lang, v, n), beta);
}

/// 0 followed by `points` geometric values from lo to hi.
inline std::vector<double> default_beta_grid(std::size_t points = 64, double lo = 0.01, double hi = 64.0) {
  std::vector<double> grid{0.0};
  for (std::size_t i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
    grid.push_back(lo * std::pow(hi / lo, t));
  }
  return grid;
}

struct PressureCurve {
  std::size_t k = 0;
  std::size_t n = 0;
  double alpha = 0;
  std::vector<double> beta;
  std::vector<double> low;
  std::vector<double> high;
  double floor = 0;  // limit of high as beta -> infinity: log #L_n / n

  bool ordered() const {
    for (std::size_t i = 0; i < beta.size(); ++i)
      if (low[i] > high[i]) return false;
    return true;
  }
  bool nonnegative() const {
    return std::all_of(low.begin(), low.end(), [](double x) { return x >= 0; });
  }
  bool nonincreasing() const {
    for (std::size_t i = 1; i < beta.size(); ++i)
      if (high[i] > high[i - 1] + 1e-12) return false;
    return true;
  }
  /// Slopes of high between grid points never decrease by more than tol.
  bool convex(double tol = 1e-9) const {
    for (std::size_t i = 1; i + 1 < beta.size(); ++i) {
      const double left = (high[i] - high[i - 1]) / (beta[i] - beta[i - 1]);
      const double right = (high[i + 1] - high[i]) / (beta[i + 1] - beta[i]);
      if (right < left - tol) return false;
    }
    return true;
  }
};

inline PressureCurve pressure_curve(const CylinderSums& sums, double alpha, const std::vector<double>& grid) {
  PressureCurve c;
  c.k = sums.k;
  c.n = sums.n;
  c.alpha = alpha;
  for (double b : grid) {
    const PressureBounds pb = pressure_bounds(sums, b);
    c.beta.push_back(b);
    c.low.push_back(pb.low);
    c.high.push_back(pb.high);
  }
  const auto zero = std::count(sums.lower.begin(), sums.lower.end(), 0.0);
  c.floor = std::log(static_cast<double>(zero)) / static_cast<double>(sums.n);
  return c;
}

struct BetaCReport {
  bool crossed = false;
  double beta_c = 0;           // smallest grid beta with high <= tol
  double bracket_lo = 0;       // previous grid point
  double bracket_hi = 0;
  double floor = 0;            // no crossing is possible when floor > tol
  double min_high = 0;
  bool convex = false;
  bool nonincreasing = false;
};

inline BetaCReport find_beta_c(const PressureCurve& c, double tol = 1e-3) {
  BetaCReport r;
  r.floor = c.floor;
  r.min_high = *std::min_element(c.high.begin(), c.high.end());
  r.convex = c.convex();
  r.nonincreasing = c.nonincreasing();
  for (std::size_t i = 0; i < c.beta.size(); ++i) {
    if (c.high[i] <= tol) {
      r.crossed = true;
      r.beta_c = c.beta[i];
      r.bracket_lo = i == 0 ? c.beta[i] : c.beta[i - 1];
      r.bracket_hi = c.beta[i];
      break;
    }
  }
  return r;
}

/// b_n = s^n(0) s^{n-1}(0) ... s(0) 0.
inline Word ladder_word(const Substitution& s, unsigned n) {
  Word b;
  for (unsigned l = n + 1; l-- > 0;) {
    const Word& img = s.power_image(l, 0);
    b.insert(b.end(), img.begin(), img.end());
  }
  return b;
}

/// |b_n| = sum_{l<=n} |s^l(0)| from integer lengths.
inline std::vector<std::uint64_t> ladder_lengths(const Substitution& s, unsigned n_max) {
  std::vector<std::uint64_t> out;
  std::uint64_t acc = 0;
  for (unsigned n = 0; n <= n_max; ++n) out.push_back(acc = detail::checked_add(acc, s.image_length(n, 0)));
  return out;
}

struct BispecialLadder {
  std::vector<Word> words;
  std::vector<std::uint64_t> lengths;
  bool all_bispecial = true;
  bool lengths_consistent = true;  // |b_{n+1}| = |b_n| + |s^{n+1}(0)|
};

/// Words b_0..b_{n_max}, each checked against the index (which must be deeper
/// than the longest word).
inline BispecialLadder bispecial_ladder(const LanguageIndex& lang, unsigned n_max) {
  const Substitution& s = lang.substitution();
  if (!s.is_kbonacci()) throw precondition_error("ladder is defined for k-bonacci substitutions");
  BispecialLadder l;
  for (unsigned n = 0; n <= n_max; ++n) {
    l.words.push_back(ladder_word(s, n));
    l.lengths.push_back(l.words.back().size());
    if (!lang.is_bispecial(l.words.back())) l.all_bispecial = false;
    if (n > 0 && l.lengths[n] != l.lengths[n - 1] + s.image_length(n, 0)) l.lengths_consistent = false;
  }
  return l;
}

/// |b_m| / |b_{m+1}|.
inline std::vector<double> overlap_ratios(const std::vector<std::uint64_t>& lengths) {
  std::vector<double> out;
  for (std::size_t m = 0; m + 1 < lengths.size(); ++m)
    out.push_back(static_cast<double>(lengths[m]) / static_cast<double>(lengths[m + 1]));
  return out;
}

/// Longest z shorter than both words that is a suffix of one and a prefix of
/// the other.
inline std::size_t proper_overlap(std::span<const Letter> u, std::span<const Letter> v) {
  const std::size_t cap = std::min(u.size(), v.size());
  auto one_way = [cap](std::span<const Letter> a, std::span<const Letter> b) {
    // prefix function of b # a; the chain at the end lists prefixes of b that end a
    std::vector<Letter> t(b.begin(), b.end());
    t.push_back(std::numeric_limits<Letter>::max());
    t.insert(t.end(), a.begin(), a.end());
    std::vector<std::size_t> pi(t.size(), 0);
    for (std::size_t i = 1; i < t.size(); ++i) {
      std::size_t j = pi[i - 1];
      while (j > 0 && t[i] != t[j]) j = pi[j - 1];
      if (t[i] == t[j]) ++j;
      pi[i] = j;
    }
    std::size_t j = pi.back();
    while (j >= cap && j > 0) j = pi[j - 1];
    return j;
  };
  return std::max(one_way(u, v), one_way(v, u));
}

struct OverlapCheck {
  std::size_t pairs = 0;
  std::size_t violations = 0;
  double worst_ratio = 0;  // max |u cap v| / min(|u|, |v|)
  double bound = 0;        // max_m |b_m| / |b_{m+1}|
};

/// Every overlap between distinct ladder words is itself a shorter ladder
/// word, and overlaps stay a fixed fraction below the shorter length.
inline OverlapCheck check_overlaps(const BispecialLadder& l) {
  OverlapCheck c;
  const auto ratios = overlap_ratios(l.lengths);
  c.bound = ratios.empty() ? 0 : *std::max_element(ratios.begin(), ratios.end());
  for (std::size_t a = 0; a < l.words.size(); ++a) {
    for (std::size_t b = a + 1; b < l.words.size(); ++b) {
      ++c.pairs;
      const std::size_t o = proper_overlap(l.words[a], l.words[b]);
      const double ratio = static_cast<double>(o) / static_cast<double>(std::min(l.words[a].size(), l.words[b].size()));
      c.worst_ratio = std::max(c.worst_ratio, ratio);
      const bool is_ladder = o == 0 || std::find(l.lengths.begin(), l.lengths.begin() + static_cast<std::ptrdiff_t>(a), o) !=
                                           l.lengths.begin() + static_cast<std::ptrdiff_t>(a);
      if (!is_ladder || ratio > c.bound) ++c.violations;
    }
  }
  return c;
}

struct LadderCompleteness {
  std::size_t max_length = 0;
  std::vector<Word> bispecials;  // enumerated, nonempty, by length
  std::vector<Word> extra;       // bispecial but not on the ladder
  std::vector<Word> missing;     // ladder words not found by enumeration
  bool exact() const { return extra.empty() && missing.empty(); }
};

/// Exhaustive bispecial enumeration up to max_length, compared with the ladder.
inline LadderCompleteness ladder_completeness(const LanguageIndex& lang, std::size_t max_length) {
  const Substitution& s = lang.substitution();
  LadderCompleteness r;
  r.max_length = max_length;
  std::set<Word> ladder;
  for (unsigned n = 0;; ++n) {
    if (ladder_lengths(s, n).back() > max_length) break;
    ladder.insert(ladder_word(s, n));
  }
  std::set<Word> found;
  for (std::size_t n = 1; n <= max_length; ++n)
    for (Word& w : lang.special_words(n).bispecial) {
      r.bispecials.push_back(w);
      found.insert(std::move(w));
    }
  std::set_difference(found.begin(), found.end(), ladder.begin(), ladder.end(), std::back_inserter(r.extra));
  std::set_difference(ladder.begin(), ladder.end(), found.begin(), found.end(), std::back_inserter(r.missing));
  return r;
}

struct GapRow {
  std::size_t n = 0;
  std::size_t distinct = 0;        // distinct factors seen in the window
  std::size_t non_recurring = 0;   // seen only once: gap unknown
  std::uint64_t max_gap = 0;
  double gap_ratio = 0;            // max_gap / n
};

/// Largest distance between consecutive occurrence starts of each factor of
/// length n <= l_max inside omega[0, window).
inline std::vector<GapRow> recurrence_gaps(const FixedPointStream& omega, std::size_t l_max, std::size_t window) {
  const std::size_t k = omega.substitution().alphabet_size();
  const auto text = omega.prefix(window);
  std::vector<GapRow> rows;
  for (std::size_t n = 1; n <= l_max && n <= window; ++n) {
    struct Seen {
      std::uint64_t last;
      std::uint64_t gap;
      bool repeated;
    };
    std::unordered_map<std::uint64_t, Seen> seen;
    std::uint64_t top = 1;
    for (std::size_t i = 1; i < n; ++i) top *= k;
    std::uint64_t code = word_code(text.first(n), k);
    for (std::size_t i = 0;; ++i) {
      auto [it, fresh] = seen.try_emplace(code, Seen{i, 0, false});
      if (!fresh) {
        it->second.gap = std::max<std::uint64_t>(it->second.gap, i - it->second.last);
        it->second.last = i;
        it->second.repeated = true;
      }
      if (i + n >= text.size()) break;
      code = (code - text[i] * top) * k + text[i + n];
    }
    GapRow row;
    row.n = n;
    row.distinct = seen.size();
    for (const auto& [c, st] : seen) {
      if (!st.repeated) ++row.non_recurring;
      row.max_gap = std::max(row.max_gap, st.gap);
    }
    row.gap_ratio = static_cast<double>(row.max_gap) / static_cast<double>(n);
    rows.push_back(row);
  }
  return rows;
}

struct LengthLaw {
  std::vector<double> residual;  // |b_n| - gamma_0 lambda^{n+1} / (lambda - 1)
  std::vector<double> scaled;    // |b_n| / lambda^n
  double limit = 0;              // gamma_0 lambda / (lambda - 1)
  double max_residual = 0;
  bool bounded = false;          // late residuals no larger than early ones (+1)
};

inline LengthLaw bispecial_length_law(const Substitution& s, const SpectralData& d, unsigned n_max) {
  LengthLaw law;
  const auto lengths = ladder_lengths(s, n_max);
  law.limit = static_cast<double>(d.gamma[0] * d.lambda / (d.lambda - 1));
  double early = 0, late = 0;
  for (unsigned n = 0; n <= n_max; ++n) {
    const long double ln = std::pow(d.lambda, static_cast<long double>(n));
    const long double main = d.gamma[0] * ln * d.lambda / (d.lambda - 1);
    const double r = static_cast<double>(static_cast<long double>(lengths[n]) - main);
    law.residual.push_back(r);
    law.scaled.push_back(static_cast<double>(static_cast<long double>(lengths[n]) / ln));
    law.max_residual = std::max(law.max_residual, std::fabs(r));
    if (2 * n <= n_max) {
      early = std::max(early, std::fabs(r));
    } else {
      late = std::max(late, std::fabs(r));
    }
  }
  law.bounded = late <= early + 1;
  return law;
}

}  // namespace kbonacci
