#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "kbonacci/configuration.hpp"
#include "kbonacci/errors.hpp"
#include "kbonacci/language.hpp"
#include "kbonacci/potential.hpp"
#include "kbonacci/recognition.hpp"
#include "kbonacci/spectral.hpp"
#include "kbonacci/summation.hpp"

namespace kbonacci {

enum class RenormMode { closed_form, brute_force };

inline std::string to_string(RenormMode m) { return m == RenormMode::closed_form ? "closed-form" : "brute-force"; }

/// (R^n V)(x) = sum_{j < |s^n(x_0)|} V(shift^j s^n x), evaluating each term
/// on an explicitly certified configuration.
inline double renorm_power_brute(const LanguageIndex& lang, const Evaluator& v, const Configuration& x, unsigned n) {
  const Substitution& s = lang.substitution();
  if (n == 0) return v(x);
  const Configuration y = x.image(s, n);
  const std::uint64_t terms = s.image_length(n, x.at(0));
  CompensatedSum sum;
  for (std::uint64_t j = 0; j < terms; ++j) sum.add(v(y.shifted(j)));
  return sum.value();
}

inline double renorm_once(const LanguageIndex& lang, const Evaluator& v, const Configuration& x) {
  return renorm_power_brute(lang, v, x, 1);
}

/// Closed-form path for n >= k: the j-th term has delta = delta(s^n x) - j,
/// and its m-letter window is read from s^n(x). Constant g and h skip the
/// windows entirely and sum the powers in O(1).
inline double renorm_power_closed(const LanguageIndex& lang, const Potential& v, const Configuration& x, unsigned n) {
  const Substitution& s = lang.substitution();
  if (n < s.alphabet_size()) throw precondition_error("closed form needs n >= k");
  if (x.in_subshift()) throw precondition_error("closed form needs finite delta");
  const std::uint64_t d = delta_after_power(lang, x, n);
  const std::uint64_t terms = s.image_length(n, x.at(0));
  if (v.position_independent()) {
    const double c = v.g.values().front() + v.h.values().front();
    return c * power_sum(d - terms + 1, d, v.alpha);
  }
  const std::size_t m = v.order();
  const std::uint64_t need = terms + m - 1;
  Word window;
  for (std::size_t i = 0; window.size() < need; ++i) {
    const Word& block = s.power_image(n, x.at(i));
    window.insert(window.end(), block.begin(), block.end());
    s.check_length(window.size());
  }
  const std::span<const Letter> text(window);
  CompensatedSum sum;
  for (std::uint64_t j = 0; j < terms; ++j)
    sum.add(v.numerator(text.subspan(j, m)) / std::pow(static_cast<double>(d - j), v.alpha));
  return sum.value();
}

inline double renorm_power(const LanguageIndex& lang, const Potential& v, const Configuration& x, unsigned n, RenormMode mode) {
  if (mode == RenormMode::brute_force) return renorm_power_brute(lang, make_evaluator(lang, v), x, n);
  if (n == 0) return make_evaluator(lang, v)(x);
  return renorm_power_closed(lang, v, x, n);
}

struct RenormResult {
  RenormMode method;
  std::vector<unsigned> n;
  std::vector<double> value;
};

/// R^n V(x) for n in [n_min, n_max]. Closed-form mode falls back to brute
/// force below n = k, where the closed form does not apply.
inline RenormResult renorm_series(const LanguageIndex& lang, const Potential& v, const Configuration& x, unsigned n_min,
                                  unsigned n_max, RenormMode mode) {
  RenormResult r{mode, {}, {}};
  const unsigned k = static_cast<unsigned>(lang.alphabet_size());
  for (unsigned n = n_min; n <= n_max; ++n) {
    const RenormMode used = (mode == RenormMode::closed_form && n < k) ? RenormMode::brute_force : mode;
    r.n.push_back(n);
    r.value.push_back(renorm_power(lang, v, x, n, used));
  }
  return r;
}

/// U(x) = log(1 + v_{x_0} / (lambda/(lambda-1) + sum_l v_l |w|_l - v_{x_0})),
/// w = x[0, delta(x)); zero on the subshift.
inline double fixed_point_U(const SpectralData& d, const LanguageIndex& lang, const Configuration& x) {
  const Delta dx = delta(lang, x);
  if (dx.is_infinite()) return 0.0;
  const Word w = x.prefix(static_cast<std::size_t>(dx.value()));
  long double denom = d.lambda / (d.lambda - 1) - d.v[w[0]];
  for (std::size_t l = 0; l < d.k; ++l) denom += d.v[l] * static_cast<long double>(occurrences(w, static_cast<Letter>(l)));
  return static_cast<double>(std::log1p(d.v[w[0]] / denom));
}

inline Evaluator make_U_evaluator(const SpectralData& d, const LanguageIndex& lang) {
  return [&d, &lang](const Configuration& x) { return fixed_point_U(d, lang, certify(lang, x)); };
}

/// max over samples of |RU(x) - U(x)|.
inline double verify_fixed_point(const SpectralData& d, const LanguageIndex& lang, const std::vector<Configuration>& samples) {
  const Evaluator u = make_U_evaluator(d, lang);
  double worst = 0;
  for (const Configuration& x : samples) worst = std::max(worst, std::fabs(renorm_once(lang, u, x) - u(x)));
  return worst;
}

enum class Verdict { decays_to_zero, diverges, converges, undetermined };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::decays_to_zero: return "decays";
    case Verdict::diverges: return "diverges";
    case Verdict::converges: return "converges";
    default: return "undetermined";
  }
}

struct ConvergenceStudy {
  RenormResult series;
  Verdict verdict = Verdict::undetermined;
  double growth_slope = 0;    // mean log-increment over the last k steps
  double expected_slope = 0;  // (1 - alpha) log lambda
  double predicted_limit = 0; // integral of g times U(x), meaningful at alpha = 1
  double last_step = 0;       // |R^n V - R^{n-1} V| at n_max
};

/// Classifies the tail of n -> R^n V(x). Divergence needs values past 1e6 and
/// a log-slope within 10% of (1 - alpha) log lambda; decay needs values below
/// 1e-6; convergence needs a final step below 1e-4.
inline ConvergenceStudy convergence_study(const LanguageIndex& lang, const SpectralData& d, const FixedPointStream& omega,
                                          const Potential& v, const Configuration& x, unsigned n_max,
                                          std::size_t window = 100000) {
  if (x.in_subshift()) throw precondition_error("convergence study needs finite delta");
  if (n_max < d.k + 1) throw precondition_error("n_max too small for a tail");
  ConvergenceStudy st;
  st.series = renorm_series(lang, v, x, 0, n_max, RenormMode::closed_form);
  const auto& val = st.series.value;
  const std::size_t last = val.size() - 1;
  const std::size_t span = d.k;
  st.expected_slope = (1 - v.alpha) * std::log(static_cast<double>(d.lambda));
  if (val[last] > 0 && val[last - span] > 0)
    st.growth_slope = (std::log(val[last]) - std::log(val[last - span])) / static_cast<double>(span);
  st.last_step = std::fabs(val[last] - val[last - 1]);
  st.predicted_limit = ergodic_integral(omega, v.g, window).value * fixed_point_U(d, lang, x);

  if (val[last] > 1e6 && std::fabs(st.growth_slope - st.expected_slope) <= 0.1 * std::fabs(st.expected_slope)) {
    st.verdict = Verdict::diverges;
  } else if (val[last] < 1e-6 && val[last] < val[last - span]) {
    st.verdict = Verdict::decays_to_zero;
  } else if (st.last_step < 1e-4) {
    st.verdict = Verdict::converges;
  }
  return st;
}

/// |sum over j < |s^n(x_0)| minus sum over j < floor(gamma_{x_0} lambda^n)| for
/// V_0 = 1/delta: the error from replacing the exact image length by its
/// leading term.
inline double q_term(const LanguageIndex& lang, const SpectralData& d, const Configuration& x, unsigned n) {
  const Substitution& s = lang.substitution();
  const std::uint64_t dn = delta_after_power(lang, x, n);
  const std::uint64_t exact = s.image_length(n, x.at(0));
  const auto approx = static_cast<std::uint64_t>(
      std::floor(d.gamma[x.at(0)] * std::pow(d.lambda, static_cast<long double>(n))));
  const std::uint64_t lo = std::min(exact, approx), hi = std::max(exact, approx);
  if (lo == hi) return 0.0;
  if (hi >= dn) throw precondition_error("truncation reaches the break");
  // terms j in [lo, hi) have delta dn - j, i.e. indices dn - hi + 1 .. dn - lo
  return power_sum(dn - hi + 1, dn - lo, 1.0);
}

}  // namespace kbonacci
