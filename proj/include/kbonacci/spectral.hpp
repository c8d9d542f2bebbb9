#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "kbonacci/errors.hpp"
#include "kbonacci/potential.hpp"
#include "kbonacci/substitution.hpp"
#include "kbonacci/summation.hpp"
#include "kbonacci/word.hpp"

namespace kbonacci {

/// x^k - sum_{j<k} x^j, in extended precision.
inline long double perron_polynomial(std::size_t k, long double x) {
  long double p = 1;  // Horner on x^k - x^{k-1} - ... - 1
  for (std::size_t i = 0; i < k; ++i) p = p * x - 1;
  return p;
}

/// Dominant root of x^k - sum_{j<k} x^j, bracketed in [1, 2].
inline long double perron_root(std::size_t k) {
  if (k < 2) throw precondition_error("k must be at least 2");
  long double lo = 1, hi = 2;
  for (int it = 0; it < 200 && hi - lo > 1e-12L; ++it) {
    const long double mid = (lo + hi) / 2;
    (perron_polynomial(k, mid) < 0 ? lo : hi) = mid;
  }
  long double x = (lo + hi) / 2;
  for (int it = 0; it < 8; ++it) {
    long double dp = 0, p = 1;  // derivative alongside Horner
    for (std::size_t i = 0; i < k; ++i) {
      dp = dp * x + p;
      p = p * x - 1;
    }
    const long double next = x - p / dp;
    if (!(next > lo && next < hi)) break;
    if (next == x) break;
    x = next;
  }
  return x;
}

/// Real root of x^3 = x^2 + x + 1 by Cardan's formula.
inline long double tribonacci_cardan() {
  const long double r = std::sqrt(33.0L);
  return (std::cbrt(19 + 3 * r) + std::cbrt(19 - 3 * r) + 1) / 3;
}

/// v_l = lambda^{-(k-1-l)} sum_{j<=k-1-l} lambda^j; v_0 = lambda, v_{k-1} = 1.
inline std::vector<long double> left_eigenvector(std::size_t k, long double lambda) {
  std::vector<long double> v(k);
  for (std::size_t l = 0; l < k; ++l) {
    const std::size_t top = k - 1 - l;
    long double s = 0, p = 1;
    for (std::size_t j = 0; j <= top; ++j) {
      s += p;
      p *= lambda;
    }
    v[l] = s / std::pow(lambda, static_cast<long double>(top));
  }
  return v;
}

/// max_j |(v S)_j - lambda v_j|.
inline long double eigen_residual(const IncidenceMatrix& m, const std::vector<long double>& v, long double lambda) {
  long double worst = 0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    long double acc = 0;
    for (std::size_t i = 0; i < m.size(); ++i) acc += v[i] * static_cast<long double>(m(i, j));
    worst = std::max(worst, std::fabs(acc - lambda * v[j]));
  }
  return worst;
}

struct GrowthRow {
  unsigned n;
  Letter letter;
  std::uint64_t length;
  double remainder;  // |s^n(l)| - gamma_l lambda^n
};

struct GrowthDecomposition {
  unsigned n_max = 0;
  std::vector<long double> gamma;
  std::vector<GrowthRow> rows;
  double theta_hat = 0;  // fitted decay rate of max_l |r_l(n)|
  double fit_constant = 0;
};

/// gamma_l = |s^{n_max}(l)| / lambda^{n_max} from integer lengths; the
/// remainder decay rate is fitted on n <= n_max / 2, where gamma's own error
/// is negligible.
inline GrowthDecomposition growth_decomposition(const Substitution& s, unsigned n_max) {
  if (!s.is_kbonacci()) throw precondition_error("growth decomposition is for k-bonacci substitutions");
  const std::size_t k = s.alphabet_size();
  const long double lambda = perron_root(k);
  GrowthDecomposition out;
  out.n_max = n_max;
  const long double top = std::pow(lambda, static_cast<long double>(n_max));
  for (std::size_t l = 0; l < k; ++l) out.gamma.push_back(static_cast<long double>(s.image_length(n_max, static_cast<Letter>(l))) / top);

  std::vector<double> xs, ys;
  for (unsigned n = 0; n <= n_max; ++n) {
    long double worst = 0;
    const long double ln = std::pow(lambda, static_cast<long double>(n));
    for (std::size_t l = 0; l < k; ++l) {
      const std::uint64_t len = s.image_length(n, static_cast<Letter>(l));
      const long double r = static_cast<long double>(len) - out.gamma[l] * ln;
      out.rows.push_back({n, static_cast<Letter>(l), len, static_cast<double>(r)});
      worst = std::max(worst, std::fabs(r));
    }
    if (n >= 1 && 2 * n <= n_max && worst > 0) {
      xs.push_back(n);
      ys.push_back(std::log(static_cast<double>(worst)));
    }
  }
  if (xs.size() >= 2) {
    const double mx = [&] { double a = 0; for (double x : xs) a += x; return a / xs.size(); }();
    const double my = [&] { double a = 0; for (double y : ys) a += y; return a / ys.size(); }();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    out.theta_hat = std::exp(sxy / sxx);
    double c = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) c = std::max(c, std::exp(ys[i] - xs[i] * std::log(out.theta_hat)));
    out.fit_constant = c;
  }
  return out;
}

struct SpectralData {
  std::size_t k = 0;
  long double lambda = 0;
  std::vector<long double> v;
  std::vector<long double> gamma;
  double theta_hat = 0;
};

inline SpectralData spectral_data(std::size_t k, unsigned n_max = 60) {
  SpectralData d;
  d.k = k;
  d.lambda = perron_root(k);
  d.v = left_eigenvector(k, d.lambda);
  const auto g = growth_decomposition(kbonacci(k), n_max);
  d.gamma = g.gamma;
  d.theta_hat = g.theta_hat;
  return d;
}

struct GeometricTail {
  std::uint64_t exact;  // sum_{l<n} |s^l(0)|
  double residual;      // exact - gamma_0 lambda^n / (lambda - 1)
};

inline GeometricTail geometric_tail(const Substitution& s, const SpectralData& d, unsigned n) {
  const std::uint64_t exact = zero_image_length_sum(s, n);
  const long double main = d.gamma[0] * std::pow(d.lambda, static_cast<long double>(n)) / (d.lambda - 1);
  return {exact, static_cast<double>(static_cast<long double>(exact) - main)};
}

/// Right Perron eigenvector, normalized to a probability: mu_a proportional to lambda^{-a}.
inline std::vector<double> letter_frequencies(std::size_t k) {
  const long double lambda = perron_root(k);
  std::vector<long double> mu(k);
  long double total = 0;
  for (std::size_t a = 0; a < k; ++a) total += (mu[a] = std::pow(lambda, -static_cast<long double>(a)));
  std::vector<double> out(k);
  for (std::size_t a = 0; a < k; ++a) out[a] = static_cast<double>(mu[a] / total);
  return out;
}

inline std::vector<double> empirical_frequencies(const FixedPointStream& omega, std::size_t window) {
  if (window == 0) throw precondition_error("empty window");
  std::vector<double> counts(omega.substitution().alphabet_size(), 0.0);
  for (Letter a : omega.prefix(window)) counts[a] += 1;
  for (double& c : counts) c /= static_cast<double>(window);
  return counts;
}

struct Estimate {
  double value;
  double error;  // |estimate(W) - estimate(W/2)|
};

namespace detail {

inline double window_average(std::span<const Letter> text, const LocalTable& g) {
  const std::size_t m = g.order();
  CompensatedSum sum;
  const std::size_t count = text.size() - m + 1;
  for (std::size_t i = 0; i < count; ++i) sum.add(g(text.subspan(i, m)));
  return sum.value() / static_cast<double>(count);
}

}  // namespace detail

/// Integral of a locally constant g against the unique invariant measure,
/// estimated by sliding-window frequencies over omega[0, window).
inline Estimate ergodic_integral(const FixedPointStream& omega, const LocalTable& g, std::size_t window) {
  if (window / 2 < std::max<std::size_t>(g.order(), 1)) throw precondition_error("window too small for the table order");
  const auto text = omega.prefix(window);
  const double full = detail::window_average(text, g);
  const double half = detail::window_average(text.first(window / 2), g);
  return {full, std::fabs(full - half)};
}

}  // namespace kbonacci
