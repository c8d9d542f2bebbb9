#pragma once

#include <cmath>
#include <cstdint>

#include "kbonacci/errors.hpp"

namespace kbonacci {

/// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// sum_{i=a}^{b} i^{-alpha} for 1 <= a. Terms are added directly up to a
/// cutoff; the remaining range uses Euler-Maclaurin with three Bernoulli
/// corrections, accurate to double precision once the range starts past 4096.
inline double power_sum(std::uint64_t a, std::uint64_t b, double alpha) {
  if (a == 0) throw precondition_error("power_sum starts at index 1");
  if (b < a) return 0.0;
  constexpr std::uint64_t direct_terms = 4096;
  CompensatedSum sum;
  std::uint64_t i = a;
  const std::uint64_t direct_end = (b - a < direct_terms) ? b : a + direct_terms;
  for (; i <= direct_end; ++i) sum.add(std::pow(static_cast<double>(i), -alpha));
  if (i > b) return sum.value();

  using ld = long double;
  const ld al = alpha;
  const ld x0 = static_cast<ld>(i);
  const ld x1 = static_cast<ld>(b);
  auto f = [&](ld x) { return std::pow(x, -al); };
  auto d1 = [&](ld x) { return -al * std::pow(x, -al - 1); };
  auto d3 = [&](ld x) { return -al * (al + 1) * (al + 2) * std::pow(x, -al - 3); };
  auto d5 = [&](ld x) { return -al * (al + 1) * (al + 2) * (al + 3) * (al + 4) * std::pow(x, -al - 5); };

  const ld log_ratio = std::log1p((x1 - x0) / x0);
  ld integral;
  if (std::fabs(1 - al) < 1e-15L) {
    integral = log_ratio;
  } else {
    integral = std::pow(x0, 1 - al) * std::expm1((1 - al) * log_ratio) / (1 - al);
  }
  const ld tail = integral + (f(x0) + f(x1)) / 2 + (d1(x1) - d1(x0)) / 12 - (d3(x1) - d3(x0)) / 720 +
                  (d5(x1) - d5(x0)) / 30240;
  sum.add(static_cast<double>(tail));
  return sum.value();
}

}  // namespace kbonacci
