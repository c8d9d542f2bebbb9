#pragma once

// Brute-force references for the tests. Nothing here touches the suffix
// automaton or the closed forms: words are built by naive string rewriting
// and membership is a plain substring search in a long fixed-point prefix.

#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace oracle {

/// k-bonacci image of a digit string.
inline std::string apply(std::size_t k, const std::string& w) {
  std::string out;
  for (char c : w) {
    const int a = c - '0';
    out += '0';
    if (a + 1 < static_cast<int>(k)) out += static_cast<char>('0' + a + 1);
  }
  return out;
}

inline std::string power(std::size_t k, unsigned n, const std::string& w) {
  std::string out = w;
  for (unsigned i = 0; i < n; ++i) out = oracle::apply(k, out);
  return out;
}

/// Prefix of the fixed point of length at least `length`.
inline std::string omega(std::size_t k, std::size_t length) {
  std::string w = "0";
  while (w.size() < length) w = oracle::apply(k, w);
  return w;
}

/// Membership by substring search in a long prefix of the fixed point. The
/// prefix must contain every factor of the lengths queried.
class NaiveLanguage {
 public:
  NaiveLanguage(std::size_t k, std::size_t prefix_length) : text_(omega(k, prefix_length)) {}
  bool contains(const std::string& w) const { return text_.find(w) != std::string::npos; }
  std::size_t delta(const std::string& x) const {
    // membership is prefix-closed, so the longest member prefix can be bisected
    std::size_t lo = 0, hi = x.size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi + 1) / 2;
      if (contains(x.substr(0, mid))) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    return lo;
  }
  std::set<std::string> factors(std::size_t n) const {
    std::set<std::string> out;
    for (std::size_t i = 0; i + n <= text_.size(); ++i) out.insert(text_.substr(i, n));
    return out;
  }
  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

/// Positions where blocks s^n(omega_i) start, within [0, window).
inline std::vector<std::size_t> cut_points(std::size_t k, unsigned n, std::size_t window) {
  const std::string w = omega(k, window);
  std::vector<std::size_t> out{0};
  std::size_t pos = 0;
  for (char c : w) {
    pos += power(k, n, std::string(1, c)).size();
    if (pos >= window) break;
    out.push_back(pos);
  }
  return out;
}

inline double tribonacci_lambda() {
  double lo = 1, hi = 2;
  for (int i = 0; i < 200; ++i) {
    const double mid = (lo + hi) / 2;
    (mid * mid * mid - mid * mid - mid - 1 < 0 ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

/// The three-case Tribonacci form of U, with the last denominator term
/// entering with a minus sign (the general formula's -v_{x_0}).
inline double tribonacci_U(const std::string& w) {
  const double l = tribonacci_lambda();
  double c[3] = {0, 0, 0};
  for (char ch : w) c[ch - '0'] += 1;
  const double base = l / (l - 1) + l * c[0] + (l + 1) / l * c[1] + c[2];
  const double v[3] = {l, (l + 1) / l, 1.0};
  const double top = v[w[0] - '0'];
  return std::log(1 + top / (base - top));
}

}  // namespace oracle
