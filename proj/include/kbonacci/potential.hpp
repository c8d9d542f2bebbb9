#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kbonacci/configuration.hpp"
#include "kbonacci/errors.hpp"
#include "kbonacci/language.hpp"
#include "kbonacci/recognition.hpp"
#include "kbonacci/word.hpp"

namespace kbonacci {

/// A function of the first m letters, stored densely by base-k code.
class LocalTable {
 public:
  LocalTable(std::size_t k, std::size_t order, std::vector<double> values)
      : k_(k), order_(order), values_(std::move(values)) {
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < order; ++i) size *= k;
    if (values_.size() != size) throw precondition_error("local table has the wrong number of entries");
  }

  static LocalTable constant(std::size_t k, std::size_t order, double c) {
    return tabulate(k, order, [c](std::span<const Letter>) { return c; });
  }
  static LocalTable tabulate(std::size_t k, std::size_t order, const std::function<double(std::span<const Letter>)>& f) {
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < order; ++i) size *= k;
    std::vector<double> values(size);
    for (std::uint64_t c = 0; c < size; ++c) values[c] = f(word_from_code(c, order, k));
    return LocalTable(k, order, std::move(values));
  }
  /// 1 on the cylinder [u], 0 elsewhere, at order |u|.
  static LocalTable indicator(std::size_t k, const Word& u) {
    return tabulate(k, u.size(), [&u](std::span<const Letter> w) { return std::equal(u.begin(), u.end(), w.begin()) ? 1.0 : 0.0; });
  }

  std::size_t alphabet_size() const { return k_; }
  std::size_t order() const { return order_; }
  const std::vector<double>& values() const { return values_; }

  double operator()(std::span<const Letter> w) const {
    if (w.size() < order_) throw precondition_error("window shorter than the table order");
    return values_[word_code(w.first(order_), k_)];
  }

  /// Same function viewed at a larger order.
  LocalTable lifted(std::size_t order) const {
    if (order < order_) throw precondition_error("cannot lower the order of a local table");
    return tabulate(k_, order, [this](std::span<const Letter> w) { return (*this)(w); });
  }

  bool is_constant() const {
    return std::all_of(values_.begin(), values_.end(), [&](double v) { return v == values_.front(); });
  }
  double max() const { return *std::max_element(values_.begin(), values_.end()); }
  double min() const { return *std::min_element(values_.begin(), values_.end()); }

  LocalTable operator+(const LocalTable& o) const {
    const std::size_t m = std::max(order_, o.order_);
    const LocalTable a = lifted(m), b = o.lifted(m);
    std::vector<double> v(a.values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values_[i] + b.values_[i];
    return LocalTable(k_, m, std::move(v));
  }

 private:
  std::size_t k_;
  std::size_t order_;
  std::vector<double> values_;
};

/// V = (g + h) / delta^alpha, with g > 0 and h >= 0 vanishing on the language.
struct Potential {
  double alpha;
  LocalTable g;
  LocalTable h;

  Potential(double alpha_, LocalTable g_, LocalTable h_) : alpha(alpha_), g(std::move(g_)), h(std::move(h_)) {
    if (!(alpha > 0)) throw precondition_error("alpha must be positive");
    if (g.alphabet_size() != h.alphabet_size()) throw precondition_error("g and h over different alphabets");
    const std::size_t m = std::max(g.order(), h.order());
    g = g.lifted(m);
    h = h.lifted(m);
    if (g.min() <= 0) throw precondition_error("g must be positive");
    if (h.min() < 0) throw precondition_error("h must be nonnegative");
  }

  /// g = 1, h = 0.
  static Potential standard(std::size_t k, double alpha) {
    return Potential(alpha, LocalTable::constant(k, 1, 1.0), LocalTable::constant(k, 1, 0.0));
  }

  std::size_t order() const { return g.order(); }
  std::size_t alphabet_size() const { return g.alphabet_size(); }
  double numerator(std::span<const Letter> w) const { return g(w) + h(w); }
  double max_numerator() const { return (g + h).max(); }
  bool position_independent() const { return g.is_constant() && h.is_constant(); }

  /// Checks that h vanishes on every factor of length m.
  void validate(const LanguageIndex& lang) const {
    if (lang.alphabet_size() != alphabet_size()) throw precondition_error("potential and language over different alphabets");
    for (const Word& w : lang.factors(order())) {
      if (h(w) != 0.0) throw precondition_error("h is nonzero on the factor " + to_string(w));
    }
  }
};

/// V(x); zero on the subshift. The head must certify delta and hold m letters.
inline double eval_potential(const LanguageIndex& lang, const Potential& v, const Configuration& x) {
  const Delta d = delta(lang, x);
  if (d.is_infinite()) return 0.0;
  if (x.head().size() < v.order()) throw precondition_error("head shorter than the potential order");
  return v.numerator(x.head()) / std::pow(static_cast<double>(d.value()), v.alpha);
}

using Evaluator = std::function<double(const Configuration&)>;

inline Evaluator make_evaluator(const LanguageIndex& lang, const Potential& v) {
  return [&lang, v](const Configuration& x) {
    if (x.in_subshift()) return 0.0;
    Configuration y = certify(lang, x);
    if (y.head().size() < v.order()) y = y.with_head_length(v.order());
    return eval_potential(lang, v, y);
  };
}

}  // namespace kbonacci
