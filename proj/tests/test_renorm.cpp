#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <random>

#include "kbonacci/renorm.hpp"
#include "kbonacci/sampling.hpp"
#include "oracles.hpp"

namespace kbonacci {

namespace {

Word w(const char* digits, std::size_t k = 3) { return parse_word(digits, k); }

Configuration constant(std::size_t k, const char* head, Letter c) { return Configuration::constant(k, w(head, k), c); }

}  // namespace

TEST(Potential, Evaluation) {
  const LanguageIndex lang(kbonacci(3), 64);
  const Configuration x = constant(3, "000", 0);
  EXPECT_DOUBLE_EQ(eval_potential(lang, Potential::standard(3, 1.0), x), 0.5);
  EXPECT_DOUBLE_EQ(eval_potential(lang, Potential::standard(3, 2.0), x), 0.25);
  auto omega = std::make_shared<const FixedPointStream>(kbonacci(3));
  EXPECT_EQ(eval_potential(lang, Potential::standard(3, 1.0), Configuration::orbit(omega, 5)), 0.0);
  const Potential order3(1.0, LocalTable::constant(3, 3, 1.0), LocalTable::constant(3, 3, 0.0));
  EXPECT_THROW(eval_potential(lang, order3, constant(3, "11", 1)), precondition_error);
}

TEST(Potential, Validation) {
  const LanguageIndex lang(kbonacci(3), 8);
  EXPECT_THROW(Potential(0.0, LocalTable::constant(3, 1, 1.0), LocalTable::constant(3, 1, 0.0)), precondition_error);
  EXPECT_THROW(Potential(1.0, LocalTable::constant(3, 1, 0.0), LocalTable::constant(3, 1, 0.0)), precondition_error);
  const Potential bad(1.0, LocalTable::constant(3, 2, 1.0), LocalTable::indicator(3, {0, 1}));
  EXPECT_THROW(bad.validate(lang), precondition_error);
  const Potential good(1.0, LocalTable::constant(3, 2, 1.0), LocalTable::indicator(3, {1, 1}));
  EXPECT_NO_THROW(good.validate(lang));
}

TEST(RenormOnce, Examples) {
  const LanguageIndex lang(kbonacci(3), 64);
  const Evaluator v0 = make_evaluator(lang, Potential::standard(3, 1.0));
  EXPECT_NEAR(renorm_once(lang, v0, constant(3, "000", 0)), 0.45, 1e-15);
  auto omega = std::make_shared<const FixedPointStream>(kbonacci(3));
  EXPECT_EQ(renorm_once(lang, v0, Configuration::orbit(omega, 3)), 0.0);
  // x_0 = k-1: one term, V(s(x)) = V(0 s(rest))
  const Configuration x = constant(3, "22", 2);
  EXPECT_NEAR(renorm_once(lang, v0, x), v0(x.image(kbonacci(3), 1)), 1e-15);
}

TEST(RenormPower, ClosedFormMatchesBruteForce) {
  for (std::size_t k = 2; k <= 3; ++k) {
    const LanguageIndex small(kbonacci(k), 64);
    const LanguageIndex lang(kbonacci(k), 4096);
    const Potential v0 = Potential::standard(k, 1.0);
    for (const Configuration& x : sample_configurations(small, 20, 7)) {
      for (unsigned n = static_cast<unsigned>(k); n <= 8; ++n) {
        const double c = renorm_power(lang, v0, x, n, RenormMode::closed_form);
        const double b = renorm_power(lang, v0, x, n, RenormMode::brute_force);
        EXPECT_NEAR(c, b, 1e-12) << x.to_text() << " n=" << n;
      }
    }
  }
}

TEST(RenormPower, WindowedPotentialMatchesBruteForce) {
  const LanguageIndex lang(kbonacci(3), 2048);
  const Potential v(1.0, LocalTable::constant(3, 2, 1.0) + LocalTable::indicator(3, {0}), LocalTable::indicator(3, {2, 2}));
  v.validate(lang);
  for (const char* head : {"000", "2201", "11"}) {
    const Configuration x = certify(lang, constant(3, head, 2));
    for (unsigned n = 3; n <= 7; ++n)
      EXPECT_NEAR(renorm_power(lang, v, x, n, RenormMode::closed_form), renorm_power(lang, v, x, n, RenormMode::brute_force), 1e-12);
  }
}

TEST(RenormPower, ZeroPowerAndPreconditions) {
  const LanguageIndex lang(kbonacci(3), 64);
  const Potential v0 = Potential::standard(3, 1.0);
  const Configuration x = constant(3, "000", 0);
  EXPECT_DOUBLE_EQ(renorm_power(lang, v0, x, 0, RenormMode::closed_form), 0.5);
  EXPECT_THROW(renorm_power(lang, v0, x, 2, RenormMode::closed_form), precondition_error);
}

TEST(RenormPower, IteratedOnceEqualsPower) {
  const LanguageIndex lang(kbonacci(3), 1024);
  const Evaluator v0 = make_evaluator(lang, Potential::standard(3, 1.0));
  std::vector<Evaluator> chain{v0};
  for (unsigned n = 1; n <= 6; ++n) {
    const Evaluator prev = chain.back();
    chain.push_back([&lang, prev](const Configuration& x) { return renorm_once(lang, prev, x); });
  }
  for (const char* head : {"000", "11", "0201"}) {
    const Configuration x = certify(lang, constant(3, head, 1));
    for (unsigned n = 0; n <= 6; ++n) EXPECT_NEAR(chain[n](x), renorm_power_brute(lang, v0, x, n), 1e-13) << head << n;
  }
}

TEST(FixedPointU, Values) {
  const LanguageIndex lang(kbonacci(3), 64);
  const SpectralData d = spectral_data(3);
  EXPECT_NEAR(fixed_point_U(d, lang, constant(3, "000", 0)), 0.3759065171513719, 1e-15);
  auto omega = std::make_shared<const FixedPointStream>(kbonacci(3));
  EXPECT_EQ(fixed_point_U(d, lang, Configuration::orbit(omega, 9)), 0.0);
  EXPECT_THROW(fixed_point_U(d, lang, constant(3, "0", 0)), uncertified_configuration);
}

TEST(FixedPointU, TribonacciThreeCaseForm) {
  const LanguageIndex lang(kbonacci(3), 64);
  const SpectralData d = spectral_data(3);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    Word head(1 + rng() % 8);
    for (Letter& a : head) a = static_cast<Letter>(rng() % 3);
    const Configuration x = certify(lang, Configuration::constant(3, head, static_cast<Letter>(rng() % 3)));
    const std::string pre = to_string(x.prefix(delta(lang, x).value()));
    EXPECT_NEAR(fixed_point_U(d, lang, x), oracle::tribonacci_U(pre), 1e-13) << x.to_text();
  }
}

TEST(FixedPointU, IsFixedByR) {
  for (std::size_t k = 2; k <= 4; ++k) {
    const LanguageIndex lang(kbonacci(k), 64);
    const SpectralData d = spectral_data(k);
    EXPECT_LT(verify_fixed_point(d, lang, sample_configurations(lang, 50, 3)), 1e-9) << k;
    auto omega = std::make_shared<const FixedPointStream>(kbonacci(k));
    EXPECT_EQ(verify_fixed_point(d, lang, {Configuration::orbit(omega, 0)}), 0.0);
  }
}

TEST(Convergence, StandardPotentialTendsToU) {
  const LanguageIndex lang(kbonacci(3), 64);
  const SpectralData d = spectral_data(3);
  const Configuration x = constant(3, "000", 0);
  EXPECT_NEAR(renorm_power(lang, Potential::standard(3, 1.0), x, 25, RenormMode::closed_form), fixed_point_U(d, lang, x), 1e-3);
}

TEST(Convergence, Trichotomy) {
  const LanguageIndex lang(kbonacci(3), 64);
  const SpectralData d = spectral_data(3);
  const FixedPointStream omega(kbonacci(3));
  const Configuration x = constant(3, "000", 0);

  const ConvergenceStudy decay = convergence_study(lang, d, omega, Potential::standard(3, 2.0), x, 25);
  EXPECT_EQ(decay.verdict, Verdict::decays_to_zero);
  EXPECT_LT(decay.series.value.back(), 1e-6);

  const ConvergenceStudy grow = convergence_study(lang, d, omega, Potential::standard(3, 0.5), x, 50);
  EXPECT_EQ(grow.verdict, Verdict::diverges);
  EXPECT_GT(grow.series.value.back(), 1e6);

  const Potential g(1.0, LocalTable::constant(3, 1, 1.0) + LocalTable::indicator(3, {0}), LocalTable::constant(3, 1, 0.0));
  const ConvergenceStudy conv = convergence_study(lang, d, omega, g, x, 25);
  EXPECT_EQ(conv.verdict, Verdict::converges);
  EXPECT_NEAR(conv.series.value.back(), (1 + letter_frequencies(3)[0]) * fixed_point_U(d, lang, x), 2e-3);
}

TEST(Convergence, SequenceIsCauchy) {
  const LanguageIndex lang(kbonacci(2), 64);
  const RenormResult r = renorm_series(lang, Potential::standard(2, 1.0), constant(2, "11", 1), 0, 30, RenormMode::closed_form);
  for (double v : r.value) EXPECT_LT(v, 2.0);
  for (std::size_t i = 20; i < r.value.size(); ++i) EXPECT_LT(std::fabs(r.value[i] - r.value[i - 1]), 1e-4);
}

TEST(QTerm, Decays) {
  const LanguageIndex lang(kbonacci(3), 64);
  const SpectralData d = spectral_data(3);
  const Configuration x = constant(3, "000", 0);
  // a bounded number of terms, each of size about lambda^{-n}
  const double lambda = static_cast<double>(d.lambda);
  for (unsigned n = 3; n <= 40; ++n) EXPECT_LE(q_term(lang, d, x, n), 4 * std::pow(lambda, -static_cast<double>(n))) << n;
}

TEST(PowerSum, MatchesDirectSummation) {
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (auto [a, b] : {std::pair<std::uint64_t, std::uint64_t>{1, 10}, {5, 20000}, {3000, 900000}}) {
      CompensatedSum direct;
      for (std::uint64_t i = a; i <= b; ++i) direct.add(std::pow(static_cast<double>(i), -alpha));
      EXPECT_NEAR(power_sum(a, b, alpha), direct.value(), 1e-12 * std::max(1.0, direct.value())) << alpha << " " << a << " " << b;
    }
  }
  EXPECT_EQ(power_sum(5, 4, 1.0), 0.0);
  EXPECT_THROW(power_sum(0, 4, 1.0), precondition_error);
}

}  // namespace kbonacci
