#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include "kbonacci/kbonacci.hpp"
#include "oracles.hpp"

namespace kbonacci {

namespace {

Word random_word(std::mt19937_64& rng, std::size_t k, std::size_t max_len) {
  Word w(rng() % (max_len + 1));
  for (Letter& a : w) a = static_cast<Letter>(rng() % k);
  return w;
}

}  // namespace

TEST(Properties, MorphismLaw) {
  std::mt19937_64 rng(1);
  for (std::size_t k = 2; k <= 5; ++k) {
    const Substitution s = kbonacci(k);
    for (int i = 0; i < 200; ++i) {
      const Word u = random_word(rng, k, 12), v = random_word(rng, k, 12);
      EXPECT_EQ(s.apply(concat(u, v)), concat(s.apply(u), s.apply(v)));
      std::size_t len = 0;
      for (std::size_t a = 0; a < k; ++a) len += s.image(static_cast<Letter>(a)).size() * occurrences(u, static_cast<Letter>(a));
      EXPECT_EQ(s.apply(u).size(), len);
      EXPECT_EQ(s.power_apply(3, u), s.apply(s.apply(s.apply(u))));
    }
  }
}

TEST(Properties, LengthsFollowIncidencePowers) {
  for (std::size_t k = 2; k <= 5; ++k) {
    const Substitution s = kbonacci(k);
    const IncidenceMatrix m = s.incidence();
    for (unsigned n = 0; n <= 20; ++n) {
      const auto sums = m.power(n).column_sums();
      for (std::size_t a = 0; a < k; ++a) EXPECT_EQ(s.power_image(n, static_cast<Letter>(a)).size(), sums[a]);
    }
  }
}

TEST(Properties, RecurrenceForSeveralAlphabets) {
  for (std::size_t k = 2; k <= 5; ++k)
    for (unsigned n = 0; n <= 12; ++n) EXPECT_TRUE(check_recurrence(kbonacci(k), n)) << k << " " << n;
}

TEST(Properties, FixedPointCoherence) {
  for (std::size_t k = 2; k <= 5; ++k) {
    const Substitution s = kbonacci(k);
    const FixedPointStream omega(s);
    const auto prefix = omega.prefix(3000);
    const Word pre(prefix.begin(), prefix.end());
    for (unsigned n = 0; n <= 16; ++n) {
      const Word& img = s.power_image(n, 0);
      const std::size_t m = std::min(img.size(), pre.size());
      EXPECT_TRUE(std::equal(img.begin(), img.begin() + static_cast<std::ptrdiff_t>(m), pre.begin()));
    }
  }
}

TEST(Properties, ClosedFormsAgainstLanguageScan) {
  for (std::size_t k = 2; k <= 4; ++k) {
    const Substitution s = kbonacci(k);
    const LanguageIndex small(s, 64);
    const auto xs = sample_configurations(small, 20, 100 + k);
    std::size_t depth = 64;
    for (const Configuration& x : xs) depth = std::max<std::size_t>(depth, delta_after_power(small, x, 8) + 2);
    const LanguageIndex lang(s, depth);
    for (const Configuration& x : xs) {
      for (unsigned n = 1; n <= 8; ++n) {
        const Configuration y = x.image(s, n);
        const Word pre = maximal_prefix_after_power(lang, x, n);
        const std::uint64_t d = delta_after_power(lang, x, n);
        ASSERT_EQ(pre.size(), d);
        // the prefix is in the language and one more letter of s^n(x) leaves it
        const Word longer = y.prefix(pre.size() + 1);
        EXPECT_TRUE(is_prefix(pre, longer));
        EXPECT_TRUE(lang.contains(pre));
        EXPECT_FALSE(lang.contains(longer));
        if (n < k) continue;
        const std::uint64_t terms = s.image_length(n, x.at(0));
        const auto scan = delta_scan(lang, y, terms);
        for (std::uint64_t j = 0; j < terms; ++j) ASSERT_EQ(delta_shifted(lang, x, n, j), scan[j]) << x.to_text();
      }
    }
  }
}

TEST(Properties, UDependsOnFirstLetterAndCounts) {
  const LanguageIndex lang(kbonacci(3), 64);
  const SpectralData d = spectral_data(3);
  // 0102 and 0201 share the first letter and the letter counts, both lie in L
  const Configuration a = certify(lang, Configuration::constant(3, parse_word("01022", 3), 2));
  const Configuration b = certify(lang, Configuration::constant(3, parse_word("02011", 3), 1));
  ASSERT_EQ(delta(lang, a).value(), 4u);
  ASSERT_EQ(delta(lang, b).value(), 4u);
  EXPECT_DOUBLE_EQ(fixed_point_U(d, lang, a), fixed_point_U(d, lang, b));
  for (const Configuration& x : sample_configurations(lang, 100, 5)) EXPECT_GT(fixed_point_U(d, lang, x), 0.0);
  auto omega = std::make_shared<const FixedPointStream>(kbonacci(3));
  for (std::uint64_t off : {0, 1, 100, 12345}) EXPECT_EQ(fixed_point_U(d, lang, Configuration::orbit(omega, off)), 0.0);
}

TEST(Properties, CompensatedSumIsOrderInsensitive) {
  std::mt19937_64 rng(9);
  std::vector<double> xs;
  for (int i = 0; i < 100000; ++i) xs.push_back(1.0 / static_cast<double>(1 + rng() % 1000000));
  CompensatedSum a;
  for (double x : xs) a.add(x);
  std::shuffle(xs.begin(), xs.end(), rng);
  CompensatedSum b;
  for (double x : xs) b.add(x);
  EXPECT_NEAR(a.value(), b.value(), 1e-12 * a.value());
}

TEST(Properties, CertifiedConfigurationsRoundTripThroughText) {
  const LanguageIndex lang(kbonacci(4), 64);
  for (const Configuration& x : sample_configurations(lang, 30, 21)) {
    const Configuration y = parse_configuration(x.to_text(), 4);
    EXPECT_EQ(y.prefix(50), x.prefix(50));
    EXPECT_EQ(delta(lang, y).value(), delta(lang, x).value());
  }
}

TEST(Properties, NaiveOracleAgreesOnDelta) {
  const oracle::NaiveLanguage naive(3, 300000);
  const LanguageIndex lang(kbonacci(3), 200);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    Word head = random_word(rng, 3, 10);
    const std::size_t off = rng() % 5000;
    const auto piece = FixedPointStream(kbonacci(3)).prefix(off + 40).subspan(off);
    Word x(piece.begin(), piece.end());
    x.insert(x.end(), head.begin(), head.end());
    const Configuration c = certify(lang, Configuration::constant(3, x, static_cast<Letter>(rng() % 3)));
    EXPECT_EQ(delta(lang, c).value(), naive.delta(to_string(c.head())));
  }
}

}  // namespace kbonacci
