#include <gtest/gtest.h>

#include <set>
#include <string>

#include "kbonacci/language.hpp"
#include "oracles.hpp"

namespace kbonacci {

namespace {

Word w(const char* digits, std::size_t k = 3) { return parse_word(digits, k); }

std::set<std::string> as_strings(const std::vector<Word>& ws) {
  std::set<std::string> out;
  for (const Word& x : ws) out.insert(to_string(x));
  return out;
}

}  // namespace

TEST(BuildLanguage, TribonacciLengthThree) {
  const LanguageIndex lang = build_language(kbonacci(3), 3);
  const auto f3 = as_strings(lang.factors(3));
  // brute force over a long fixed-point prefix gives 7 words
  EXPECT_EQ(f3, (std::set<std::string>{"001", "010", "020", "100", "101", "102", "201"}));
  EXPECT_EQ(f3.size(), 7u);
  EXPECT_TRUE(f3.count("001"));
  EXPECT_FALSE(f3.count("000"));
  EXPECT_FALSE(f3.count("002"));
}

TEST(BuildLanguage, FibonacciLetters) {
  const LanguageIndex lang = build_language(kbonacci(2), 1);
  EXPECT_EQ(as_strings(lang.factors(1)), (std::set<std::string>{"0", "1"}));
}

TEST(BuildLanguage, RejectsNonPrimitive) {
  EXPECT_THROW(LanguageIndex(Substitution({w("0", 2), w("1", 2)}), 4), precondition_error);
  EXPECT_THROW(LanguageIndex(Substitution({w("1", 2), w("0", 2)}), 4), precondition_error);
}

TEST(BuildLanguage, MatchesNaiveFactorSets) {
  for (std::size_t k = 2; k <= 5; ++k) {
    const LanguageIndex lang(kbonacci(k), 16);
    const oracle::NaiveLanguage naive(k, 200000);
    for (std::size_t n = 1; n <= 15; ++n) EXPECT_EQ(as_strings(lang.factors(n)), naive.factors(n)) << "k=" << k << " n=" << n;
  }
}

TEST(Complexity, OracleCounts) {
  // counts from exhaustive enumeration: (k-1)n + 1
  const LanguageIndex l3(kbonacci(3), 8);
  EXPECT_EQ(l3.complexity(4), 9u);
  EXPECT_EQ(l3.complexity(5), 11u);
  EXPECT_EQ(l3.complexity(0), 1u);
  const LanguageIndex l2(kbonacci(2), 8);
  EXPECT_EQ(l2.complexity(7), 8u);
  EXPECT_THROW(l2.complexity(9), index_depth_error);
}

TEST(Complexity, LawForSeveralAlphabets) {
  for (std::size_t k = 2; k <= 5; ++k) {
    const LanguageIndex lang(kbonacci(k), 30);
    for (std::size_t n = 1; n <= 30; ++n) EXPECT_EQ(lang.complexity(n), (k - 1) * n + 1) << "k=" << k << " n=" << n;
  }
}

TEST(SpecialWords, TribonacciBispecials) {
  const LanguageIndex lang(kbonacci(3), 8);
  EXPECT_EQ(as_strings(lang.special_words(1).bispecial), (std::set<std::string>{"0"}));
  EXPECT_TRUE(lang.special_words(2).bispecial.empty());
  EXPECT_EQ(as_strings(lang.special_words(3).bispecial), (std::set<std::string>{"010"}));
  EXPECT_THROW(lang.special_words(8), index_depth_error);
}

TEST(SpecialWords, OneRightSpecialPerLength) {
  // k-bonacci is Arnoux-Rauzy: one left and one right special factor per length
  const LanguageIndex lang(kbonacci(4), 20);
  for (std::size_t n = 1; n < 20; ++n) {
    const SpecialWords sw = lang.special_words(n);
    EXPECT_EQ(sw.left.size(), 1u);
    EXPECT_EQ(sw.right.size(), 1u);
  }
}

TEST(Membership, DepthErrors) {
  const LanguageIndex lang(kbonacci(3), 5);
  EXPECT_TRUE(lang.contains(w("01020")));
  EXPECT_FALSE(lang.contains(w("000")));
  EXPECT_EQ(lang.longest_prefix(w("01011")), 4u);
  EXPECT_THROW(lang.longest_prefix(w("0102011")), index_depth_error);  // 010201 is in, 0102011 undecidable
  EXPECT_EQ(LanguageIndex(kbonacci(3), 7).longest_prefix(w("0102011")), 6u);
}

TEST(Membership, FactorialAndExtendable) {
  const LanguageIndex lang(kbonacci(3), 14);
  for (std::size_t n = 1; n <= 12; ++n) {
    for (const Word& x : lang.factors(n)) {
      const std::span<const Letter> xs(x);
      EXPECT_TRUE(lang.contains(xs.first(n - 1)));
      EXPECT_TRUE(lang.contains(xs.subspan(1)));
      int both = 0;
      for (Letter a = 0; a < 3; ++a)
        for (Letter b = 0; b < 3; ++b) {
          Word y{a};
          y.insert(y.end(), x.begin(), x.end());
          y.push_back(b);
          both += lang.contains(y);
        }
      EXPECT_GT(both, 0) << to_string(x);
    }
  }
}

}  // namespace kbonacci
