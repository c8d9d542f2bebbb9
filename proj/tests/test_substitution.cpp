#include <gtest/gtest.h>

#include <sstream>

#include "kbonacci/substitution.hpp"
#include "oracles.hpp"

namespace kbonacci {

namespace {

Word w(const char* digits, std::size_t k = 3) { return parse_word(digits, k); }

}  // namespace

TEST(Kbonacci, Images) {
  const Substitution s3 = kbonacci(3);
  EXPECT_EQ(s3.image(0), w("01"));
  EXPECT_EQ(s3.image(1), w("02"));
  EXPECT_EQ(s3.image(2), w("0"));
  const Substitution s2 = kbonacci(2);
  EXPECT_EQ(s2.image(0), w("01", 2));
  EXPECT_EQ(s2.image(1), w("0", 2));
  const Substitution s5 = kbonacci(5);
  std::vector<std::size_t> lengths;
  for (Letter a = 0; a < 5; ++a) lengths.push_back(s5.image(a).size());
  EXPECT_EQ(lengths, (std::vector<std::size_t>{2, 2, 2, 2, 1}));
  EXPECT_THROW(kbonacci(1), precondition_error);
  EXPECT_TRUE(s5.is_kbonacci());
  EXPECT_FALSE(Substitution({w("01", 2), w("10", 2)}).is_kbonacci());
}

TEST(Apply, Morphism) {
  const Substitution s = kbonacci(3);
  EXPECT_EQ(s.apply(w("01")), w("0102"));
  EXPECT_TRUE(s.apply(Word{}).empty());
  EXPECT_EQ(s.apply(w("2")), w("0"));
}

TEST(PowerImage, KnownValues) {
  const Substitution s = kbonacci(3);
  EXPECT_EQ(s.power_image(3, 0), w("0102010"));
  EXPECT_EQ(s.power_image(3, 1), w("010201"));
  EXPECT_EQ(s.power_image(3, 2), w("0102"));
  EXPECT_EQ(s.power_image(0, 1), w("1"));
  for (unsigned n = 0; n <= 12; ++n)
    EXPECT_EQ(to_string(s.power_image(n, 0)), oracle::power(3, n, "0")) << n;
}

TEST(PowerImage, BudgetIsEnforced) {
  // the cache holds every intermediate image, 1783 letters up to s^10(0)
  const Substitution s = kbonacci(3, 3000);
  EXPECT_NO_THROW(s.power_image(10, 0));  // 504 letters
  EXPECT_THROW(s.power_image(13, 0), budget_error);  // 3136 letters
  EXPECT_THROW(kbonacci(3, 1000).power_image(10, 0), budget_error);
  EXPECT_EQ(s.image_length(40, 0), kbonacci(3).image_length(40, 0));  // lengths are not materialized
}

TEST(Incidence, Matrices) {
  const IncidenceMatrix m2 = kbonacci(2).incidence();
  EXPECT_EQ(m2(0, 0), 1u);
  EXPECT_EQ(m2(0, 1), 1u);
  EXPECT_EQ(m2(1, 0), 1u);
  EXPECT_EQ(m2(1, 1), 0u);
  const IncidenceMatrix m3 = kbonacci(3).incidence();
  const std::uint64_t expect[3][3] = {{1, 1, 1}, {1, 0, 0}, {0, 1, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(m3(i, j), expect[i][j]);
  EXPECT_EQ(m3.column_sums(), (std::vector<std::uint64_t>{2, 2, 1}));
}

TEST(Primitivity, Examples) {
  EXPECT_TRUE(is_primitive(kbonacci(3).incidence()));
  EXPECT_TRUE(kbonacci(12).is_primitive());
  EXPECT_FALSE(is_primitive(IncidenceMatrix::identity(2)));
  IncidenceMatrix swap(2);
  swap(0, 1) = swap(1, 0) = 1;
  EXPECT_FALSE(is_primitive(swap));
}

TEST(FixedPoint, Prefixes) {
  const FixedPointStream o3(kbonacci(3));
  EXPECT_EQ(to_string(o3.prefix(7)), "0102010");
  EXPECT_EQ(to_string(o3.prefix(13)), "0102010010201");
  const FixedPointStream o2(kbonacci(2));
  EXPECT_EQ(to_string(o2.prefix(5)), "01001");
  const Word first = Word(o3.prefix(100).begin(), o3.prefix(100).end());
  o3.prefix(5000);
  EXPECT_TRUE(is_prefix(first, o3.prefix(5000)));
  EXPECT_EQ(o3.at(3), 2);
}

TEST(Recurrence, HoldsExactly) {
  EXPECT_TRUE(check_recurrence(kbonacci(3), 0));
  EXPECT_TRUE(check_recurrence(kbonacci(2), 1));
  EXPECT_TRUE(check_recurrence(kbonacci(3), 5));
  EXPECT_THROW(check_recurrence(Substitution({w("01", 2), w("10", 2)}), 1), precondition_error);
}

TEST(TextFormat, RoundTrip) {
  std::istringstream in("3\n01\n02\n0\n");
  const Substitution s = parse_substitution(in);
  EXPECT_EQ(s, kbonacci(3));
  EXPECT_EQ(format_substitution(s), "3\n01\n02\n0\n");
  std::istringstream bad("2\n01\n\n");
  EXPECT_THROW(parse_substitution(bad), precondition_error);
}

}  // namespace kbonacci
