#include <gtest/gtest.h>

#include "kbonacci/word.hpp"
#include "kbonacci/errors.hpp"

namespace kbonacci {

namespace {

Word w(const char* digits, std::size_t k = 3) { return parse_word(digits, k); }

}  // namespace

TEST(Occurrences, CountsLetters) {
  EXPECT_EQ(occurrences(w("0102010"), 0), 4u);
  EXPECT_EQ(occurrences(w("0102010"), 2), 1u);
  EXPECT_EQ(occurrences(Word{}, 0), 0u);
}

TEST(IsFactor, ContiguousOccurrence) {
  EXPECT_TRUE(is_factor(w("01"), w("0102")));
  EXPECT_FALSE(is_factor(w("21"), w("0102010")));
  EXPECT_TRUE(is_factor(Word{}, w("0102")));
  EXPECT_TRUE(is_factor(Word{}, Word{}));
  EXPECT_FALSE(is_factor(w("0102"), w("01")));
}

TEST(PrefixSuffix, Basics) {
  EXPECT_TRUE(is_prefix(w("01"), w("0102")));
  EXPECT_FALSE(is_prefix(w("02"), w("0102")));
  EXPECT_TRUE(is_suffix(w("02"), w("0102")));
  EXPECT_EQ(concat(w("01"), w("2")), w("012"));
}

TEST(ParseWord, RejectsBadLetters) {
  EXPECT_THROW(parse_word("013", 3), precondition_error);
  EXPECT_THROW(parse_word("0a", 3), precondition_error);
  EXPECT_EQ(to_string(parse_word("0120", 3)), "0120");
  EXPECT_TRUE(parse_word("", 3).empty());
}

TEST(WordCode, RoundTrip) {
  for (std::uint64_t c = 0; c < 81; ++c) EXPECT_EQ(word_code(word_from_code(c, 4, 3), 3), c);
  EXPECT_EQ(word_code(w("012"), 3), 5u);
  EXPECT_EQ(word_from_code(5, 3, 3), w("012"));
}

}  // namespace kbonacci
