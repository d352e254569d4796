#include <gtest/gtest.h>

#include <set>
#include <string>

#include "subdyn/error.hpp"
#include "support.hpp"

using namespace subdyn;
using namespace subdyn::testing;

namespace {

std::set<std::string> naive_factors(const std::string& x, std::size_t n) {
  std::set<std::string> out;
  for (std::size_t i = 0; i + n <= x.size(); ++i) out.insert(x.substr(i, n));
  return out;
}

std::set<std::string> as_strings(const LanguagePtr& lang, std::size_t n) {
  std::set<std::string> out;
  for (const Word& v : lang->words(n)) out.insert(format_word(v, lang->alphabet()));
  return out;
}

}  // namespace

TEST(Words, OccurrencesCountsOverlaps) {
  const LanguagePtr tm = thue_morse();
  EXPECT_EQ(occurrences(w(tm, "0000"), w(tm, "00")), 3u);
  EXPECT_EQ(occurrences(w(tm, "0101"), w(tm, "11")), 0u);
  EXPECT_EQ(occurrences(w(tm, "01"), w(tm, "0101")), 0u);
}

TEST(Words, FormatAndParseRoundTrip) {
  const Alphabet wide({"a0", "a1", "b0"});
  EXPECT_FALSE(wide.compact());
  const Word v{0, 2, 1};
  EXPECT_EQ(format_word(v, wide), "a0 b0 a1");
  EXPECT_EQ(parse_word("a0 b0 a1", wide), v);
  EXPECT_EQ(format_word(Word{}, wide), "-");
  EXPECT_THROW(parse_word("a0 zz", wide), Error);
}

TEST(Substitution, ApplyComposeAndPower) {
  const Substitution s = subst("a -> ab\nb -> a\n");
  const Substitution s3 = s.power(3);
  EXPECT_EQ(format_word(s3.image(0), s.alphabet()), "abaab");
  EXPECT_EQ(compose(s, s.power(2)), s3);
  EXPECT_THROW(s.power(0), Error);
}

TEST(Substitution, MatrixUsesRowPerLetterImage) {
  const CountMatrix m = associated_matrix(subst("0 -> 0001\n1 -> 110\n"));
  EXPECT_EQ(m(0, 0), 3);
  EXPECT_EQ(m(0, 1), 1);
  EXPECT_EQ(m(1, 0), 1);
  EXPECT_EQ(m(1, 1), 2);
}

TEST(Substitution, Predicates) {
  EXPECT_TRUE(is_primitive(subst("a -> ab\nb -> a\n")));
  EXPECT_FALSE(is_primitive(subst("0 -> 010\n1 -> 11\n")));
  EXPECT_TRUE(is_uniform(subst("0 -> 01\n1 -> 10\n")));
  EXPECT_FALSE(is_uniform(subst("a -> ab\nb -> a\n")));
  EXPECT_FALSE(is_injective(subst("a -> ab\nb -> ab\n")));
}

TEST(Substitution, NonPrimitiveLanguageRefused) {
  EXPECT_THROW(make_language(subst("0 -> 010\n1 -> 11\n")), Error);
}

TEST(Substitution, ProlongablePowerFindsSeed) {
  // b -> a, a -> ba: no letter starts its own image, but the square fixes b.
  const auto p = prolongable_power(subst("a -> ba\nb -> a\n"));
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->first, 2u);
}

TEST(Substitution, LanguageMatchesLongFixedPointFactors) {
  const std::string tm = naive_fixed_point({"01", "10"}, '0', 1 << 14);
  const std::string fib = naive_fixed_point({"01", "0"}, '0', 1 << 14);
  for (std::size_t n = 1; n <= 12; ++n) {
    EXPECT_EQ(as_strings(thue_morse(), n), naive_factors(tm, n)) << n;
    std::set<std::string> fib_lang;
    for (const std::string& v : as_strings(fibonacci(), n)) {
      std::string digits;
      for (char c : v) digits += c == 'a' ? '0' : '1';
      fib_lang.insert(digits);
    }
    EXPECT_EQ(fib_lang, naive_factors(fib, n)) << n;
  }
}

TEST(Substitution, FibonacciIsSturmian) {
  for (std::size_t n = 1; n <= 20; ++n) EXPECT_EQ(fibonacci()->words(n).size(), n + 1);
}

TEST(Substitution, RecurrenceGapMatchesNaiveScan) {
  const std::string tm = naive_fixed_point({"01", "10"}, '0', 1 << 15);
  for (std::size_t n = 1; n <= 6; ++n) {
    std::size_t gap = 0;
    std::map<std::string, std::size_t> last;
    for (std::size_t i = 0; i + n <= tm.size(); ++i) {
      const std::string f = tm.substr(i, n);
      auto it = last.find(f);
      gap = std::max(gap, it == last.end() ? i + 1 : i - it->second);
      last[f] = i;
    }
    EXPECT_EQ(thue_morse()->recurrence_gap(n), gap) << n;
  }
}

TEST(Substitution, AperiodicityHeuristic) {
  EXPECT_TRUE(is_aperiodic_heuristic(*thue_morse(), 1024));
  EXPECT_TRUE(is_aperiodic_heuristic(*fibonacci(), 1024));
  EXPECT_FALSE(is_aperiodic_heuristic(*make_language(subst("a -> ab\nb -> ab\n")), 1024));
}

TEST(Substitution, ThueMorseIsCubeFree) {
  const auto e = bounded_power_exponent(*thue_morse(), 6, 4);
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(*e, 3u);
}
