#include <gtest/gtest.h>

#include <random>
#include <set>

#include "subdyn/enumeration.hpp"
#include "subdyn/error.hpp"
#include "subdyn/recognizer.hpp"
#include "support.hpp"

using namespace subdyn;
using namespace subdyn::testing;

namespace {

// Every assignment of a target letter to every domain window, filtered by admissibility.
std::set<std::map<Word, Letter>> naive_block_maps(const LanguagePtr& tau, const LanguagePtr& rho, std::size_t r,
                                                  std::size_t verify_len) {
  const auto& windows = tau->words(r + 1);
  const std::size_t k = rho->alphabet().size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < windows.size(); ++i) total *= k;
  std::set<std::map<Word, Letter>> out;
  for (std::size_t code = 0; code < total; ++code) {
    std::map<Word, Letter> table;
    std::size_t c = code;
    for (const Word& v : windows) {
      table[v] = static_cast<Letter>(c % k);
      c /= k;
    }
    const BlockRule rule{tau, rho, r, table};
    if (!find_inadmissible_image(from_block_map(rule), verify_len)) out.insert(table);
  }
  return out;
}

}  // namespace

TEST(Enumeration, AutomatonAgreesWithLanguageMembership) {
  const LanguagePtr fib = fibonacci();
  const FactorAutomaton a(*fib, 12);
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int trial = 0; trial < 500; ++trial) {
    Word v;
    for (int i = 0; i < 16; ++i) v.push_back(static_cast<Letter>(bit(rng)));
    bool expected = true;
    for (std::size_t i = 0; i + 8 <= v.size(); ++i) expected = expected && fib->contains(v.sub(i, 8));
    EXPECT_EQ(a.all_factors_admissible(v.view(), 8), expected);
  }
}

TEST(Enumeration, CursorTracksLongestAdmissibleSuffix) {
  const LanguagePtr tm = thue_morse();
  const FactorAutomaton a(*tm, 10);
  FactorAutomaton::Cursor c;
  const Word x = tm->prefix(64);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_TRUE(a.extend(c, x[i], std::min<std::size_t>(10, i + 1)));
  FactorAutomaton::Cursor d;
  EXPECT_TRUE(a.extend(d, 0, 1));
  EXPECT_TRUE(a.extend(d, 0, 2));
  EXPECT_FALSE(a.extend(d, 0, 3));  // cubes never occur
}

TEST(Enumeration, MatchesNaiveSearchOnSmallRadii) {
  for (const LanguagePtr& lang : {thue_morse(), fibonacci()}) {
    for (std::size_t r = 0; r <= 1; ++r) {
      EnumerationOptions opts;
      opts.verify_len = default_verify_len(*lang, r);
      std::set<std::map<Word, Letter>> found;
      for (const BlockRule& b : search_block_maps(lang, lang, r, opts)) found.insert(b.table);
      EXPECT_EQ(found, naive_block_maps(lang, lang, r, opts.verify_len)) << r;
    }
  }
}

TEST(Enumeration, ThueMorseHasTwoClasses) {
  const MorphismClassSet s = enumerate_block_maps(thue_morse(), thue_morse(), 3);
  ASSERT_EQ(s.classes.size(), 2u);
  for (const auto& c : s.classes) EXPECT_EQ(c.representative.radius, 0u);
}

TEST(Enumeration, FibonacciHasOneClass) {
  const MorphismClassSet s = enumerate_block_maps(fibonacci(), fibonacci(), 3);
  ASSERT_EQ(s.classes.size(), 1u);
  EXPECT_EQ(s.classes[0].shifts.size(), 4u);
}

TEST(Enumeration, ThreadCountDoesNotChangeResult) {
  EnumerationOptions one;
  EnumerationOptions four;
  four.threads = 4;
  const auto a = search_block_maps(tribonacci(), tribonacci(), 2, one);
  const auto b = search_block_maps(tribonacci(), tribonacci(), 2, four);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].table, b[i].table);
}

TEST(Enumeration, NodeBudgetIsEnforced) {
  EnumerationOptions opts;
  opts.node_budget = 10;
  try {
    search_block_maps(thue_morse(), thue_morse(), 3, opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::budget);
  }
}

TEST(Enumeration, PeriodClassOfShifts) {
  const LanguagePtr tm = thue_morse();
  const Recognizer r = build_recognizer(tm);
  EXPECT_EQ(period_class(identity_map(tm), r), 0u);
  EXPECT_NE(period_class(shift_map(tm, 1), r), period_class(shift_map(tm, 2), r));
}

TEST(Enumeration, ExampleFamilyShapes) {
  const Substitution u = build_example_family(3, 4, FamilyVariant::uniform);
  EXPECT_EQ(u.size(), 7u);
  EXPECT_TRUE(is_primitive(u));
  const Substitution n = build_example_family(2, 4, FamilyVariant::nonuniform);
  EXPECT_EQ(n.size(), 4u);
  EXPECT_THROW(build_example_family(1, 3, FamilyVariant::uniform), Error);
}
