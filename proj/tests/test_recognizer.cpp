#include <gtest/gtest.h>

#include <random>

#include "subdyn/error.hpp"
#include "subdyn/recognizer.hpp"
#include "support.hpp"

using namespace subdyn;
using namespace subdyn::testing;

namespace {

// Admissible word of the given length starting at a random offset of the fixed point.
Word random_factor(const LanguagePtr& lang, std::mt19937& rng, std::size_t n) {
  const Word x = lang->prefix(1 << 14);
  std::uniform_int_distribution<std::size_t> pos(0, x.size() - n);
  return x.sub(pos(rng), n);
}

}  // namespace

TEST(Recognizer, CutsOfThueMorseAreEvenPositions) {
  const CutData d = cut_data(*thue_morse(), 64);
  ASSERT_EQ(d.prefix.size(), 64u);
  for (std::size_t i = 0; i < d.cuts.size(); ++i) EXPECT_EQ(d.cuts[i], 2 * i);
}

TEST(Recognizer, ThueMorseNeedsRadiusTwo) {
  const Recognizer r = build_recognizer(thue_morse());
  EXPECT_EQ(r.radius(), 2u);
  // Radius one is genuinely ambiguous: 010 occurs with and without a cut in the middle.
  EXPECT_FALSE(cut_table(cut_data(*thue_morse(), 4096), 3, 1).has_value());
}

TEST(Recognizer, WindowsCoverTheLanguage) {
  for (const LanguagePtr& lang : {thue_morse(), fibonacci(), tribonacci(), unbalanced()}) {
    const Recognizer r = build_recognizer(lang);
    EXPECT_EQ(r.table().size(), lang->words(r.window_length()).size());
  }
}

TEST(Recognizer, DecodeInvertsSubstitution) {
  std::mt19937 rng(1);
  for (const LanguagePtr& lang : {thue_morse(), fibonacci(), tribonacci()}) {
    const Recognizer r = build_recognizer(lang);
    for (int trial = 0; trial < 50; ++trial) {
      const Word u = random_factor(lang, rng, 64);
      const Word image = lang->substitution().apply(u);
      const Word decoded = decode(r, image);
      // Boundary letters whose images touch the edge cannot be read back; what remains
      // must be a contiguous factor of u.
      ASSERT_FALSE(decoded.empty());
      EXPECT_GE(decoded.size() + 2 * r.radius() + 2, u.size());
      bool found = false;
      for (std::size_t i = 0; i + decoded.size() <= u.size() && !found; ++i) found = u.sub(i, decoded.size()) == decoded;
      EXPECT_TRUE(found);
    }
  }
}

TEST(Recognizer, UnseenWindowIsCoverageError) {
  const Recognizer r = build_recognizer(thue_morse());
  const Word bad = w(thue_morse(), "00000");
  try {
    r.lookup(bad.view());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::coverage);
  }
}

TEST(Recognizer, PeriodicSubstitutionRefused) {
  const LanguagePtr periodic = make_language(subst("a -> ab\nb -> ab\n"));
  EXPECT_THROW(build_recognizer(periodic), Error);
}
