#include <gtest/gtest.h>

#include <random>

#include "subdyn/dill.hpp"
#include "subdyn/error.hpp"
#include "subdyn/recognizer.hpp"
#include "subdyn/spectra.hpp"
#include "support.hpp"

using namespace subdyn;
using namespace subdyn::testing;

namespace {

bool is_prefix(const Word& a, const Word& b) { return a.size() <= b.size() && b.prefix(a.size()) == a; }

// Windows read forward: output i is φ(w[i .. i+I]).
Word naive_apply(const DillTable& d, const Word& w) {
  Word out;
  for (std::size_t i = 0; i + d.window_length() <= w.size(); ++i) out += d.output(w.view().subspan(i, d.window_length()));
  return out;
}

}  // namespace

TEST(Dill, ApplyPrefixMatchesWindowwiseDefinition) {
  const LanguagePtr fib = fibonacci();
  const Word x = fib->prefix(200);
  for (const DillTable& d : {from_substitution(fib), shift_map(fib, 3), identity_map(fib)}) {
    EXPECT_EQ(apply_prefix(d, x), naive_apply(d, x));
  }
}

TEST(Dill, SubstitutionTableReproducesImage) {
  const LanguagePtr tm = thue_morse();
  const Word x = tm->prefix(128);
  const Word image = apply_prefix(from_substitution(tm), x);
  EXPECT_TRUE(is_prefix(image, tm->substitution().apply(x)));
  EXPECT_EQ(image.size(), 256u);
}

TEST(Dill, ShiftDropsLetters) {
  const LanguagePtr tm = thue_morse();
  const Word x = tm->prefix(100);
  EXPECT_EQ(apply_prefix(shift_map(tm, 5), x), x.sub(5, 95));
}

TEST(Dill, TableValidation) {
  const LanguagePtr tm = thue_morse();
  std::map<Word, Word> partial{{w(tm, "00"), w(tm, "0")}};
  EXPECT_THROW(DillTable(tm, tm, 1, partial), Error);
}

TEST(Dill, ComposeAgreesWithSequentialApplication) {
  const LanguagePtr fib = fibonacci();
  const DillTable tau = from_substitution(fib);
  const Recognizer r = build_recognizer(fib);
  const DillTable inv = almost_inverse(r);
  const std::vector<DillTable> maps{tau, inv, shift_map(fib, 2), identity_map(fib), flip(thue_morse())};
  const Word x = fib->prefix(300);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const DillTable c = compose(maps[i], maps[j]);
      const Word direct = apply_prefix(c, x);
      const Word sequential = apply_prefix(maps[i], apply_prefix(maps[j], x));
      EXPECT_TRUE(is_prefix(direct, sequential) || is_prefix(sequential, direct)) << i << "," << j;
      EXPECT_GT(std::min(direct.size(), sequential.size()), 64u);
    }
  }
}

TEST(Dill, CanonicalizeIsIdempotentAndPreservesAction) {
  const LanguagePtr tm = thue_morse();
  const DillTable padded = compose(identity_map(tm), shift_map(tm, 0), 64);
  const DillTable wide = DillTable(tm, tm, 3, [&] {
    std::map<Word, Word> t;
    for (const Word& v : tm->words(4)) t[v] = Word{v[0]};
    return t;
  }());
  const DillTable c = canonicalize(wide);
  EXPECT_EQ(c.in_radius(), 0u);
  EXPECT_EQ(canonicalize(c), c);
  EXPECT_EQ(canonicalize(padded), canonicalize(identity_map(tm)));
  const Word x = tm->prefix(64);
  EXPECT_TRUE(is_prefix(apply_prefix(wide, x), apply_prefix(c, x)));
}

TEST(Dill, InadmissibleImagesDetected) {
  const LanguagePtr tm = thue_morse();
  // Constant map sends everything to 000... which is not in the language.
  const DillTable constant = letter_map(tm, tm, {0, 0});
  EXPECT_TRUE(find_inadmissible_image(constant, 32).has_value());
  EXPECT_FALSE(find_inadmissible_image(flip(tm), 32).has_value());
}

TEST(Dill, NontrivialityOfCocycle) {
  const LanguagePtr tm = thue_morse();
  EXPECT_TRUE(is_nontrivial(from_substitution(tm)));
  EXPECT_TRUE(is_nontrivial(almost_inverse(build_recognizer(tm))));
}

TEST(Dill, InvariantsOfSubstitutionsMatchEigenvalue) {
  for (const LanguagePtr& lang : {fibonacci(), tribonacci(), thue_morse()}) {
    const InvariantReport rep = invariants(from_substitution(lang), 4000);
    const EigenvalueEstimate lambda = dominant_eigenvalue(associated_matrix(lang->substitution()));
    EXPECT_NEAR(rep.z, lambda.midpoint(), 1e-3);
    EXPECT_EQ(rep.d_bounded, Tristate::yes);
  }
}

TEST(Dill, InvariantsOfBlockMapsAreUnitSlope) {
  const InvariantReport rep = invariants(shift_map(fibonacci(), 3), 1000);
  EXPECT_DOUBLE_EQ(rep.z, 1.0);
  EXPECT_DOUBLE_EQ(rep.d_observed, 0.0);
}

TEST(Dill, AlmostEquivalenceFindsShifts) {
  const LanguagePtr fib = fibonacci();
  const auto e = almost_equivalent(shift_map(fib, 3), identity_map(fib));
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(static_cast<long>(e->first) - static_cast<long>(e->second), -3);
  EXPECT_FALSE(almost_equivalent(identity_map(thue_morse()), flip(thue_morse())).has_value());
}

TEST(Dill, AlmostInverseComposesToShift) {
  for (const LanguagePtr& lang : {thue_morse(), fibonacci(), tribonacci()}) {
    const DillTable inv = almost_inverse(build_recognizer(lang));
    const DillTable round = compose(inv, from_substitution(lang));
    EXPECT_TRUE(almost_equivalent(round, identity_map(lang)).has_value());
  }
}
