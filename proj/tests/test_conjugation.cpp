#include <gtest/gtest.h>

#include "subdyn/conjugation.hpp"
#include "subdyn/error.hpp"
#include "subdyn/recognizer.hpp"
#include "support.hpp"

using namespace subdyn;
using namespace subdyn::testing;

namespace {

struct Fixture {
  LanguagePtr lang;
  DillTable tau;
  DillTable inv;
};

Fixture make(const LanguagePtr& lang) {
  return {lang, from_substitution(lang), almost_inverse(build_recognizer(lang))};
}

}  // namespace

TEST(Conjugation, ShiftPowersHalve) {
  const Fixture f = make(thue_morse());
  for (std::size_t n = 1; n <= 8; ++n) {
    const DillTable next = conjugate_step(f.inv, shift_map(f.lang, n), f.tau);
    EXPECT_EQ(canonicalize(next), canonicalize(shift_map(f.lang, (n + 1) / 2))) << n;
  }
}

TEST(Conjugation, FlipCommutesWithThueMorse) {
  const Fixture f = make(thue_morse());
  EXPECT_EQ(canonicalize(conjugate_step(f.inv, flip(f.lang), f.tau)), canonicalize(flip(f.lang)));
}

TEST(Conjugation, HashDependsOnTableOnly) {
  const LanguagePtr tm = thue_morse();
  EXPECT_EQ(table_hash(shift_map(tm, 2)), table_hash(shift_map(tm, 2)));
  EXPECT_NE(table_hash(shift_map(tm, 2)), table_hash(shift_map(tm, 3)));
}

TEST(Conjugation, TrajectoryReachesCycleUnderCeiling) {
  for (const LanguagePtr& lang : {thue_morse(), fibonacci()}) {
    const Trajectory t = trajectory(shift_map(lang, 12), lang, lang);
    ASSERT_TRUE(t.cycle.has_value());
    const TrajectoryStep& last = t.steps.back();
    EXPECT_LE(static_cast<double>(last.table.in_radius()), t.in_radius_ceiling);
    for (const auto& s : t.steps) EXPECT_NEAR(s.report.z, 1.0, 1e-2);
  }
}

TEST(Conjugation, ZeroStepsEchoesInput) {
  const LanguagePtr tm = thue_morse();
  TrajectoryOptions opts;
  opts.max_steps = 0;
  const Trajectory t = trajectory(shift_map(tm, 4), tm, tm, opts);
  ASSERT_EQ(t.steps.size(), 1u);
  EXPECT_EQ(t.steps[0].table, shift_map(tm, 4));
  EXPECT_FALSE(t.cycle.has_value());
}

TEST(Conjugation, EigenvalueMismatchRefused) {
  const LanguagePtr tm = thue_morse();
  const LanguagePtr fib = fibonacci();
  const DillTable f = letter_map(tm, fib, {0, 1});
  try {
    trajectory(f, tm, fib);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::precondition);
  }
}

TEST(Conjugation, RepresentativeRelatesToInputByShift) {
  const LanguagePtr tm = thue_morse();
  const DillTable f = compose(flip(tm), shift_map(tm, 6));
  const Trajectory t = trajectory(f, tm, tm);
  const Representative rep = reduce_to_representative(t);
  const DillTable lhs = rep.side == ShiftSide::left ? f : rep.g;
  const DillTable rhs = rep.side == ShiftSide::left ? rep.g : f;
  EXPECT_EQ(canonicalize(lhs), canonicalize(shift_after(rhs, rep.k)));
}

TEST(Conjugation, AlphaBoundIsFixedPointOfContraction) {
  EXPECT_DOUBLE_EQ(alpha_bound(0.5, 4), 8.0);
  EXPECT_THROW(alpha_bound(1.0, 1), Error);
}
