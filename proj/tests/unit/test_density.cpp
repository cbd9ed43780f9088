#include <gtest/gtest.h>

#include <cmath>

#include "hdual/density.hpp"
#include "hdual/errors.hpp"

using namespace hdual;

namespace {

const RMatrix kFour = RMatrix::scalar(1, 4);

Rational window(int n, long q = 1) { return geometric_windows(4, q, n).back(); }

}  // namespace

TEST(Window, PowersOfTwo) {
  const GammaLevel g = gamma_level(digits_1d({0, 1}), kFour, 11);
  for (int n = 1; n <= 12; ++n) EXPECT_EQ(count_in_window(g, RVector{0}, window(n)), std::size_t{1} << n) << n;
  EXPECT_EQ(window(3), Rational(21));
  EXPECT_EQ(count_in_window(g, RVector{0}, Rational(21)), 8U);
  EXPECT_EQ(count_in_window(g, RVector{0}, Rational(341)), 32U);
}

TEST(Window, Errors) {
  const GammaLevel g = gamma_level(digits_1d({0, 1}), kFour, 3);
  EXPECT_THROW(count_in_window(g, RVector{0}, Rational(-1)), std::invalid_argument);
  try {
    (void)count_in_window(g, RVector{0}, window(7));
    FAIL() << "expected LevelInsufficient";
  } catch (const LevelInsufficient& e) {
    EXPECT_EQ(e.required_level, 6);
  }
  EXPECT_THROW(count_in_window(gamma_level(digits_1d({0, -1}), kFour, 2), RVector{0}, Rational(1)),
               std::invalid_argument);
}

TEST(Window, MonotoneInH) {
  const GammaLevel g = gamma_level(digits_1d({0, 1}), kFour, 7);
  std::size_t prev = 0;
  for (long h = 0; h <= 5000; h += 7) {
    const std::size_t c = count_in_window(g, RVector{0}, Rational(h));
    EXPECT_GE(c, prev);
    prev = c;
  }
}

TEST(Window, OffCenter) {
  const GammaLevel g = gamma_level(digits_1d({0, 1}), kFour, 3);
  // {0,1,4,5,16,17,20,21} intersect [3, 7]
  EXPECT_EQ(count_in_window(g, RVector{5}, Rational(2)), 2U);
}

TEST(Beurling, HalfDimensionTendsToSqrtThree) {
  const auto est = beurling_lower_estimate(digits_1d({0, 1}), kFour, 0.5, geometric_windows(4, 1, 12));
  ASSERT_EQ(est.samples.size(), 12U);
  EXPECT_EQ(est.samples[0].ratio, 2.0);
  for (std::size_t i = 1; i < est.samples.size(); ++i) {
    EXPECT_LT(est.samples[i].ratio, est.samples[i - 1].ratio);
    EXPECT_GT(est.samples[i].ratio, std::sqrt(3.0));
  }
  EXPECT_NEAR(est.samples[9].ratio, std::sqrt(3.0), 1e-4);
  for (const auto& s : est.samples) EXPECT_LE(s.ratio, 2.0);
  EXPECT_EQ(est.lower_bound, 2.0);
}

TEST(Beurling, FullDimensionTendsToZero) {
  const auto est = beurling_lower_estimate(digits_1d({0, 1}), kFour, 1.0, geometric_windows(4, 1, 12));
  for (std::size_t i = 1; i < est.samples.size(); ++i) EXPECT_LT(est.samples[i].ratio, est.samples[i - 1].ratio);
  EXPECT_LT(est.samples.back().ratio, 1e-3);
}

TEST(Beurling, ScalingLaw) {
  const auto base = beurling_lower_estimate(digits_1d({0, 1}), kFour, 0.5, geometric_windows(4, 1, 10));
  for (long q : {5L, 25L}) {
    const auto scaled = beurling_lower_estimate(digits_1d({0, q}), kFour, 0.5, geometric_windows(4, q, 10));
    for (std::size_t i = 0; i < base.samples.size(); ++i) {
      EXPECT_EQ(scaled.samples[i].h, Rational(q) * base.samples[i].h);
      EXPECT_EQ(scaled.samples[i].count, base.samples[i].count);
      EXPECT_NEAR(scaled.samples[i].ratio, base.samples[i].ratio / std::sqrt(static_cast<double>(q)), 1e-12);
    }
  }
}

TEST(Beurling, Preconditions) {
  EXPECT_THROW(beurling_lower_estimate(digits_1d({0, 1}), kFour, 0.0, {Rational(1)}), std::invalid_argument);
  EXPECT_THROW(beurling_lower_estimate(digits_1d({0, 1}), kFour, 1.5, {Rational(1)}), std::invalid_argument);
  EXPECT_THROW(beurling_lower_estimate(digits_1d({0, 1}), kFour, 0.5, {Rational(0)}), std::invalid_argument);
  EXPECT_TRUE(beurling_lower_estimate(digits_1d({0, 1}), kFour, 0.5, {}).samples.empty());
}
