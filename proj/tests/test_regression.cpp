#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

using namespace cosmax;
using testutil::corr;
using testutil::idx;

TEST(RSquared, PitpropX7OnX6) {
  const auto r = testutil::load_correlation("pitprop.corr");
  EXPECT_NEAR(r_squared(r, 6, idx({5})), 0.659, 0.005);
}

TEST(RSquared, EmptyPredictorSetIsZero) {
  const auto r = testutil::load_correlation("pitprop.corr");
  EXPECT_DOUBLE_EQ(r_squared(r, 0, {}), 0.0);
}

TEST(RSquared, ExactCopyPredictsPerfectly) {
  const auto r = corr({{1.0, 1.0}, {1.0, 1.0}});
  EXPECT_NEAR(r_squared(r, 0, idx({1})), 1.0, 1e-12);
}

TEST(RSquared, SingularPredictorsThrow) {
  const auto r = corr({{1.0, 1.0, 0.2}, {1.0, 1.0, 0.2}, {0.2, 0.2, 1.0}});
  EXPECT_THROW(r_squared(r, 2, idx({0, 1})), SingularPredictorsError);
}

TEST(RSquared, RejectsDependentAmongPredictors) {
  const auto r = testutil::load_correlation("sales.corr");
  EXPECT_THROW(r_squared(r, 1, idx({1, 2})), ConfigError);
}

TEST(RSquared, MonotoneInPredictorSet) {
  const auto r = testutil::load_correlation("shopping.corr");
  SplitMix64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t dep = rng.next() % 10;
    std::vector<std::size_t> small, big;
    for (std::size_t j = 0; j < 10; ++j) {
      if (j == dep) continue;
      const auto draw = rng.next() % 3;
      if (draw == 0) small.push_back(j);
      if (draw <= 1) big.push_back(j);
    }
    for (std::size_t j : small)
      if (std::find(big.begin(), big.end(), j) == big.end()) big.push_back(j);
    EXPECT_LE(r_squared(r, dep, small), r_squared(r, dep, big) + 1e-12);
  }
}

TEST(Stepwise, PitpropX7Trace) {
  const auto r = testutil::load_correlation("pitprop.corr");
  const auto trace = stepwise_forward(r, 6, 0.0, 4);
  ASSERT_EQ(trace.steps.size(), 4u);
  const std::size_t order[] = {5, 9, 2, 8};
  const double rsq[] = {0.659, 0.885, 0.893, 0.9014};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(trace.steps[k].variable, order[k]) << "step " << k;
    EXPECT_NEAR(trace.steps[k].r_squared, rsq[k], 0.005) << "step " << k;
  }
}

TEST(Stepwise, ShoppingX9Trace) {
  const auto r = testutil::load_correlation("shopping.corr");
  const auto trace = stepwise_forward(r, 8, 0.0, 3);
  ASSERT_EQ(trace.steps.size(), 3u);
  const std::size_t order[] = {9, 4, 6};
  const double rsq[] = {0.7966, 0.8335, 0.8466};
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(trace.steps[k].variable, order[k]) << "step " << k;
    EXPECT_NEAR(trace.steps[k].r_squared, rsq[k], 0.005) << "step " << k;
  }
}

TEST(Stepwise, IdentityStopsImmediately) {
  std::vector<std::vector<double>> rows(4, std::vector<double>(4, 0.0));
  for (std::size_t i = 0; i < 4; ++i) rows[i][i] = 1.0;
  const auto trace = stepwise_forward(corr(rows), 2, 0.01, 3);
  EXPECT_TRUE(trace.steps.empty());
  EXPECT_EQ(trace.stopped_reason, StopReason::gain_below_min);
}

TEST(Stepwise, DefaultGainStopsAfterInformativeSteps) {
  const auto r = testutil::load_correlation("pitprop.corr");
  const auto trace = stepwise_forward(r, 6, 0.01, 12);
  // X6 and X10 add 0.66 and 0.22; the next candidates add under 0.01.
  ASSERT_EQ(trace.steps.size(), 2u);
  EXPECT_EQ(trace.steps[0].variable, 5u);
  EXPECT_EQ(trace.steps[1].variable, 9u);
  EXPECT_EQ(trace.stopped_reason, StopReason::gain_below_min);
}

TEST(Stepwise, FullTraceReachesVifImpliedRSquared) {
  for (const char* name : {"sales.corr", "pitprop.corr", "shopping.corr"}) {
    const auto r = testutil::load_correlation(name);
    const auto vifs = vif_from_inverse(r);
    for (std::size_t dep = 0; dep < r.dim(); ++dep) {
      const auto trace = stepwise_forward(r, dep, 0.0, r.dim() - 1);
      ASSERT_EQ(trace.steps.size(), r.dim() - 1);
      EXPECT_EQ(trace.stopped_reason, StopReason::all_entered);
      const double implied = 1.0 - 1.0 / vifs[dep];
      EXPECT_NEAR(trace.steps.back().r_squared, implied, 1e-8) << name << " " << dep;
      for (std::size_t k = 1; k < trace.steps.size(); ++k)
        EXPECT_GE(trace.steps[k].r_squared, trace.steps[k - 1].r_squared - 1e-12);
    }
  }
}

TEST(Stepwise, FStatisticsWhenNSupplied) {
  const auto r = testutil::load_correlation("pitprop.corr");
  const auto trace = stepwise_forward(r, 6, 0.0, 4, 180);
  ASSERT_EQ(trace.steps.size(), 4u);
  for (const auto& step : trace.steps) ASSERT_TRUE(step.f_stat.has_value());
  // The fourth entry is significant even at the 0.001 level.
  const double f = *trace.steps[3].f_stat;
  EXPECT_GT(f, 10.0);
  EXPECT_LT(detail::f_upper_tail(f, 1.0, 180.0 - 4.0 - 1.0), 0.001);
  // Without n there are no F statistics.
  const auto plain = stepwise_forward(r, 6, 0.0, 4);
  EXPECT_FALSE(plain.steps[0].f_stat.has_value());
}

TEST(Stepwise, AlphaEntryTestStops) {
  const auto r = testutil::load_correlation("pitprop.corr");
  // With a strict alpha the trace ends once the best candidate stops being
  // significant; the first two steps are overwhelmingly significant.
  const auto trace = stepwise_forward(r, 6, 0.0, 12, 180, 1e-6);
  EXPECT_GE(trace.steps.size(), 2u);
  EXPECT_LT(trace.steps.size(), 12u);
  EXPECT_EQ(trace.stopped_reason, StopReason::p_above_alpha);
}

TEST(FUpperTail, MatchesKnownValues) {
  // P(F(1, 175) > 3.895) is about 0.05 and P(F(1, 175) > 11.3) about 0.001.
  EXPECT_NEAR(detail::f_upper_tail(3.895, 1.0, 175.0), 0.05, 0.002);
  EXPECT_NEAR(detail::f_upper_tail(11.3, 1.0, 175.0), 0.001, 0.0002);
  EXPECT_DOUBLE_EQ(detail::f_upper_tail(0.0, 1.0, 175.0), 1.0);
}

TEST(PartialCorrelation, QuotedShoppingValues) {
  const auto r = testutil::load_correlation("shopping.corr");
  const struct {
    std::size_t i, j;
    std::vector<std::size_t> cond;
    double expected;
  } cases[] = {
      {1, 2, {3}, 0.073},  {5, 6, {4}, 0.153},  {4, 1, {3}, 0.337},
      {4, 2, {3}, 0.425},  {3, 5, {4}, 0.005},  {3, 6, {4}, -0.298},
  };
  for (const auto& c : cases) {
    const auto p = partial_correlation(r, c.i, c.j, c.cond);
    EXPECT_NEAR(p.value, c.expected, 0.02)
        << "partial(" << c.i << "," << c.j << ")";
    // Symmetric in the pair up to reordering noise in the submatrix solve.
    const auto q = partial_correlation(r, c.j, c.i, c.cond);
    EXPECT_NEAR(p.value, q.value, 1e-12);
    EXPECT_GE(p.value, -1.0);
    EXPECT_LE(p.value, 1.0);
  }
}

TEST(PartialCorrelation, EmptyConditioningIsRawCorrelation) {
  const auto r = testutil::load_correlation("shopping.corr");
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 5; ++j)
      EXPECT_NEAR(partial_correlation(r, i, j, {}).value, r.base(i, j), 1e-10);
}

TEST(PartialCorrelation, FullConditioningMatchesInverseMatrix) {
  for (const char* name : {"sales.corr", "pitprop.corr", "shopping.corr"}) {
    const auto r = testutil::load_correlation(name);
    const auto omega = inverse_psd(r.base);
    for (std::size_t i = 0; i < r.dim(); ++i)
      for (std::size_t j = i + 1; j < r.dim(); ++j) {
        std::vector<std::size_t> cond;
        for (std::size_t k = 0; k < r.dim(); ++k)
          if (k != i && k != j) cond.push_back(k);
        const double direct = -omega(i, j) / std::sqrt(omega(i, i) * omega(j, j));
        EXPECT_NEAR(partial_correlation(r, i, j, cond).value, direct, 1e-9)
            << name << " (" << i << "," << j << ")";
      }
  }
}

TEST(PartialCorrelation, ValidatesArguments) {
  const auto r = testutil::load_correlation("sales.corr");
  EXPECT_THROW(partial_correlation(r, 1, 1, {}), ConfigError);
  EXPECT_THROW(partial_correlation(r, 0, 1, idx({1})), ConfigError);
}
