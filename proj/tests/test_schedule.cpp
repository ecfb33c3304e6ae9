#include <gtest/gtest.h>

#include <cmath>

#include "growpop/error.hpp"
#include "growpop/schedule.hpp"

using namespace growpop;

TEST(Schedule, PowerExponentialInjectionTimes) {
  const auto half = GrowthSchedule::power_exponential(0.5, 1);
  EXPECT_NEAR(injection_time(half, 1), 0.480453, 1e-6);
  EXPECT_NEAR(injection_time(half, 1), std::pow(std::log(2.0), 2.0), 1e-14);
  const auto one = GrowthSchedule::power_exponential(1.0, 1);
  EXPECT_NEAR(injection_time(one, 1), 0.693147, 1e-6);
  EXPECT_EQ(injection_time(one, 0), 0.0);
}

TEST(Schedule, ExplicitLookup) {
  const auto s = GrowthSchedule::explicit_times(5, {0.1, 0.2, 0.4});
  EXPECT_EQ(injection_time(s, 2), 0.2);
  EXPECT_EQ(s.size(), 3);
  EXPECT_THROW(injection_time(s, 4), RangeError);
}

TEST(Schedule, PopulationAt) {
  const auto half = GrowthSchedule::power_exponential(0.5, 1);
  EXPECT_EQ(population_at(half, 0.0), 1);
  // t_1 ~ 0.4805 <= 0.5 < t_2 = (ln 3)^2 ~ 1.2069
  EXPECT_EQ(population_at(half, 0.5), 2);
  EXPECT_EQ(population_at(half, 1.2), 2);
  EXPECT_EQ(population_at(half, 1.21), 3);
  const auto s = GrowthSchedule::explicit_times(5, {0.1, 0.2, 0.4});
  EXPECT_EQ(population_at(s, 0.25), 7);
  EXPECT_EQ(population_at(s, 0.0), 5);
  EXPECT_EQ(population_at(s, 100.0), 8);
}

TEST(Schedule, RejectsInvalidInput) {
  EXPECT_THROW(GrowthSchedule::power_exponential(0.0, 1), DomainError);
  EXPECT_THROW(GrowthSchedule::power_exponential(-1.0, 1), DomainError);
  EXPECT_THROW(GrowthSchedule::power_exponential(0.5, 0), DomainError);
  EXPECT_THROW(GrowthSchedule::explicit_times(0, {1.0}), DomainError);
  EXPECT_THROW(GrowthSchedule::explicit_times(2, {0.2, 0.2}), DomainError);
  EXPECT_THROW(GrowthSchedule::explicit_times(2, {0.3, 0.2}), DomainError);
  EXPECT_THROW(GrowthSchedule::explicit_times(2, {0.0, 0.2}), DomainError);
  EXPECT_THROW(population_at(GrowthSchedule::power_exponential(0.5, 1), -1.0), RangeError);
}

TEST(ScheduleProperty, RightContinuityAtInjectionTimes) {
  for (double alpha : {0.3, 0.5, 1.0, 1.5, 3.0}) {
    for (std::int64_t n0 : {1, 2, 10}) {
      const auto s = GrowthSchedule::power_exponential(alpha, n0);
      for (std::int64_t j = 1; j <= 3000; j += (j < 100 ? 1 : 37)) {
        const double t = injection_time(s, j);
        ASSERT_EQ(population_at(s, t), n0 + j) << "alpha=" << alpha << " n0=" << n0 << " j=" << j;
        ASSERT_EQ(population_at(s, std::nextafter(t, 0.0)), n0 + j - 1);
      }
    }
  }
}

TEST(ScheduleProperty, FloorLawAndSandwich) {
  for (double alpha : {0.25, 0.5, 0.8, 1.0, 2.0}) {
    const std::int64_t n0 = 3;
    const auto s = GrowthSchedule::power_exponential(alpha, n0);
    double prev = 0.0;
    for (std::int64_t j = 1; j <= 100000; j = j < 50 ? j + 1 : j * 11 / 10) {
      const double t = injection_time(s, j);
      ASSERT_EQ(std::floor(std::exp(std::pow(t, alpha))), static_cast<double>(n0 + j));
      const double lo = std::pow(std::log(static_cast<double>(j + n0)), 1.0 / alpha);
      const double hi = std::pow(std::log(static_cast<double>(j + n0 + 1)), 1.0 / alpha);
      ASSERT_GE(t, lo);
      ASSERT_LE(t, hi);
      ASSERT_GT(t, prev);
      prev = t;
    }
  }
}

TEST(ScheduleProperty, PowerExponentialIsUnbounded) {
  const auto s = GrowthSchedule::power_exponential(2.0, 1);
  // (ln(1+j))^(1/2) exceeds M once j > exp(M^2).
  EXPECT_GT(injection_time(s, 100000000), 4.0);
  const auto fast = GrowthSchedule::power_exponential(0.5, 1);
  EXPECT_GT(injection_time(fast, 1000), 40.0);
}

TEST(ScheduleProperty, ExplicitConsistency) {
  const auto s = GrowthSchedule::explicit_times(4, {0.5, 0.7, 1.9, 2.0, 7.5});
  for (std::int64_t j = 1; j <= 5; ++j) EXPECT_EQ(population_at(s, injection_time(s, j)), 4 + j);
}
