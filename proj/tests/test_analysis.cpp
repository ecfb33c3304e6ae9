#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "growpop/analysis.hpp"
#include "growpop/error.hpp"

using namespace growpop;

namespace {

std::vector<double> log_times(std::int64_t n) {
  std::vector<double> t(n);
  for (std::int64_t k = 1; k <= n; ++k) t[k - 1] = std::log(static_cast<double>(k));
  return t;
}

// Composite Simpson on the shifted integrand, independent of the library quadrature.
double simpson_dawson(double p, double lambda, double x, int panels) {
  const double h = x / panels, xp = std::pow(x, p);
  auto f = [&](double t) { return std::exp(lambda * (std::pow(t, p) - xp)); };
  double s = f(0.0) + f(x);
  for (int i = 1; i < panels; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

TEST(ConditionSum, LambdaOneExponentialGrowthIsOne) {
  const auto t = log_times(1000);
  for (std::int64_t n : {1, 2, 10, 999, 1000}) EXPECT_NEAR(condition_sum(1.0, t, n), 1.0, 1e-12);
}

TEST(ConditionSum, LambdaTwoClosedForm) {
  const auto t = log_times(10);
  EXPECT_NEAR(condition_sum(2.0, t, 10), 0.55, 1e-12);
}

TEST(ConditionSum, SingleTermIsOne) {
  EXPECT_EQ(condition_sum(3.7, GrowthSchedule::power_exponential(0.5, 4), 1), 1.0);
  EXPECT_EQ(condition_sum(0.1, GrowthSchedule::explicit_times(1, {2.0}), 1), 1.0);
}

TEST(ConditionSum, Errors) {
  const auto s = GrowthSchedule::explicit_times(1, {1.0, 2.0});
  EXPECT_THROW(condition_sum(1.0, s, 3), RangeError);
  EXPECT_THROW(condition_sum(1.0, s, 0), DomainError);
  EXPECT_THROW(condition_sum(0.0, s, 1), DomainError);
}

TEST(ConditionSumProperty, LambdaOneHoldsToAMillion) {
  const auto t = log_times(1000000);
  for (std::int64_t n : {10, 1000, 100000, 1000000}) EXPECT_NEAR(condition_sum(1.0, t, n), 1.0, 1e-12);
}

TEST(ConditionSumProperty, TranslationInvariance) {
  std::mt19937_64 rng(41);
  std::exponential_distribution<double> gap(3.0);
  std::vector<double> t(200);
  double acc = 0.0;
  for (auto& v : t) v = (acc += gap(rng));
  for (double shift : {0.5, 17.0, 1000.0}) {
    std::vector<double> ts(t);
    for (auto& v : ts) v += shift;
    for (double lambda : {0.3, 1.0, 4.0}) {
      // Only differences enter; the shifted differences carry at most the rounding of the shift.
      EXPECT_NEAR(condition_sum(lambda, t, 200), condition_sum(lambda, ts, 200), 1e-12 * (1 + shift));
    }
  }
}

TEST(ConditionSumProperty, StrictlyDecreasingInLambda) {
  const auto s = GrowthSchedule::power_exponential(0.7, 1);
  for (std::int64_t n : {2, 10, 500}) {
    double prev = condition_sum(0.05, s, n);
    for (double lambda = 0.1; lambda < 5.0; lambda += 0.1) {
      const double cur = condition_sum(lambda, s, n);
      ASSERT_LT(cur, prev);
      prev = cur;
    }
  }
}

TEST(ConditionSumProperty, RateWindowForHalfPower) {
  // alpha = 0.5: t_k = (ln k)^2, p = 2; (ln n)^{0.5} S(n) must keep falling.
  const auto t = log_power_times(0.5, 1000000);
  double prev = std::sqrt(std::log(1000.0)) * condition_sum(1.0, t, 1000);
  for (std::int64_t n : {10000, 100000, 1000000}) {
    const double cur = std::sqrt(std::log(static_cast<double>(n))) * condition_sum(1.0, t, n);
    EXPECT_LT(cur, prev) << n;
    prev = cur;
  }
}

TEST(Dawson, ExponentialClosedForm) {
  for (double x : {0.1, 1.0, 10.0, 30.0, 50.0}) {
    EXPECT_NEAR(dawson_F(1.0, 1.0, x), -std::expm1(-x), 1e-8 * -std::expm1(-x)) << x;
  }
  // Rescaled: F(1, lambda, x) = (1 - e^{-lambda x}) / lambda.
  EXPECT_NEAR(dawson_F(1.0, 2.5, 3.0), -std::expm1(-7.5) / 2.5, 1e-12);
}

TEST(Dawson, QuadraticBracketAndIndependentQuadrature) {
  const double f = dawson_F(2.0, 1.0, 30.0);
  EXPECT_GT(f, 0.0160);
  EXPECT_LT(f, 0.0172);
  EXPECT_NEAR(f, simpson_dawson(2.0, 1.0, 30.0, 2000000), 1e-10);
  EXPECT_NEAR(dawson_F(2.0, 1.0, 1.0), simpson_dawson(2.0, 1.0, 1.0, 20000), 1e-12);
}

TEST(Dawson, QuadraticDecreasesForLargeX) {
  double prev = dawson_F(2.0, 1.0, 10.0);
  for (double x = 10.5; x <= 50.0; x += 0.5) {
    const double cur = dawson_F(2.0, 1.0, x);
    ASSERT_LT(cur, prev) << x;
    prev = cur;
  }
  EXPECT_LT(dawson_F(2.0, 1.0, 50.0), 0.011);
}

TEST(Dawson, RejectsNonPositiveArguments) {
  EXPECT_THROW(dawson_F(1.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(dawson_F(0.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(dawson_F(1.0, -1.0, 1.0), DomainError);
}

TEST(Dawson, ExponentialBoundaryReference) {
  EXPECT_EQ(exponential_growth_limit(1.0), 1.0);
  EXPECT_EQ(exponential_growth_limit(4.0), 0.25);
  const auto t = log_times(1000000);
  EXPECT_NEAR(condition_sum(2.0, t, 1000000), 0.5, 1e-5);
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify_schedule(0.5, 0.5, 1.0, 100000), Classification::ConvergesC1);
  EXPECT_EQ(classify_schedule(1.0, 0.5, 1.0, 100000), Classification::ExponentialBoundary);
  EXPECT_EQ(classify_schedule(2.0, 0.5, 1.0, 100000), Classification::FailsC2);
  EXPECT_EQ(classify_schedule(0.5, 1.0, 1.0, 10000), Classification::ConvergesC1);
}

TEST(Classify, Errors) {
  EXPECT_THROW(classify_schedule(0.5, 1.0, 1.0, 100), DomainError);
  EXPECT_THROW(classify_schedule(0.5, 2.0, 1.0, 100000), DomainError);
  EXPECT_THROW(classify_schedule(0.0, 1.0, 1.0, 100000), DomainError);
}

TEST(Classify, DecadeGrid) {
  EXPECT_EQ(decade_grid(1000), (std::vector<std::int64_t>{1, 10, 100, 1000}));
  EXPECT_EQ(decade_grid(5000), (std::vector<std::int64_t>{1, 10, 100, 1000, 5000}));
}

TEST(Envelope, ZeroJumpsIsPureDecay) {
  const auto s = GrowthSchedule::explicit_times(1, {0.5, 1.0, 2.0});
  const EnvelopeSpec spec{0.7, 3.0, ExplicitJumps{{0.0, 0.0, 0.0}}};
  EXPECT_NEAR(envelope_bound(spec, s, 3), 3.0 * std::exp(-1.4), 1e-15);
}

TEST(Envelope, HarmonicOnLogTimes) {
  // t_k = ln k gives y0/n + c. Explicit times must be positive, so t_1 = 0 is
  // replaced by the smallest representable step above it.
  const double y0 = 2.0, c = 0.3;
  const std::int64_t n = 50;
  std::vector<double> t;
  for (std::int64_t k = 1; k <= n; ++k) t.push_back(std::log(static_cast<double>(k)));
  t[0] = 1e-300;
  const auto s = GrowthSchedule::explicit_times(1, t);
  const EnvelopeSpec spec{1.0, y0, HarmonicScaled{c}};
  EXPECT_NEAR(envelope_bound(spec, s, n), y0 / n + c, 1e-12);
}

TEST(Envelope, SingleStep) {
  const auto s = GrowthSchedule::power_exponential(0.5, 1);
  const EnvelopeSpec spec{1.5, 2.0, HarmonicScaled{0.4}};
  EXPECT_NEAR(envelope_bound(spec, s, 1), 2.0 * std::exp(-1.5 * injection_time(s, 1)) + 0.4, 1e-15);
}

TEST(Envelope, Errors) {
  const auto s = GrowthSchedule::power_exponential(0.5, 1);
  EXPECT_THROW(envelope_bound({1.0, 1.0, HarmonicScaled{-1.0}}, s, 3), DomainError);
  EXPECT_THROW(envelope_bound({0.0, 1.0, HarmonicScaled{1.0}}, s, 3), DomainError);
  EXPECT_THROW(envelope_bound({1.0, 1.0, ExplicitJumps{{1.0}}}, s, 3), RangeError);
  EXPECT_NO_THROW(envelope_bound({1.0, 1.0, HarmonicScaled{-1.0}}, s, 3, EnvelopeSide::Lower));
}

TEST(EnvelopeProperty, BoundsSyntheticRecursion) {
  // y' = -r(t) y with r >= lambda (upper) or r <= lambda (lower), jumps
  // J_k <= g(k) (upper) or J_k >= g(k) (lower), integrated exactly.
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto s = GrowthSchedule::power_exponential(0.6, 2);
  const double lambda = 0.8, y0 = 1.5;
  const std::int64_t n_max = 300;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> g(n_max);
    for (std::int64_t k = 1; k <= n_max; ++k) g[k - 1] = u(rng) / k;
    const EnvelopeSpec spec{lambda, y0, ExplicitJumps{g}};
    double y_up = y0, y_lo = y0, t_prev = 0.0;
    for (std::int64_t k = 1; k <= n_max; ++k) {
      const double t = injection_time(s, k), dt = t - t_prev;
      y_up *= std::exp(-(lambda + u(rng)) * dt);
      y_lo *= std::exp(-lambda * u(rng) * dt);
      y_up += g[k - 1] * u(rng);
      y_lo += g[k - 1] * (1.0 + u(rng));
      t_prev = t;
      ASSERT_LE(y_up, envelope_bound(spec, s, k) * (1 + 1e-12));
      ASSERT_GE(y_lo, envelope_bound(spec, s, k, EnvelopeSide::Lower) * (1 - 1e-12));
    }
  }
}

TEST(EnvelopeProperty, AtTimeDecaysBetweenInjections) {
  const auto s = GrowthSchedule::power_exponential(1.0, 1);
  const EnvelopeSpec spec{1.0, 1.0, HarmonicScaled{1.0}};
  const double t3 = injection_time(s, 3), t4 = injection_time(s, 4);
  const double at3 = envelope_bound_at_time(spec, s, t3);
  EXPECT_NEAR(at3, envelope_bound(spec, s, 3), 1e-14);
  const double mid = 0.5 * (t3 + t4);
  EXPECT_NEAR(envelope_bound_at_time(spec, s, mid), at3 * std::exp(-(mid - t3)), 1e-14);
}

TEST(Fit, ExactPowerLaw) {
  std::vector<std::pair<double, double>> series;
  for (int i = 1; i <= 100; ++i) series.emplace_back(i * 0.5, std::pow(i * 0.5, -0.4));
  const auto fit = fit_decay_exponent(series, 0.5);
  EXPECT_NEAR(fit.beta_hat, 0.4, 1e-12);
  EXPECT_NEAR(fit.r2, 1.0, 1e-12);
}

TEST(Fit, ConstantSeries) {
  std::vector<std::pair<double, double>> series;
  for (int i = 1; i <= 20; ++i) series.emplace_back(i, 3.0);
  const auto fit = fit_decay_exponent(series, 1.0);
  EXPECT_NEAR(fit.beta_hat, 0.0, 1e-14);
}

TEST(Fit, Errors) {
  std::vector<std::pair<double, double>> series;
  for (int i = 1; i <= 20; ++i) series.emplace_back(i, i == 18 ? 0.0 : 1.0);
  EXPECT_THROW(fit_decay_exponent(series, 0.5), DomainError);
  EXPECT_THROW(fit_decay_exponent(series, 0.2), DomainError);  // only 4 points
  EXPECT_THROW(fit_decay_exponent(series, 1.5), DomainError);
}

TEST(Rate, AdmissibleExponents) {
  const auto r = admissible_rate(0.5);
  EXPECT_DOUBLE_EQ(r.n_scale_max, 1.0);
  EXPECT_DOUBLE_EQ(r.t_scale_max, 0.5);
  const auto q = admissible_rate(0.25);
  EXPECT_DOUBLE_EQ(q.n_scale_max, 3.0);
  EXPECT_DOUBLE_EQ(q.t_scale_max, 0.75);
  EXPECT_THROW(admissible_rate(0.0), DomainError);
}
