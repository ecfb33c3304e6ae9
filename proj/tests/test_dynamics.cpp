#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "growpop/dynamics.hpp"
#include "growpop/error.hpp"

using namespace growpop;

namespace {

std::vector<double> random_flat(std::mt19937_64& rng, std::size_t n, std::size_t dim, double scale = 2.0) {
  std::normal_distribution<double> normal(0.0, scale);
  std::vector<double> x(n * dim);
  for (auto& v : x) v = normal(rng);
  return x;
}

std::vector<double> column_sums(const std::vector<double>& f, std::size_t dim) {
  std::vector<double> s(dim, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) s[i % dim] += f[i];
  return s;
}

}  // namespace

TEST(Rhs, TwoAgentsPullTogether) {
  const auto s = SimState::from_points({{0.0}, {2.0}});
  const auto f = rhs(s, Kernel::constant(1.0));
  EXPECT_DOUBLE_EQ(f[0], 1.0);
  EXPECT_DOUBLE_EQ(f[1], -1.0);
}

TEST(Rhs, ThreeAgents) {
  const auto s = SimState::from_points({{-1.0}, {0.0}, {1.0}});
  const auto f = rhs(s, Kernel::constant(1.0));
  EXPECT_NEAR(f[0], 1.0, 1e-15);
  EXPECT_NEAR(f[1], 0.0, 1e-15);
  EXPECT_NEAR(f[2], -1.0, 1e-15);
}

TEST(Rhs, ConsensusIsAnEquilibrium) {
  const auto s = SimState::from_points({{0.3, -1.0}, {0.3, -1.0}, {0.3, -1.0}});
  for (const auto& k : {Kernel::constant(2.0), Kernel::rational_decay(0.5, 0.5)}) {
    for (double v : rhs(s, k)) EXPECT_EQ(v, 0.0);
  }
}

TEST(RhsProperty, ForcesSumToZero) {
  std::mt19937_64 rng(21);
  for (std::size_t dim : {1u, 2u, 3u, 5u}) {
    for (std::size_t n : {2u, 7u, 50u}) {
      const SimState s(dim, random_flat(rng, n, dim));
      for (const auto& k : {Kernel::constant(1.3), Kernel::rational_decay(0.2, 1.7)}) {
        const auto f = rhs(s, k);
        double scale = 0.0;
        for (double v : f) scale = std::max(scale, std::abs(v));
        for (double c : column_sums(f, dim)) ASSERT_NEAR(c, 0.0, 1e-12 * n * std::max(scale, 1.0));
      }
    }
  }
}

TEST(RhsProperty, MeanFieldMatchesPairwise) {
  std::mt19937_64 rng(22);
  for (std::size_t dim : {1u, 2u, 4u}) {
    const std::size_t n = 40;
    const auto x = random_flat(rng, n, dim);
    const auto k = Kernel::constant(0.7);
    std::vector<double> mf(x.size()), pw(x.size());
    evaluate_rhs(x, dim, k, mf);
    evaluate_rhs_pairwise(x, dim, k, pw);
    for (std::size_t i = 0; i < x.size(); ++i) ASSERT_NEAR(mf[i], pw[i], 1e-12);
  }
}

TEST(RhsProperty, PermutationEquivariance) {
  std::mt19937_64 rng(23);
  const std::size_t n = 12, dim = 2;
  const auto x = random_flat(rng, n, dim);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<double> xp(x.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < dim; ++c) xp[i * dim + c] = x[perm[i] * dim + c];
  const auto k = Kernel::rational_decay(0.5, 0.5);
  const auto f = rhs(SimState(dim, x), k);
  const auto fp = rhs(SimState(dim, xp), k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < dim; ++c) ASSERT_NEAR(fp[i * dim + c], f[perm[i] * dim + c], 1e-14);
}

TEST(RhsProperty, TranslationInvariance) {
  std::mt19937_64 rng(24);
  const std::size_t n = 10, dim = 3;
  auto x = random_flat(rng, n, dim);
  auto shifted = x;
  const double shift[3] = {4.0, -2.5, 0.125};
  for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += shift[i % dim];
  for (const auto& k : {Kernel::constant(1.0), Kernel::rational_decay(0.5, 0.5)}) {
    const auto f = rhs(SimState(dim, x), k);
    const auto g = rhs(SimState(dim, shifted), k);
    for (std::size_t i = 0; i < f.size(); ++i) ASSERT_NEAR(f[i], g[i], 1e-12);
  }
}

TEST(Integrate, ConstantKernelTwoAgentsMatchesExponential) {
  // Constant psi = 1, two agents: x_i(t) = 1 + (x_i(0) - 1) e^{-t}.
  const auto s0 = SimState::from_points({{0.0}, {2.0}});
  const auto sched = GrowthSchedule::explicit_times(2, {10.0});
  const auto s1 = integrate_interval(s0, Kernel::constant(1.0), sched, 1.0, 1e-3);
  EXPECT_NEAR(s1.x[0], 0.632121, 1e-6);
  EXPECT_NEAR(s1.x[1], 1.367879, 1e-6);
  EXPECT_NEAR(s1.x[0], 1.0 - std::exp(-1.0), 1e-9);
  EXPECT_NEAR(s1.x[1], 1.0 + std::exp(-1.0), 1e-9);
  EXPECT_EQ(s1.t, 1.0);
  EXPECT_EQ(s1.k, 0);
}

TEST(Integrate, LandsExactlyOnEndTime) {
  auto s = SimState::from_points({{0.0}, {1.0}});
  Rk4Integrator rk;
  rk.advance(s, Kernel::constant(1.0), 0.3337, 0.01);
  EXPECT_EQ(s.t, 0.3337);
}

TEST(Integrate, CrossingAnInjectionIsAContractViolation) {
  const auto s0 = SimState::from_points({{0.0}, {2.0}});
  const auto sched = GrowthSchedule::explicit_times(2, {0.5});
  EXPECT_THROW(integrate_interval(s0, Kernel::constant(1.0), sched, 1.0, 1e-3), ContractViolation);
  // Integrating up to the injection time itself is allowed.
  EXPECT_NO_THROW(integrate_interval(s0, Kernel::constant(1.0), sched, 0.5, 1e-3));
}

TEST(Integrate, RejectsBadArguments) {
  const auto s0 = SimState::from_points({{0.0}, {2.0}});
  const auto sched = GrowthSchedule::explicit_times(2, {5.0});
  EXPECT_THROW(integrate_interval(s0, Kernel::constant(1.0), sched, -1.0, 1e-3), ContractViolation);
  EXPECT_THROW(integrate_interval(s0, Kernel::constant(1.0), sched, 1.0, 0.0), DomainError);
}

TEST(IntegrateProperty, RationalKernelConservesMeanAndContractsHull) {
  std::mt19937_64 rng(25);
  const std::size_t n = 30, dim = 2;
  const SimState s0(dim, random_flat(rng, n, dim));
  const auto sched = GrowthSchedule::explicit_times(static_cast<std::int64_t>(n), {100.0});
  const auto k = Kernel::rational_decay(0.3, 1.0);
  const auto s1 = integrate_interval(s0, k, sched, 2.0, 1e-2);
  const auto before = column_sums(s0.x, dim), after = column_sums(s1.x, dim);
  for (std::size_t c = 0; c < dim; ++c) EXPECT_NEAR(before[c] / n, after[c] / n, 1e-12);
  for (std::size_t c = 0; c < dim; ++c) {
    double lo0 = 1e300, hi0 = -1e300, lo1 = 1e300, hi1 = -1e300;
    for (std::size_t i = 0; i < n; ++i) {
      lo0 = std::min(lo0, s0.x[i * dim + c]);
      hi0 = std::max(hi0, s0.x[i * dim + c]);
      lo1 = std::min(lo1, s1.x[i * dim + c]);
      hi1 = std::max(hi1, s1.x[i * dim + c]);
    }
    EXPECT_GE(lo1, lo0);
    EXPECT_LE(hi1, hi0);
  }
}

TEST(Inject, AppendsAgentAndKeepsOthers) {
  const auto s = SimState::from_points({{0.0}, {2.0}}, 0.5, 0);
  const std::vector<double> x_new{5.0};
  const auto s2 = inject_agent(s, x_new, 0.5);
  ASSERT_EQ(s2.population(), 3u);
  EXPECT_EQ(s2.x, (std::vector<double>{0.0, 2.0, 5.0}));
  EXPECT_EQ(s2.k, 1);
  EXPECT_EQ(s2.t, 0.5);
}

TEST(Inject, DimensionMismatchIsDomainError) {
  const auto s = SimState::from_points({{0.0, 1.0}}, 0.5);
  const std::vector<double> x_new{5.0};
  EXPECT_THROW(inject_agent(s, x_new, 0.5), DomainError);
}

TEST(Inject, WrongTimeIsContractViolation) {
  const auto s = SimState::from_points({{0.0}}, 0.5);
  const std::vector<double> x_new{5.0};
  EXPECT_THROW(inject_agent(s, x_new, 0.7), ContractViolation);
}

TEST(SimStateTest, RejectsRaggedInput) {
  EXPECT_THROW(SimState::from_points({{0.0, 1.0}, {2.0}}), DomainError);
  EXPECT_THROW(SimState(2, {1.0, 2.0, 3.0}), DomainError);
}
