#include "growpop/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "growpop/error.hpp"

namespace growpop {

namespace {

// Largest exponent for which exp(t^alpha) still fits in an int64 count.
constexpr double kMaxLogPopulation = 43.0;

// (ln(n))^(1/alpha), nudged upward until floor(exp(t^alpha)) >= n holds in
// floating point, so that t is the first representable time the population
// reaches n.
double power_exp_time(double alpha, std::int64_t n) {
  if (n < 2) throw ScheduleError("power-exponential injection time requires n0 + j >= 2");
  const double target = static_cast<double>(n);
  double t = std::pow(std::log(target), 1.0 / alpha);
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw ScheduleError("power-exponential injection time is not a positive finite number");
  }
  for (int i = 0; i < 4096 && std::floor(std::exp(std::pow(t, alpha))) < target; ++i) {
    t = std::nextafter(t, std::numeric_limits<double>::infinity());
  }
  return t;
}

}  // namespace

GrowthSchedule GrowthSchedule::power_exponential(double alpha, std::int64_t n0) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("schedule requires alpha > 0");
  if (n0 < 1) throw DomainError("schedule requires n0 >= 1");
  return GrowthSchedule(PowerExponential{alpha, n0});
}

GrowthSchedule GrowthSchedule::explicit_times(std::int64_t n0, std::vector<double> times) {
  if (n0 < 1) throw DomainError("schedule requires n0 >= 1");
  double prev = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !(times[i] > prev)) {
      throw DomainError("explicit injection times must be positive and strictly increasing (index " +
                        std::to_string(i) + ")");
    }
    prev = times[i];
  }
  return GrowthSchedule(ExplicitTimes{n0, std::move(times)});
}

std::int64_t GrowthSchedule::n0() const noexcept {
  return std::visit([](const auto& v) { return v.n0; }, variant_);
}

std::optional<std::int64_t> GrowthSchedule::size() const noexcept {
  if (const auto* e = std::get_if<ExplicitTimes>(&variant_)) {
    return static_cast<std::int64_t>(e->times.size());
  }
  return std::nullopt;
}

double GrowthSchedule::injection_time(std::int64_t j) const {
  if (j < 0) throw RangeError("injection index must be nonnegative");
  if (j == 0) return 0.0;
  if (const auto* e = std::get_if<ExplicitTimes>(&variant_)) {
    if (j > static_cast<std::int64_t>(e->times.size())) {
      throw RangeError("injection index " + std::to_string(j) + " beyond explicit schedule of length " +
                       std::to_string(e->times.size()));
    }
    return e->times[static_cast<std::size_t>(j - 1)];
  }
  const auto& p = std::get<PowerExponential>(variant_);
  return power_exp_time(p.alpha, p.n0 + j);
}

std::vector<double> GrowthSchedule::injection_times(std::int64_t count) const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  for (std::int64_t j = 1; j <= count; ++j) out.push_back(injection_time(j));
  return out;
}

std::int64_t GrowthSchedule::population_at(double t) const {
  if (!(t >= 0.0)) throw RangeError("population_at requires t >= 0");
  if (const auto* e = std::get_if<ExplicitTimes>(&variant_)) {
    const auto it = std::upper_bound(e->times.begin(), e->times.end(), t);
    return e->n0 + static_cast<std::int64_t>(it - e->times.begin());
  }
  const auto& p = std::get<PowerExponential>(variant_);
  const double log_pop = std::pow(t, p.alpha);
  if (log_pop > kMaxLogPopulation) throw RangeError("population at t exceeds representable range");
  // Initial guess from the counting law, then settle against the exact
  // injection times so that N(t_j) = n0 + j holds bit-for-bit.
  std::int64_t j = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(std::exp(log_pop))) - p.n0);
  while (j > 0 && injection_time(j) > t) --j;
  while (injection_time(j + 1) <= t) ++j;
  return p.n0 + j;
}

double injection_time(const GrowthSchedule& schedule, std::int64_t j) { return schedule.injection_time(j); }

std::int64_t population_at(const GrowthSchedule& schedule, double t) { return schedule.population_at(t); }

}  // namespace growpop
