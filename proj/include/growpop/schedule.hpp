#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace growpop {

/// N(t) = floor(exp(t^alpha)); agent n0 + j arrives at the first time the
/// floor reaches n0 + j.
struct PowerExponential {
  double alpha;
  std::int64_t n0;
};

/// Finite, strictly increasing list of positive injection times.
struct ExplicitTimes {
  std::int64_t n0;
  std::vector<double> times;
};

using ScheduleVariant = std::variant<PowerExponential, ExplicitTimes>;

/// Injection times t_1 < t_2 < ... (t_0 = 0) and the counting function
/// N(t) = n0 + max{ j : t_j <= t }.
class GrowthSchedule {
 public:
  static GrowthSchedule power_exponential(double alpha, std::int64_t n0);
  static GrowthSchedule explicit_times(std::int64_t n0, std::vector<double> times);

  std::int64_t n0() const noexcept;

  /// Number of injections the schedule can produce; nullopt when unbounded.
  std::optional<std::int64_t> size() const noexcept;

  /// t_j for j >= 1 (t_0 = 0 is accepted too). RangeError past the end of an
  /// explicit list.
  double injection_time(std::int64_t j) const;

  /// t_1 .. t_count
  std::vector<double> injection_times(std::int64_t count) const;

  /// N(t); right-continuous, N(0) = n0. Throws RangeError for negative t and
  /// when N(t) would not fit in 63 bits.
  std::int64_t population_at(double t) const;

  const ScheduleVariant& variant() const noexcept { return variant_; }

 private:
  explicit GrowthSchedule(ScheduleVariant v) : variant_(std::move(v)) {}

  ScheduleVariant variant_;
};

double injection_time(const GrowthSchedule& schedule, std::int64_t j);
std::int64_t population_at(const GrowthSchedule& schedule, double t);

}  // namespace growpop
