#include "growpop/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "growpop/error.hpp"
#include "growpop/numeric.hpp"

namespace growpop {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

// dF/dx = 1 - lambda p x^(p-1) F(p, x). Sign tells which monotone phase the
// continuous analogue of the condition sum is in at x = ln n.
double dawson_slope(double p, double lambda, double x) {
  return 1.0 - lambda * p * std::pow(x, p - 1.0) * dawson_F(p, lambda, x);
}

// Lower bounds on S_lambda(n) for t_k = ln k from comparing the sum with
// int t^(lambda-1).
double exponential_lower_bound(double lambda, std::int64_t n) {
  if (lambda >= 1.0) return 1.0 / lambda;
  const double nn = static_cast<double>(n);
  return (std::pow(nn + 1.0, lambda) - 1.0) / (lambda * std::pow(nn, lambda));
}

}  // namespace

double condition_sum(double lambda, std::span<const double> times, std::int64_t n) {
  require_positive(lambda, "lambda");
  if (n < 1) throw DomainError("condition sum needs n >= 1");
  if (n > static_cast<std::int64_t>(times.size())) {
    throw RangeError("condition sum needs t_1..t_" + std::to_string(n) + " but only " +
                     std::to_string(times.size()) + " times are available");
  }
  const double t_n = times[static_cast<std::size_t>(n - 1)];
  CompensatedSum sum;
  for (std::int64_t k = 1; k <= n; ++k) {
    const double gap = t_n - times[static_cast<std::size_t>(k - 1)];
    sum += std::exp(-lambda * gap - std::log(static_cast<double>(k)));
  }
  return sum.value();
}

double condition_sum(double lambda, const GrowthSchedule& schedule, std::int64_t n) {
  if (n < 1) throw DomainError("condition sum needs n >= 1");
  if (const auto size = schedule.size(); size && n > *size) {
    throw RangeError("condition sum index " + std::to_string(n) + " beyond the explicit schedule");
  }
  const auto times = schedule.injection_times(n);
  return condition_sum(lambda, times, n);
}

std::vector<double> log_power_times(double alpha, std::int64_t count) {
  require_positive(alpha, "alpha");
  std::vector<double> t(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  const double p = 1.0 / alpha;
  for (std::int64_t k = 1; k <= count; ++k) {
    t[static_cast<std::size_t>(k - 1)] = std::pow(std::log(static_cast<double>(k)), p);
  }
  return t;
}

double dawson_F(double p, double lambda, double x) {
  require_positive(p, "p");
  require_positive(lambda, "lambda");
  require_positive(x, "x");
  const double xp = std::pow(x, p);
  auto integrand = [&](double t) { return std::exp(lambda * (std::pow(t, p) - xp)); };
  // For large lambda x^p the mass sits in a layer of width ~1/(lambda p x^(p-1))
  // below x. Panels end where the exponent has dropped by a fixed amount; once
  // a panel no longer moves the total, the rest (smaller still, since the
  // integrand is increasing) is dropped.
  constexpr double kPanelDrop = 8.0;
  double total = 0.0, hi = x;
  while (hi > 0.0) {
    const double rest = std::pow(hi, p) - kPanelDrop / lambda;
    const double lo = rest > 0.0 ? std::pow(rest, 1.0 / p) : 0.0;
    const double part = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, lo, hi, 15, 1e-12);
    total += part;
    if (part <= 1e-17 * total) break;
    hi = lo;
  }
  return total;
}

double exponential_growth_limit(double lambda) {
  require_positive(lambda, "lambda");
  return 1.0 / lambda;
}

const char* classification_name(Classification c) noexcept {
  switch (c) {
    case Classification::ConvergesC1:
      return "converges_c1";
    case Classification::FailsC2:
      return "fails_c2";
    case Classification::ExponentialBoundary:
      return "exponential_boundary";
  }
  return "unknown";
}

std::vector<std::int64_t> decade_grid(std::int64_t n_max) {
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  std::vector<std::int64_t> grid;
  for (std::int64_t n = 1; n < n_max; n *= 10) grid.push_back(n);
  grid.push_back(n_max);
  return grid;
}

Classification classify_schedule(double alpha, double psi_star, double psi_max, std::int64_t n_max) {
  require_positive(alpha, "alpha");
  require_positive(psi_star, "psi_star");
  require_positive(psi_max, "psi_max");
  if (psi_star > psi_max) throw DomainError("psi_star must not exceed psi_max");
  if (n_max < 10000) throw DomainError("classification needs n_max >= 10000 to resolve the trend");

  const auto times = log_power_times(alpha, n_max);
  const std::int64_t n_prev = std::max<std::int64_t>(n_max / 10, 2);
  const double p = 1.0 / alpha;
  const double x_prev = std::log(static_cast<double>(n_prev));
  const double x_last = std::log(static_cast<double>(n_max));

  auto fail = [&](const std::string& why) {
    throw DiagnosticError("condition sums contradict the growth law for alpha=" + std::to_string(alpha) + ": " + why);
  };

  if (alpha == 1.0) {
    for (double lambda : {psi_star, psi_max}) {
      for (std::int64_t n : decade_grid(n_max)) {
        const double s = condition_sum(lambda, times, n);
        if (s < exponential_lower_bound(lambda, n) * (1.0 - 1e-9)) {
          fail("S(" + std::to_string(n) + ") fell below its integral lower bound at lambda=" + std::to_string(lambda));
        }
      }
    }
    return Classification::ExponentialBoundary;
  }

  if (alpha < 1.0) {
    // Only judge the trend once the continuous analogue is already decaying
    // over the last decade; before that the sum may still be rising.
    if (dawson_slope(p, psi_star, x_prev) < 0.0 && dawson_slope(p, psi_star, x_last) < 0.0) {
      const double s_prev = condition_sum(psi_star, times, n_prev);
      const double s_last = condition_sum(psi_star, times, n_max);
      if (!(s_last < s_prev)) fail("S at psi_star did not decrease over the last decade");
    }
    return Classification::ConvergesC1;
  }

  if (dawson_slope(p, psi_max, x_prev) > 0.0 && dawson_slope(p, psi_max, x_last) > 0.0) {
    const double s_prev = condition_sum(psi_max, times, n_prev);
    const double s_last = condition_sum(psi_max, times, n_max);
    if (!(s_last >= s_prev)) fail("S at psi_max decreased over the last decade");
  }
  return Classification::FailsC2;
}

double jump_bound_at(const JumpBound& g, std::int64_t n) {
  if (n < 1) throw DomainError("jump bound index must be >= 1");
  return std::visit(
      [n](const auto& rule) -> double {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, HarmonicScaled>) {
          return rule.c / static_cast<double>(n);
        } else {
          const auto& values = [&]() -> const std::vector<double>& {
            if constexpr (std::is_same_v<T, ExplicitJumps>) {
              return rule.values;
            } else {
              return rule.mean_jumps;
            }
          }();
          if (n > static_cast<std::int64_t>(values.size())) {
            throw RangeError("jump bound has no value for n=" + std::to_string(n));
          }
          return values[static_cast<std::size_t>(n - 1)];
        }
      },
      g);
}

namespace {

double envelope_sum(const EnvelopeSpec& spec, const GrowthSchedule& schedule, std::int64_t n, double t,
                    EnvelopeSide side) {
  require_positive(spec.lambda, "lambda");
  if (spec.y0 < 0.0) throw DomainError("envelope y0 must be nonnegative");
  CompensatedSum sum;
  sum += spec.y0 * std::exp(-spec.lambda * t);
  for (std::int64_t k = 1; k <= n; ++k) {
    const double g = jump_bound_at(spec.jump_bound, k);
    if (side == EnvelopeSide::Upper && g < 0.0) {
      throw DomainError("upper envelope needs g(" + std::to_string(k) + ") >= 0");
    }
    sum += g * std::exp(-spec.lambda * (t - schedule.injection_time(k)));
  }
  const double value = sum.value();
  return side == EnvelopeSide::Lower ? std::max(value, 0.0) : value;
}

}  // namespace

double envelope_bound(const EnvelopeSpec& spec, const GrowthSchedule& schedule, std::int64_t n, EnvelopeSide side) {
  if (n < 0) throw DomainError("envelope index must be >= 0");
  return envelope_sum(spec, schedule, n, schedule.injection_time(n), side);
}

double envelope_bound_at_time(const EnvelopeSpec& spec, const GrowthSchedule& schedule, double t,
                              EnvelopeSide side) {
  const std::int64_t n = schedule.population_at(t) - schedule.n0();
  return envelope_sum(spec, schedule, n, t, side);
}

DecayFit fit_decay_exponent(std::span<const std::pair<double, double>> series, double window) {
  if (!(window > 0.0) || window > 1.0) throw DomainError("window must be a fraction in (0, 1]");
  const auto total = series.size();
  const auto count = static_cast<std::size_t>(std::ceil(window * static_cast<double>(total)));
  if (count < 10) throw DomainError("decay fit needs at least 10 points in the window");
  const auto tail = series.subspan(total - count);

  double sx = 0.0, sy = 0.0;
  std::vector<double> lx, ly;
  lx.reserve(count);
  ly.reserve(count);
  for (const auto& [t, value] : tail) {
    if (!(t > 0.0)) throw DomainError("decay fit needs t > 0");
    if (!(value > 0.0)) throw DomainError("decay fit needs positive values (no algebraic decay regime)");
    lx.push_back(std::log(t));
    ly.push_back(std::log(value));
    sx += lx.back();
    sy += ly.back();
  }
  const double nn = static_cast<double>(count);
  const double mx = sx / nn, my = sy / nn;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw DomainError("decay fit needs distinct times");
  const double slope = sxy / sxx;
  // A flat series has no residual and no variance; call that a perfect fit.
  const double r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return DecayFit{-slope, r2};
}

RateExponents admissible_rate(double alpha) {
  require_positive(alpha, "alpha");
  return RateExponents{1.0 / alpha - 1.0, 1.0 - alpha};
}

}  // namespace growpop
