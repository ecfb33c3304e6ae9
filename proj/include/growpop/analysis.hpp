#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "growpop/schedule.hpp"

namespace growpop {

/// S_lambda(n) = sum_{k=1}^n (1/k) exp(-lambda (t_n - t_k)), the quantity
/// whose decay (lambda = psi_star) or non-decay (lambda = psi_max) decides
/// consensus. `times[k-1]` holds t_k; only differences enter, so the times
/// need only be nondecreasing.
double condition_sum(double lambda, std::span<const double> times, std::int64_t n);

/// Same sum using t_1..t_n from `schedule`. RangeError past an explicit list.
double condition_sum(double lambda, const GrowthSchedule& schedule, std::int64_t n);

/// t_k = (ln k)^(1/alpha), k = 1..count: the large-k form of the injection
/// times of N(t) = floor(exp(t^alpha)), used by classify_schedule and the
/// `conditions` table.
std::vector<double> log_power_times(double alpha, std::int64_t count);

/// Generalized Dawson integral F(p, x) = exp(-lambda x^p) int_0^x exp(lambda t^p) dt,
/// integrated as exp(lambda (t^p - x^p)) so nothing overflows.
double dawson_F(double p, double lambda, double x);

/// lim_{n -> inf} S_lambda(n) for t_k = ln k, which is 1/lambda for every lambda > 0.
double exponential_growth_limit(double lambda);

enum class Classification { ConvergesC1, FailsC2, ExponentialBoundary };

const char* classification_name(Classification c) noexcept;

/// Geometric grid 1, 10, 100, ... up to and including n_max.
std::vector<std::int64_t> decade_grid(std::int64_t n_max);

/// Decides the growth regime from alpha (authoritative) and cross-checks it
/// against the trend of the condition sums on a decade grid up to n_max.
/// DiagnosticError when the numerical trend contradicts the alpha rule.
Classification classify_schedule(double alpha, double psi_star, double psi_max, std::int64_t n_max);

struct HarmonicScaled {
  double c;  // g(n) = c / n
};

struct ExplicitJumps {
  std::vector<double> values;  // g(1), g(2), ...
};

/// Jump bound taken from measured mean jumps (ensemble estimates of the
/// expected variance jump at each injection).
struct ExactJumpExpectation {
  std::vector<double> mean_jumps;
};

using JumpBound = std::variant<HarmonicScaled, ExplicitJumps, ExactJumpExpectation>;

struct EnvelopeSpec {
  double lambda;
  double y0;
  JumpBound jump_bound;
};

double jump_bound_at(const JumpBound& g, std::int64_t n);

enum class EnvelopeSide {
  Upper,  // y' <= -lambda y and |jump_n| <= g(n)
  Lower,  // y' >= -lambda y and jump_n >= g(n)
};

/// y0 exp(-lambda (t_n - t_0)) + sum_{k=1}^n g(k) exp(-lambda (t_n - t_k)).
/// For Side::Upper g must be nonnegative; the lower envelope is clipped at 0
/// since y is nonnegative.
double envelope_bound(const EnvelopeSpec& spec, const GrowthSchedule& schedule, std::int64_t n,
                      EnvelopeSide side = EnvelopeSide::Upper);

/// Envelope at an arbitrary time t in [t_n, t_{n+1}).
double envelope_bound_at_time(const EnvelopeSpec& spec, const GrowthSchedule& schedule, double t,
                              EnvelopeSide side = EnvelopeSide::Upper);

struct DecayFit {
  double beta_hat;  // minus the log-log slope
  double r2;
};

/// Least squares of ln(value) on ln(t) over the last `window` fraction of the
/// points. Needs >= 10 points in the window, all with t > 0 and value > 0.
DecayFit fit_decay_exponent(std::span<const std::pair<double, double>> series, double window);

/// n-scale rate exponent beta* < p - 1 and its t-scale counterpart
/// beta = alpha beta* (since t_n^alpha ~ ln n).
struct RateExponents {
  double n_scale_max;  // sup of admissible beta*: p - 1
  double t_scale_max;  // sup of admissible beta: 1 - alpha
};

RateExponents admissible_rate(double alpha);

}  // namespace growpop
