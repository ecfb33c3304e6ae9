#include "growpop/simulation.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "growpop/error.hpp"

namespace growpop {

std::optional<double> RecordGrid::time(std::int64_t i) const {
  switch (kind) {
    case Kind::Events:
      return std::nullopt;
    case Kind::Uniform:
      return static_cast<double>(i) * dt;
    case Kind::Geometric:
      return t_first * std::pow(ratio, static_cast<double>(i - 1));
  }
  return std::nullopt;
}

void SimConfig::validate() const {
  if (!(step_max > 0.0)) throw DomainError("step_max must be positive");
  if (!horizon && !max_agents) throw DomainError("either horizon or max_agents must be set");
  if (horizon && !(*horizon > 0.0)) throw DomainError("horizon must be positive");
  if (max_agents && *max_agents < 0) throw DomainError("max_agents must be >= 0");
  if (static_cast<std::int64_t>(initial_opinions.size()) != schedule.n0()) {
    throw DomainError("schedule n0 = " + std::to_string(schedule.n0()) + " but " +
                      std::to_string(initial_opinions.size()) + " initial opinions were given");
  }
  for (const auto& p : initial_opinions) {
    if (p.size() != dim()) throw DomainError("initial opinion dimension does not match the source mean");
  }
  if (record_grid.kind == RecordGrid::Kind::Uniform && !(record_grid.dt > 0.0)) {
    throw DomainError("uniform record grid needs dt > 0");
  }
  if (record_grid.kind == RecordGrid::Kind::Geometric &&
      (!(record_grid.t_first > 0.0) || !(record_grid.ratio > 1.0))) {
    throw DomainError("geometric record grid needs t_first > 0 and ratio > 1");
  }
  if (!horizon) {
    const auto size = schedule.size();
    if (size && *max_agents > *size) {
      throw DomainError("max_agents exceeds the number of explicit injection times and no horizon is set");
    }
  }
}

double SimConfig::end_time() const {
  std::optional<double> by_count;
  if (max_agents) {
    const auto size = schedule.size();
    if (!size || *max_agents <= *size) by_count = schedule.injection_time(*max_agents);
  }
  if (horizon && by_count) return std::min(*horizon, *by_count);
  if (horizon) return *horizon;
  if (by_count) return *by_count;
  throw DomainError("run has no end time");
}

std::int64_t SimConfig::injection_limit() const {
  std::int64_t limit = std::numeric_limits<std::int64_t>::max();
  if (max_agents) limit = *max_agents;
  if (const auto size = schedule.size()) limit = std::min(limit, *size);
  return limit;
}

MomentSeries run_simulation(const SimConfig& config, std::uint64_t seed) {
  config.validate();
  const auto& m = config.source.mean();
  const double t_end = config.end_time();
  const std::int64_t limit = config.injection_limit();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  Rng rng(seed);
  SimState state = SimState::from_points(config.initial_opinions);
  Rk4Integrator integrator;
  MomentSeries series(config.dim());
  series.add_record(compute_moments(state, config.kernel, m));
  double last_record_t = 0.0;

  auto next_injection = [&]() {
    if (state.k >= limit) return kInf;
    const double t = config.schedule.injection_time(state.k + 1);
    return t <= t_end ? t : kInf;
  };
  std::int64_t grid_index = 1;
  auto next_grid = [&]() {
    for (;;) {
      const auto t = config.record_grid.time(grid_index);
      if (!t || *t > t_end) return kInf;
      if (*t > last_record_t) return *t;
      ++grid_index;
    }
  };

  for (;;) {
    const double t_inj = next_injection();
    const double t_grid = next_grid();
    const double target = std::min(t_inj, t_grid);
    if (target == kInf) break;

    integrator.advance(state, config.kernel, target, config.step_max);
    if (target == t_inj) {
      MomentRecord before = compute_moments(state, config.kernel, m);
      std::vector<double> x_new = config.source.sample(rng);
      inject_agent_inplace(state, x_new, t_inj);
      series.add_injection(std::move(before), std::move(x_new), compute_moments(state, config.kernel, m));
    }
    if (target == t_grid) {
      series.add_record(compute_moments(state, config.kernel, m));
      last_record_t = target;
      ++grid_index;
    }
  }

  integrator.advance(state, config.kernel, t_end, config.step_max);
  if (last_record_t < t_end) series.add_record(compute_moments(state, config.kernel, m));
  return series;
}

}  // namespace growpop
