#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "growpop/dynamics.hpp"
#include "growpop/kernel.hpp"
#include "growpop/observables.hpp"
#include "growpop/schedule.hpp"
#include "growpop/source.hpp"

namespace growpop {

/// Where grid samples are taken in addition to t = 0, both sides of every
/// injection, and the final time.
struct RecordGrid {
  enum class Kind { Events, Uniform, Geometric };
  Kind kind = Kind::Events;
  double dt = 0.0;       // Uniform: t_i = i dt
  double t_first = 0.0;  // Geometric: t_i = t_first ratio^i
  double ratio = 0.0;

  static RecordGrid events() { return {}; }
  static RecordGrid uniform(double dt) { return {Kind::Uniform, dt, 0.0, 0.0}; }
  static RecordGrid geometric(double t_first, double ratio) { return {Kind::Geometric, 0.0, t_first, ratio}; }

  /// i-th grid time, i >= 1; nullopt for Kind::Events.
  std::optional<double> time(std::int64_t i) const;
};

struct SimConfig {
  Kernel kernel;
  GrowthSchedule schedule;
  OpinionSource source;
  std::vector<std::vector<double>> initial_opinions;
  double step_max = 1e-2;
  std::optional<double> horizon;
  /// Number of injections after which the run stops. With both limits set the
  /// run ends at whichever comes first.
  std::optional<std::int64_t> max_agents;
  RecordGrid record_grid;

  std::size_t dim() const noexcept { return source.dim(); }

  /// Throws DomainError describing the first inconsistency.
  void validate() const;

  /// Final time of a run and the number of injections applied up to it.
  double end_time() const;
  std::int64_t injection_limit() const;
};

/// One trajectory. Deterministic in (config, seed): the seed drives only the
/// X_k draws, exactly one draw per injection in injection order.
MomentSeries run_simulation(const SimConfig& config, std::uint64_t seed);

}  // namespace growpop
