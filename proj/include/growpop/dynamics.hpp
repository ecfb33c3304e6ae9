#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "growpop/kernel.hpp"
#include "growpop/schedule.hpp"

namespace growpop {

/// Full state of the hybrid system: time, number of injections applied, and
/// the opinions of the N0 + k living agents stored row-major (agent, coord).
struct SimState {
  double t = 0.0;
  std::int64_t k = 0;
  std::size_t dim = 1;
  std::vector<double> x;

  SimState() = default;
  SimState(std::size_t dim, std::vector<double> flat, double t = 0.0, std::int64_t k = 0);

  static SimState from_points(const std::vector<std::vector<double>>& points, double t = 0.0,
                              std::int64_t k = 0);

  std::size_t population() const noexcept { return dim == 0 ? 0 : x.size() / dim; }
  std::span<const double> opinion(std::size_t i) const noexcept { return {x.data() + i * dim, dim}; }
  std::span<double> opinion(std::size_t i) noexcept { return {x.data() + i * dim, dim}; }
  std::vector<std::vector<double>> points() const;
};

/// dx_i/dt = (1/N) sum_j psi(|x_j - x_i|)(x_j - x_i), written into `out`
/// (same layout as `x`). Constant kernels use the equivalent mean-field form
/// c (m1 - x_i), which costs O(N d) instead of O(N^2 d).
void evaluate_rhs(std::span<const double> x, std::size_t dim, const Kernel& kernel, std::span<double> out);

/// Pairwise O(N^2) evaluation for any kernel; the reference the mean-field
/// path is tested against.
void evaluate_rhs_pairwise(std::span<const double> x, std::size_t dim, const Kernel& kernel,
                           std::span<double> out);

std::vector<double> rhs(const SimState& state, const Kernel& kernel);

/// Classical fourth-order Runge-Kutta with a fixed step ceiling. Holds its
/// stage buffers so repeated calls do not allocate.
class Rk4Integrator {
 public:
  /// Advances `state` to exactly `t_end` using steps <= step_max; the last
  /// step is shortened to land on t_end. Slivers shorter than 1e-14 get a
  /// single Euler step. Population is unchanged.
  void advance(SimState& state, const Kernel& kernel, double t_end, double step_max);

 private:
  void rk4_step(SimState& state, const Kernel& kernel, double h);

  std::vector<double> k1_, k2_, k3_, k4_, stage_;
};

/// Advances the ODE to t_end. ContractViolation if an injection time of
/// `schedule` lies strictly inside (state.t, t_end).
SimState integrate_interval(SimState state, const Kernel& kernel, const GrowthSchedule& schedule,
                            double t_end, double step_max);

/// Appends x_new as agent N0 + k + 1 at time t_k. Existing opinions are left
/// untouched.
SimState inject_agent(SimState state, std::span<const double> x_new, double t_k);

/// In-place variant used by the simulation loop.
void inject_agent_inplace(SimState& state, std::span<const double> x_new, double t_k);

}  // namespace growpop
