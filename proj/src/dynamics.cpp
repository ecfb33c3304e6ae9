#include "growpop/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "growpop/error.hpp"

namespace growpop {

namespace {

constexpr double kSliver = 1e-14;
constexpr double kInjectionTimeTolerance = 1e-12;

template <std::size_t D>
void pairwise_fixed(std::span<const double> x, std::size_t n, const Kernel& kernel, std::span<double> out) {
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc[D] = {};
    const double* xi = x.data() + i * D;
    for (std::size_t j = 0; j < n; ++j) {
      const double* xj = x.data() + j * D;
      double diff[D];
      double r2 = 0.0;
      for (std::size_t c = 0; c < D; ++c) {
        diff[c] = xj[c] - xi[c];
        r2 += diff[c] * diff[c];
      }
      const double w = kernel.from_squared(r2);
      for (std::size_t c = 0; c < D; ++c) acc[c] += w * diff[c];
    }
    for (std::size_t c = 0; c < D; ++c) out[i * D + c] = acc[c] * inv_n;
  }
}

void pairwise_dynamic(std::span<const double> x, std::size_t dim, std::size_t n, const Kernel& kernel,
                      std::span<double> out) {
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> acc(dim), diff(dim);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(acc.begin(), acc.end(), 0.0);
    const double* xi = x.data() + i * dim;
    for (std::size_t j = 0; j < n; ++j) {
      const double* xj = x.data() + j * dim;
      double r2 = 0.0;
      for (std::size_t c = 0; c < dim; ++c) {
        diff[c] = xj[c] - xi[c];
        r2 += diff[c] * diff[c];
      }
      const double w = kernel.from_squared(r2);
      for (std::size_t c = 0; c < dim; ++c) acc[c] += w * diff[c];
    }
    for (std::size_t c = 0; c < dim; ++c) out[i * dim + c] = acc[c] * inv_n;
  }
}

void mean_field(std::span<const double> x, std::size_t dim, std::size_t n, double c, std::span<double> out) {
  std::vector<double> mean(dim, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < dim; ++d) mean[d] += x[i * dim + d];
  }
  for (double& v : mean) v /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < dim; ++d) out[i * dim + d] = c * (mean[d] - x[i * dim + d]);
  }
}

}  // namespace

SimState::SimState(std::size_t dim_, std::vector<double> flat, double t_, std::int64_t k_)
    : t(t_), k(k_), dim(dim_), x(std::move(flat)) {
  if (dim == 0) throw DomainError("opinion dimension must be >= 1");
  if (x.size() % dim != 0) throw DomainError("flat opinion buffer is not a multiple of the dimension");
}

SimState SimState::from_points(const std::vector<std::vector<double>>& points, double t, std::int64_t k) {
  if (points.empty()) throw DomainError("state needs at least one agent");
  const std::size_t dim = points.front().size();
  std::vector<double> flat;
  flat.reserve(points.size() * dim);
  for (const auto& p : points) {
    if (p.size() != dim) throw DomainError("opinion vectors have inconsistent dimensions");
    flat.insert(flat.end(), p.begin(), p.end());
  }
  return SimState(dim, std::move(flat), t, k);
}

std::vector<std::vector<double>> SimState::points() const {
  std::vector<std::vector<double>> out;
  out.reserve(population());
  for (std::size_t i = 0; i < population(); ++i) {
    auto o = opinion(i);
    out.emplace_back(o.begin(), o.end());
  }
  return out;
}

void evaluate_rhs_pairwise(std::span<const double> x, std::size_t dim, const Kernel& kernel,
                           std::span<double> out) {
  const std::size_t n = x.size() / dim;
  if (n == 0) return;
  switch (dim) {
    case 1:
      pairwise_fixed<1>(x, n, kernel, out);
      break;
    case 2:
      pairwise_fixed<2>(x, n, kernel, out);
      break;
    case 3:
      pairwise_fixed<3>(x, n, kernel, out);
      break;
    default:
      pairwise_dynamic(x, dim, n, kernel, out);
  }
}

void evaluate_rhs(std::span<const double> x, std::size_t dim, const Kernel& kernel, std::span<double> out) {
  const std::size_t n = x.size() / dim;
  if (n == 0) return;
  if (kernel.is_constant()) {
    mean_field(x, dim, n, kernel.psi_star(), out);
  } else {
    evaluate_rhs_pairwise(x, dim, kernel, out);
  }
}

std::vector<double> rhs(const SimState& state, const Kernel& kernel) {
  std::vector<double> out(state.x.size());
  evaluate_rhs(state.x, state.dim, kernel, out);
  return out;
}

void Rk4Integrator::rk4_step(SimState& s, const Kernel& kernel, double h) {
  const std::size_t len = s.x.size();
  k1_.resize(len);
  k2_.resize(len);
  k3_.resize(len);
  k4_.resize(len);
  stage_.resize(len);

  evaluate_rhs(s.x, s.dim, kernel, k1_);
  for (std::size_t i = 0; i < len; ++i) stage_[i] = s.x[i] + 0.5 * h * k1_[i];
  evaluate_rhs(stage_, s.dim, kernel, k2_);
  for (std::size_t i = 0; i < len; ++i) stage_[i] = s.x[i] + 0.5 * h * k2_[i];
  evaluate_rhs(stage_, s.dim, kernel, k3_);
  for (std::size_t i = 0; i < len; ++i) stage_[i] = s.x[i] + h * k3_[i];
  evaluate_rhs(stage_, s.dim, kernel, k4_);
  const double h6 = h / 6.0;
  for (std::size_t i = 0; i < len; ++i) {
    s.x[i] += h6 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
  }
}

void Rk4Integrator::advance(SimState& s, const Kernel& kernel, double t_end, double step_max) {
  if (!(step_max > 0.0)) throw DomainError("step_max must be positive");
  if (t_end < s.t) throw ContractViolation("integration end time precedes the current time");
  while (s.t < t_end) {
    const double remaining = t_end - s.t;
    if (remaining < kSliver) {
      k1_.resize(s.x.size());
      evaluate_rhs(s.x, s.dim, kernel, k1_);
      for (std::size_t i = 0; i < s.x.size(); ++i) s.x[i] += remaining * k1_[i];
      s.t = t_end;
      break;
    }
    const double h = std::min(step_max, remaining);
    rk4_step(s, kernel, h);
    s.t = (h == remaining) ? t_end : s.t + h;
  }
}

SimState integrate_interval(SimState state, const Kernel& kernel, const GrowthSchedule& schedule, double t_end,
                            double step_max) {
  if (t_end < state.t) throw ContractViolation("integration end time precedes the current time");
  const auto limit = schedule.size();
  if (!limit || state.k < *limit) {
    const double next = schedule.injection_time(state.k + 1);
    if (next > state.t && next < t_end) {
      throw ContractViolation("injection time " + std::to_string(next) + " lies inside the integration interval");
    }
  }
  Rk4Integrator integrator;
  integrator.advance(state, kernel, t_end, step_max);
  return state;
}

void inject_agent_inplace(SimState& state, std::span<const double> x_new, double t_k) {
  if (x_new.size() != state.dim) {
    throw DomainError("injected opinion has dimension " + std::to_string(x_new.size()) + ", expected " +
                      std::to_string(state.dim));
  }
  if (std::abs(state.t - t_k) > kInjectionTimeTolerance) {
    throw ContractViolation("injection at t=" + std::to_string(t_k) + " but state is at t=" +
                            std::to_string(state.t));
  }
  state.x.insert(state.x.end(), x_new.begin(), x_new.end());
  state.k += 1;
  state.t = t_k;
}

SimState inject_agent(SimState state, std::span<const double> x_new, double t_k) {
  inject_agent_inplace(state, x_new, t_k);
  return state;
}

}  // namespace growpop
