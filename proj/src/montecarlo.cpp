#include "growpop/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "growpop/error.hpp"
#include "growpop/numeric.hpp"

namespace growpop {

namespace {

struct RunTrace {
  std::vector<GridPoint> grid;
  std::vector<double> w, v, m1_dev;
  std::vector<double> dv, v_minus;
};

RunTrace trace_run(const SimConfig& config, std::uint64_t seed) {
  const MomentSeries series = run_simulation(config, seed);
  const auto& m = config.source.mean();
  RunTrace tr;
  const auto& entries = series.entries();
  tr.grid.reserve(entries.size());
  tr.w.reserve(entries.size());
  tr.v.reserve(entries.size());
  tr.m1_dev.reserve(entries.size());
  for (const auto& e : entries) {
    tr.grid.push_back(GridPoint{e.record.t, e.event, e.k});
    tr.w.push_back(e.record.w);
    tr.v.push_back(e.record.v);
    tr.m1_dev.push_back(squared_distance(e.record.m1, m));
  }
  for (std::int64_t k = 1; k <= series.injections(); ++k) {
    const auto pair = series.injection(k);
    tr.dv.push_back(pair.after.v - pair.before.v);
    tr.v_minus.push_back(pair.before.v);
  }
  return tr;
}

// Mean and standard error of column `col` across runs, in run order.
std::pair<double, double> column_stats(const std::vector<RunTrace>& traces,
                                       const std::vector<double> RunTrace::*field, std::size_t col) {
  const double n = static_cast<double>(traces.size());
  CompensatedSum sum;
  for (const auto& tr : traces) sum += (tr.*field)[col];
  const double mean = sum.value() / n;
  CompensatedSum ss;
  for (const auto& tr : traces) {
    const double d = (tr.*field)[col] - mean;
    ss += d * d;
  }
  const double var = ss.value() / (n - 1.0);
  return {mean, std::sqrt(var / n)};
}

bool same_grid(const std::vector<GridPoint>& a, const std::vector<GridPoint>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].t != b[i].t || a[i].event != b[i].event || a[i].k != b[i].k) return false;
  }
  return true;
}

}  // namespace

unsigned default_workers() {
  if (const char* env = std::getenv("GROWPOP_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

EnsembleStats run_ensemble(const SimConfig& config, std::int64_t runs, std::uint64_t master_seed, unsigned workers) {
  if (runs < 2) throw DomainError("an ensemble needs at least 2 runs");
  config.validate();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(runs)));

  std::vector<RunTrace> traces(static_cast<std::size_t>(runs));
  std::atomic<std::int64_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::int64_t failed_run = -1;

  auto work = [&]() {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= runs) return;
      try {
        traces[static_cast<std::size_t>(i)] = trace_run(config, derive_run_seed(master_seed, static_cast<std::uint64_t>(i)));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error || i < failed_run) {
          first_error = std::current_exception();
          failed_run = i;
        }
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  if (first_error) {
    try {
      std::rethrow_exception(first_error);
    } catch (const std::exception& e) {
      throw std::runtime_error("ensemble run " + std::to_string(failed_run) + " failed: " + e.what());
    }
  }

  const auto& grid = traces.front().grid;
  for (const auto& tr : traces) {
    if (!same_grid(tr.grid, grid)) throw DiagnosticError("ensemble replicas produced different record grids");
  }

  EnsembleStats stats;
  stats.grid = grid;
  stats.runs = runs;
  stats.master_seed = master_seed;
  const std::size_t points = grid.size();
  for (auto* v : {&stats.mean_w, &stats.mean_v, &stats.mean_m1_dev, &stats.stderr_w, &stats.stderr_v,
                  &stats.stderr_m1_dev}) {
    v->resize(points);
  }
  for (std::size_t i = 0; i < points; ++i) {
    std::tie(stats.mean_w[i], stats.stderr_w[i]) = column_stats(traces, &RunTrace::w, i);
    std::tie(stats.mean_v[i], stats.stderr_v[i]) = column_stats(traces, &RunTrace::v, i);
    std::tie(stats.mean_m1_dev[i], stats.stderr_m1_dev[i]) = column_stats(traces, &RunTrace::m1_dev, i);
  }
  const std::size_t injections = traces.front().dv.size();
  stats.jumps.reserve(injections);
  for (std::size_t j = 0; j < injections; ++j) {
    JumpStats js{};
    js.k = static_cast<std::int64_t>(j + 1);
    std::tie(js.mean_dv, js.stderr_dv) = column_stats(traces, &RunTrace::dv, j);
    std::tie(js.mean_v_minus, js.stderr_v_minus) = column_stats(traces, &RunTrace::v_minus, j);
    stats.jumps.push_back(js);
  }
  return stats;
}

Estimate ensemble_statistic(const EnsembleStats& stats, Statistic which, std::int64_t at_k) {
  if (which == Statistic::JumpV || which == Statistic::VMinus) {
    if (at_k < 1 || at_k > static_cast<std::int64_t>(stats.jumps.size())) {
      throw RangeError("no injection " + std::to_string(at_k) + " in the ensemble");
    }
    const auto& js = stats.jumps[static_cast<std::size_t>(at_k - 1)];
    return which == Statistic::JumpV ? Estimate{js.mean_dv, js.stderr_dv} : Estimate{js.mean_v_minus, js.stderr_v_minus};
  }
  const Event wanted = at_k == 0 ? Event::Record : Event::PostJump;
  for (std::size_t i = 0; i < stats.grid.size(); ++i) {
    const auto& g = stats.grid[i];
    if (g.k == at_k && g.event == wanted) {
      switch (which) {
        case Statistic::W:
          return {stats.mean_w[i], stats.stderr_w[i]};
        case Statistic::V:
          return {stats.mean_v[i], stats.stderr_v[i]};
        default:
          return {stats.mean_m1_dev[i], stats.stderr_m1_dev[i]};
      }
    }
  }
  throw RangeError("no record for injection index " + std::to_string(at_k));
}

double IdentityCheck::z() const {
  const double diff = std::abs(estimate - expected);
  if (stderr_ == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / stderr_;
}

namespace {

template <class Draw>
IdentityCheck run_identity(std::int64_t draws, double expected, Draw draw) {
  if (draws < 2) throw DomainError("identity check needs at least 2 draws");
  std::vector<double> values(static_cast<std::size_t>(draws));
  CompensatedSum sum;
  for (auto& v : values) {
    v = draw();
    sum += v;
  }
  const double n = static_cast<double>(draws);
  const double mean = sum.value() / n;
  CompensatedSum ss;
  for (double v : values) ss += (v - mean) * (v - mean);
  return IdentityCheck{mean, std::sqrt(ss.value() / (n - 1.0) / n), expected};
}

}  // namespace

IdentityCheck check_pairwise_sum_identity(const OpinionSource& source, std::int64_t k, std::int64_t draws,
                                          std::uint64_t seed) {
  if (k < 2) throw DomainError("pairwise sum identity needs k >= 2");
  Rng rng(seed);
  const std::size_t d = source.dim();
  const double kk = static_cast<double>(k);
  return run_identity(draws, kk * (kk - 1.0) * source.sigma2(), [&]() {
    std::vector<std::vector<double>> xs;
    xs.reserve(static_cast<std::size_t>(k));
    for (std::int64_t j = 0; j < k; ++j) xs.push_back(source.sample(rng));
    const auto& xk = xs.back();
    std::vector<double> acc(d, 0.0);
    for (std::int64_t j = 0; j + 1 < k; ++j) {
      for (std::size_t c = 0; c < d; ++c) acc[c] += xs[static_cast<std::size_t>(j)][c] - xk[c];
    }
    return squared_norm(acc);
  });
}

IdentityCheck check_cross_term_identity(const OpinionSource& source, const std::vector<std::vector<double>>& x0,
                                        std::int64_t k, std::int64_t draws, std::uint64_t seed) {
  if (k < 2) throw DomainError("cross-term identity needs k >= 2");
  if (x0.empty()) throw DomainError("cross-term identity needs initial opinions");
  const std::size_t d = source.dim();
  std::vector<double> total(d, 0.0);
  for (const auto& p : x0) {
    if (p.size() != d) throw DomainError("initial opinion has the wrong dimension");
    for (std::size_t c = 0; c < d; ++c) total[c] += p[c];
  }
  const double n0 = static_cast<double>(x0.size());
  Rng rng(seed);
  return run_identity(draws, n0 * static_cast<double>(k - 1) * source.sigma2(), [&]() {
    std::vector<std::vector<double>> xs;
    xs.reserve(static_cast<std::size_t>(k));
    for (std::int64_t j = 0; j < k; ++j) xs.push_back(source.sample(rng));
    const auto& xk = xs.back();
    std::vector<double> lhs(d), rhs_sum(d, 0.0);
    for (std::size_t c = 0; c < d; ++c) lhs[c] = total[c] - n0 * xk[c];
    for (std::int64_t j = 0; j + 1 < k; ++j) {
      for (std::size_t c = 0; c < d; ++c) rhs_sum[c] += xs[static_cast<std::size_t>(j)][c] - xk[c];
    }
    return dot(lhs, rhs_sum);
  });
}

}  // namespace growpop
