#pragma once

#include <cstdint>
#include <vector>

#include "growpop/observables.hpp"
#include "growpop/simulation.hpp"
#include "growpop/source.hpp"

namespace growpop {

struct GridPoint {
  double t;
  Event event;
  std::int64_t k;
};

struct JumpStats {
  std::int64_t k;
  double mean_dv;
  double stderr_dv;
  double mean_v_minus;
  double stderr_v_minus;
};

/// Pointwise sample means and standard errors (sample sd / sqrt(runs), with
/// the unbiased variance) over independent replicas sharing one grid.
struct EnsembleStats {
  std::vector<GridPoint> grid;
  std::vector<double> mean_w, mean_v, mean_m1_dev;
  std::vector<double> stderr_w, stderr_v, stderr_m1_dev;
  std::vector<JumpStats> jumps;  // index k-1
  std::int64_t runs = 0;
  std::uint64_t master_seed = 0;
};

/// Worker count from GROWPOP_WORKERS, falling back to 1.
unsigned default_workers();

/// Runs replicas 0..runs-1 with seeds derive_run_seed(master_seed, i).
/// Results do not depend on `workers`: each replica is independent and the
/// reduction runs in replica order.
EnsembleStats run_ensemble(const SimConfig& config, std::int64_t runs, std::uint64_t master_seed,
                           unsigned workers = 1);

enum class Statistic { W, V, M1Dev, JumpV, VMinus };

struct Estimate {
  double estimate;
  double stderr_;
};

/// Estimate at t_k+ (k = 0 is the initial state). JumpV and VMinus refer to
/// the injection k itself and need k >= 1.
Estimate ensemble_statistic(const EnsembleStats& stats, Statistic which, std::int64_t at_k);

struct IdentityCheck {
  double estimate;
  double stderr_;
  double expected;
  /// |estimate - expected| in units of stderr
  double z() const;
};

/// Monte Carlo estimate of E|sum_{j<k} (X_j - X_k)|^2 against k (k - 1) sigma2.
IdentityCheck check_pairwise_sum_identity(const OpinionSource& source, std::int64_t k, std::int64_t draws,
                                          std::uint64_t seed);

/// Monte Carlo estimate of E[(sum x0 - N0 X_k) . sum_{j<k}(X_j - X_k)] against
/// N0 (k - 1) sigma2.
IdentityCheck check_cross_term_identity(const OpinionSource& source, const std::vector<std::vector<double>>& x0,
                                        std::int64_t k, std::int64_t draws, std::uint64_t seed);

}  // namespace growpop
