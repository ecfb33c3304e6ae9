#include <cmath>
#include <sstream>

#include "growpop/analysis.hpp"
#include "growpop/cli.hpp"
#include "growpop/observables.hpp"
#include "growpop/simulation.hpp"

namespace growpop {

namespace {

OracleResult constant_decay() {
  SimConfig cfg{Kernel::constant(1.0),
                GrowthSchedule::explicit_times(4, {5.0}),
                OpinionSource(SourceKind::IsotropicGaussian, {0.0}, 1.0),
                {{-1.5}, {0.0}, {0.5}, {2.0}},
                1e-3,
                1.0,
                std::nullopt,
                RecordGrid::uniform(0.1)};
  const auto records = run_simulation(cfg, 1).records();
  const double v0 = records.front().v;
  double worst = 0.0;
  for (const auto& r : records) {
    const double expected = v0 * std::exp(-2.0 * r.t);
    worst = std::max(worst, std::abs(r.v - expected) / expected);
  }
  std::ostringstream detail;
  detail << "max relative error " << worst;
  return {"constant_kernel_decay", worst <= 1e-6, detail.str()};
}

OracleResult mean_conservation() {
  SimConfig cfg{Kernel::rational_decay(0.5, 0.5),
                GrowthSchedule::explicit_times(5, {20.0}),
                OpinionSource(SourceKind::IsotropicGaussian, {0.0}, 1.0),
                {{-3.0}, {-1.0}, {0.2}, {0.7}, {4.0}},
                1e-2,
                10.0,
                std::nullopt,
                RecordGrid::events()};
  const auto records = run_simulation(cfg, 1).records();
  const double drift = std::abs(records.back().m1[0] - records.front().m1[0]);
  std::ostringstream detail;
  detail << "m1 drift " << drift;
  return {"mean_conservation", drift <= 1e-9, detail.str()};
}

OracleResult jump_formulas() {
  SimConfig cfg{Kernel::rational_decay(0.5, 0.5),
                GrowthSchedule::power_exponential(1.0, 3),
                OpinionSource(SourceKind::IsotropicGaussian, {0.3}, 1.0),
                {{-1.0}, {0.5}, {1.0}},
                1e-2,
                std::nullopt,
                50,
                RecordGrid::events()};
  const auto series = run_simulation(cfg, 7);
  double worst = 0.0;
  for (std::int64_t k = 1; k <= series.injections(); ++k) {
    const auto pair = series.injection(k);
    const auto pred = predict_jumps(pair.before, pair.x_new, k, 3);
    const double n = static_cast<double>(3 + k);
    const double scale_m1 = (std::abs(pair.x_new[0]) + std::abs(pair.before.m1[0])) / n;
    const double scale_m2 = (pair.x_new[0] * pair.x_new[0] + pair.before.m2) / n;
    worst = std::max(worst, std::abs(pair.after.m1[0] - pair.before.m1[0] - pred.dm1[0]) / scale_m1);
    worst = std::max(worst, std::abs(pair.after.m2 - pair.before.m2 - pred.dm2) / scale_m2);
    worst = std::max(worst, std::abs(pair.after.v - pair.before.v - pred.dv) / scale_m2);
  }
  std::ostringstream detail;
  detail << "max scaled error " << worst << " over " << series.injections() << " injections";
  return {"jump_formulas", worst <= 1e-12, detail.str()};
}

OracleResult exponential_sum() {
  const std::int64_t n = 1000;
  std::vector<double> times(static_cast<std::size_t>(n));
  for (std::int64_t k = 1; k <= n; ++k) times[static_cast<std::size_t>(k - 1)] = std::log(static_cast<double>(k));
  const double s1 = condition_sum(1.0, times, n);
  const double s2 = condition_sum(2.0, times, n);
  const double expected2 = static_cast<double>(n + 1) / (2.0 * static_cast<double>(n));
  const double err = std::max(std::abs(s1 - 1.0), std::abs(s2 - expected2));
  std::ostringstream detail;
  detail << "S_1(1000)=" << s1 << " S_2(1000)=" << s2;
  return {"exponential_condition_sum", err <= 1e-12, detail.str()};
}

OracleResult dawson_closed_form() {
  double worst = 0.0;
  for (double x : {0.1, 1.0, 10.0, 30.0}) {
    const double expected = -std::expm1(-x);
    worst = std::max(worst, std::abs(dawson_F(1.0, 1.0, x) - expected) / expected);
  }
  std::ostringstream detail;
  detail << "max relative error " << worst;
  return {"dawson_p1", worst <= 1e-8, detail.str()};
}

}  // namespace

std::vector<OracleResult> run_builtin_oracles() {
  return {constant_decay(), mean_conservation(), jump_formulas(), exponential_sum(), dawson_closed_form()};
}

}  // namespace growpop
