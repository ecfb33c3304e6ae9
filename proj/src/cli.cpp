#include "growpop/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>

#include "growpop/analysis.hpp"
#include "growpop/config.hpp"
#include "growpop/csv.hpp"
#include "growpop/error.hpp"
#include "growpop/montecarlo.hpp"
#include "growpop/simulation.hpp"

namespace growpop {

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::int64_t> runs;
  std::optional<unsigned> workers;
  std::optional<double> alpha;
  std::optional<double> lambda;
  std::optional<std::int64_t> n_max;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON experiment config");
  cmd->add_option("--seed", f.seed, "seed (single run) or master seed (ensemble)");
  cmd->add_option("--out", f.out, "output path; stdout when omitted");
  cmd->add_option("--runs", f.runs, "ensemble replicas")->check(CLI::Range(2, 100000000));
  cmd->add_option("--workers", f.workers, "worker threads (default: GROWPOP_WORKERS or 1)")
      ->check(CLI::Range(1u, 4096u));
  cmd->add_option("--alpha", f.alpha, "growth exponent of N(t) = floor(exp(t^alpha))");
  cmd->add_option("--lambda", f.lambda, "decay rate used for both condition sums / the envelope");
  cmd->add_option("--n-max", f.n_max, "largest injection index");
}

ExperimentConfig load(const Flags& f) {
  ExperimentConfig cfg = f.config.empty() ? ExperimentConfig{} : load_config(f.config);
  if (f.alpha) {
    if (!(*f.alpha > 0.0)) throw ConfigError("schedule.alpha", "must be > 0");
    if (cfg.schedule) {
      if (!std::holds_alternative<PowerExponential>(cfg.schedule->variant())) {
        throw ConfigError("schedule.alpha", "--alpha needs a power_exp schedule");
      }
      cfg.schedule = GrowthSchedule::power_exponential(*f.alpha, cfg.schedule->n0());
    }
  }
  if (f.runs) cfg.runs = *f.runs;
  if (f.workers) cfg.workers = *f.workers;
  if (f.lambda && !(*f.lambda > 0.0)) throw ConfigError("lambda", "must be > 0");
  if (f.n_max && *f.n_max < 1) throw ConfigError("n_max", "must be >= 1");
  return cfg;
}

// Writes through `writer` to --out, else the config's output_path, else `out`.
template <class Writer>
void with_output(const Flags& f, const ExperimentConfig& cfg, std::ostream& out, Writer writer) {
  std::string path = f.out.empty() ? cfg.output_path.value_or("") : f.out;
  if (path.empty() || path == "-") {
    writer(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  writer(file);
  file.flush();
  if (!file) throw std::runtime_error("write to " + path + " failed");
}

void print_warnings(const ExperimentConfig& cfg, std::ostream& err) {
  for (const auto& w : cfg.warnings) err << "warning: " << w << '\n';
}

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int cmd_simulate(const Flags& f, std::ostream& out, std::ostream& err) {
  const auto cfg = load(f);
  print_warnings(cfg, err);
  const auto sim = cfg.sim_config();
  const std::uint64_t seed = f.seed.value_or(cfg.seed);
  const auto series = run_simulation(sim, seed);
  with_output(f, cfg, out, [&](std::ostream& os) { write_series_csv(os, series, {{"seed", std::to_string(seed)}}); });
  return kExitOk;
}

int cmd_ensemble(const Flags& f, std::ostream& out, std::ostream& err) {
  const auto cfg = load(f);
  print_warnings(cfg, err);
  const auto sim = cfg.sim_config();
  const std::uint64_t seed = f.seed.value_or(cfg.master_seed);
  const unsigned workers = cfg.workers.value_or(default_workers());
  const auto stats = run_ensemble(sim, cfg.runs, seed, workers);
  with_output(f, cfg, out, [&](std::ostream& os) {
    write_ensemble_csv(os, stats, {{"seed", std::to_string(seed)}, {"runs", std::to_string(cfg.runs)}});
  });
  return kExitOk;
}

int cmd_conditions(const Flags& f, std::ostream& out, std::ostream& err) {
  const auto cfg = load(f);
  print_warnings(cfg, err);

  std::optional<double> alpha = f.alpha;
  if (!alpha && cfg.schedule) {
    if (const auto* p = std::get_if<PowerExponential>(&cfg.schedule->variant())) alpha = p->alpha;
  }

  double psi_star = 0.0, psi_max = 0.0;
  if (f.lambda) {
    psi_star = psi_max = *f.lambda;
  } else if (cfg.conditions.lambdas.size() == 2) {
    psi_star = cfg.conditions.lambdas[0];
    psi_max = cfg.conditions.lambdas[1];
  } else if (cfg.kernel) {
    std::tie(psi_star, psi_max) = kernel_bounds(*cfg.kernel);
  } else {
    throw ConfigError("lambda", "give --lambda, conditions.lambdas = [psi_star, psi_max], or a kernel");
  }
  if (psi_star > psi_max) throw ConfigError("conditions.lambdas", "psi_star must not exceed psi_max");

  const std::int64_t n_max = f.n_max.value_or(cfg.conditions.n_max.value_or(100000));
  std::vector<std::int64_t> grid = (!f.n_max && !cfg.conditions.n_grid.empty()) ? cfg.conditions.n_grid
                                                                                 : decade_grid(n_max);
  const std::int64_t largest = *std::max_element(grid.begin(), grid.end());

  // A configured schedule supplies its own times (and n0); otherwise use
  // t_k = (ln k)^(1/alpha).
  std::vector<double> times;
  if (cfg.schedule && (!f.alpha || std::holds_alternative<PowerExponential>(cfg.schedule->variant()))) {
    times = cfg.schedule->injection_times(largest);
  } else if (alpha) {
    times = log_power_times(*alpha, largest);
  } else {
    throw ConfigError("schedule.alpha", "give --alpha or a schedule");
  }

  std::string label = "n/a";
  if (alpha && largest >= 10000) label = classification_name(classify_schedule(*alpha, psi_star, psi_max, largest));

  with_output(f, cfg, out, [&](std::ostream& os) {
    os << "n,t_n,s_psi_star,s_psi_max,classification\n";
    for (std::int64_t n : grid) {
      os << n << ',' << fmt12(times[static_cast<std::size_t>(n - 1)]) << ',' << fmt12(condition_sum(psi_star, times, n))
         << ',' << fmt12(condition_sum(psi_max, times, n)) << ',' << label << '\n';
    }
  });
  return kExitOk;
}

int cmd_envelope(const Flags& f, std::ostream& out, std::ostream& err) {
  const auto cfg = load(f);
  print_warnings(cfg, err);
  if (!cfg.schedule) throw ConfigError("schedule", "missing required field");
  if (!cfg.envelope.jump_bound) throw ConfigError("envelope.jump_bound", "missing required field");
  double lambda = 0.0;
  if (f.lambda) {
    lambda = *f.lambda;
  } else if (cfg.envelope.lambda) {
    lambda = *cfg.envelope.lambda;
  } else if (cfg.kernel) {
    lambda = cfg.envelope.side == EnvelopeSide::Upper ? cfg.kernel->psi_star() : cfg.kernel->psi_max();
  } else {
    throw ConfigError("envelope.lambda", "give --lambda, envelope.lambda, or a kernel");
  }
  const EnvelopeSpec spec{lambda, cfg.envelope.y0, *cfg.envelope.jump_bound};
  std::vector<std::int64_t> grid;
  if (f.n_max) {
    grid = decade_grid(*f.n_max);
  } else if (!cfg.envelope.n_grid.empty()) {
    grid = cfg.envelope.n_grid;
  } else {
    grid = decade_grid(cfg.envelope.n_max.value_or(1000));
  }
  with_output(f, cfg, out, [&](std::ostream& os) {
    os << "n,t_n,envelope\n";
    for (std::int64_t n : grid) {
      os << n << ',' << format_real(cfg.schedule->injection_time(n)) << ','
         << format_real(envelope_bound(spec, *cfg.schedule, n, cfg.envelope.side)) << '\n';
    }
  });
  return kExitOk;
}

int cmd_check(std::ostream& out) {
  bool all = true;
  for (const auto& r : run_builtin_oracles()) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    all = all && r.passed;
  }
  return all ? kExitOk : kExitRuntime;
}

}  // namespace

int cmd_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Opinion dynamics with a growing population: simulation and consensus diagnostics", "growpop"};
  app.require_subcommand(1);

  Flags sim_flags, ens_flags, cond_flags, env_flags;
  auto* simulate = app.add_subcommand("simulate", "run one trajectory and write its moment series as CSV");
  add_flags(simulate, sim_flags);
  auto* ensemble = app.add_subcommand("ensemble", "run independent replicas and write ensemble statistics as CSV");
  add_flags(ensemble, ens_flags);
  auto* conditions = app.add_subcommand("conditions", "tabulate the consensus condition sums and classify the growth");
  add_flags(conditions, cond_flags);
  auto* envelope = app.add_subcommand("envelope", "tabulate the jump-decay envelope bound");
  add_flags(envelope, env_flags);
  auto* check = app.add_subcommand("check", "run the built-in oracle suite");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*simulate) return cmd_simulate(sim_flags, out, err);
    if (*ensemble) return cmd_ensemble(ens_flags, out, err);
    if (*conditions) return cmd_conditions(cond_flags, out, err);
    if (*envelope) return cmd_envelope(env_flags, out, err);
    if (*check) return cmd_check(out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace growpop
