#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "growpop/analysis.hpp"
#include "growpop/kernel.hpp"
#include "growpop/schedule.hpp"
#include "growpop/simulation.hpp"
#include "growpop/source.hpp"

namespace growpop {

struct ConditionsBlock {
  std::vector<double> lambdas;
  std::optional<std::int64_t> n_max;
  std::vector<std::int64_t> n_grid;
};

struct EnvelopeBlock {
  std::optional<double> lambda;
  double y0 = 0.0;
  std::optional<JumpBound> jump_bound;
  std::vector<std::int64_t> n_grid;
  std::optional<std::int64_t> n_max;
  EnvelopeSide side = EnvelopeSide::Upper;
};

/// Everything a CLI command may need. Blocks absent from the file stay empty;
/// `sim_config()` assembles and validates the simulation part on demand.
struct ExperimentConfig {
  std::optional<Kernel> kernel;
  std::optional<GrowthSchedule> schedule;
  std::optional<OpinionSource> source;
  std::vector<std::vector<double>> initial_opinions;
  double step_max = 1e-2;
  std::optional<double> horizon;
  std::optional<std::int64_t> max_agents;
  RecordGrid record_grid;

  std::int64_t runs = 100;
  std::uint64_t master_seed = 0;
  std::uint64_t seed = 0;
  std::optional<std::string> output_path;
  std::optional<unsigned> workers;

  ConditionsBlock conditions;
  EnvelopeBlock envelope;

  /// Non-fatal remarks (e.g. sigma2 = 0).
  std::vector<std::string> warnings;

  /// ConfigError naming the missing field when a required block is absent.
  SimConfig sim_config() const;
};

/// Parse and validate a JSON config. ConfigError carries the dotted field
/// path for semantic problems, and "line L, column C" for syntax errors.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace growpop
