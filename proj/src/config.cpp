#include "growpop/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "growpop/error.hpp"

namespace growpop {

namespace {

using nlohmann::json;

std::string join(const std::string& prefix, const std::string& key) { return prefix.empty() ? key : prefix + "." + key; }

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double get_real(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

std::int64_t get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  return v.get<std::int64_t>();
}

std::uint64_t get_u64(const json& v, const std::string& path) {
  if (!v.is_number_unsigned()) throw ConfigError(path, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

const json& require(const json& obj, const char* key, const std::string& prefix) {
  const json* v = find(obj, key);
  if (!v) throw ConfigError(join(prefix, key), "missing required field");
  return *v;
}

std::vector<double> get_vector(const json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_real(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::int64_t> get_int_vector(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array of integers");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_int(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Kernel parse_kernel(const json& v) {
  if (!v.is_object()) throw ConfigError("kernel", "expected an object");
  const auto type = get_string(require(v, "type", "kernel"), "kernel.type");
  if (type == "constant") {
    const double c = get_real(require(v, "c", "kernel"), "kernel.c");
    if (!(c > 0.0)) throw ConfigError("kernel.c", "must be > 0");
    return Kernel::constant(c);
  }
  if (type == "rational") {
    const double a = get_real(require(v, "a", "kernel"), "kernel.a");
    const double b = get_real(require(v, "b", "kernel"), "kernel.b");
    if (!(a > 0.0)) throw ConfigError("kernel.a", "must be > 0");
    if (b < 0.0) throw ConfigError("kernel.b", "must be >= 0");
    return Kernel::rational_decay(a, b);
  }
  throw ConfigError("kernel.type", "unknown kernel type '" + type + "'");
}

GrowthSchedule parse_schedule(const json& v) {
  if (!v.is_object()) throw ConfigError("schedule", "expected an object");
  const auto type = get_string(require(v, "type", "schedule"), "schedule.type");
  const std::int64_t n0 = get_int(require(v, "n0", "schedule"), "schedule.n0");
  if (n0 < 1) throw ConfigError("schedule.n0", "must be >= 1");
  if (type == "power_exp") {
    const double alpha = get_real(require(v, "alpha", "schedule"), "schedule.alpha");
    if (!(alpha > 0.0)) throw ConfigError("schedule.alpha", "must be > 0");
    return GrowthSchedule::power_exponential(alpha, n0);
  }
  if (type == "explicit") {
    auto times = get_vector(require(v, "times", "schedule"), "schedule.times");
    try {
      return GrowthSchedule::explicit_times(n0, std::move(times));
    } catch (const DomainError& e) {
      throw ConfigError("schedule.times", e.what());
    }
  }
  throw ConfigError("schedule.type", "unknown schedule type '" + type + "'");
}

OpinionSource parse_source(const json& v, std::vector<std::string>& warnings) {
  if (!v.is_object()) throw ConfigError("source", "expected an object");
  const auto type = get_string(require(v, "type", "source"), "source.type");
  auto mean = get_vector(require(v, "m", "source"), "source.m");
  if (mean.empty()) throw ConfigError("source.m", "must have at least one coordinate");
  const double sigma2 = get_real(require(v, "sigma2", "source"), "source.sigma2");
  if (sigma2 < 0.0) throw ConfigError("source.sigma2", "must be >= 0");
  if (sigma2 == 0.0) {
    warnings.push_back("source.sigma2 = 0: every incoming opinion equals m; the non-convergence direction needs sigma2 > 0");
  }
  SourceKind kind;
  if (type == "gaussian") {
    kind = SourceKind::IsotropicGaussian;
  } else if (type == "uniform") {
    kind = SourceKind::UniformBox;
  } else if (type == "two_point") {
    kind = SourceKind::TwoPoint;
  } else {
    throw ConfigError("source.type", "unknown source type '" + type + "'");
  }
  return OpinionSource(kind, std::move(mean), sigma2);
}

RecordGrid parse_grid(const json& v) {
  if (!v.is_object()) throw ConfigError("record_grid", "expected an object");
  const auto type = get_string(require(v, "type", "record_grid"), "record_grid.type");
  if (type == "events") return RecordGrid::events();
  if (type == "uniform") {
    const double dt = get_real(require(v, "dt", "record_grid"), "record_grid.dt");
    if (!(dt > 0.0)) throw ConfigError("record_grid.dt", "must be > 0");
    return RecordGrid::uniform(dt);
  }
  if (type == "geometric") {
    const double t_first = get_real(require(v, "t_first", "record_grid"), "record_grid.t_first");
    const double ratio = get_real(require(v, "ratio", "record_grid"), "record_grid.ratio");
    if (!(t_first > 0.0)) throw ConfigError("record_grid.t_first", "must be > 0");
    if (!(ratio > 1.0)) throw ConfigError("record_grid.ratio", "must be > 1");
    return RecordGrid::geometric(t_first, ratio);
  }
  throw ConfigError("record_grid.type", "unknown record grid type '" + type + "'");
}

JumpBound parse_jump_bound(const json& v) {
  const std::string prefix = "envelope.jump_bound";
  if (!v.is_object()) throw ConfigError(prefix, "expected an object");
  const auto type = get_string(require(v, "type", prefix), prefix + ".type");
  if (type == "harmonic") return HarmonicScaled{get_real(require(v, "c", prefix), prefix + ".c")};
  if (type == "explicit") return ExplicitJumps{get_vector(require(v, "values", prefix), prefix + ".values")};
  throw ConfigError(prefix + ".type", "unknown jump bound type '" + type + "'");
}

std::vector<std::vector<double>> parse_initial(const json& v, const ExperimentConfig& cfg) {
  const std::string path = "initial_opinions";
  if (v.is_string()) {
    if (v.get<std::string>() != "mean") throw ConfigError(path, "only the string \"mean\" is accepted");
    if (!cfg.source || !cfg.schedule) throw ConfigError(path, "\"mean\" needs both source and schedule");
    return std::vector<std::vector<double>>(static_cast<std::size_t>(cfg.schedule->n0()), cfg.source->mean());
  }
  if (v.is_object()) {
    const auto type = get_string(require(v, "type", path), path + ".type");
    if (type != "sampled") throw ConfigError(path + ".type", "unknown initial opinion rule '" + type + "'");
    if (!cfg.source || !cfg.schedule) throw ConfigError(path, "\"sampled\" needs both source and schedule");
    Rng rng(get_u64(require(v, "seed", path), path + ".seed"));
    std::vector<std::vector<double>> out;
    for (std::int64_t i = 0; i < cfg.schedule->n0(); ++i) out.push_back(cfg.source->sample(rng));
    return out;
  }
  if (!v.is_array()) throw ConfigError(path, "expected an array, \"mean\", or {\"type\":\"sampled\"}");
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_vector(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::string locate(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

SimConfig ExperimentConfig::sim_config() const {
  if (!kernel) throw ConfigError("kernel", "missing required field");
  if (!schedule) throw ConfigError("schedule", "missing required field");
  if (!source) throw ConfigError("source", "missing required field");
  if (initial_opinions.empty()) throw ConfigError("initial_opinions", "missing required field");
  SimConfig sim{*kernel, *schedule, *source, initial_opinions, step_max, horizon, max_agents, record_grid};
  try {
    sim.validate();
  } catch (const DomainError& e) {
    throw ConfigError("", e.what());
  }
  return sim;
}

ExperimentConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", "parse error at " + locate(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
  if (!root.is_object()) throw ConfigError("", "top level must be a JSON object");

  ExperimentConfig cfg;
  if (const auto* v = find(root, "kernel")) cfg.kernel = parse_kernel(*v);
  if (const auto* v = find(root, "schedule")) cfg.schedule = parse_schedule(*v);
  if (const auto* v = find(root, "source")) cfg.source = parse_source(*v, cfg.warnings);
  if (const auto* v = find(root, "dim")) {
    const auto dim = get_int(*v, "dim");
    if (dim < 1) throw ConfigError("dim", "must be >= 1");
    if (cfg.source && static_cast<std::int64_t>(cfg.source->dim()) != dim) {
      throw ConfigError("source.m", "has " + std::to_string(cfg.source->dim()) + " coordinates but dim is " +
                                        std::to_string(dim));
    }
  }
  if (const auto* v = find(root, "initial_opinions")) cfg.initial_opinions = parse_initial(*v, cfg);
  if (cfg.schedule && !cfg.initial_opinions.empty() &&
      static_cast<std::int64_t>(cfg.initial_opinions.size()) != cfg.schedule->n0()) {
    throw ConfigError("initial_opinions", "expected " + std::to_string(cfg.schedule->n0()) + " opinions (schedule.n0)");
  }
  if (cfg.source) {
    for (std::size_t i = 0; i < cfg.initial_opinions.size(); ++i) {
      if (cfg.initial_opinions[i].size() != cfg.source->dim()) {
        throw ConfigError("initial_opinions[" + std::to_string(i) + "]", "dimension does not match source.m");
      }
    }
  }
  if (const auto* v = find(root, "step_max")) {
    cfg.step_max = get_real(*v, "step_max");
    if (!(cfg.step_max > 0.0)) throw ConfigError("step_max", "must be > 0");
  }
  if (const auto* v = find(root, "horizon")) {
    cfg.horizon = get_real(*v, "horizon");
    if (!(*cfg.horizon > 0.0)) throw ConfigError("horizon", "must be > 0");
  }
  if (const auto* v = find(root, "max_agents")) {
    cfg.max_agents = get_int(*v, "max_agents");
    if (*cfg.max_agents < 0) throw ConfigError("max_agents", "must be >= 0");
  }
  if (const auto* v = find(root, "record_grid")) cfg.record_grid = parse_grid(*v);
  if (const auto* v = find(root, "runs")) {
    cfg.runs = get_int(*v, "runs");
    if (cfg.runs < 2) throw ConfigError("runs", "must be >= 2");
  }
  if (const auto* v = find(root, "master_seed")) cfg.master_seed = get_u64(*v, "master_seed");
  if (const auto* v = find(root, "seed")) cfg.seed = get_u64(*v, "seed");
  if (const auto* v = find(root, "output_path")) cfg.output_path = get_string(*v, "output_path");
  if (const auto* v = find(root, "workers")) {
    const auto w = get_int(*v, "workers");
    if (w < 1) throw ConfigError("workers", "must be >= 1");
    cfg.workers = static_cast<unsigned>(w);
  }
  if (const auto* c = find(root, "conditions")) {
    if (!c->is_object()) throw ConfigError("conditions", "expected an object");
    if (const auto* v = find(*c, "lambdas")) cfg.conditions.lambdas = get_vector(*v, "conditions.lambdas");
    for (std::size_t i = 0; i < cfg.conditions.lambdas.size(); ++i) {
      if (!(cfg.conditions.lambdas[i] > 0.0)) {
        throw ConfigError("conditions.lambdas[" + std::to_string(i) + "]", "must be > 0");
      }
    }
    if (const auto* v = find(*c, "n_max")) {
      cfg.conditions.n_max = get_int(*v, "conditions.n_max");
      if (*cfg.conditions.n_max < 1) throw ConfigError("conditions.n_max", "must be >= 1");
    }
    if (const auto* v = find(*c, "n_grid")) cfg.conditions.n_grid = get_int_vector(*v, "conditions.n_grid");
  }
  if (const auto* e = find(root, "envelope")) {
    if (!e->is_object()) throw ConfigError("envelope", "expected an object");
    if (const auto* v = find(*e, "lambda")) {
      cfg.envelope.lambda = get_real(*v, "envelope.lambda");
      if (!(*cfg.envelope.lambda > 0.0)) throw ConfigError("envelope.lambda", "must be > 0");
    }
    if (const auto* v = find(*e, "y0")) {
      cfg.envelope.y0 = get_real(*v, "envelope.y0");
      if (cfg.envelope.y0 < 0.0) throw ConfigError("envelope.y0", "must be >= 0");
    }
    if (const auto* v = find(*e, "jump_bound")) cfg.envelope.jump_bound = parse_jump_bound(*v);
    if (const auto* v = find(*e, "n_grid")) cfg.envelope.n_grid = get_int_vector(*v, "envelope.n_grid");
    if (const auto* v = find(*e, "n_max")) cfg.envelope.n_max = get_int(*v, "envelope.n_max");
    if (const auto* v = find(*e, "side")) {
      const auto side = get_string(*v, "envelope.side");
      if (side == "upper") {
        cfg.envelope.side = EnvelopeSide::Upper;
      } else if (side == "lower") {
        cfg.envelope.side = EnvelopeSide::Lower;
      } else {
        throw ConfigError("envelope.side", "must be \"upper\" or \"lower\"");
      }
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace growpop
