#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "growpop/analysis.hpp"
#include "growpop/dynamics.hpp"
#include "growpop/error.hpp"
#include "growpop/kernel.hpp"
#include "growpop/montecarlo.hpp"
#include "growpop/observables.hpp"
#include "growpop/schedule.hpp"
#include "growpop/simulation.hpp"
#include "growpop/source.hpp"

namespace py = pybind11;
using namespace growpop;

namespace {

py::array_t<double> as_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::dict series_to_dict(const MomentSeries& series) {
  const auto& entries = series.entries();
  const std::size_t rows = entries.size();
  const std::size_t d = series.dim();
  std::vector<double> t(rows), m2(rows), v(rows), w(rows), dis(rows);
  std::vector<std::int64_t> n(rows), k(rows);
  py::array_t<double> m1({rows, d});
  auto m1v = m1.mutable_unchecked<2>();
  std::vector<std::string> events(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& r = entries[i].record;
    t[i] = r.t;
    n[i] = r.n;
    k[i] = entries[i].k;
    for (std::size_t c = 0; c < d; ++c) m1v(i, c) = r.m1[c];
    m2[i] = r.m2;
    v[i] = r.v;
    w[i] = r.w;
    dis[i] = r.dissipation;
    events[i] = event_name(entries[i].event);
  }
  std::vector<std::vector<double>> injected;
  for (std::int64_t j = 1; j <= series.injections(); ++j) injected.push_back(series.injection(j).x_new);

  py::dict out;
  out["t"] = as_array(t);
  out["n"] = py::array_t<std::int64_t>(rows, n.data());
  out["k"] = py::array_t<std::int64_t>(rows, k.data());
  out["m1"] = m1;
  out["m2"] = as_array(m2);
  out["v"] = as_array(v);
  out["w"] = as_array(w);
  out["dissipation"] = as_array(dis);
  out["event"] = events;
  out["injected"] = injected;
  return out;
}

py::dict stats_to_dict(const EnsembleStats& s) {
  std::vector<double> t;
  std::vector<std::string> events;
  std::vector<std::int64_t> k;
  for (const auto& g : s.grid) {
    t.push_back(g.t);
    events.push_back(event_name(g.event));
    k.push_back(g.k);
  }
  std::vector<double> dv, dv_err, vm, vm_err;
  for (const auto& j : s.jumps) {
    dv.push_back(j.mean_dv);
    dv_err.push_back(j.stderr_dv);
    vm.push_back(j.mean_v_minus);
    vm_err.push_back(j.stderr_v_minus);
  }
  py::dict out;
  out["t"] = as_array(t);
  out["k"] = py::array_t<std::int64_t>(k.size(), k.data());
  out["event"] = events;
  out["mean_w"] = as_array(s.mean_w);
  out["stderr_w"] = as_array(s.stderr_w);
  out["mean_v"] = as_array(s.mean_v);
  out["stderr_v"] = as_array(s.stderr_v);
  out["mean_m1_dev"] = as_array(s.mean_m1_dev);
  out["stderr_m1_dev"] = as_array(s.stderr_m1_dev);
  out["mean_jump_v"] = as_array(dv);
  out["stderr_jump_v"] = as_array(dv_err);
  out["mean_v_minus"] = as_array(vm);
  out["stderr_v_minus"] = as_array(vm_err);
  out["runs"] = s.runs;
  return out;
}

JumpBound make_jump_bound(const py::object& g) {
  if (py::isinstance<py::float_>(g) || py::isinstance<py::int_>(g)) return HarmonicScaled{g.cast<double>()};
  return ExplicitJumps{g.cast<std::vector<double>>()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Opinion dynamics with a growing population (C++ core).";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<RangeError>(m, "RangeError", PyExc_IndexError);
  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_RuntimeError);
  py::register_exception<DiagnosticError>(m, "DiagnosticError", PyExc_RuntimeError);

  py::class_<Kernel>(m, "Kernel")
      .def_static("constant", &Kernel::constant, py::arg("c"))
      .def_static("rational_decay", &Kernel::rational_decay, py::arg("a"), py::arg("b"))
      .def("__call__", &Kernel::operator(), py::arg("r"))
      .def_property_readonly("psi_star", &Kernel::psi_star)
      .def_property_readonly("psi_max", &Kernel::psi_max)
      .def_property_readonly("lipschitz", &Kernel::lipschitz)
      .def_property_readonly("is_constant", &Kernel::is_constant);

  py::class_<GrowthSchedule>(m, "GrowthSchedule")
      .def_static("power_exponential", &GrowthSchedule::power_exponential, py::arg("alpha"), py::arg("n0"))
      .def_static("explicit_times", &GrowthSchedule::explicit_times, py::arg("n0"), py::arg("times"))
      .def_property_readonly("n0", &GrowthSchedule::n0)
      .def("injection_time", &GrowthSchedule::injection_time, py::arg("j"))
      .def("injection_times", &GrowthSchedule::injection_times, py::arg("count"))
      .def("population_at", &GrowthSchedule::population_at, py::arg("t"));

  py::enum_<SourceKind>(m, "SourceKind")
      .value("GAUSSIAN", SourceKind::IsotropicGaussian)
      .value("UNIFORM", SourceKind::UniformBox)
      .value("TWO_POINT", SourceKind::TwoPoint);

  py::class_<OpinionSource>(m, "OpinionSource")
      .def(py::init<SourceKind, std::vector<double>, double>(), py::arg("kind"), py::arg("mean"), py::arg("sigma2"))
      .def_property_readonly("mean", &OpinionSource::mean)
      .def_property_readonly("sigma2", &OpinionSource::sigma2)
      .def(
          "sample",
          [](const OpinionSource& s, std::size_t count, std::uint64_t seed) {
            Rng rng(seed);
            py::array_t<double> out({count, s.dim()});
            auto view = out.mutable_unchecked<2>();
            for (std::size_t i = 0; i < count; ++i) {
              const auto x = s.sample(rng);
              for (std::size_t c = 0; c < x.size(); ++c) view(i, c) = x[c];
            }
            return out;
          },
          py::arg("count"), py::arg("seed"));

  py::class_<RecordGrid>(m, "RecordGrid")
      .def_static("events", &RecordGrid::events)
      .def_static("uniform", &RecordGrid::uniform, py::arg("dt"))
      .def_static("geometric", &RecordGrid::geometric, py::arg("t_first"), py::arg("ratio"));

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init([](Kernel kernel, GrowthSchedule schedule, OpinionSource source,
                       std::vector<std::vector<double>> initial, double step_max, std::optional<double> horizon,
                       std::optional<std::int64_t> max_agents, RecordGrid grid) {
             SimConfig cfg{std::move(kernel), std::move(schedule), std::move(source), std::move(initial),
                           step_max,          horizon,             max_agents,        grid};
             cfg.validate();
             return cfg;
           }),
           py::arg("kernel"), py::arg("schedule"), py::arg("source"), py::arg("initial_opinions"),
           py::arg("step_max") = 1e-2, py::arg("horizon") = py::none(), py::arg("max_agents") = py::none(),
           py::arg("record_grid") = RecordGrid::events())
      .def_property_readonly("end_time", &SimConfig::end_time);

  py::class_<SimState>(m, "SimState")
      .def(py::init([](const std::vector<std::vector<double>>& points, double t, std::int64_t k) {
             return SimState::from_points(points, t, k);
           }),
           py::arg("opinions"), py::arg("t") = 0.0, py::arg("k") = 0)
      .def_readonly("t", &SimState::t)
      .def_readonly("k", &SimState::k)
      .def_readonly("dim", &SimState::dim)
      .def_property_readonly("population", &SimState::population)
      .def("opinions", &SimState::points);

  py::class_<MomentRecord>(m, "MomentRecord")
      .def_readonly("t", &MomentRecord::t)
      .def_readonly("n", &MomentRecord::n)
      .def_readonly("m1", &MomentRecord::m1)
      .def_readonly("m2", &MomentRecord::m2)
      .def_readonly("v", &MomentRecord::v)
      .def_readonly("w", &MomentRecord::w)
      .def_readonly("dissipation", &MomentRecord::dissipation);

  m.def("rhs", &rhs, py::arg("state"), py::arg("kernel"));
  m.def("integrate_interval", &integrate_interval, py::arg("state"), py::arg("kernel"), py::arg("schedule"),
        py::arg("t_end"), py::arg("step_max"));
  m.def(
      "inject_agent",
      [](SimState s, const std::vector<double>& x, double t_k) { return inject_agent(std::move(s), x, t_k); },
      py::arg("state"), py::arg("x_new"), py::arg("t_k"));
  m.def(
      "compute_moments",
      [](const SimState& s, const Kernel& k, const std::vector<double>& target) { return compute_moments(s, k, target); },
      py::arg("state"), py::arg("kernel"), py::arg("m"));
  m.def(
      "predict_jumps",
      [](const MomentRecord& before, const std::vector<double>& x, std::int64_t k, std::int64_t n0) {
        const auto p = predict_jumps(before, x, k, n0);
        return py::make_tuple(p.dm1, p.dm2, p.dv);
      },
      py::arg("record_minus"), py::arg("x_new"), py::arg("k"), py::arg("n0"));
  m.def("jump_coefficient", &jump_coefficient, py::arg("k"), py::arg("n0"));

  m.def(
      "run_simulation", [](const SimConfig& c, std::uint64_t seed) { return series_to_dict(run_simulation(c, seed)); },
      py::arg("config"), py::arg("seed"));
  m.def(
      "run_ensemble",
      [](const SimConfig& c, std::int64_t runs, std::uint64_t seed, unsigned workers) {
        EnsembleStats stats;
        {
          py::gil_scoped_release release;
          stats = run_ensemble(c, runs, seed, workers);
        }
        return stats_to_dict(stats);
      },
      py::arg("config"), py::arg("runs"), py::arg("master_seed"), py::arg("workers") = 1);
  m.def("derive_run_seed", &derive_run_seed, py::arg("master_seed"), py::arg("run_index"));

  m.def(
      "condition_sum",
      [](double lambda, const std::vector<double>& times, std::int64_t n) { return condition_sum(lambda, times, n); },
      py::arg("lam"), py::arg("times"), py::arg("n"));
  m.def(
      "condition_sum",
      [](double lambda, const GrowthSchedule& s, std::int64_t n) { return condition_sum(lambda, s, n); },
      py::arg("lam"), py::arg("schedule"), py::arg("n"));
  m.def("log_power_times", &log_power_times, py::arg("alpha"), py::arg("count"));
  m.def("dawson_F", &dawson_F, py::arg("p"), py::arg("lam"), py::arg("x"));

  py::enum_<Classification>(m, "Classification")
      .value("CONVERGES_C1", Classification::ConvergesC1)
      .value("FAILS_C2", Classification::FailsC2)
      .value("EXPONENTIAL_BOUNDARY", Classification::ExponentialBoundary);
  m.def("classify_schedule", &classify_schedule, py::arg("alpha"), py::arg("psi_star"), py::arg("psi_max"),
        py::arg("n_max") = 10000);

  py::enum_<EnvelopeSide>(m, "EnvelopeSide").value("UPPER", EnvelopeSide::Upper).value("LOWER", EnvelopeSide::Lower);
  m.def(
      "envelope_bound",
      [](double lambda, double y0, const py::object& g, const GrowthSchedule& s, std::int64_t n, EnvelopeSide side) {
        return envelope_bound(EnvelopeSpec{lambda, y0, make_jump_bound(g)}, s, n, side);
      },
      py::arg("lam"), py::arg("y0"), py::arg("g"), py::arg("schedule"), py::arg("n"),
      py::arg("side") = EnvelopeSide::Upper,
      "g is either a number c (g(n) = c / n) or a sequence g(1), g(2), ...");
  m.def(
      "fit_decay_exponent",
      [](const std::vector<double>& t, const std::vector<double>& values, double window) {
        if (t.size() != values.size()) throw DomainError("t and values must have the same length");
        std::vector<std::pair<double, double>> series;
        for (std::size_t i = 0; i < t.size(); ++i) series.emplace_back(t[i], values[i]);
        const auto fit = fit_decay_exponent(series, window);
        return py::make_tuple(fit.beta_hat, fit.r2);
      },
      py::arg("t"), py::arg("values"), py::arg("window") = 0.5);
}
