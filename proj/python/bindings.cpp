#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "kinex/error.hpp"
#include "kinex/exchange.hpp"
#include "kinex/experiments.hpp"
#include "kinex/expfit.hpp"
#include "kinex/io.hpp"
#include "kinex/ode.hpp"
#include "kinex/relaxation.hpp"
#include "kinex/rrn.hpp"

namespace py = pybind11;
using namespace kinex;

namespace {

// dict <-> json through the json module keeps the binding free of a
// converter for every nlohmann type.
nlohmann::json to_json_value(const py::object& obj) {
  auto dumps = py::module_::import("json").attr("dumps");
  return nlohmann::json::parse(dumps(obj).cast<std::string>());
}

py::object from_json_value(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "kinex C++ core";
  m.attr("__version__") = kVersion;

  auto error = py::register_exception<Error>(m, "KinexError", PyExc_RuntimeError);
  (void)error;

  py::enum_<ErrorCode>(m, "ErrorCode")
      .value("InvalidSize", ErrorCode::InvalidSize)
      .value("TopologyMismatch", ErrorCode::TopologyMismatch)
      .value("InvalidParameter", ErrorCode::InvalidParameter)
      .value("ShapeError", ErrorCode::ShapeError)
      .value("InsufficientData", ErrorCode::InsufficientData)
      .value("NotDecaying", ErrorCode::NotDecaying)
      .value("WindowContainsCrossing", ErrorCode::WindowContainsCrossing)
      .value("LogDomainError", ErrorCode::LogDomainError)
      .value("NoDecayWindow", ErrorCode::NoDecayWindow)
      .value("ConfigError", ErrorCode::ConfigError)
      .value("IoError", ErrorCode::IoError);

  py::enum_<ExchangeRule>(m, "ExchangeRule")
      .value("PureGambling", ExchangeRule::PureGambling)
      .value("FixedSaving", ExchangeRule::FixedSaving)
      .value("DistributedSaving", ExchangeRule::DistributedSaving)
      .value("General", ExchangeRule::General);

  py::class_<Interval>(m, "Interval")
      .def(py::init<>())
      .def(py::init([](double lo, double hi) { return Interval{lo, hi}; }), py::arg("lo"), py::arg("hi"))
      .def_readwrite("lo", &Interval::lo)
      .def_readwrite("hi", &Interval::hi)
      .def("__repr__", [](const Interval& w) {
        return "Interval(" + format_double(w.lo) + ", " + format_double(w.hi) + ")";
      });

  // Specs travel as the same JSON objects the config files use.
  py::class_<ModelSpec>(m, "ModelSpec")
      .def(py::init<>())
      .def_static("from_dict", [](const py::dict& d) { return model_spec_from_json(to_json_value(d)); })
      .def("to_dict", [](const ModelSpec& s) { return from_json_value(to_json(s)); })
      .def("validate", &ModelSpec::validate)
      .def("validate_for", &ModelSpec::validate_for)
      .def("spec_hash", [](const ModelSpec& s) { return hex64(spec_hash(s)); })
      .def_readwrite("rule", &ModelSpec::rule)
      .def_readwrite("lambda_fixed", &ModelSpec::lambda_fixed)
      .def_readwrite("lambda_window", &ModelSpec::lambda_window);

  py::class_<RrnSpec>(m, "RrnSpec")
      .def(py::init<>())
      .def_static("from_dict", [](const py::dict& d) { return rrn_spec_from_json(to_json_value(d)); })
      .def("to_dict", [](const RrnSpec& s) { return from_json_value(to_json(s)); })
      .def_readwrite("side", &RrnSpec::side)
      .def_readwrite("g_window", &RrnSpec::g_window);

  py::class_<RelaxationSeries>(m, "RelaxationSeries")
      .def_static("from_values", &RelaxationSeries::from_values)
      .def_readonly("t", &RelaxationSeries::t)
      .def_readonly("x_mean", &RelaxationSeries::x_mean)
      .def_readonly("n_configs", &RelaxationSeries::n_configs)
      .def_readonly("n_agents", &RelaxationSeries::n_agents)
      .def_readonly("master_seed", &RelaxationSeries::master_seed)
      .def("__len__", &RelaxationSeries::size)
      .def("to_csv", [](const RelaxationSeries& s) {
        std::ostringstream out;
        write_series_csv(out, s);
        return out.str();
      });

  py::class_<FitWindow>(m, "FitWindow")
      .def(py::init([](std::int64_t lo, std::int64_t hi) { return FitWindow{lo, hi}; }))
      .def_readonly("lo", &FitWindow::lo)
      .def_readonly("hi", &FitWindow::hi);

  py::class_<ExpFitResult>(m, "ExpFitResult")
      .def_readonly("x0", &ExpFitResult::x0)
      .def_readonly("amplitude", &ExpFitResult::amplitude)
      .def_readonly("tau", &ExpFitResult::tau)
      .def_readonly("window", &ExpFitResult::window)
      .def_readonly("r_squared", &ExpFitResult::r_squared)
      .def_readonly("tau_stderr", &ExpFitResult::tau_stderr)
      .def_property_readonly("form", [](const ExpFitResult& r) { return to_string(r.form); });

  m.def("exchange_pure_gambling", [](double wi, double wj, double eps) {
    const auto p = exchange_pure_gambling(wi, wj, eps);
    return py::make_tuple(p.i, p.j);
  });
  m.def("exchange_fixed_saving", [](double wi, double wj, double lambda, double eps) {
    const auto p = exchange_fixed_saving(wi, wj, lambda, eps);
    return py::make_tuple(p.i, p.j);
  });
  m.def("exchange_distributed_saving", [](double wi, double wj, double li, double lj, double eps) {
    const auto p = exchange_distributed_saving(wi, wj, li, lj, eps);
    return py::make_tuple(p.i, p.j);
  });
  m.def("exchange_general", [](double wi, double wj, double e1, double e2) {
    const auto p = exchange_general(wi, wj, e1, e2);
    return py::make_tuple(p.i, p.j);
  });

  m.def("compute_x", [](const std::vector<double>& prev, const std::vector<double>& curr) {
    return compute_x(prev, curr);
  });
  m.def("run_relaxation", &run_relaxation, py::arg("spec"), py::arg("n_agents"), py::arg("t_max"),
        py::arg("n_configs"), py::arg("master_seed"), py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("run_rrn_relaxation", &run_rrn_relaxation, py::arg("spec"), py::arg("t_max"),
        py::arg("n_configs"), py::arg("master_seed"), py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("equilibrium_window_mean", &equilibrium_window_mean, py::arg("series"),
        py::arg("tail_fraction") = 0.25);

  m.def("fit_shifted", &fit_shifted, py::arg("series"), py::arg("window"), py::arg("x0"));
  m.def("fit_pure", &fit_pure, py::arg("series"), py::arg("window"));
  m.def("auto_window", &auto_window, py::arg("series"), py::arg("x0"), py::arg("tail_fraction") = 0.25);

  m.def("map_random_saving", [](double li, double lj, double eps) {
    const auto p = map_random_saving(li, lj, eps);
    return py::make_tuple(p.eps1, p.eps2);
  });
  m.def("decay_rate", [](double eps1, double eps2) { return decay_rate({eps1, eps2}); });
  m.def("predict", &predict, py::arg("a"), py::arg("b"), py::arg("k"), py::arg("t"));
  m.def("k_positive_for_half", &k_positive_for_half);
  m.def("sample_k_positivity", [](Interval window, std::size_t samples, std::uint64_t seed) {
    RngStream rng(seed, 0);
    const auto c = sample_k_positivity(window, samples, rng);
    return py::dict(py::arg("samples") = c.samples, py::arg("violations") = c.violations,
                    py::arg("min_k") = c.min_k, py::arg("max_k") = c.max_k);
  });

  m.def("dense_solver_discrepancy", [](const RrnSpec& spec, std::uint64_t seed) {
    RngStream rng(seed, 0);
    return dense_solver_discrepancy(build_lattice(spec, rng));
  });

  m.def(
      "run_experiment",
      [](const std::string& experiment, const py::dict& config, const std::string& out_dir,
         unsigned threads) {
        auto cfg = parse_config(to_json_value(config));
        cfg.experiment = experiment_from_string(experiment);
        RunOptions opt;
        opt.output_dir = out_dir;
        opt.threads = threads;
        CommandResult result;
        {
          py::gil_scoped_release release;
          result = run_experiment(cfg, opt);
        }
        py::list checks;
        for (const auto& c : result.checks) {
          checks.append(py::dict(py::arg("name") = c.name, py::arg("passed") = c.passed,
                                 py::arg("detail") = c.detail));
        }
        py::dict outputs;
        for (const auto& o : result.outputs) outputs[py::str(o.name)] = hex64(o.digest);
        return py::dict(py::arg("outputs") = outputs, py::arg("checks") = checks,
                        py::arg("report") = from_json_value(result.report));
      },
      py::arg("experiment"), py::arg("config"), py::arg("out_dir"), py::arg("threads") = 0);
}
