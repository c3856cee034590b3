#include "kinex/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>
#include <variant>

#include "kinex/distribution.hpp"
#include "kinex/error.hpp"
#include "kinex/expfit.hpp"
#include "kinex/io.hpp"
#include "kinex/relaxation.hpp"
#include "kinex/rrn.hpp"

namespace kinex {

using nlohmann::json;

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::Relax: return "relax";
    case Experiment::Dist: return "dist";
    case Experiment::EpsSweep: return "eps-sweep";
    case Experiment::LambdaFamily: return "lambda-family";
    case Experiment::Rrn: return "rrn";
    case Experiment::Fit: return "fit";
  }
  return "unknown";
}

Experiment experiment_from_string(const std::string& name) {
  for (auto e : {Experiment::Relax, Experiment::Dist, Experiment::EpsSweep,
                 Experiment::LambdaFamily, Experiment::Rrn, Experiment::Fit}) {
    if (to_string(e) == name) return e;
  }
  fail(ErrorCode::ConfigError, "unknown experiment '" + name + "'");
}

bool CommandResult::all_checks_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

namespace {

std::vector<Interval> windows_from(const json& j, const char* key) {
  std::vector<Interval> out;
  if (!j.contains(key)) return out;
  if (!j[key].is_array()) fail(ErrorCode::ConfigError, std::string(key) + " must be a list");
  for (const auto& w : j[key]) {
    if (!w.is_array() || w.size() != 2) {
      fail(ErrorCode::ConfigError, std::string(key) + " entries must be [lo, hi] pairs");
    }
    out.push_back({w[0].get<double>(), w[1].get<double>()});
  }
  return out;
}

std::string tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string window_tag(Interval w) { return tag(w.lo) + "-" + tag(w.hi); }

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class OutputSink {
 public:
  OutputSink(std::filesystem::path dir, CommandResult& result)
      : dir_(std::move(dir)), result_(result) {}

  void write(const std::string& name, const std::string& content) {
    result_.outputs.push_back({name, write_file(dir_ / name, content)});
  }

  template <class Writer>
  void write_with(const std::string& name, Writer&& writer) {
    std::ostringstream out;
    writer(out);
    write(name, out.str());
  }

 private:
  std::filesystem::path dir_;
  CommandResult& result_;
};

// Potentials are in units of the 1 V bus bar, wealth in units of the mean
// wealth; X below a few ulps of that scale is rounding, not relaxation.
double natural_scale(const RelaxationSeries& s) {
  if (std::holds_alternative<RrnSpec>(s.source)) return 1.0;
  if (const auto* m = std::get_if<ModelSpec>(&s.source)) return m->init.mean_wealth;
  return 0.0;
}

bool is_flat(const RelaxationSeries& s) {
  const auto [lo, hi] = std::minmax_element(s.x_mean.begin(), s.x_mean.end());
  if (lo == s.x_mean.end() || *lo == *hi) return true;
  return std::max(std::abs(*lo), std::abs(*hi)) <= 1e-14 * natural_scale(s);
}

/// X0 from the series tail, window from auto_window, then the requested
/// fit. Failures become a status tag instead of an exception.
FitRow auto_fit(const RelaxationSeries& series, FitForm form, double tail_fraction,
                std::string label) {
  FitRow row;
  row.label = std::move(label);
  row.form = form;
  if (is_flat(series)) {
    row.status = std::string(error_code_name(ErrorCode::NotDecaying));
    return row;
  }
  try {
    const double x0 = equilibrium_window_mean(series, tail_fraction);
    const FitWindow window = auto_window(series, x0, tail_fraction);
    row.fit = form == FitForm::ShiftedApproach ? fit_shifted(series, window, x0)
                                               : fit_pure(series, window);
  } catch (const Error& e) {
    row.status = std::string(error_code_name(e.code()));
  }
  return row;
}

json fit_json(const FitRow& row) {
  json j{{"label", row.label}, {"form", to_string(row.form)}, {"status", row.status}};
  if (row.fit) {
    j["tau"] = row.fit->tau;
    j["tau_stderr"] = row.fit->tau_stderr;
    j["r_squared"] = row.fit->r_squared;
    j["window"] = {row.fit->window.lo, row.fit->window.hi};
  }
  return j;
}

void write_series(OutputSink& sink, const std::string& name, const RelaxationSeries& s) {
  sink.write_with(name, [&](std::ostream& out) { write_series_csv(out, s); });
}

struct TauRow {
  Interval window;
  FitRow fit;
};

void write_tau_table(OutputSink& sink, const std::vector<TauRow>& rows) {
  sink.write_with("tau_table.csv", [&](std::ostream& out) {
    out << "# kinex tau table, format 1\n";
    out << "# units: tau in time steps; rows sorted by window mean\n";
    out << "window_lo,window_hi,window_mean,tau,tau_stderr,r_squared,status\n";
    for (const auto& r : rows) {
      out << format_double(r.window.lo) << "," << format_double(r.window.hi) << ","
          << format_double(r.window.mid()) << ",";
      if (r.fit.fit) {
        out << format_double(r.fit.fit->tau) << "," << format_double(r.fit.fit->tau_stderr)
            << "," << format_double(r.fit.fit->r_squared);
      } else {
        out << ",,";
      }
      out << "," << r.fit.status << "\n";
    }
  });
}

std::vector<Interval> sorted_by_mean(std::vector<Interval> windows) {
  std::stable_sort(windows.begin(), windows.end(), [](Interval a, Interval b) {
    return a.mid() < b.mid() || (a.mid() == b.mid() && a.lo < b.lo);
  });
  return windows;
}

}  // namespace

void ExperimentConfig::validate() const {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) fail(ErrorCode::ConfigError, what);
  };
  need(tail_fraction > 0.0 && tail_fraction <= 0.5, "tail_fraction must lie in (0, 0.5]");
  need(t_max >= 2, "t_max must be at least 2");
  need(n_configs >= 1, "n_configs must be at least 1");
  auto model_ok = [&] {
    try {
      model.validate_for(n_agents);
    } catch (const Error& e) {
      fail(ErrorCode::ConfigError, e.what());
    }
  };
  switch (experiment) {
    case Experiment::Relax:
      model_ok();
      break;
    case Experiment::Dist:
      model_ok();
      need(n_snapshots >= 1 && sample_interval >= 1, "n_snapshots and sample_interval must be positive");
      need(hist_bins >= 1 && lambda_bins >= 1, "bin counts must be positive");
      break;
    case Experiment::EpsSweep:
      model_ok();
      need(!eps_values.empty(), "eps-sweep needs a non-empty eps_values list");
      need(model.rule == ExchangeRule::DistributedSaving, "eps-sweep needs the distributed_saving rule");
      for (double e : eps_values) need(e >= 0.0 && e <= 1.0, "eps_values must lie in [0,1]");
      break;
    case Experiment::LambdaFamily:
      need(!lambda_windows.empty(), "lambda-family needs a non-empty lambda_windows list");
      for (auto w : lambda_windows) {
        need(w.lo >= 0.0 && w.hi <= 1.0 && w.lo < w.hi, "lambda windows must satisfy 0 <= lo < hi <= 1");
      }
      break;
    case Experiment::Rrn:
      need(!g_windows.empty(), "rrn needs a non-empty g_windows list");
      for (auto w : g_windows) {
        RrnSpec s = rrn;
        s.g_window = w;
        try {
          s.validate();
        } catch (const Error& e) {
          fail(ErrorCode::ConfigError, e.what());
        }
      }
      break;
    case Experiment::Fit:
      need(input.has_value(), "fit needs an input series file");
      need(fit_form == "auto" || fit_form == "shifted" || fit_form == "pure",
           "fit_form must be auto, shifted or pure");
      break;
  }
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) fail(ErrorCode::ConfigError, "config must be a JSON object");
  static const char* known[] = {
      "experiment", "model", "n_agents", "t_max", "n_configs", "master_seed", "output_dir",
      "tail_fraction", "eps_values", "lambda_windows", "g_windows", "rrn", "dense_check",
      "equilibration", "max_equilibration", "n_snapshots", "sample_interval", "hist_bins",
      "lambda_bins", "input", "fit_form"};
  for (const auto& item : j.items()) {
    if (std::find(std::begin(known), std::end(known), item.key()) == std::end(known)) {
      fail(ErrorCode::ConfigError, "unknown config key '" + item.key() + "'");
    }
  }
  ExperimentConfig cfg;
  cfg.raw = j;
  try {
    if (j.contains("experiment")) cfg.experiment = experiment_from_string(j["experiment"].get<std::string>());
    if (j.contains("model")) cfg.model = model_spec_from_json(j["model"]);
    cfg.n_agents = j.value("n_agents", cfg.n_agents);
    cfg.t_max = j.value("t_max", cfg.t_max);
    cfg.n_configs = j.value("n_configs", cfg.n_configs);
    cfg.master_seed = j.value("master_seed", cfg.master_seed);
    if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
    cfg.tail_fraction = j.value("tail_fraction", cfg.tail_fraction);
    if (j.contains("eps_values")) cfg.eps_values = j["eps_values"].get<std::vector<double>>();
    cfg.lambda_windows = windows_from(j, "lambda_windows");
    cfg.g_windows = windows_from(j, "g_windows");
    if (j.contains("rrn")) cfg.rrn = rrn_spec_from_json(j["rrn"]);
    cfg.dense_check = j.value("dense_check", cfg.dense_check);
    if (j.contains("equilibration")) cfg.equilibration = j["equilibration"].get<std::size_t>();
    cfg.max_equilibration = j.value("max_equilibration", cfg.max_equilibration);
    cfg.n_snapshots = j.value("n_snapshots", cfg.n_snapshots);
    cfg.sample_interval = j.value("sample_interval", cfg.sample_interval);
    cfg.hist_bins = j.value("hist_bins", cfg.hist_bins);
    cfg.lambda_bins = j.value("lambda_bins", cfg.lambda_bins);
    if (j.contains("input")) cfg.input = j["input"].get<std::string>();
    cfg.fit_form = j.value("fit_form", cfg.fit_form);
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ConfigError, path.string() + ": " + e.what());
  }
  return parse_config(j);
}

CommandResult cmd_relax(const ExperimentConfig& cfg, const RunOptions& opt) {
  CommandResult result;
  OutputSink sink(opt.output_dir, result);
  const auto series = run_relaxation(cfg.model, cfg.n_agents, cfg.t_max, cfg.n_configs,
                                     cfg.master_seed, opt.threads);
  write_series(sink, "series_relax.csv", series);

  std::vector<FitRow> rows{auto_fit(series, FitForm::ShiftedApproach, cfg.tail_fraction, "relax")};
  if (cfg.model.epsilon.fixed && *cfg.model.epsilon.fixed == 0.5) {
    rows.push_back(auto_fit(series, FitForm::PureDecay, cfg.tail_fraction, "relax"));
  }
  sink.write_with("fit_relax.csv", [&](std::ostream& out) { write_fit_csv(out, rows); });

  const auto tail = equilibrium_tail(series, cfg.tail_fraction);
  result.report["x0"] = tail.mean;
  result.report["x0_stderr"] = tail.std_error;
  for (const auto& r : rows) result.report["fits"].push_back(fit_json(r));
  return result;
}

CommandResult cmd_lambda_family(const ExperimentConfig& cfg, const RunOptions& opt) {
  CommandResult result;
  OutputSink sink(opt.output_dir, result);
  ModelSpec model = cfg.model;
  model.rule = ExchangeRule::DistributedSaving;
  const bool eps_given = cfg.raw.contains("model") && cfg.raw["model"].contains("epsilon");
  if (!eps_given) model.epsilon = EpsilonMode::constant(0.5);

  std::vector<TauRow> table;
  std::vector<FitRow> fits;
  for (const Interval w : sorted_by_mean(cfg.lambda_windows)) {
    model.lambda_window = w;
    const auto series = run_relaxation(model, cfg.n_agents, cfg.t_max, cfg.n_configs,
                                       cfg.master_seed, opt.threads);
    write_series(sink, "series_lambda_" + window_tag(w) + ".csv", series);
    FitRow row = auto_fit(series, FitForm::PureDecay, cfg.tail_fraction, "lambda_" + window_tag(w));
    fits.push_back(row);
    table.push_back({w, row});
  }
  sink.write_with("fit_lambda.csv", [&](std::ostream& out) { write_fit_csv(out, fits); });
  write_tau_table(sink, table);

  if (table.size() > 1) {
    bool increasing = true;
    for (std::size_t k = 0; k + 1 < table.size(); ++k) {
      const auto& a = table[k].fit.fit;
      const auto& b = table[k + 1].fit.fit;
      increasing = increasing && a && b && a->tau < b->tau;
    }
    result.checks.push_back({"tau_increases_with_lambda_mean", increasing,
                             "fitted tau strictly increasing in window mean"});
  }
  for (const auto& r : fits) result.report["fits"].push_back(fit_json(r));
  return result;
}

CommandResult cmd_eps_sweep(const ExperimentConfig& cfg, const RunOptions& opt) {
  CommandResult result;
  OutputSink sink(opt.output_dir, result);
  ModelSpec model = cfg.model;

  struct Cell {
    double eps;
    TailStats tail;
  };
  std::vector<Cell> cells;
  std::vector<FitRow> fits;
  for (double eps : cfg.eps_values) {
    model.epsilon = EpsilonMode::constant(eps);
    const auto series = run_relaxation(model, cfg.n_agents, cfg.t_max, cfg.n_configs,
                                       cfg.master_seed, opt.threads);
    write_series(sink, "series_eps_" + tag(eps) + ".csv", series);
    cells.push_back({eps, equilibrium_tail(series, cfg.tail_fraction)});
    fits.push_back(auto_fit(series, FitForm::ShiftedApproach, cfg.tail_fraction, "eps_" + tag(eps)));
  }
  const auto best = static_cast<std::size_t>(
      std::min_element(cells.begin(), cells.end(),
                       [](const Cell& a, const Cell& b) { return a.tail.mean < b.tail.mean; }) -
      cells.begin());

  sink.write_with("x0_table.csv", [&](std::ostream& out) {
    out << "# kinex X0 table, format 1\n";
    out << "# units: x0 in money units (trailing-window mean)\n";
    out << "eps,x0,x0_stderr,is_min\n";
    for (std::size_t k = 0; k < cells.size(); ++k) {
      out << format_double(cells[k].eps) << "," << format_double(cells[k].tail.mean) << ","
          << format_double(cells[k].tail.std_error) << "," << (k == best ? 1 : 0) << "\n";
    }
  });
  sink.write_with("fit_eps.csv", [&](std::ostream& out) { write_fit_csv(out, fits); });

  result.report["argmin_eps"] = cells[best].eps;
  if (std::any_of(cells.begin(), cells.end(), [](const Cell& c) { return c.eps == 0.5; }) &&
      cells.size() > 1) {
    double runner_up = INFINITY, worst_se = 0.0;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      worst_se = std::max(worst_se, cells[k].tail.std_error);
      if (k != best) runner_up = std::min(runner_up, cells[k].tail.mean);
    }
    const double margin = runner_up - cells[best].tail.mean;
    result.report["margin"] = margin;
    result.checks.push_back({"x0_minimum_at_half", cells[best].eps == 0.5 && margin > 3.0 * worst_se,
                             "margin " + format_double(margin) + " vs 3 x stderr " +
                                 format_double(3.0 * worst_se)});
  }
  for (const auto& a : cells) {
    for (const auto& b : cells) {
      if (a.eps < 0.5 && std::abs((a.eps + b.eps) - 1.0) < 1e-12) {
        const double tol = 3.0 * std::hypot(a.tail.std_error, b.tail.std_error);
        result.checks.push_back({"symmetric_x0_" + tag(a.eps) + "_" + tag(b.eps),
                                 std::abs(a.tail.mean - b.tail.mean) <= tol,
                                 "difference " + format_double(std::abs(a.tail.mean - b.tail.mean)) +
                                     " vs " + format_double(tol)});
      }
    }
  }
  for (const auto& r : fits) result.report["fits"].push_back(fit_json(r));
  return result;
}

CommandResult cmd_dist(const ExperimentConfig& cfg, const RunOptions& opt) {
  CommandResult result;
  OutputSink sink(opt.output_dir, result);

  std::size_t equilibration = 50;
  if (cfg.equilibration) {
    equilibration = *cfg.equilibration;
  } else {
    const auto series = run_relaxation(cfg.model, cfg.n_agents, cfg.t_max, cfg.n_configs,
                                       cfg.master_seed, opt.threads);
    write_series(sink, "series_dist.csv", series);
    const FitRow row = auto_fit(series, FitForm::ShiftedApproach, cfg.tail_fraction, "dist");
    if (row.fit) {
      equilibration = std::max<std::size_t>(50, static_cast<std::size_t>(std::ceil(5.0 * row.fit->tau)));
    }
    equilibration = std::min(equilibration, cfg.max_equilibration);
    result.report["equilibration_fit"] = fit_json(row);
  }
  result.report["equilibration"] = equilibration;

  const auto sample = sample_equilibrium(cfg.model, cfg.n_agents, equilibration, cfg.n_snapshots,
                                         cfg.sample_interval, cfg.n_configs, cfg.master_seed,
                                         opt.threads);
  const auto hist = make_histogram(sample.wealth, cfg.hist_bins);
  sink.write_with("hist_dist.csv", [&](std::ostream& out) { write_histogram_csv(out, hist); });

  double mean = 0.0;
  for (double w : sample.wealth) mean += w;
  mean /= static_cast<double>(sample.wealth.size());
  result.report["mean_wealth"] = mean;
  result.report["mode_bin"] = hist.mode_bin();

  try {
    const auto semilog = fit_semilog_histogram(hist);
    const double expected = -1.0 / mean;
    const double rel = std::abs(semilog.slope - expected) / std::abs(expected);
    result.report["semilog"] = {{"slope", semilog.slope},
                                {"expected_slope", expected},
                                {"relative_error", rel},
                                {"r_squared", semilog.r_squared},
                                {"bins_used", semilog.bins_used}};
    if (cfg.model.rule == ExchangeRule::PureGambling) {
      result.checks.push_back({"boltzmann_gibbs_slope", rel < 0.05 && semilog.r_squared > 0.98,
                               "slope " + format_double(semilog.slope) + " vs " +
                                   format_double(expected) + ", r2 " +
                                   format_double(semilog.r_squared)});
    }
  } catch (const Error& e) {
    result.report["semilog"] = {{"status", std::string(error_code_name(e.code()))}};
  }

  if (cfg.model.rule == ExchangeRule::FixedSaving && cfg.model.lambda_fixed > 0.0) {
    result.checks.push_back({"gamma_mode_positive", hist.mode_bin() > 0,
                             "mode bin " + std::to_string(hist.mode_bin())});
  }
  if (cfg.model.rule == ExchangeRule::DistributedSaving) {
    const auto bins = bin_by_lambda(sample.agent_lambda, sample.agent_mean_wealth,
                                    cfg.model.lambda_window, cfg.lambda_bins);
    sink.write_with("lambda_bins.csv", [&](std::ostream& out) {
      out << "# kinex lambda-binned wealth, format 1\n";
      out << "# units: mean_wealth in money units (time-averaged per agent)\n";
      out << "lambda_lo,lambda_hi,agents,mean_wealth\n";
      for (const auto& b : bins) {
        out << format_double(b.lo) << "," << format_double(b.hi) << "," << b.agents << ","
            << format_double(b.mean_wealth) << "\n";
      }
    });
    bool monotone = true;
    for (std::size_t k = 0; k + 1 < bins.size(); ++k) {
      monotone = monotone && bins[k].mean_wealth <= bins[k + 1].mean_wealth;
    }
    result.checks.push_back({"wealth_nondecreasing_in_lambda", monotone,
                             std::to_string(bins.size()) + " lambda bins"});
  }
  return result;
}

CommandResult cmd_rrn(const ExperimentConfig& cfg, const RunOptions& opt) {
  CommandResult result;
  OutputSink sink(opt.output_dir, result);

  std::vector<TauRow> table;
  std::vector<FitRow> fits;
  for (const Interval w : sorted_by_mean(cfg.g_windows)) {
    RrnSpec spec = cfg.rrn;
    spec.g_window = w;
    const auto series = run_rrn_relaxation(spec, cfg.t_max, cfg.n_configs, cfg.master_seed, opt.threads);
    write_series(sink, "series_rrn_" + window_tag(w) + ".csv", series);
    FitRow row = auto_fit(series, FitForm::PureDecay, cfg.tail_fraction, "rrn_" + window_tag(w));
    fits.push_back(row);
    table.push_back({w, row});

    if (cfg.dense_check) {
      RngStream rng(cfg.master_seed, 0);
      const auto lattice = build_lattice(spec, rng);
      const double err = dense_solver_discrepancy(lattice);
      result.report["dense_check"].push_back({{"window", {w.lo, w.hi}}, {"max_error", err}});
      result.checks.push_back({"dense_solver_" + window_tag(w), err < 1e-8,
                               "max |V_sweep - V_dense| = " + format_double(err)});
    }
  }
  sink.write_with("fit_rrn.csv", [&](std::ostream& out) { write_fit_csv(out, fits); });
  write_tau_table(sink, table);

  if (table.size() > 1) {
    bool distinct = true;
    for (std::size_t a = 0; a < table.size(); ++a) {
      for (std::size_t b = a + 1; b < table.size(); ++b) {
        const auto& fa = table[a].fit.fit;
        const auto& fb = table[b].fit.fit;
        distinct = distinct && fa && fb &&
                   std::abs(fa->tau - fb->tau) > fa->tau_stderr + fb->tau_stderr;
      }
    }
    result.checks.push_back({"tau_distinct_across_windows", distinct,
                             "pairwise |dtau| beyond summed fit standard errors"});
  }
  for (const auto& r : fits) result.report["fits"].push_back(fit_json(r));
  return result;
}

CommandResult cmd_fit(const ExperimentConfig& cfg, const RunOptions& opt) {
  CommandResult result;
  OutputSink sink(opt.output_dir, result);
  std::istringstream in(read_file(*cfg.input));
  const auto series = read_series_csv(in);
  const std::string label = cfg.input->stem().string();

  std::vector<FitRow> rows;
  if (cfg.fit_form != "pure") rows.push_back(auto_fit(series, FitForm::ShiftedApproach, cfg.tail_fraction, label));
  if (cfg.fit_form != "shifted") rows.push_back(auto_fit(series, FitForm::PureDecay, cfg.tail_fraction, label));
  sink.write_with("fit_" + label + ".csv", [&](std::ostream& out) { write_fit_csv(out, rows); });
  for (const auto& r : rows) result.report["fits"].push_back(fit_json(r));
  return result;
}

CommandResult run_experiment(const ExperimentConfig& cfg_in, const RunOptions& opt_in) {
  RunOptions opt = opt_in;
  if (opt.output_dir.empty()) opt.output_dir = cfg_in.output_dir;
  cfg_in.validate();
  const std::string started = utc_now();

  CommandResult result;
  switch (cfg_in.experiment) {
    case Experiment::Relax: result = cmd_relax(cfg_in, opt); break;
    case Experiment::Dist: result = cmd_dist(cfg_in, opt); break;
    case Experiment::EpsSweep: result = cmd_eps_sweep(cfg_in, opt); break;
    case Experiment::LambdaFamily: result = cmd_lambda_family(cfg_in, opt); break;
    case Experiment::Rrn: result = cmd_rrn(cfg_in, opt); break;
    case Experiment::Fit: result = cmd_fit(cfg_in, opt); break;
  }

  json manifest;
  manifest["tool"] = "kinex";
  manifest["version"] = kVersion;
  manifest["experiment"] = to_string(cfg_in.experiment);
  manifest["config"] = cfg_in.raw;
  manifest["effective"] = {{"master_seed", cfg_in.master_seed},
                           {"n_agents", cfg_in.n_agents},
                           {"t_max", cfg_in.t_max},
                           {"n_configs", cfg_in.n_configs}};
  manifest["started_at"] = started;
  manifest["finished_at"] = utc_now();
  manifest["outputs"] = json::array();
  for (const auto& o : result.outputs) {
    manifest["outputs"].push_back({{"file", o.name}, {"fnv1a64", hex64(o.digest)}});
  }
  manifest["checks"] = json::array();
  for (const auto& c : result.checks) {
    manifest["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  manifest["report"] = result.report;
  write_file(opt.output_dir / "manifest.json", manifest.dump(2) + "\n");
  return result;
}

int exit_code(const CommandResult& result, bool strict) {
  return strict && !result.all_checks_passed() ? 3 : 0;
}

}  // namespace kinex
