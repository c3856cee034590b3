#include "kinex/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "kinex/error.hpp"

namespace kinex {

using nlohmann::json;

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

json interval_json(Interval w) { return json::array({w.lo, w.hi}); }

Interval interval_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail(ErrorCode::ConfigError, std::string(what) + " must be a [lo, hi] pair of numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) fail(ErrorCode::ConfigError, "unknown key '" + key + "' in " + where);
  }
}

}  // namespace

json to_json(const ModelSpec& spec) {
  json j;
  j["rule"] = to_string(spec.rule);
  switch (spec.rule) {
    case ExchangeRule::FixedSaving:
      j["lambda"] = spec.lambda_fixed;
      break;
    case ExchangeRule::DistributedSaving:
      j["lambda_window"] = interval_json(spec.lambda_window);
      break;
    case ExchangeRule::General:
      j["eps1_window"] = interval_json(spec.eps1_window);
      j["eps2_window"] = interval_json(spec.eps2_window);
      break;
    default:
      break;
  }
  if (spec.rule != ExchangeRule::General) {
    j["epsilon"] = spec.epsilon.fixed ? json(*spec.epsilon.fixed) : json("uniform");
  }
  j["pairing"] = spec.pairing.kind == Pairing::Lattice2D ? "lattice2d" : "mean_field";
  if (spec.pairing.kind == Pairing::Lattice2D) j["lattice_side"] = spec.pairing.side;
  const char* kind = spec.init.kind == InitKind::EqualUnit       ? "equal_unit"
                     : spec.init.kind == InitKind::UniformRandom ? "uniform_random"
                                                                 : "delta";
  j["init"] = {{"kind", kind}, {"mean_wealth", spec.init.mean_wealth}};
  return j;
}

ModelSpec model_spec_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::ConfigError, "model must be an object");
  reject_unknown(j, {"rule", "lambda", "lambda_window", "epsilon", "eps1_window", "eps2_window",
                     "pairing", "lattice_side", "init"},
                 "model");
  ModelSpec spec;
  try {
    const std::string rule = j.at("rule").get<std::string>();
    if (rule == "pure_gambling") spec.rule = ExchangeRule::PureGambling;
    else if (rule == "fixed_saving") spec.rule = ExchangeRule::FixedSaving;
    else if (rule == "distributed_saving") spec.rule = ExchangeRule::DistributedSaving;
    else if (rule == "general") spec.rule = ExchangeRule::General;
    else fail(ErrorCode::ConfigError, "unknown rule '" + rule + "'");

    if (j.contains("lambda")) spec.lambda_fixed = j["lambda"].get<double>();
    if (j.contains("lambda_window")) spec.lambda_window = interval_from(j["lambda_window"], "lambda_window");
    if (j.contains("eps1_window")) spec.eps1_window = interval_from(j["eps1_window"], "eps1_window");
    if (j.contains("eps2_window")) spec.eps2_window = interval_from(j["eps2_window"], "eps2_window");
    if (j.contains("epsilon")) {
      const auto& e = j["epsilon"];
      if (e.is_string() && (e == "uniform" || e == "random")) {
        spec.epsilon = EpsilonMode::random_uniform();
      } else if (e.is_number()) {
        spec.epsilon = EpsilonMode::constant(e.get<double>());
      } else {
        fail(ErrorCode::ConfigError, "epsilon must be a number or \"uniform\"");
      }
    }
    const std::string pairing = j.value("pairing", std::string("mean_field"));
    if (pairing == "lattice2d") {
      spec.pairing = {Pairing::Lattice2D, j.at("lattice_side").get<std::size_t>()};
    } else if (pairing != "mean_field") {
      fail(ErrorCode::ConfigError, "unknown pairing '" + pairing + "'");
    }
    if (j.contains("init")) {
      const auto& init = j["init"];
      const std::string kind = init.is_string() ? init.get<std::string>()
                                                : init.value("kind", std::string("equal_unit"));
      if (kind == "equal_unit") spec.init.kind = InitKind::EqualUnit;
      else if (kind == "uniform_random") spec.init.kind = InitKind::UniformRandom;
      else if (kind == "delta") spec.init.kind = InitKind::DeltaAtOneAgent;
      else fail(ErrorCode::ConfigError, "unknown init kind '" + kind + "'");
      if (init.is_object()) spec.init.mean_wealth = init.value("mean_wealth", 1.0);
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("model: ") + e.what());
  }
  try {
    spec.validate();
  } catch (const Error& e) {
    fail(ErrorCode::ConfigError, e.what());
  }
  return spec;
}

json to_json(const RrnSpec& spec) {
  return {{"side", spec.side},
          {"g_window", interval_json(spec.g_window)},
          {"init", to_string(spec.init)},
          {"initial_potential", spec.initial_potential}};
}

RrnSpec rrn_spec_from_json(const json& j) {
  RrnSpec spec;
  try {
    spec.side = j.value("side", spec.side);
    if (j.contains("g_window")) spec.g_window = interval_from(j["g_window"], "g_window");
    const std::string init = j.value("init", std::string("uniform"));
    if (init == "ramp") spec.init = RrnInit::Ramp;
    else if (init != "uniform") fail(ErrorCode::ConfigError, "unknown rrn init '" + init + "'");
    spec.initial_potential = j.value("initial_potential", spec.initial_potential);
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("rrn: ") + e.what());
  }
  return spec;
}

std::uint64_t spec_hash(const ModelSpec& spec) { return fnv1a64(to_json(spec).dump()); }
std::uint64_t spec_hash(const RrnSpec& spec) { return fnv1a64(to_json(spec).dump()); }

void write_series_csv(std::ostream& out, const RelaxationSeries& s) {
  out << "# kinex series, format 1\n";
  if (const auto* m = std::get_if<ModelSpec>(&s.source)) {
    out << "# source=exchange spec_hash=" << hex64(spec_hash(*m)) << " seed=" << s.master_seed
        << " n=" << s.n_agents << " n_configs=" << s.n_configs << "\n";
    out << "# spec=" << to_json(*m).dump() << "\n";
    out << "# units: t in time steps (N interactions each); x_mean in money units\n";
  } else if (const auto* r = std::get_if<RrnSpec>(&s.source)) {
    out << "# source=rrn spec_hash=" << hex64(spec_hash(*r)) << " seed=" << s.master_seed
        << " n=" << s.n_agents << " n_configs=" << s.n_configs << " L=" << r->side
        << " g_window=" << format_double(r->g_window.lo) << ":" << format_double(r->g_window.hi)
        << "\n";
    out << "# spec=" << to_json(*r).dump() << "\n";
    out << "# units: t in sweeps; x_mean in volts\n";
  } else {
    out << "# source=none n=" << s.n_agents << " n_configs=" << s.n_configs << "\n";
  }
  out << "t,x_mean\n";
  for (std::size_t k = 0; k < s.size(); ++k) {
    out << s.t[k] << "," << format_double(s.x_mean[k]) << "\n";
  }
}

RelaxationSeries read_series_csv(std::istream& in) {
  RelaxationSeries s;
  std::string line;
  bool header = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream tokens(line.substr(1));
      std::string tok;
      while (tokens >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
        try {
          if (key == "seed") s.master_seed = std::stoull(value);
          else if (key == "n") s.n_agents = std::stoull(value);
          else if (key == "n_configs") s.n_configs = std::stoull(value);
        } catch (const std::exception&) {
          // provenance is informational; ignore malformed values
        }
      }
      continue;
    }
    if (!header) {
      if (line != "t,x_mean") fail(ErrorCode::ShapeError, "expected header 't,x_mean', got '" + line + "'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      fail(ErrorCode::ShapeError, "line " + std::to_string(lineno) + ": expected two columns");
    }
    try {
      s.t.push_back(std::stoll(line.substr(0, comma)));
      s.x_mean.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      fail(ErrorCode::ShapeError, "line " + std::to_string(lineno) + ": unparsable number");
    }
    if (s.t.size() > 1 && s.t.back() <= s.t[s.t.size() - 2]) {
      fail(ErrorCode::ShapeError, "line " + std::to_string(lineno) + ": t must increase");
    }
  }
  if (!header) fail(ErrorCode::ShapeError, "missing 't,x_mean' header");
  return s;
}

void write_fit_csv(std::ostream& out, const std::vector<FitRow>& rows) {
  out << "# kinex fits, format 1\n";
  out << "# units: t_lo, t_hi, tau in time steps; x0, amplitude in series units\n";
  out << "form,t_lo,t_hi,x0,amplitude,tau,r_squared,tau_stderr,label,status\n";
  for (const auto& row : rows) {
    out << to_string(row.form) << ",";
    if (row.fit) {
      const auto& f = *row.fit;
      out << f.window.lo << "," << f.window.hi << "," << format_double(f.x0) << ","
          << format_double(f.amplitude) << "," << format_double(f.tau) << ","
          << format_double(f.r_squared) << "," << format_double(f.tau_stderr);
    } else {
      out << ",,,,,,";
    }
    out << "," << row.label << "," << row.status << "\n";
  }
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
  out << "# kinex histogram, format 1\n";
  out << "# units: bin edges in money units; density per money unit\n";
  out << "bin_lo,bin_hi,count,density\n";
  for (std::size_t b = 0; b < h.bins(); ++b) {
    out << format_double(h.bin_lo[b]) << "," << format_double(h.bin_hi[b]) << "," << h.count[b]
        << "," << format_double(h.density[b]) << "\n";
  }
}

std::uint64_t write_file(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) fail(ErrorCode::IoError, "write to '" + path.string() + "' failed");
  return fnv1a64(content);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace kinex
