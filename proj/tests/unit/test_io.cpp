#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "kinex/error.hpp"
#include "kinex/expfit.hpp"
#include "kinex/io.hpp"
#include "kinex/relaxation.hpp"
#include "kinex/rrn.hpp"

using namespace kinex;
using nlohmann::json;

TEST_CASE("fnv1a64 reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
  CHECK(hex64(0xabcULL) == "0x0000000000000abc");
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("model spec json round trip") {
  ModelSpec s;
  s.rule = ExchangeRule::DistributedSaving;
  s.lambda_window = {0.5, 1.0};
  s.epsilon = EpsilonMode::constant(0.5);
  s.init = {InitKind::UniformRandom, 2.0};
  CHECK(model_spec_from_json(to_json(s)) == s);
  CHECK(spec_hash(model_spec_from_json(to_json(s))) == spec_hash(s));

  ModelSpec l;
  l.pairing = {Pairing::Lattice2D, 10};
  CHECK(model_spec_from_json(to_json(l)) == l);
  ModelSpec other = s;
  other.lambda_window = {0.7, 1.0};
  CHECK(spec_hash(other) != spec_hash(s));
}

TEST_CASE("model spec json errors") {
  auto code = [](const char* text) {
    try {
      model_spec_from_json(json::parse(text));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  CHECK(code(R"({"rule":"bogus"})") == ErrorCode::ConfigError);
  CHECK(code(R"({"rule":"pure_gambling","colour":"red"})") == ErrorCode::ConfigError);
  CHECK(code(R"({"rule":"fixed_saving","lambda":1.0})") == ErrorCode::ConfigError);
  CHECK(code(R"({"rule":"pure_gambling","epsilon":"sometimes"})") == ErrorCode::ConfigError);
  CHECK(code(R"({"rule":"distributed_saving","lambda_window":[0.6,0.2]})") == ErrorCode::ConfigError);
}

TEST_CASE("rrn spec json round trip") {
  RrnSpec s;
  s.side = 24;
  s.g_window = {0.2, 1.0};
  s.init = RrnInit::Ramp;
  CHECK(rrn_spec_from_json(to_json(s)) == s);
}

TEST_CASE("series csv round trip") {
  ModelSpec spec;
  auto s = run_relaxation(spec, 10, 25, 3, 99, 1);
  std::ostringstream out;
  write_series_csv(out, s);
  const std::string text = out.str();
  CHECK(text.find("spec_hash=" + hex64(spec_hash(spec))) != std::string::npos);
  CHECK(text.find("seed=99") != std::string::npos);
  CHECK(text.find("n_configs=3") != std::string::npos);
  CHECK(text.find("\nt,x_mean\n") != std::string::npos);

  std::istringstream in(text);
  const auto back = read_series_csv(in);
  CHECK(back.x_mean == s.x_mean);
  CHECK(back.t == s.t);
  CHECK(back.master_seed == 99);
  CHECK(back.n_agents == 10);
  CHECK(back.n_configs == 3);
}

TEST_CASE("rrn series header carries L and the window") {
  RrnSpec spec;
  spec.side = 5;
  spec.g_window = {0.2, 1};
  const auto s = run_rrn_relaxation(spec, 12, 2, 1, 1);
  std::ostringstream out;
  write_series_csv(out, s);
  CHECK(out.str().find("L=5") != std::string::npos);
  CHECK(out.str().find("g_window=0.20000000000000001:1") != std::string::npos);
}

TEST_CASE("series csv rejects malformed input") {
  auto code = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_series_csv(in);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  CHECK(code("t,x_mean\n1,0.5\n1,0.4\n") == ErrorCode::ShapeError);
  CHECK(code("t,x_mean\n1,abc\n") == ErrorCode::ShapeError);
  CHECK(code("time,value\n1,0.5\n") == ErrorCode::ShapeError);
}

TEST_CASE("fit csv rows") {
  std::vector<double> x(30);
  for (int t = 1; t <= 30; ++t) x[t - 1] = std::exp(-t / 4.0);
  const auto s = RelaxationSeries::from_values(x);
  std::vector<FitRow> rows{{"a", FitForm::PureDecay, fit_pure(s, {2, 30}), "ok"},
                           {"b", FitForm::ShiftedApproach, std::nullopt, "NotDecaying"}};
  std::ostringstream out;
  write_fit_csv(out, rows);
  std::istringstream in(out.str());
  std::string line, header;
  while (std::getline(in, line) && line.rfind('#', 0) == 0) {
  }
  header = line;
  CHECK(header == "form,t_lo,t_hi,x0,amplitude,tau,r_squared,tau_stderr,label,status");
  std::getline(in, line);
  CHECK(line.rfind("pure,2,30,0,", 0) == 0);
  CHECK(line.find(",a,ok") != std::string::npos);
  std::getline(in, line);
  CHECK(line == "shifted,,,,,,,,b,NotDecaying");
}

TEST_CASE("write_file digests and creates directories") {
  const auto dir = std::filesystem::temp_directory_path() / "kinex_io_test" / "nested";
  std::filesystem::remove_all(dir.parent_path());
  const auto digest = write_file(dir / "x.txt", "foobar");
  CHECK(digest == fnv1a64("foobar"));
  CHECK(read_file(dir / "x.txt") == "foobar");
  try {
    read_file(dir / "missing.txt");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
  std::filesystem::remove_all(dir.parent_path());
}
