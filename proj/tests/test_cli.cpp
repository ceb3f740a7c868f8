// Command-line front end, exercised in-process: JSON outputs for each verb,
// worked examples with pencil-and-paper values, the error contract (exit 2 on
// input errors, 3 on numeric failures, JSON diagnostics on stderr), config
// files, CSV emission, and byte-identical reruns under a fixed seed.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "subw/cli.hpp"
#include "subw/tails.hpp"

using namespace subw;
using nlohmann::json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string write_temp(const std::string& name, const std::vector<double>& values) {
  const std::filesystem::path p = std::filesystem::temp_directory_path() / name;
  std::ofstream f(p);
  for (double v : values) f << v << "\n";
  return p.string();
}

std::string write_temp_text(const std::string& name, const std::string& text) {
  const std::filesystem::path p = std::filesystem::temp_directory_path() / name;
  std::ofstream f(p);
  f << text;
  return p.string();
}

}  // namespace

TEST_CASE("constants verb emits the envelope bundle") {
  const CliResult r = run_cli({"constants", "--theta", "0.5"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["gamma"].get<double>() > 1.77);
  CHECK(j["gamma"].get<double>() < 1.79);
  CHECK(j["big_c"].get<double>() > 0.0);
}

TEST_CASE("norm verb worked examples") {
  const CliResult exp1 = run_cli(
      {"norm", "--dist", "exponential:1", "--family", "phi", "--theta", "1"});
  REQUIRE(exp1.code == 0);
  CHECK(json::parse(exp1.out)["value"].get<double>() ==
        doctest::Approx(1.0).epsilon(1e-9));

  const CliResult pois = run_cli(
      {"norm", "--dist", "centered:poisson:1", "--family", "phi", "--theta", "1"});
  REQUIRE(pois.code == 0);
  CHECK(json::parse(pois.out)["value"].get<double>() ==
        doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-4));
}

TEST_CASE("bound verb radius at delta = 2/e") {
  // log(2 / (2/e)) = 1, so the radius is the deviation curve at t = 1.
  const CliResult r = run_cli({"bound", "--theorem", "1b", "--theta", "2",
                               "--norms", "1", "--weights", "1", "--delta", "2/e"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["t"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  tails::WeightedFamily fam;
  fam.weights = {1.0};
  fam.psi_norms = {1.0};
  fam.theta = 2.0;
  CHECK(j["radius"].get<double>() ==
        doctest::Approx(tails::sum_deviation(fam, 1.0)).epsilon(1e-9));
}

TEST_CASE("bound verb csv emission") {
  const CliResult r = run_cli({"bound", "--theorem", "1c", "--theta", "0.5",
                               "--norms", "1", "--t-grid", "1,2", "--csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("t,bound\n", 0) == 0);
  int lines = 0;
  for (char ch : r.out) lines += ch == '\n' ? 1 : 0;
  CHECK(lines == 3);
}

TEST_CASE("estimate verb on a constant sample") {
  const std::string path = write_temp("subw_cli_ones.csv", std::vector<double>(8, 1.0));
  const CliResult r = run_cli(
      {"estimate", "--file", path, "--family", "psi-emgf", "--theta", "1"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["value"].get<double>() ==
        doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-9));
  std::remove(path.c_str());
}

TEST_CASE("ci verb centers an alternating sample at zero") {
  std::vector<double> vals(20);
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = i % 2 == 0 ? 1.0 : -1.0;
  const std::string path = write_temp("subw_cli_pm1.csv", vals);
  const CliResult r = run_cli({"ci", "--file", path, "--theta", "1", "--delta",
                               "0.1", "--method", "gbo"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["center"].get<double>() == doctest::Approx(0.0));
  CHECK(j["radius"].get<double>() > 0.0);
  CHECK(j["lower"].get<double>() < j["upper"].get<double>());
  std::remove(path.c_str());
}

TEST_CASE("robust-mean verb brackets the estimate") {
  // Feasibility at beta = 2 needs n * v_beta > log(1/epsilon); the alternating
  // sample has central moment 0.01, so n = 400 clears the threshold n > 300.
  std::vector<double> vals(400);
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = i % 2 == 0 ? 0.9 : 1.1;
  const std::string path = write_temp("subw_cli_robust.csv", vals);
  const CliResult r = run_cli({"robust-mean", "--file", path, "--beta", "2",
                               "--epsilon", "0.05"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  const double hat = j["theta_hat"].get<double>();
  CHECK(hat == doctest::Approx(1.0).epsilon(0.05));
  CHECK(j["lower"].get<double>() < hat);
  CHECK(hat < j["upper"].get<double>());
  std::remove(path.c_str());
}

TEST_CASE("input errors exit 2 with a JSON diagnostic") {
  const CliResult bad_dist = run_cli(
      {"norm", "--dist", "nosuch:1", "--family", "psi", "--theta", "1"});
  CHECK(bad_dist.code == 2);
  CHECK(json::parse(bad_dist.err)["error"].get<std::string>() == "input");

  // The two-regime split is undefined at theta = 2.
  const CliResult undef = run_cli(
      {"bound", "--theorem", "1c", "--theta", "2", "--norms", "1"});
  CHECK(undef.code == 2);

  const CliResult flag = run_cli({"constants", "--theta", "1", "--bogus"});
  CHECK(flag.code == 2);
}

TEST_CASE("numeric failures exit 3") {
  const std::string path = write_temp("subw_cli_zeros.csv", std::vector<double>(6, 0.0));
  const CliResult r = run_cli(
      {"estimate", "--file", path, "--family", "psi-emgf", "--theta", "1"});
  CHECK(r.code == 3);
  CHECK(json::parse(r.err)["error"].get<std::string>() == "numeric");
  std::remove(path.c_str());
}

TEST_CASE("help exits zero") {
  const CliResult r = run_cli({"--help"});
  CHECK(r.code == 0);
  CHECK(!r.out.empty());
}

TEST_CASE("validate accepts a config file with flag precedence") {
  const std::string cfg = write_temp_text(
      "subw_cli_cfg.json",
      R"({"experiment": "psi_tail_weibull", "reps": 500, "seed": 3})");
  const CliResult r = run_cli({"validate", "--config", cfg});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["reps"].get<long>() == 500);
  CHECK(j["experiment"].get<std::string>() == "psi_tail_weibull");

  // An explicit flag wins over the config value.
  const CliResult r2 = run_cli({"validate", "--config", cfg, "--reps", "400"});
  REQUIRE(r2.code == 0);
  CHECK(json::parse(r2.out)["reps"].get<long>() == 400);
  std::remove(cfg.c_str());
}

TEST_CASE("fixed seeds reproduce byte-identical reports") {
  const std::vector<std::string> args = {"validate", "--experiment",
                                         "psi_tail_weibull", "--reps", "2000",
                                         "--seed", "9"};
  const CliResult a = run_cli(args);
  const CliResult b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);

  std::vector<std::string> threaded = args;
  threaded.push_back("--jobs");
  threaded.push_back("3");
  const CliResult c = run_cli(threaded);
  CHECK(a.out == c.out);
}
