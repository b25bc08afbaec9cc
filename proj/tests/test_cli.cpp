// Copyright 2026 The ncrdc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ncrdc/cli.hpp"

using namespace ncrdc;
using namespace ncrdc::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ncrdc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ncrdc_cli_" + name);
}

}  // namespace

TEST_CASE("alphabet size is validated") {
  const auto r = run({"capacity", "--alphabet", "0"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("alphabet size must be ≥ 1") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"capacity", "--state", "nonsense"}).code == kExitUsage);
  CHECK(run({"locc1", "--M", "3"}).code == kExitUsage);
  CHECK(run({"sweep", "--grid-points", "0"}).code != kExitOk);
  CHECK(run({"capacity", "--state", "file"}).code == kExitUsage);
  CHECK(run({"baseline", "--state", "sepmixed"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("corrupted state file") {
  const auto path = temp("broken_state.json");
  std::ofstream(path) << "{\"kind\": \"density\", \"real\": [1, 0";
  const auto r = run({"baseline", "--state", "file", "--state-file", path.string()});
  CHECK(r.code == kExitUsage);
  CHECK_FALSE(r.err.empty());
  std::filesystem::remove(path);
}

TEST_CASE("state file input") {
  const auto path = temp("ghz_state.json");
  save_state_file(path, DensityMatrix::from_pure(gghz_state(3, M_PI / 2)));
  const auto r = run({"baseline", "--state-file", path.string(), "--format", "json"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("chi_dc").get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(run({"baseline", "--state-file", path.string(), "--M", "3"}).code == kExitUsage);
  std::filesystem::remove(path);
}

TEST_CASE("capacity report") {
  const auto r = run({"capacity", "--state", "gghz", "--theta", "1.5708", "--M", "2",
                      "--alphabet", "6", "--restarts", "6"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("best_value_bits").get<double>() == doctest::Approx(std::log2(6.0)).epsilon(0.02 / 2.58));
  CHECK(j.at("config").at("alphabet") == 6);
  CHECK(j.at("config").at("restarts") == 6);
  for (const char* key : {"state", "M", "alphabet_size", "chi_sdc", "delta", "scheme", "seeds", "runtime"}) {
    CHECK(j.contains(key));
  }
}

TEST_CASE("maximally mixed capacity and delta") {
  const auto r = run({"capacity", "--state", "maxmixed", "--alphabet", "3", "--restarts", "8"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j.at("best_value_bits").get<double>() - 1.2539) < 0.02);
  CHECK(std::abs(j.at("delta").get<double>() - 0.2539) < 0.02);
  CHECK(std::abs(j.at("chi_sdc").get<double>()) < 1e-9);
}

TEST_CASE("sweep CSV is deterministic") {
  const std::vector<std::string> args{"sweep", "--alphabet", "3", "--grid-points", "4",
                                      "--restarts", "3", "--seed", "5"};
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  std::istringstream lines(a.out);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header == "theta,chi_ncr_lower,chi_sdc,delta,restarts_used,seed,status");
  CHECK(first.rfind("0.000000,1.584963,1.000000,", 0) == 0);
}

TEST_CASE("baseline matches the closed form across the grid") {
  const auto r = run({"baseline", "--format", "json", "--grid-points", "63"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.at("rows").size() == 63);
  for (const auto& row : j.at("rows")) {
    CHECK(std::abs(row.at("chi_sdc").get<double>() - row.at("chi_dc_numeric").get<double>()) < 1e-12);
  }
  const auto csv = run({"baseline", "--grid-points", "3"});
  CHECK(csv.out.rfind("theta,chi_sdc,chi_dc_numeric\n0.000000,1.000000,1.000000\n", 0) == 0);
}

TEST_CASE("flags override the config file") {
  const auto path = temp("config.json");
  std::ofstream(path) << R"({"command": "capacity", "alphabet": 5, "restarts": 3, "state": "maxmixed"})";
  const std::string file = path.string();
  const char* argv[] = {"ncrdc", "--config", file.c_str(), "--alphabet", "2"};
  const auto cfg = parse_arguments(5, argv);
  CHECK(cfg.command == Command::kCapacity);
  CHECK(cfg.alphabet == 2);
  CHECK(cfg.optimization.restarts == 3);
  CHECK(cfg.state == StateFamily::kMaxMixed);

  const char* locc[] = {"ncrdc", "locc1"};
  CHECK(parse_arguments(2, locc).optimization.restarts == 64);

  std::ofstream(path) << R"({"alphabet": 5, "colour": "blue"})";
  CHECK_THROWS_AS(parse_arguments(3, argv), UsageError);
  std::filesystem::remove(path);

  ExperimentConfig round;
  round.theta = 0.25;
  round.optimization.seed = 77;
  const auto back = experiment_config_from_json(to_json(round));
  CHECK(back.theta == 0.25);
  CHECK(back.optimization.seed == 77);
}

TEST_CASE("resume reuses a checkpoint") {
  const auto cp = temp("checkpoint.json");
  std::filesystem::remove(cp);
  const std::vector<std::string> args{"capacity", "--state", "maxmixed", "--alphabet", "2",
                                      "--restarts", "3", "--format", "csv", "--resume", cp.string()};
  const auto first = run(args);
  REQUIRE(first.code == kExitOk);
  REQUIRE(std::filesystem::exists(cp));
  const auto second = run(args);
  CHECK(second.out == first.out);

  auto changed = args;
  changed[4] = "3";
  CHECK(run(changed).code == kExitUsage);
  std::filesystem::remove(cp);

  const auto sweep_cp = temp("sweep_checkpoint.json");
  std::filesystem::remove(sweep_cp);
  const std::vector<std::string> sweep{"sweep", "--alphabet", "2", "--grid-points", "3",
                                       "--restarts", "2", "--resume", sweep_cp.string()};
  const auto s1 = run(sweep);
  const auto s2 = run(sweep);
  REQUIRE(s1.code == kExitOk);
  CHECK(s1.out == s2.out);
  std::filesystem::remove(sweep_cp);
}

TEST_CASE("output file") {
  const auto path = temp("out.csv");
  const auto r = run({"baseline", "--grid-points", "2", "--out", path.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "theta,chi_sdc,chi_dc_numeric");
  std::filesystem::remove(path);
}
