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

#pragma once

#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ncrdc/capacity.hpp"

namespace ncrdc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNumerical = 2,
  kExitAcceptance = 3,
};

enum class Command { kCapacity, kLocc1, kSweep, kBaseline, kVerify };
enum class StateFamily { kGghz, kMaxMixed, kSepMixed, kProduct, kFile };
enum class OutputFormat { kCsv, kJson };

std::string to_string(Command c);
std::string to_string(StateFamily s);
std::string to_string(OutputFormat f);
Command command_from_string(const std::string& s);
StateFamily state_family_from_string(const std::string& s);
OutputFormat output_format_from_string(const std::string& s);

/// Thrown for bad flags, bad config files and inconsistent settings.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  Command command = Command::kCapacity;
  StateFamily state = StateFamily::kGghz;
  std::string state_file;
  double theta = std::numbers::pi / 2.0;
  double phi = 0.0;
  bool free_theta = false;  // locc1 only: optimize the gGHZ angle too
  int receivers = 2;
  int alphabet = 4;
  int separable_terms = 2;
  OptimizationConfig optimization;
  std::string out;  // empty: stdout
  std::optional<OutputFormat> format;
  double grid_start = 0.0;
  double grid_stop = std::numbers::pi;
  int grid_points = 63;
  bool warm_start = true;
  std::string resume;  // checkpoint path; empty disables checkpointing
  bool fast = false;

  void validate() const;
  OutputFormat resolved_format() const;
};

/// Flat JSON document with the same keys as the long flags (dashes become
/// underscores). Unknown keys are rejected.
nlohmann::json to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_config_from_json(const nlohmann::json& j,
                                             ExperimentConfig base = {});

/// Builds the config from argv: defaults, then --config file, then flags.
ExperimentConfig parse_arguments(int argc, const char* const* argv);

/// The input state named by the config, in physical order (A, B1..BM).
DensityMatrix make_state(const ExperimentConfig& cfg);

/// Runs one command, writing the result to cfg.out or `out`; diagnostics
/// and progress go to `err`. Returns an ExitCode.
int run_command(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_arguments + run_command with exit-code mapping.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace ncrdc::cli
