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

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace ncrdc::acceptance {

inline constexpr std::uint64_t kPublishedSeed = 20250101;
inline constexpr int kCriterionCount = 12;

enum class Status { kPass, kWarn, kFail, kSkipped };

std::string to_string(Status s);

struct CriterionReport {
  int id = 0;
  std::string name;
  std::string measured;
  std::string target;
  Status status = Status::kFail;
  std::string note;
  double seconds = 0.0;
};

struct SuiteOptions {
  bool fast = false;   // skip criteria tagged slow
  std::set<int> only;  // empty: all criteria
  std::uint64_t seed = kPublishedSeed;
};

bool is_slow(int id);

/// Runs the selected criteria in order, printing each line to `log` as it
/// finishes.
std::vector<CriterionReport> run_suite(const SuiteOptions& options, std::ostream& log);

std::string format_line(const CriterionReport& r);

/// False if any criterion failed. WARN and SKIPPED do not fail the suite.
bool suite_passed(const std::vector<CriterionReport>& reports);

}  // namespace ncrdc::acceptance
