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

// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance [--fast] [--only N]...

#include <cstdlib>
#include <iostream>
#include <string>

#include "ncrdc/acceptance.hpp"

int main(int argc, char** argv) {
  ncrdc::acceptance::SuiteOptions options;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--fast") {
      options.fast = true;
    } else if (arg == "--only" && i + 1 < argc) {
      options.only.insert(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--fast] [--only N]...\n";
      return 1;
    }
  }
  const auto reports = ncrdc::acceptance::run_suite(options, std::cout);
  return ncrdc::acceptance::suite_passed(reports) ? 0 : 1;
}
