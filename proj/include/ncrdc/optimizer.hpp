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
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace ncrdc {

/// Objective to maximize. std::nullopt marks an infeasible point.
using Objective = std::function<std::optional<double>(std::span<const double>)>;

/// Value reported for infeasible points.
inline constexpr double kInfeasiblePenalty = -100.0;

struct LocalSearchOptions {
  int max_iterations = 500;
  double gradient_step = 1e-6;
  double function_tolerance = 1e-10;
};

struct LocalSearchResult {
  std::vector<double> x;
  double value = kInfeasiblePenalty;
  bool converged = false;
  bool feasible = false;
  int iterations = 0;
};

/// Quasi-Newton (BFGS) ascent from `x0` with central-difference gradients.
LocalSearchResult maximize_locally(const Objective& f, std::vector<double> x0,
                                   const LocalSearchOptions& options);

/// Central-difference gradient of f at x; infeasible neighbours fall back to
/// one-sided differences.
std::vector<double> numerical_gradient(const Objective& f, std::span<const double> x,
                                       double step);

/// Generator for restart `index` of a run seeded with `seed`.
std::mt19937_64 restart_rng(std::uint64_t seed, std::size_t index);

/// Worker count: NCR_DC_THREADS if set, else hardware concurrency, capped by
/// `jobs` and never below one.
unsigned worker_count(std::size_t jobs);

/// Runs job(i) for i in [0, jobs) on worker_count(jobs) threads.
void parallel_for(std::size_t jobs, const std::function<void(std::size_t)>& job);

}  // namespace ncrdc
