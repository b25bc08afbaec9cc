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
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ncrdc/encoding.hpp"
#include "ncrdc/information.hpp"
#include "ncrdc/routing.hpp"
#include "ncrdc/states.hpp"

namespace ncrdc {

/// Letters whose success probability falls below this during a search make
/// the point infeasible (penalized) rather than raising.
inline constexpr double kSearchPostSelectionGuard = 1e-9;

struct OptimizationConfig {
  int restarts = 32;
  int max_iterations = 500;
  std::uint64_t seed = 20250101;
  double gradient_step = 1e-6;
  double convergence_tolerance = 1e-10;
  ProbabilityMode probability_mode = ProbabilityMode::kFree;

  void validate() const;
};

nlohmann::json to_json(const OptimizationConfig& cfg);
OptimizationConfig optimization_config_from_json(const nlohmann::json& j);

/// One finished restart. `parameters` is the optimizer's flat vector.
struct RestartOutcome {
  std::size_t index = 0;
  double value = 0.0;
  bool feasible = false;
  bool converged = false;
  std::vector<double> parameters;
};

nlohmann::json to_json(const RestartOutcome& r);
RestartOutcome restart_outcome_from_json(const nlohmann::json& j);

/// Lets a caller resume from earlier restarts and observe new ones.
struct RestartHooks {
  std::vector<RestartOutcome> completed;               // skipped, merged as-is
  std::function<void(const RestartOutcome&)> on_done;  // called serially
};

struct CapacityResult {
  double best_value = 0.0;  // bits; a lower bound on the true optimum
  EncodingScheme best_scheme;
  std::optional<Locc1Scheme> best_locc1;
  std::optional<double> best_theta;
  std::vector<double> best_parameters;
  std::vector<double> per_restart_values;
  std::vector<RestartOutcome> restarts;
  bool converged = false;
  double wall_time = 0.0;  // seconds
};

class OptimizationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Holevo quantity of the routed ensemble, computed from the engine's input
/// factor. std::nullopt when a letter's success probability is below `guard`.
std::optional<double> routed_holevo(const RoutingEngine& engine,
                                    const EncodingScheme& scheme,
                                    double guard = kSearchPostSelectionGuard);

/// I(X; Y₁Y₂) of the routed ensemble under a one-way LOCC scheme (M = 2).
std::optional<double> routed_locc1(const RoutingEngine& engine, const EncodingScheme& scheme,
                                   const Locc1Scheme& locc1,
                                   double guard = kSearchPostSelectionGuard);

/// Best Holevo quantity of the routed ensemble over encodings with the given
/// alphabet size. `seeds` are extra starting points (flat encoding vectors)
/// run after the random restarts.
CapacityResult optimize_global_capacity(const DensityMatrix& rho, int receivers,
                                        int alphabet_size, const OptimizationConfig& cfg,
                                        const std::vector<std::vector<double>>& seeds = {},
                                        RestartHooks* hooks = nullptr);

/// Starting θ values cycled over restarts when the state angle is free.
std::vector<double> locc1_theta_starts();

/// Best I(X; Y₁Y₂) for M = 2 over encodings and one-way LOCC schemes. With
/// `theta` fixed the input is gGHZ(θ); with std::nullopt θ is optimized too,
/// over [0, π/2] through θ = (π/2)·sin²(t). Angles outside that range are
/// local bit and phase flips of one inside it, which the encoding and the
/// measurement absorb.
/// Each restart first maximizes the Holevo quantity over encodings and then
/// optimizes everything jointly from there.
CapacityResult optimize_locc1(const std::optional<double>& theta, int alphabet_size,
                              const OptimizationConfig& cfg, RestartHooks* hooks = nullptr);

/// Same, for an arbitrary input state.
CapacityResult optimize_locc1(const DensityMatrix& rho, int alphabet_size,
                              const OptimizationConfig& cfg, RestartHooks* hooks = nullptr);

struct SeparableSearchResult {
  CapacityResult capacity;
  std::vector<SeparableTerm> terms;
  DensityMatrix state;
  double chi_dc_raw = 0.0;      // log d_A + S(ρ_B) − S(ρ_AB)
  double chi_dc_capacity = 0.0; // max(1, raw)
};

/// Joint search over k-term separable three-qubit states and encodings.
SeparableSearchResult optimize_separable_search(int terms, int alphabet_size,
                                                const OptimizationConfig& cfg,
                                                RestartHooks* hooks = nullptr);

/// χ_ncr − (χ_sdc + log₂ M).
double figure_of_merit(double chi_ncr, double chi_sdc, int receivers);

struct SweepRow {
  double theta = 0.0;
  double chi_ncr_lower = 0.0;
  double chi_sdc = 0.0;
  double delta = 0.0;
  int restarts_used = 0;
  std::uint64_t seed = 0;
  std::string status = "ok";
};

/// A finished sweep point with the optimum that seeds the next one.
struct SweepPoint {
  SweepRow row;
  std::vector<double> best_parameters;  // empty if the point failed
};

nlohmann::json to_json(const SweepPoint& p);
SweepPoint sweep_point_from_json(const nlohmann::json& j);

struct SweepHooks {
  std::vector<SweepPoint> completed;  // a prefix of the grid, reused as-is
  std::function<void(const SweepPoint&)> on_point;
};

/// Generalized-GHZ sweep. Every point runs the same seeded restarts a cold
/// run would, plus one restart seeded with the previous point's optimum.
std::vector<SweepRow> theta_sweep(const std::vector<double>& thetas, int receivers,
                                  int alphabet_size, const OptimizationConfig& cfg,
                                  bool warm_start = true, SweepHooks* hooks = nullptr);

std::vector<double> uniform_grid(double start, double stop, int points);

}  // namespace ncrdc
