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

#include "ncrdc/capacity.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "ncrdc/optimizer.hpp"

namespace ncrdc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double spectrum_entropy(const Matrix& gram) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
  const RealVector& ev = solver.eigenvalues();
  double s = 0.0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) > 0.0) s -= ev(k) * std::log2(ev(k));
  }
  return s;
}

struct RoutedFactors {
  std::vector<Matrix> factors;  // K_x F, unnormalized
  std::vector<double> success;
};

std::optional<RoutedFactors> route_all(const RoutingEngine& engine,
                                       const EncodingScheme& scheme, double guard) {
  RoutedFactors out;
  out.factors.reserve(scheme.letters.size());
  for (const auto& letter : scheme.letters) {
    std::vector<Matrix> us;
    us.reserve(letter.unitaries.size());
    for (const auto& u : letter.unitaries) us.push_back(single_qubit_unitary(u));
    Matrix g = engine.apply(us);
    const double t = g.squaredNorm();
    if (!(t >= guard)) return std::nullopt;
    out.factors.push_back(std::move(g));
    out.success.push_back(t);
  }
  return out;
}

LocalSearchOptions search_options(const OptimizationConfig& cfg) {
  return {cfg.max_iterations, cfg.gradient_step, cfg.convergence_tolerance};
}

double uniform_angle(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, kTwoPi)(rng);
}

std::vector<double> random_encoding(const EncodingParameterization& param,
                                    std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<double> v;
  v.reserve(param.size());
  const bool free = param.mode() == ProbabilityMode::kFree;
  for (int x = 0; x < param.alphabet_size(); ++x) {
    const std::size_t angles = param.per_letter() - (free ? 1 : 0);
    for (std::size_t k = 0; k < angles; ++k) v.push_back(uniform_angle(rng));
    if (free) v.push_back(gauss(rng));
  }
  return v;
}

std::vector<double> random_locc1(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> canonical(0.0, std::numbers::pi / 2.0);
  std::vector<double> v;
  v.reserve(Locc1Scheme::kParameterCount);
  for (int m = 0; m < 5; ++m) {
    for (int k = 0; k < 16; ++k) v.push_back(uniform_angle(rng));
    for (int k = 0; k < 3; ++k) v.push_back(canonical(rng));
  }
  return v;
}

// Runs the restarts not already in hooks->completed and merges everything.
CapacityResult run_restarts(std::size_t jobs,
                            const std::function<RestartOutcome(std::size_t)>& restart,
                            RestartHooks* hooks) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::optional<RestartOutcome>> outcomes(jobs);
  if (hooks != nullptr) {
    for (const auto& done : hooks->completed) {
      if (done.index < jobs) outcomes[done.index] = done;
    }
  }
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < jobs; ++i) {
    if (!outcomes[i]) pending.push_back(i);
  }
  std::mutex mutex;
  parallel_for(pending.size(), [&](std::size_t k) {
    RestartOutcome r = restart(pending[k]);
    std::lock_guard lock(mutex);
    if (hooks != nullptr && hooks->on_done) hooks->on_done(r);
    outcomes[pending[k]] = std::move(r);
  });

  CapacityResult result;
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < jobs; ++i) {
    const RestartOutcome& r = *outcomes[i];
    result.per_restart_values.push_back(r.value);
    result.restarts.push_back(r);
    if (!r.feasible) continue;
    // First restart within 1e-10 of the maximum wins.
    if (!best || r.value > result.restarts[*best].value + 1e-10) best = i;
  }
  if (!best) {
    throw OptimizationFailure(
        "every restart ended in a post-selection failure; no feasible encoding found");
  }
  const RestartOutcome& winner = result.restarts[*best];
  result.best_value = winner.value;
  result.best_parameters = winner.parameters;
  result.converged = winner.converged;
  result.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

RestartOutcome outcome_from(std::size_t index, LocalSearchResult&& r) {
  RestartOutcome o;
  o.index = index;
  o.value = r.value;
  o.feasible = r.feasible;
  o.converged = r.converged;
  o.parameters = std::move(r.x);
  return o;
}

// Free coordinate t for the gGHZ angle, θ = (π/2)·sin²(t) ∈ [0, π/2].
double theta_from_free(double t) {
  const double s = std::sin(t);
  return std::numbers::pi / 2.0 * s * s;
}

double free_from_theta(double theta) {
  return std::asin(std::sqrt(std::clamp(2.0 * theta / std::numbers::pi, 0.0, 1.0)));
}

}  // namespace

void OptimizationConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (max_iterations < 1) throw std::invalid_argument("max iterations must be >= 1");
  if (!(gradient_step > 0.0)) throw std::invalid_argument("gradient step must be > 0");
  if (!(convergence_tolerance > 0.0)) {
    throw std::invalid_argument("convergence tolerance must be > 0");
  }
}

nlohmann::json to_json(const OptimizationConfig& cfg) {
  return {{"restarts", cfg.restarts},
          {"max_iterations", cfg.max_iterations},
          {"seed", cfg.seed},
          {"gradient_step", cfg.gradient_step},
          {"convergence_tolerance", cfg.convergence_tolerance},
          {"probability_mode", to_string(cfg.probability_mode)}};
}

OptimizationConfig optimization_config_from_json(const nlohmann::json& j) {
  OptimizationConfig cfg;
  cfg.restarts = j.value("restarts", cfg.restarts);
  cfg.max_iterations = j.value("max_iterations", cfg.max_iterations);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.gradient_step = j.value("gradient_step", cfg.gradient_step);
  cfg.convergence_tolerance = j.value("convergence_tolerance", cfg.convergence_tolerance);
  if (j.contains("probability_mode")) {
    cfg.probability_mode = probability_mode_from_string(j.at("probability_mode").get<std::string>());
  }
  cfg.validate();
  return cfg;
}

nlohmann::json to_json(const RestartOutcome& r) {
  return {{"index", r.index},         {"value", r.value},
          {"feasible", r.feasible},   {"converged", r.converged},
          {"parameters", r.parameters}};
}

RestartOutcome restart_outcome_from_json(const nlohmann::json& j) {
  RestartOutcome r;
  r.index = j.at("index").get<std::size_t>();
  r.value = j.at("value").get<double>();
  r.feasible = j.at("feasible").get<bool>();
  r.converged = j.at("converged").get<bool>();
  r.parameters = j.at("parameters").get<std::vector<double>>();
  return r;
}

std::optional<double> routed_holevo(const RoutingEngine& engine,
                                    const EncodingScheme& scheme, double guard) {
  const auto routed = route_all(engine, scheme, guard);
  if (!routed) return std::nullopt;

  const Eigen::Index rank = engine.rank();
  const auto letters = static_cast<Eigen::Index>(scheme.letters.size());
  const auto dim = static_cast<Eigen::Index>(engine.lab_dim());
  Matrix stacked(dim, rank * letters);
  double mixed = 0.0;
  for (Eigen::Index x = 0; x < letters; ++x) {
    const auto ux = static_cast<std::size_t>(x);
    const double p = scheme.letters[ux].probability;
    const double t = routed->success[ux];
    const Matrix& g = routed->factors[ux];
    if (rank > 1 && p > 0.0) mixed += p * spectrum_entropy(g.adjoint() * g / t);
    stacked.middleCols(x * rank, rank) = std::sqrt(p / t) * g;
  }
  // Σ p ρ_x = S S†, which shares its nonzero spectrum with S† S.
  const double average = stacked.cols() <= stacked.rows()
                             ? spectrum_entropy(stacked.adjoint() * stacked)
                             : spectrum_entropy(stacked * stacked.adjoint());
  return std::max(0.0, average - mixed);
}

std::optional<double> routed_locc1(const RoutingEngine& engine, const EncodingScheme& scheme,
                                   const Locc1Scheme& locc1, double guard) {
  if (engine.receivers() != 2) {
    throw std::invalid_argument("one-way LOCC decoding needs exactly two receivers");
  }
  const auto routed = route_all(engine, scheme, guard);
  if (!routed) return std::nullopt;

  const auto us = locc1.unitaries();
  const Matrix first = us[0].adjoint();
  std::array<Matrix, 4> second;
  for (std::size_t y = 0; y < 4; ++y) second[y] = us[1 + y].adjoint();

  const std::size_t nx = scheme.letters.size();
  std::vector<double> joint(nx * 16, 0.0);
  Eigen::Matrix4cd lab;
  for (std::size_t x = 0; x < nx; ++x) {
    const Matrix& g = routed->factors[x];
    const double weight = scheme.letters[x].probability / routed->success[x];
    for (Eigen::Index k = 0; k < g.cols(); ++k) {
      // Row l1, column l2 of the column reshaped over the two labs.
      for (Eigen::Index r = 0; r < 16; ++r) lab(r / 4, r % 4) = g(r, k);
      const Matrix rotated = first * lab;
      for (Eigen::Index y1 = 0; y1 < 4; ++y1) {
        const Vector amps = second[static_cast<std::size_t>(y1)] * rotated.row(y1).transpose();
        for (Eigen::Index y2 = 0; y2 < 4; ++y2) {
          joint[x * 16 + static_cast<std::size_t>(y1 * 4 + y2)] += weight * std::norm(amps(y2));
        }
      }
    }
  }
  double total = 0.0;
  for (double v : joint) total += v;
  for (double& v : joint) v /= total;
  return mutual_information(JointDistribution(nx, 16, std::move(joint)));
}

CapacityResult optimize_global_capacity(const DensityMatrix& rho, int receivers,
                                        int alphabet_size, const OptimizationConfig& cfg,
                                        const std::vector<std::vector<double>>& seeds,
                                        RestartHooks* hooks) {
  if (alphabet_size < 1) throw std::invalid_argument("alphabet size must be ≥ 1");
  cfg.validate();
  const RoutingEngine engine(rho, receivers);
  const EncodingParameterization param(receivers, alphabet_size, cfg.probability_mode);
  for (const auto& s : seeds) {
    if (s.size() != param.size()) {
      throw std::invalid_argument("seed vector does not match the encoding parameterization");
    }
  }

  const Objective objective = [&](std::span<const double> v) {
    return routed_holevo(engine, param.decode(v));
  };
  const auto restarts = static_cast<std::size_t>(cfg.restarts);
  CapacityResult result = run_restarts(
      restarts + seeds.size(),
      [&](std::size_t i) {
        std::vector<double> x0;
        if (i < restarts) {
          auto rng = restart_rng(cfg.seed, i);
          x0 = random_encoding(param, rng);
        } else {
          x0 = seeds[i - restarts];
        }
        return outcome_from(i, maximize_locally(objective, std::move(x0), search_options(cfg)));
      },
      hooks);
  result.best_scheme = param.decode(result.best_parameters);
  return result;
}

std::vector<double> locc1_theta_starts() {
  return {0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0, std::numbers::pi / 2.0};
}

namespace {

CapacityResult optimize_locc1_impl(const std::optional<DensityMatrix>& fixed_state,
                                   bool theta_free, double fixed_theta, int alphabet_size,
                                   const OptimizationConfig& cfg, RestartHooks* hooks) {
  if (alphabet_size < 1) throw std::invalid_argument("alphabet size must be ≥ 1");
  cfg.validate();
  constexpr int kReceivers = 2;
  const EncodingParameterization param(kReceivers, alphabet_size, cfg.probability_mode);
  const std::size_t enc = param.size();
  const std::size_t meas = Locc1Scheme::kParameterCount;

  std::optional<RoutingEngine> fixed_engine;
  if (fixed_state) fixed_engine.emplace(*fixed_state, kReceivers);

  auto engine_for = [&](double theta) {
    return RoutingEngine(gghz_state_periodic(3, theta), kReceivers);
  };

  const Objective joint = [&](std::span<const double> v) -> std::optional<double> {
    const EncodingScheme scheme = param.decode(v.subspan(0, enc));
    const Locc1Scheme locc1 = Locc1Scheme::from_parameters(v.subspan(enc, meas));
    if (fixed_engine) return routed_locc1(*fixed_engine, scheme, locc1);
    const double theta = theta_free ? theta_from_free(v[enc + meas]) : fixed_theta;
    return routed_locc1(engine_for(theta), scheme, locc1);
  };

  const auto theta_starts = locc1_theta_starts();
  CapacityResult result = run_restarts(
      static_cast<std::size_t>(cfg.restarts),
      [&](std::size_t i) {
        auto rng = restart_rng(cfg.seed, i);
        const double theta0 = theta_free ? theta_starts[i % theta_starts.size()] : fixed_theta;
        const RoutingEngine warm_engine = fixed_engine ? *fixed_engine : engine_for(theta0);

        // Stage 1: a high-Holevo encoding for the starting state.
        const Objective holevo = [&](std::span<const double> v) {
          return routed_holevo(warm_engine, param.decode(v));
        };
        auto stage1 = maximize_locally(holevo, random_encoding(param, rng), search_options(cfg));

        // Stage 2: everything jointly.
        std::vector<double> x0 = std::move(stage1.x);
        const auto m0 = random_locc1(rng);
        x0.insert(x0.end(), m0.begin(), m0.end());
        if (theta_free) x0.push_back(free_from_theta(theta0));
        return outcome_from(i, maximize_locally(joint, std::move(x0), search_options(cfg)));
      },
      hooks);

  const std::span<const double> best(result.best_parameters);
  result.best_scheme = param.decode(best.subspan(0, enc));
  result.best_locc1 = Locc1Scheme::from_parameters(best.subspan(enc, meas));
  if (theta_free) {
    result.best_theta = theta_from_free(best[enc + meas]);
  } else if (!fixed_state) {
    result.best_theta = fixed_theta;
  }
  return result;
}

}  // namespace

CapacityResult optimize_locc1(const std::optional<double>& theta, int alphabet_size,
                              const OptimizationConfig& cfg, RestartHooks* hooks) {
  return optimize_locc1_impl(std::nullopt, !theta.has_value(), theta.value_or(0.0),
                             alphabet_size, cfg, hooks);
}

CapacityResult optimize_locc1(const DensityMatrix& rho, int alphabet_size,
                              const OptimizationConfig& cfg, RestartHooks* hooks) {
  return optimize_locc1_impl(rho, false, 0.0, alphabet_size, cfg, hooks);
}

namespace {

std::vector<SeparableTerm> decode_separable(std::span<const double> v, int terms) {
  std::vector<double> logits;
  std::vector<SeparableTerm> out;
  for (int i = 0; i < terms; ++i) {
    const auto block = v.subspan(static_cast<std::size_t>(7 * i), 7);
    logits.push_back(block[0]);
    SeparableTerm t;
    for (int party = 0; party < 3; ++party) {
      t.bloch.push_back(BlochVector::from_angles(block[1 + 2 * party], block[2 + 2 * party]));
    }
    out.push_back(std::move(t));
  }
  const auto p = to_simplex(logits);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].probability = p[i];
  return out;
}

}  // namespace

SeparableSearchResult optimize_separable_search(int terms, int alphabet_size,
                                                const OptimizationConfig& cfg,
                                                RestartHooks* hooks) {
  if (terms < 1) throw std::invalid_argument("need at least one separable term");
  if (alphabet_size < 1) throw std::invalid_argument("alphabet size must be ≥ 1");
  cfg.validate();
  constexpr int kReceivers = 2;
  const EncodingParameterization param(kReceivers, alphabet_size, cfg.probability_mode);
  const std::size_t state_params = static_cast<std::size_t>(7 * terms);

  const Objective objective = [&](std::span<const double> v) -> std::optional<double> {
    const auto t = decode_separable(v.subspan(0, state_params), terms);
    const RoutingEngine engine(separable_mixed_state(t), kReceivers);
    return routed_holevo(engine, param.decode(v.subspan(state_params)));
  };

  CapacityResult result = run_restarts(
      static_cast<std::size_t>(cfg.restarts),
      [&](std::size_t i) {
        auto rng = restart_rng(cfg.seed, i);
        std::normal_distribution<double> gauss;
        std::vector<double> x0;
        for (int k = 0; k < terms; ++k) {
          x0.push_back(gauss(rng));
          for (int a = 0; a < 6; ++a) x0.push_back(uniform_angle(rng));
        }
        const auto e = random_encoding(param, rng);
        x0.insert(x0.end(), e.begin(), e.end());
        return outcome_from(i, maximize_locally(objective, std::move(x0), search_options(cfg)));
      },
      hooks);

  const std::span<const double> best(result.best_parameters);
  auto found = decode_separable(best.subspan(0, state_params), terms);
  result.best_scheme = param.decode(best.subspan(state_params));
  DensityMatrix state = separable_mixed_state(found);
  const double raw = chi_dc_bipartite(state, 1);
  return {std::move(result), std::move(found), state, raw, std::max(1.0, raw)};
}

double figure_of_merit(double chi_ncr, double chi_sdc, int receivers) {
  if (receivers < 2) throw std::invalid_argument("figure of merit needs M >= 2");
  return chi_ncr - (chi_sdc + std::log2(static_cast<double>(receivers)));
}

std::vector<double> uniform_grid(double start, double stop, int points) {
  if (points < 1) throw std::invalid_argument("grid needs at least one point");
  if (points == 1) return {start};
  std::vector<double> grid;
  for (int k = 0; k < points; ++k) {
    grid.push_back(start + (stop - start) * k / (points - 1));
  }
  return grid;
}

nlohmann::json to_json(const SweepPoint& p) {
  const auto number = [](double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
  };
  return {{"theta", p.row.theta},
          {"chi_ncr_lower", number(p.row.chi_ncr_lower)},
          {"chi_sdc", p.row.chi_sdc},
          {"delta", number(p.row.delta)},
          {"restarts_used", p.row.restarts_used},
          {"seed", p.row.seed},
          {"status", p.row.status},
          {"best_parameters", p.best_parameters}};
}

SweepPoint sweep_point_from_json(const nlohmann::json& j) {
  const auto number = [&](const char* key) {
    const auto& v = j.at(key);
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
  };
  SweepPoint p;
  p.row.theta = j.at("theta").get<double>();
  p.row.chi_ncr_lower = number("chi_ncr_lower");
  p.row.chi_sdc = j.at("chi_sdc").get<double>();
  p.row.delta = number("delta");
  p.row.restarts_used = j.at("restarts_used").get<int>();
  p.row.seed = j.at("seed").get<std::uint64_t>();
  p.row.status = j.at("status").get<std::string>();
  p.best_parameters = j.at("best_parameters").get<std::vector<double>>();
  return p;
}

std::vector<SweepRow> theta_sweep(const std::vector<double>& thetas, int receivers,
                                  int alphabet_size, const OptimizationConfig& cfg,
                                  bool warm_start, SweepHooks* hooks) {
  if (thetas.empty()) throw std::invalid_argument("theta grid is empty");
  if (alphabet_size < 1) throw std::invalid_argument("alphabet size must be ≥ 1");
  cfg.validate();
  std::vector<SweepRow> rows;
  std::optional<std::vector<double>> previous;
  const std::size_t reused = hooks != nullptr ? hooks->completed.size() : 0;
  if (reused > thetas.size()) throw std::invalid_argument("checkpoint has more points than the grid");
  for (std::size_t k = 0; k < reused; ++k) {
    const SweepPoint& p = hooks->completed[k];
    if (p.row.theta != thetas[k]) {
      throw std::invalid_argument("checkpoint grid does not match the requested grid");
    }
    rows.push_back(p.row);
    if (!p.best_parameters.empty()) previous = p.best_parameters;
  }
  for (std::size_t k = reused; k < thetas.size(); ++k) {
    SweepPoint point;
    SweepRow& row = point.row;
    row.theta = thetas[k];
    row.chi_sdc = chi_sdc_gghz(row.theta);
    row.seed = cfg.seed;
    std::vector<std::vector<double>> seeds;
    if (warm_start && previous) seeds.push_back(*previous);
    row.restarts_used = cfg.restarts + static_cast<int>(seeds.size());
    try {
      const auto rho = DensityMatrix::from_pure(gghz_state_periodic(receivers + 1, row.theta));
      const auto result = optimize_global_capacity(rho, receivers, alphabet_size, cfg, seeds);
      row.chi_ncr_lower = result.best_value;
      row.delta = figure_of_merit(row.chi_ncr_lower, row.chi_sdc, receivers);
      point.best_parameters = result.best_parameters;
      previous = result.best_parameters;
    } catch (const std::exception& e) {
      row.chi_ncr_lower = std::numeric_limits<double>::quiet_NaN();
      row.delta = std::numeric_limits<double>::quiet_NaN();
      row.status = std::string("failed: ") + e.what();
    }
    if (hooks != nullptr && hooks->on_point) hooks->on_point(point);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ncrdc
