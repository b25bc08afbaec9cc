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

#include "ncrdc/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "ncrdc/capacity.hpp"
#include "ncrdc/cli.hpp"

namespace ncrdc::acceptance {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBitsTolerance = 0.02;

std::string num(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1e", v);
  return buf;
}

// Accumulates sub-checks of one criterion.
struct Checks {
  std::vector<std::string> measured;
  bool ok = true;

  void add(bool pass, std::string text) {
    ok = ok && pass;
    measured.push_back((pass ? "" : "!") + std::move(text));
  }

  std::string joined() const {
    std::string s;
    for (const auto& m : measured) s += (s.empty() ? "" : "; ") + m;
    return s;
  }
};

OptimizationConfig config(std::uint64_t seed, int restarts) {
  OptimizationConfig cfg;
  cfg.seed = seed;
  cfg.restarts = restarts;
  return cfg;
}

double global(const DensityMatrix& rho, int receivers, int alphabet, const OptimizationConfig& cfg) {
  return optimize_global_capacity(rho, receivers, alphabet, cfg).best_value;
}

DensityMatrix ghz(int parties, double theta) {
  return DensityMatrix::from_pure(gghz_state(parties, theta));
}

CriterionReport baseline(const SuiteOptions&) {
  Checks c;
  const double peak = chi_sdc_gghz(kPi / 2.0);
  c.add(std::abs(peak - 2.0) <= 1e-12, "chi_sdc(pi/2) = " + num(peak, 12));
  double worst = 0.0;
  for (double theta : uniform_grid(0.0, kPi, 63)) {
    worst = std::max(worst, std::abs(chi_sdc_gghz(theta) - chi_sdc_gghz(kPi - theta)));
  }
  c.add(worst <= 1e-12, "max |chi(t) - chi(pi - t)| = " + sci(worst));
  return {1, "baseline closed form", c.joined(), "2 to 1e-12; symmetric to 1e-12",
          c.ok ? Status::kPass : Status::kFail, ""};
}

CriterionReport ghz_capacity(const SuiteOptions& o) {
  Checks c;
  const auto rho = ghz(3, kPi / 2.0);
  const auto cfg = config(o.seed, 32);
  for (int k = 2; k <= 6; ++k) {
    const double v = global(rho, 2, k, cfg);
    c.add(v >= std::log2(k) - kBitsTolerance, "|X|=" + std::to_string(k) + " " + num(v));
  }
  const double v7 = global(rho, 2, 7, cfg);
  c.add(v7 <= std::log2(6.0) + 0.01, "|X|=7 " + num(v7));
  return {2, "GHZ global capacity", c.joined(),
          "log|X| - 0.02 for |X| <= 6; |X|=7 <= log 6 + 0.01", c.ok ? Status::kPass : Status::kFail, ""};
}

CriterionReport plateau(const SuiteOptions& o) {
  Checks c;
  const auto cfg = config(o.seed, 32);
  const double inside = global(ghz(3, 1.0), 2, 6, cfg);
  c.add(inside >= std::log2(6.0) - kBitsTolerance, "theta=1 |X|=6 " + num(inside));
  const auto flat = ghz(3, 0.0);
  const double three = global(flat, 2, 3, cfg);
  c.add(std::abs(three - std::log2(3.0)) <= kBitsTolerance, "theta=0 |X|=3 " + num(three));
  c.add(three <= std::log2(3.0) + 0.01, "theta=0 |X|=3 <= log 3 + 0.01");
  for (int k : {4, 6}) {
    const double v = global(flat, 2, k, cfg);
    c.add(v <= std::log2(3.0) + 0.01, "theta=0 |X|=" + std::to_string(k) + " " + num(v));
  }
  return {3, "generalized-GHZ plateau", c.joined(),
          "theta=1: >= log 6 - 0.02; theta=0: log 3 +- 0.02, <= log 3 + 0.01",
          c.ok ? Status::kPass : Status::kFail, ""};
}

CriterionReport advantage(const SuiteOptions& o) {
  Checks c;
  const auto cfg = config(o.seed, 32);
  for (double theta : {0.5, 2.6, kPi / 2.0}) {
    const auto rho = ghz(3, theta);
    double best = 0.0;
    for (int k = 2; k <= 7; ++k) best = std::max(best, global(rho, 2, k, cfg));
    const double delta = figure_of_merit(best, chi_sdc_gghz(theta), 2);
    const bool want_positive = theta != kPi / 2.0;
    c.add(want_positive ? delta > 0.0 : delta < 0.0,
          "theta=" + num(theta, 3) + " delta " + num(delta));
  }
  return {4, "advantage region", c.joined(), "delta > 0 at 0.5, 2.6; delta < 0 at pi/2",
          c.ok ? Status::kPass : Status::kFail, ""};
}

CriterionReport maximally_mixed(const SuiteOptions& o) {
  Checks c;
  const auto rho = maximally_mixed_state(3);
  const auto cfg = config(o.seed, 32);
  const double three = global(rho, 2, 3, cfg);
  c.add(std::abs(three - 1.2539) <= kBitsTolerance, "|X|=3 " + num(three));
  const double two = global(rho, 2, 2, cfg);
  c.add(std::abs(two - 1.0) <= 0.005, "|X|=2 " + num(two));
  return {5, "maximally mixed state", c.joined(), "1.2539 +- 0.02; 1.000 +- 0.005",
          c.ok ? Status::kPass : Status::kFail, ""};
}

CriterionReport product(const SuiteOptions& o) {
  Checks c;
  cli::ExperimentConfig ec;
  ec.state = cli::StateFamily::kProduct;
  const auto rho = cli::make_state(ec);
  const auto cfg = config(o.seed, 32);
  const double three = global(rho, 2, 3, cfg);
  c.add(std::abs(three - std::log2(3.0)) <= kBitsTolerance, "|X|=3 " + num(three));
  const double four = global(rho, 2, 4, cfg);
  c.add(four <= std::log2(3.0) + 0.01, "|X|=4 " + num(four));
  return {6, "product pure state", c.joined(), "log 3 +- 0.02; |X|=4 <= log 3 + 0.01",
          c.ok ? Status::kPass : Status::kFail, ""};
}

CriterionReport separable(const SuiteOptions& o) {
  Checks c;
  const auto found = optimize_separable_search(2, 5, config(o.seed, 48));
  c.add(found.capacity.best_value >= std::log2(5.0) - 0.05,
        "|X|=5 " + num(found.capacity.best_value));
  c.add(std::abs(found.chi_dc_raw - 1.0) <= kBitsTolerance, "chi_dc " + num(found.chi_dc_raw));
  return {7, "separable mixed search", c.joined(), ">= log 5 - 0.05; chi_dc 1 +- 0.02",
          c.ok ? Status::kPass : Status::kFail, ""};
}

CriterionReport locc1_saturation(const SuiteOptions& o) {
  Checks c;
  constexpr double kSmallTheta = 0.0147;
  for (int k : {2, 3, 4}) {
    const auto r = optimize_locc1(kSmallTheta, k, config(o.seed, 16));
    c.add(r.best_value >= std::log2(k) - kBitsTolerance,
          "|X|=" + std::to_string(k) + " " + num(r.best_value));
  }
  return {8, "LOCC1 saturation (theta=0.0147)", c.joined(), "log|X| - 0.02",
          c.ok ? Status::kPass : Status::kFail, ""};
}

CriterionReport locc1_headline(const SuiteOptions& o) {
  Checks c;
  const auto r = optimize_locc1(std::nullopt, 5, config(o.seed, 64));
  const double theta = r.best_theta.value_or(kPi);
  const double delta = figure_of_merit(r.best_value, chi_sdc_gghz(theta), 2);
  const bool near_zero = theta < 0.05 || theta > 2.0 * kPi - 0.05;
  c.add(r.best_value >= 2.30, "I " + num(r.best_value));
  c.add(near_zero, "theta* " + num(theta, 5));
  c.add(delta >= 0.29, "delta~ " + num(delta));
  CriterionReport report{9, "LOCC1 headline (theta free, |X|=5)", c.joined(),
                         ">= 2.30 at theta < 0.05, delta~ >= 0.29", Status::kPass, ""};
  if (!c.ok) {
    report.status = r.best_value >= 2.0 ? Status::kWarn : Status::kFail;
    report.note = "fell short of the headline value; degraded bound is 2.0";
  }
  return report;
}

CriterionReport three_receivers(const SuiteOptions& o) {
  Checks c;
  const auto cfg = config(o.seed, 32);
  const double g = global(ghz(4, kPi / 2.0), 3, 8, cfg);
  c.add(std::abs(g - 3.0) <= 0.03, "GHZ4 |X|=8 " + num(g));
  const std::vector<int> zeros(4, 0);
  const auto prod =
      DensityMatrix::from_pure(basis_state(physical_layout(4), zeros));
  const double four = global(prod, 3, 4, cfg);
  c.add(std::abs(four - 2.0) <= 0.03, "product |X|=4 " + num(four));
  const double five = global(prod, 3, 5, cfg);
  c.add(five <= 2.01, "product |X|=5 " + num(five));
  return {10, "M=3 receivers", c.joined(), "3.0 +- 0.03; 2.0 +- 0.03; <= 2.01",
          c.ok ? Status::kPass : Status::kFail, ""};
}

// ---- property suites ----

double deviation_from_identity(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

EncodingScheme random_scheme(int receivers, int alphabet, std::mt19937_64& rng) {
  const EncodingParameterization param(receivers, alphabet, ProbabilityMode::kFree);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::vector<double> v(param.size());
  for (double& x : v) x = angle(rng);
  return param.decode(v);
}

Locc1Scheme random_locc1(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::vector<double> v(Locc1Scheme::kParameterCount);
  for (double& x : v) x = angle(rng);
  return Locc1Scheme::from_parameters(v);
}

DensityMatrix random_mixed(int qubits, std::mt19937_64& rng) {
  const auto layout = physical_layout(qubits);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(layout.total_dim()),
                          static_cast<Eigen::Index>(layout.total_dim()));
  double total = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double w = weight(rng);
    m += w * haar_random_state(layout, rng).projector();
    total += w;
  }
  return DensityMatrix(layout, m / total);
}

CriterionReport properties(const SuiteOptions& o) {
  Checks c;
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> quarter(0.0, kPi / 2.0);

  double unitary = 0.0;
  for (int draw = 0; draw < 1000; ++draw) {
    unitary = std::max(unitary, deviation_from_identity(single_qubit_unitary(
                                    {angle(rng), angle(rng), angle(rng), angle(rng)})));
    std::vector<double> v(TwoQubitParams::kParameterCount);
    for (double& x : v) x = angle(rng);
    unitary = std::max(unitary,
                       deviation_from_identity(two_qubit_unitary_kak(TwoQubitParams::from_parameters(v))));
  }
  c.add(unitary <= 1e-12, "unitarity " + sci(unitary));

  double trace = 0.0, negativity = 0.0;
  for (int draw = 0; draw < 1000; ++draw) {
    const auto rho = random_mixed(3, rng);
    for (const auto& keep : {std::set<int>{1}, std::set<int>{2, 3}, std::set<int>{1, 3}}) {
      const auto r = rho.reduced(keep);
      trace = std::max(trace, std::abs(r.matrix().trace() - Complex(1.0, 0.0)));
      negativity = std::max(negativity, -hermitian_spectrum(r.matrix()).minCoeff());
    }
  }
  c.add(trace <= 1e-10 && negativity <= 1e-9,
        "trace " + sci(trace) + ", min eig " + sci(-negativity));

  double path = 0.0, completeness = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    const auto psi = haar_random_state(physical_layout(3), rng);
    const auto letter = RoutingLetter::from(random_scheme(2, 1, rng).letters.front());
    const auto pure = route_pure(to_protocol_order(psi), letter, 2);
    const auto rho = DensityMatrix::from_pure(psi);
    const auto dense = route_and_postselect(rho, letter, 2);
    path = std::max(path, (pure.state.projector() - dense.state.matrix()).cwiseAbs().maxCoeff());
    path = std::max(path, std::abs(pure.success_probability - dense.success_probability));
    const auto outcomes = control_outcome_probabilities(rho, letter, 2);
    double total = 0.0;
    for (double p : outcomes) total += p;
    completeness = std::max(completeness, std::abs(total - 1.0));
    completeness = std::max(completeness, std::abs(outcomes.front() - dense.success_probability));
  }
  c.add(path <= 1e-10, "pure vs density path " + sci(path));
  c.add(completeness <= 1e-10, "control completeness " + sci(completeness));

  double chain = 0.0;
  for (int draw = 0; draw < 50; ++draw) {
    const auto rho = random_mixed(3, rng);
    const auto e = encode_ensemble(rho, random_scheme(2, 3, rng), 2);
    const auto info = locc1_mutual_information(e, random_locc1(rng));
    chain = std::max(chain, std::abs(info.total - info.chain_rule_total()));
  }
  c.add(chain <= 1e-10, "chain rule " + sci(chain));

  double gate = 0.0;
  const Matrix xx = kron(pauli_x(), pauli_x());
  const Matrix yy = kron(pauli_y(), pauli_y());
  const Matrix zz = kron(pauli_z(), pauli_z());
  for (int draw = 0; draw < 1000; ++draw) {
    const std::array<double, 3> a{quarter(rng), quarter(rng), quarter(rng)};
    const Matrix generator = -kI * (a[0] * xx + a[1] * yy + a[2] * zz);
    const Matrix oracle = generator.exp();
    gate = std::max(gate, (canonical_two_qubit_gate(a) - oracle).cwiseAbs().maxCoeff());
  }
  c.add(gate <= 1e-10, "canonical gate vs expm " + sci(gate));

  return {11, "property suites", c.joined(), "unitarity 1e-12; oracles 1e-10",
          c.ok ? Status::kPass : Status::kFail, ""};
}

CriterionReport determinism(const SuiteOptions& o) {
  cli::ExperimentConfig ec;
  ec.command = cli::Command::kSweep;
  ec.alphabet = 3;
  ec.grid_points = 5;
  ec.optimization.restarts = 4;
  ec.optimization.seed = o.seed;
  std::ostringstream first, second, log;
  cli::run_command(ec, first, log);
  cli::run_command(ec, second, log);
  const bool same = !first.str().empty() && first.str() == second.str();
  return {12, "sweep determinism",
          same ? "identical CSV (" + std::to_string(first.str().size()) + " bytes)"
               : "!CSV differs between runs",
          "byte-identical", same ? Status::kPass : Status::kFail, ""};
}

using Runner = std::function<CriterionReport(const SuiteOptions&)>;

const std::vector<Runner>& runners() {
  static const std::vector<Runner> all{baseline,        ghz_capacity,    plateau,   advantage,
                                       maximally_mixed, product,         separable, locc1_saturation,
                                       locc1_headline,  three_receivers, properties, determinism};
  return all;
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::kPass: return "PASS";
    case Status::kWarn: return "WARN";
    case Status::kFail: return "FAIL";
    case Status::kSkipped: return "SKIPPED";
  }
  return "?";
}

bool is_slow(int id) { return id == 7 || id == 8 || id == 9 || id == 10; }

std::vector<CriterionReport> run_suite(const SuiteOptions& options, std::ostream& log) {
  std::vector<CriterionReport> reports;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (!options.only.empty() && !options.only.contains(id)) continue;
    CriterionReport r;
    if (options.fast && is_slow(id)) {
      r = {id, "slow criterion", "-", "-", Status::kSkipped, "skipped by --fast"};
    } else {
      const auto start = std::chrono::steady_clock::now();
      try {
        r = runners()[static_cast<std::size_t>(id - 1)](options);
      } catch (const std::exception& e) {
        r = {id, "criterion " + std::to_string(id), "exception", "-", Status::kFail, e.what()};
      }
      r.seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    log << format_line(r) << '\n' << std::flush;
    reports.push_back(std::move(r));
  }
  return reports;
}

std::string format_line(const CriterionReport& r) {
  std::ostringstream s;
  s << to_string(r.status) << "  [" << r.id << "] " << r.name << ": " << r.measured
    << " | target " << r.target;
  if (r.status != Status::kSkipped) s << " | " << num(r.seconds, 1) << " s";
  if (!r.note.empty()) s << " | " << r.note;
  return s.str();
}

bool suite_passed(const std::vector<CriterionReport>& reports) {
  return std::none_of(reports.begin(), reports.end(),
                      [](const CriterionReport& r) { return r.status == Status::kFail; });
}

}  // namespace ncrdc::acceptance
