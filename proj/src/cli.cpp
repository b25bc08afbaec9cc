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

#include "ncrdc/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ncrdc/acceptance.hpp"

namespace ncrdc::cli {

namespace {

constexpr int kDefaultLocc1Restarts = 64;

template <typename E>
E lookup(const std::string& s, std::initializer_list<std::pair<const char*, E>> table,
         const char* what) {
  for (const auto& [name, value] : table) {
    if (s == name) return value;
  }
  throw UsageError(std::string("unknown ") + what + " '" + s + "'");
}

std::string fixed6(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

nlohmann::json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

// Options shared by all subcommands, bound to raw values so that only the
// flags actually given override the file.
struct Flags {
  std::string config;
  std::string state, state_file, out, format, probability_mode, resume;
  double theta = 0, phi = 0, grid_start = 0, grid_stop = 0, gradient_step = 0, tolerance = 0;
  int receivers = 0, alphabet = 0, terms = 0, restarts = 0, max_iterations = 0, grid_points = 0;
  std::uint64_t seed = 0;
  bool free_theta = false, no_warm_start = false, fast = false;
};

struct Parser {
  CLI::App app{"Dense coding with non-classical routing: capacities, one-way LOCC "
               "decoding, sweeps and verification."};
  Flags f;
  std::vector<std::pair<Command, CLI::App*>> subcommands;

  Parser() {
    app.require_subcommand(0, 1);
    const std::pair<Command, const char*> commands[] = {
        {Command::kCapacity, "best Holevo quantity of the routed ensemble"},
        {Command::kLocc1, "best one-way LOCC mutual information (M = 2)"},
        {Command::kSweep, "generalized-GHZ theta sweep as CSV"},
        {Command::kBaseline, "standard dense coding capacity"},
        {Command::kVerify, "run the acceptance suite"}};
    for (const auto& [c, help] : commands) {
      auto* sub = app.add_subcommand(to_string(c), help);
      sub->fallthrough();
      subcommands.emplace_back(c, sub);
    }
    app.add_option("--config", f.config, "JSON config file; flags override its values");
    app.add_option("--state", f.state, "input state")
        ->check(CLI::IsMember({"gghz", "maxmixed", "sepmixed", "product", "file"}));
    app.add_option("--state-file", f.state_file, "JSON state file for --state file");
    app.add_option("--theta", f.theta, "generalized-GHZ angle (radians)");
    app.add_option("--phi", f.phi, "generalized-GHZ relative phase (radians)");
    app.add_flag("--free-theta", f.free_theta, "locc1: optimize the generalized-GHZ angle");
    app.add_option("--M", f.receivers, "number of receivers");
    app.add_option("--alphabet", f.alphabet, "alphabet size |X|");
    app.add_option("--terms", f.terms, "sepmixed: number of product terms");
    app.add_option("--restarts", f.restarts, "random restarts");
    app.add_option("--max-iterations", f.max_iterations, "iterations per restart");
    app.add_option("--seed", f.seed, "base seed");
    app.add_option("--gradient-step", f.gradient_step, "finite-difference step");
    app.add_option("--tolerance", f.tolerance, "convergence tolerance");
    app.add_option("--probability-mode", f.probability_mode, "letter probabilities")
        ->check(CLI::IsMember({"free", "uniform"}));
    app.add_option("--out", f.out, "output path (default stdout)");
    app.add_option("--format", f.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--grid-start", f.grid_start, "sweep/baseline grid start");
    app.add_option("--grid-stop", f.grid_stop, "sweep/baseline grid stop");
    app.add_option("--grid-points", f.grid_points, "sweep/baseline grid points");
    app.add_flag("--no-warm-start", f.no_warm_start, "sweep: cold restarts only");
    app.add_option("--resume", f.resume, "checkpoint file to resume from and update");
    app.add_flag("--fast", f.fast, "verify: skip slow criteria");
  }

  bool given(const char* name) const { return app.count(name) > 0; }

  ExperimentConfig resolve() const {
    ExperimentConfig cfg;
    nlohmann::json file;
    if (given("--config")) {
      std::ifstream in(f.config);
      if (!in) throw UsageError("cannot open config file '" + f.config + "'");
      try {
        file = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw UsageError("config file '" + f.config + "': " + e.what());
      }
      cfg = experiment_config_from_json(file);
    }
    for (const auto& [c, sub] : subcommands) {
      if (sub->parsed()) cfg.command = c;
    }
    if (!given("--config") && app.get_subcommands().empty()) {
      throw UsageError("a subcommand is required (capacity, locc1, sweep, baseline, verify)");
    }
    if (given("--state")) cfg.state = state_family_from_string(f.state);
    if (given("--state-file")) {
      cfg.state_file = f.state_file;
      if (!given("--state") && !file.contains("state")) cfg.state = StateFamily::kFile;
    }
    if (given("--theta")) cfg.theta = f.theta;
    if (given("--phi")) cfg.phi = f.phi;
    if (given("--free-theta")) cfg.free_theta = f.free_theta;
    if (given("--M")) cfg.receivers = f.receivers;
    if (given("--alphabet")) cfg.alphabet = f.alphabet;
    if (given("--terms")) cfg.separable_terms = f.terms;
    if (given("--restarts")) {
      cfg.optimization.restarts = f.restarts;
    } else if (cfg.command == Command::kLocc1 && !file.contains("restarts")) {
      cfg.optimization.restarts = kDefaultLocc1Restarts;
    }
    if (given("--max-iterations")) cfg.optimization.max_iterations = f.max_iterations;
    if (given("--seed")) cfg.optimization.seed = f.seed;
    if (given("--gradient-step")) cfg.optimization.gradient_step = f.gradient_step;
    if (given("--tolerance")) cfg.optimization.convergence_tolerance = f.tolerance;
    if (given("--probability-mode")) {
      cfg.optimization.probability_mode = probability_mode_from_string(f.probability_mode);
    }
    if (given("--out")) cfg.out = f.out;
    if (given("--format")) cfg.format = output_format_from_string(f.format);
    if (given("--grid-start")) cfg.grid_start = f.grid_start;
    if (given("--grid-stop")) cfg.grid_stop = f.grid_stop;
    if (given("--grid-points")) cfg.grid_points = f.grid_points;
    if (given("--no-warm-start")) cfg.warm_start = false;
    if (given("--resume")) cfg.resume = f.resume;
    if (given("--fast")) cfg.fast = f.fast;
    cfg.validate();
    return cfg;
  }
};

// The part of the config a checkpoint must agree with.
nlohmann::json checkpoint_identity(const ExperimentConfig& cfg) {
  nlohmann::json j = to_json(cfg);
  for (const char* key : {"out", "format", "resume", "fast"}) j.erase(key);
  return j;
}

class Checkpoint {
 public:
  Checkpoint(const ExperimentConfig& cfg, const char* list_key)
      : path_(cfg.resume), key_(list_key) {
    doc_ = {{"config", checkpoint_identity(cfg)}, {key_, nlohmann::json::array()}};
    if (path_.empty() || !std::filesystem::exists(path_)) return;
    std::ifstream in(path_);
    nlohmann::json stored;
    try {
      stored = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("checkpoint '" + path_ + "': " + e.what());
    }
    if (!stored.contains("config") || stored.at("config") != doc_.at("config")) {
      throw UsageError("checkpoint '" + path_ + "' was written for a different configuration");
    }
    doc_[key_] = stored.value(key_, nlohmann::json::array());
  }

  const nlohmann::json& entries() const { return doc_.at(key_); }

  void append(nlohmann::json entry) {
    doc_[key_].push_back(std::move(entry));
    if (path_.empty()) return;
    const std::string tmp = path_ + ".tmp";
    {
      std::ofstream out(tmp);
      out << doc_.dump(1) << '\n';
      if (!out) throw std::runtime_error("cannot write checkpoint '" + tmp + "'");
    }
    std::filesystem::rename(tmp, path_);
  }

 private:
  std::string path_;
  std::string key_;
  nlohmann::json doc_;
};

RestartHooks restart_hooks(Checkpoint& cp) {
  RestartHooks hooks;
  for (const auto& e : cp.entries()) hooks.completed.push_back(restart_outcome_from_json(e));
  hooks.on_done = [&cp](const RestartOutcome& r) { cp.append(to_json(r)); };
  return hooks;
}

double chi_sdc_for(const ExperimentConfig& cfg, const DensityMatrix& rho) {
  if (cfg.state == StateFamily::kGghz) return chi_sdc_gghz(cfg.theta);
  return chi_dc_bipartite(rho, 1);
}

nlohmann::json state_json(const ExperimentConfig& cfg) {
  nlohmann::json j{{"family", to_string(cfg.state)}};
  switch (cfg.state) {
    case StateFamily::kGghz:
      j["theta"] = cfg.theta;
      j["phi"] = cfg.phi;
      break;
    case StateFamily::kFile:
      j["path"] = cfg.state_file;
      break;
    case StateFamily::kSepMixed:
      j["terms"] = cfg.separable_terms;
      break;
    default:
      break;
  }
  return j;
}

nlohmann::json base_report(const ExperimentConfig& cfg, const CapacityResult& r) {
  return {{"command", to_string(cfg.command)},
          {"config", to_json(cfg)},
          {"state", state_json(cfg)},
          {"M", cfg.receivers},
          {"alphabet_size", cfg.alphabet},
          {"best_value_bits", r.best_value},
          {"scheme", to_json(r.best_scheme)},
          {"seeds", {{"base", cfg.optimization.seed}, {"restarts", r.restarts.size()}}},
          {"per_restart_values", r.per_restart_values},
          {"converged", r.converged},
          {"runtime", r.wall_time}};
}

std::string report_csv(const ExperimentConfig& cfg, const nlohmann::json& report) {
  std::ostringstream s;
  s << "command,state,M,alphabet,best_value_bits,chi_sdc,delta,restarts,seed\n"
    << to_string(cfg.command) << ',' << to_string(cfg.state) << ',' << cfg.receivers << ','
    << cfg.alphabet << ',' << fixed6(report.at("best_value_bits").get<double>()) << ','
    << fixed6(report.at("chi_sdc").get<double>()) << ','
    << fixed6(report.at("delta").get<double>()) << ',' << cfg.optimization.restarts << ','
    << cfg.optimization.seed << '\n';
  return s.str();
}

std::string render(const ExperimentConfig& cfg, const nlohmann::json& report) {
  if (cfg.resolved_format() == OutputFormat::kCsv) return report_csv(cfg, report);
  return report.dump(2) + "\n";
}

std::string run_capacity(const ExperimentConfig& cfg, std::ostream& err) {
  Checkpoint cp(cfg, "restarts");
  RestartHooks hooks = restart_hooks(cp);
  if (cfg.state == StateFamily::kSepMixed) {
    const auto found = optimize_separable_search(cfg.separable_terms, cfg.alphabet,
                                                 cfg.optimization, &hooks);
    nlohmann::json report = base_report(cfg, found.capacity);
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : found.terms) {
      nlohmann::json bloch = nlohmann::json::array();
      for (const auto& b : t.bloch) bloch.push_back(b.components());
      terms.push_back({{"probability", t.probability}, {"bloch", bloch}});
    }
    report["state"]["found"] = terms;
    report["state"]["density"] = to_json(found.state);
    report["chi_sdc"] = found.chi_dc_raw;
    report["chi_dc_capacity"] = found.chi_dc_capacity;
    report["delta"] = figure_of_merit(found.capacity.best_value, found.chi_dc_raw, 2);
    return render(cfg, report);
  }
  const DensityMatrix rho = make_state(cfg);
  err << "capacity: " << cfg.optimization.restarts << " restarts, |X| = " << cfg.alphabet
      << ", M = " << cfg.receivers << "\n";
  const auto result =
      optimize_global_capacity(rho, cfg.receivers, cfg.alphabet, cfg.optimization, {}, &hooks);
  nlohmann::json report = base_report(cfg, result);
  const double sdc = chi_sdc_for(cfg, rho);
  report["chi_sdc"] = sdc;
  report["delta"] = figure_of_merit(result.best_value, sdc, cfg.receivers);
  return render(cfg, report);
}

std::string run_locc1(const ExperimentConfig& cfg, std::ostream& err) {
  Checkpoint cp(cfg, "restarts");
  RestartHooks hooks = restart_hooks(cp);
  err << "locc1: " << cfg.optimization.restarts << " restarts, |X| = " << cfg.alphabet
      << (cfg.free_theta ? ", theta free" : "") << "\n";
  CapacityResult result;
  double sdc = 0.0;
  if (cfg.state == StateFamily::kGghz) {
    const std::optional<double> theta =
        cfg.free_theta ? std::nullopt : std::optional<double>(cfg.theta);
    if (cfg.phi != 0.0 && !cfg.free_theta) {
      result = optimize_locc1(make_state(cfg), cfg.alphabet, cfg.optimization, &hooks);
    } else {
      result = optimize_locc1(theta, cfg.alphabet, cfg.optimization, &hooks);
    }
    sdc = chi_sdc_gghz(result.best_theta.value_or(cfg.theta));
  } else {
    const DensityMatrix rho = make_state(cfg);
    result = optimize_locc1(rho, cfg.alphabet, cfg.optimization, &hooks);
    sdc = chi_dc_bipartite(rho, 1);
  }
  nlohmann::json report = base_report(cfg, result);
  report["chi_sdc"] = sdc;
  report["delta"] = figure_of_merit(result.best_value, sdc, 2);
  report["locc1_scheme"] = to_json(*result.best_locc1);
  if (result.best_theta) report["theta"] = *result.best_theta;
  return render(cfg, report);
}

std::string run_sweep(const ExperimentConfig& cfg, std::ostream& err) {
  if (cfg.state != StateFamily::kGghz) {
    throw UsageError("sweep runs over the generalized-GHZ family; use --state gghz");
  }
  const auto grid = uniform_grid(cfg.grid_start, cfg.grid_stop, cfg.grid_points);
  Checkpoint cp(cfg, "points");
  SweepHooks hooks;
  for (const auto& e : cp.entries()) hooks.completed.push_back(sweep_point_from_json(e));
  hooks.on_point = [&](const SweepPoint& p) {
    err << "sweep: theta = " << fixed6(p.row.theta) << "  chi = " << fixed6(p.row.chi_ncr_lower)
        << "  " << p.row.status << "\n";
    cp.append(to_json(p));
  };
  const auto rows = theta_sweep(grid, cfg.receivers, cfg.alphabet, cfg.optimization,
                                cfg.warm_start, &hooks);
  if (cfg.resolved_format() == OutputFormat::kCsv) return sweep_csv(rows);
  nlohmann::json table = nlohmann::json::array();
  for (const auto& r : rows) {
    table.push_back({{"theta", r.theta},
                     {"chi_ncr_lower", finite_or_null(r.chi_ncr_lower)},
                     {"chi_sdc", r.chi_sdc},
                     {"delta", finite_or_null(r.delta)},
                     {"restarts_used", r.restarts_used},
                     {"seed", r.seed},
                     {"status", r.status}});
  }
  return nlohmann::json{{"command", "sweep"}, {"config", to_json(cfg)}, {"rows", table}}.dump(2) +
         "\n";
}

std::string run_baseline(const ExperimentConfig& cfg) {
  const bool csv = cfg.resolved_format() == OutputFormat::kCsv;
  if (cfg.state == StateFamily::kGghz) {
    const auto grid = uniform_grid(cfg.grid_start, cfg.grid_stop, cfg.grid_points);
    std::ostringstream s;
    nlohmann::json rows = nlohmann::json::array();
    s << "theta,chi_sdc,chi_dc_numeric\n";
    for (double theta : grid) {
      const double closed = chi_sdc_gghz(theta);
      const auto rho = DensityMatrix::from_pure(
          gghz_state_periodic(cfg.receivers + 1, theta, cfg.phi));
      const double numeric = chi_dc_bipartite(rho, 1, true);
      s << fixed6(theta) << ',' << fixed6(closed) << ',' << fixed6(numeric) << '\n';
      rows.push_back({{"theta", theta}, {"chi_sdc", closed}, {"chi_dc_numeric", numeric}});
    }
    if (csv) return s.str();
    return nlohmann::json{{"command", "baseline"}, {"config", to_json(cfg)}, {"rows", rows}}
               .dump(2) + "\n";
  }
  const DensityMatrix rho = make_state(cfg);
  const double raw = chi_dc_bipartite(rho, 1);
  const double floored = chi_dc_bipartite(rho, 1, true);
  if (csv) {
    return "state,chi_dc_raw,chi_dc\n" + to_string(cfg.state) + "," + fixed6(raw) + "," +
           fixed6(floored) + "\n";
  }
  return nlohmann::json{{"command", "baseline"},
                        {"config", to_json(cfg)},
                        {"state", state_json(cfg)},
                        {"chi_dc_raw", raw},
                        {"chi_dc", floored}}
             .dump(2) + "\n";
}

int run_verify(const ExperimentConfig& cfg, std::ostream& sink) {
  acceptance::SuiteOptions options;
  options.fast = cfg.fast;
  options.seed = cfg.optimization.seed;
  const auto reports = acceptance::run_suite(options, sink);
  return acceptance::suite_passed(reports) ? kExitOk : kExitAcceptance;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::kCapacity: return "capacity";
    case Command::kLocc1: return "locc1";
    case Command::kSweep: return "sweep";
    case Command::kBaseline: return "baseline";
    case Command::kVerify: return "verify";
  }
  return "?";
}

std::string to_string(StateFamily s) {
  switch (s) {
    case StateFamily::kGghz: return "gghz";
    case StateFamily::kMaxMixed: return "maxmixed";
    case StateFamily::kSepMixed: return "sepmixed";
    case StateFamily::kProduct: return "product";
    case StateFamily::kFile: return "file";
  }
  return "?";
}

std::string to_string(OutputFormat f) { return f == OutputFormat::kCsv ? "csv" : "json"; }

Command command_from_string(const std::string& s) {
  return lookup<Command>(s,
                         {{"capacity", Command::kCapacity},
                          {"locc1", Command::kLocc1},
                          {"sweep", Command::kSweep},
                          {"baseline", Command::kBaseline},
                          {"verify", Command::kVerify}},
                         "command");
}

StateFamily state_family_from_string(const std::string& s) {
  return lookup<StateFamily>(s,
                             {{"gghz", StateFamily::kGghz},
                              {"maxmixed", StateFamily::kMaxMixed},
                              {"sepmixed", StateFamily::kSepMixed},
                              {"product", StateFamily::kProduct},
                              {"file", StateFamily::kFile}},
                             "state family");
}

OutputFormat output_format_from_string(const std::string& s) {
  return lookup<OutputFormat>(s, {{"csv", OutputFormat::kCsv}, {"json", OutputFormat::kJson}},
                              "output format");
}

void ExperimentConfig::validate() const {
  if (alphabet < 1) throw UsageError("alphabet size must be ≥ 1");
  if (receivers < 2) throw UsageError("routing needs M ≥ 2 receivers");
  if (separable_terms < 1) throw UsageError("sepmixed needs at least one term");
  if (grid_points < 1) throw UsageError("theta grid is empty");
  if (!std::isfinite(theta) || !std::isfinite(phi) || !std::isfinite(grid_start) ||
      !std::isfinite(grid_stop)) {
    throw UsageError("angles must be finite");
  }
  try {
    optimization.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (state == StateFamily::kFile && state_file.empty()) {
    throw UsageError("--state file needs --state-file");
  }
  if (command == Command::kLocc1 && receivers != 2) {
    throw UsageError("locc1 is defined for M = 2 only");
  }
  if (free_theta && (command != Command::kLocc1 || state != StateFamily::kGghz)) {
    throw UsageError("--free-theta applies to locc1 with --state gghz");
  }
  if (state == StateFamily::kSepMixed &&
      (command != Command::kCapacity || receivers != 2)) {
    throw UsageError(
        "sepmixed is searched jointly with the encoding; it is available for capacity with M = 2");
  }
}

OutputFormat ExperimentConfig::resolved_format() const {
  if (format) return *format;
  return command == Command::kSweep || command == Command::kBaseline ? OutputFormat::kCsv
                                                                      : OutputFormat::kJson;
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  nlohmann::json j{{"command", to_string(cfg.command)},
                   {"state", to_string(cfg.state)},
                   {"state_file", cfg.state_file},
                   {"theta", cfg.theta},
                   {"phi", cfg.phi},
                   {"free_theta", cfg.free_theta},
                   {"M", cfg.receivers},
                   {"alphabet", cfg.alphabet},
                   {"terms", cfg.separable_terms},
                   {"out", cfg.out},
                   {"format", to_string(cfg.resolved_format())},
                   {"grid_start", cfg.grid_start},
                   {"grid_stop", cfg.grid_stop},
                   {"grid_points", cfg.grid_points},
                   {"warm_start", cfg.warm_start},
                   {"resume", cfg.resume},
                   {"fast", cfg.fast}};
  j.update(to_json(cfg.optimization));
  return j;
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& j, ExperimentConfig cfg) {
  if (!j.is_object()) throw UsageError("config must be a flat JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "command") cfg.command = command_from_string(v.get<std::string>());
      else if (key == "state") cfg.state = state_family_from_string(v.get<std::string>());
      else if (key == "state_file") cfg.state_file = v.get<std::string>();
      else if (key == "theta") cfg.theta = v.get<double>();
      else if (key == "phi") cfg.phi = v.get<double>();
      else if (key == "free_theta") cfg.free_theta = v.get<bool>();
      else if (key == "M") cfg.receivers = v.get<int>();
      else if (key == "alphabet") cfg.alphabet = v.get<int>();
      else if (key == "terms") cfg.separable_terms = v.get<int>();
      else if (key == "out") cfg.out = v.get<std::string>();
      else if (key == "format") cfg.format = output_format_from_string(v.get<std::string>());
      else if (key == "grid_start") cfg.grid_start = v.get<double>();
      else if (key == "grid_stop") cfg.grid_stop = v.get<double>();
      else if (key == "grid_points") cfg.grid_points = v.get<int>();
      else if (key == "warm_start") cfg.warm_start = v.get<bool>();
      else if (key == "resume") cfg.resume = v.get<std::string>();
      else if (key == "fast") cfg.fast = v.get<bool>();
      else if (key == "restarts") cfg.optimization.restarts = v.get<int>();
      else if (key == "max_iterations") cfg.optimization.max_iterations = v.get<int>();
      else if (key == "seed") cfg.optimization.seed = v.get<std::uint64_t>();
      else if (key == "gradient_step") cfg.optimization.gradient_step = v.get<double>();
      else if (key == "convergence_tolerance") {
        cfg.optimization.convergence_tolerance = v.get<double>();
      } else if (key == "probability_mode") {
        cfg.optimization.probability_mode = probability_mode_from_string(v.get<std::string>());
      } else {
        throw UsageError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config value has the wrong type: ") + e.what());
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

ExperimentConfig parse_arguments(int argc, const char* const* argv) {
  Parser p;
  try {
    p.app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  return p.resolve();
}

DensityMatrix make_state(const ExperimentConfig& cfg) {
  const int parties = cfg.receivers + 1;
  switch (cfg.state) {
    case StateFamily::kGghz:
      return DensityMatrix::from_pure(gghz_state_periodic(parties, cfg.theta, cfg.phi));
    case StateFamily::kMaxMixed:
      return maximally_mixed_state(parties);
    case StateFamily::kProduct: {
      // |0>_A ⊗ |Φ+>_{B1 B2} ⊗ |0...0>
      Vector rest = bell_state().amplitudes();
      for (int k = 2; k < cfg.receivers; ++k) {
        Vector zero = Vector::Zero(2);
        zero(0) = 1.0;
        rest = kron(rest, zero);
      }
      const std::vector<int> zero_digit{0};
      const PureState a = basis_state(SystemLayout::qubits(1), zero_digit);
      return DensityMatrix::from_pure(
          product_pure_state(a, PureState(SystemLayout::qubits(cfg.receivers), rest)));
    }
    case StateFamily::kFile: {
      DensityMatrix rho = [&] {
        try {
          return load_state_file(cfg.state_file);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }();
      if (rho.layout().size() != static_cast<std::size_t>(parties)) {
        throw UsageError("state file has " + std::to_string(rho.layout().size()) +
                         " subsystems; M = " + std::to_string(cfg.receivers) + " needs " +
                         std::to_string(parties));
      }
      return rho;
    }
    case StateFamily::kSepMixed:
      break;
  }
  throw UsageError("sepmixed has no fixed instance; it is searched by the capacity command");
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream s;
  s << "theta,chi_ncr_lower,chi_sdc,delta,restarts_used,seed,status\n";
  for (const auto& r : rows) {
    std::string status = r.status;
    for (char& c : status) {
      if (c == ',' || c == '\n') c = ';';
    }
    s << fixed6(r.theta) << ',' << fixed6(r.chi_ncr_lower) << ',' << fixed6(r.chi_sdc) << ','
      << fixed6(r.delta) << ',' << r.restarts_used << ',' << r.seed << ',' << status << '\n';
  }
  return s.str();
}

int run_command(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) throw UsageError("cannot open output file '" + cfg.out + "'");
  }
  std::ostream& sink = cfg.out.empty() ? out : file;
  std::string text;
  switch (cfg.command) {
    case Command::kCapacity: text = run_capacity(cfg, err); break;
    case Command::kLocc1: text = run_locc1(cfg, err); break;
    case Command::kSweep: text = run_sweep(cfg, err); break;
    case Command::kBaseline: text = run_baseline(cfg); break;
    case Command::kVerify: return run_verify(cfg, sink);
  }
  sink << text;
  sink.flush();
  if (!sink) throw std::runtime_error("failed to write output");
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  {
    Parser p;
    try {
      p.app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = p.app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitUsage;
    }
    try {
      cfg = p.resolve();
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  try {
    return run_command(cfg, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace ncrdc::cli
