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

#include "ncrdc/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include <ceres/ceres.h>

namespace ncrdc {

namespace {

// Ceres minimizes; the objective is negated on the way in.
class NegatedObjective final : public ceres::FirstOrderFunction {
 public:
  NegatedObjective(const Objective& f, int n, double step)
      : f_(f), n_(n), step_(step) {}

  bool Evaluate(const double* parameters, double* cost, double* gradient) const override {
    const std::span<const double> x(parameters, static_cast<std::size_t>(n_));
    const auto value = f_(x);
    *cost = -(value ? *value : kInfeasiblePenalty);
    if (gradient != nullptr) {
      if (value) {
        const auto g = numerical_gradient(f_, x, step_);
        for (int i = 0; i < n_; ++i) gradient[i] = -g[static_cast<std::size_t>(i)];
      } else {
        std::fill(gradient, gradient + n_, 0.0);
      }
    }
    return true;
  }

  int NumParameters() const override { return n_; }

 private:
  const Objective& f_;
  int n_;
  double step_;
};

}  // namespace

std::vector<double> numerical_gradient(const Objective& f, std::span<const double> x,
                                       double step) {
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> g(x.size(), 0.0);
  const auto center = f(x);
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + step;
    const auto up = f(probe);
    probe[i] = x[i] - step;
    const auto down = f(probe);
    probe[i] = x[i];
    if (up && down) {
      g[i] = (*up - *down) / (2.0 * step);
    } else if (up && center) {
      g[i] = (*up - *center) / step;
    } else if (down && center) {
      g[i] = (*center - *down) / step;
    }
  }
  return g;
}

LocalSearchResult maximize_locally(const Objective& f, std::vector<double> x0,
                                   const LocalSearchOptions& options) {
  LocalSearchResult result;
  const int n = static_cast<int>(x0.size());
  if (n == 0) {
    const auto v = f(x0);
    result.feasible = v.has_value();
    result.value = v.value_or(kInfeasiblePenalty);
    result.converged = true;
    return result;
  }

  ceres::GradientProblemSolver::Options solver_options;
  solver_options.line_search_direction_type = ceres::BFGS;
  solver_options.max_num_iterations = options.max_iterations;
  solver_options.function_tolerance = options.function_tolerance;
  solver_options.gradient_tolerance = 1e-12;
  solver_options.parameter_tolerance = 1e-12;
  solver_options.logging_type = ceres::SILENT;
  solver_options.minimizer_progress_to_stdout = false;

  ceres::GradientProblem problem(new NegatedObjective(f, n, options.gradient_step));
  ceres::GradientProblemSolver::Summary summary;
  ceres::Solve(solver_options, problem, x0.data(), &summary);

  const auto v = f(x0);
  result.x = std::move(x0);
  result.feasible = v.has_value();
  result.value = v.value_or(kInfeasiblePenalty);
  result.converged = summary.termination_type == ceres::CONVERGENCE;
  result.iterations = static_cast<int>(summary.iterations.size());
  return result;
}

std::mt19937_64 restart_rng(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

unsigned worker_count(std::size_t jobs) {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("NCR_DC_THREADS")) {
    try {
      const int requested = std::stoi(env);
      if (requested >= 1) cap = static_cast<unsigned>(requested);
    } catch (const std::exception&) {
      // Unparsable values keep the hardware default.
    }
  }
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(cap, jobs)));
}

void parallel_for(std::size_t jobs, const std::function<void(std::size_t)>& job) {
  const unsigned workers = worker_count(jobs);
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < jobs; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace ncrdc
