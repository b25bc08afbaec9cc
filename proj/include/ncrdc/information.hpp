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

#include <array>
#include <set>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "ncrdc/encoding.hpp"
#include "ncrdc/linalg.hpp"
#include "ncrdc/states.hpp"

// Every quantity in this header is in bits.
namespace ncrdc {

/// Eigenvalues in [−kEigenvalueClamp, 0) are rounding and count as zero.
inline constexpr double kEigenvalueClamp = 1e-9;

struct EnsembleMember {
  double probability;
  DensityMatrix state;
};

/// Nonempty list of (p_x, ρ_x) on a shared layout with Σ p_x = 1.
class Ensemble {
 public:
  explicit Ensemble(std::vector<EnsembleMember> members);

  const std::vector<EnsembleMember>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const SystemLayout& layout() const { return members_.front().state.layout(); }
  /// Σ p_x ρ_x
  Matrix average() const;

 private:
  std::vector<EnsembleMember> members_;
};

/// −Σ λ log₂ λ; throws std::domain_error on eigenvalues below −kEigenvalueClamp.
double entropy_of_spectrum(std::span<const double> eigenvalues);
double entropy_of_spectrum(const RealVector& eigenvalues);

double von_neumann_entropy(const DensityMatrix& rho);
/// Entropy of a Hermitian PSD matrix without building a DensityMatrix.
double von_neumann_entropy(const Matrix& rho);

double binary_entropy(double p);
double shannon_entropy(std::span<const double> p);

/// S(Σ p ρ) − Σ p S(ρ), clamped at zero.
double holevo_quantity(const Ensemble& e);

/// Standard dense-coding capacity of the generalized GHZ state,
/// 1 + H(cos²(θ/2)). Periodic in θ with period 2π.
double chi_sdc_gghz(double theta);

/// log₂ d_A + S(ρ_B) − S(ρ_AB) with the sender at `sender_position` and
/// every other subsystem on the receiver side. With `floor_at_log_dim` the
/// result is max(log₂ d_A, formula), the capacity proper.
double chi_dc_bipartite(const DensityMatrix& rho, int sender_position,
                        bool floor_at_log_dim = false);

/// S(ρ_A) + S(ρ_B) − max_Z Σ p S(ρ_Z^x) for the cut part_a : rest.
double locc_accessible_upper_bound(const Ensemble& e, const std::set<int>& part_a);

/// Probabilities p(x, y) with Σ = 1 (y may itself be a flattened tuple).
class JointDistribution {
 public:
  JointDistribution(std::size_t nx, std::size_t ny, std::vector<double> p);

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  double operator()(std::size_t x, std::size_t y) const { return p_[x * ny_ + y]; }
  std::vector<double> marginal_x() const;
  std::vector<double> marginal_y() const;

 private:
  std::size_t nx_;
  std::size_t ny_;
  std::vector<double> p_;
};

double mutual_information(const JointDistribution& j);

/// One-way LOCC decoding: Bob₁ measures {U|i><U|i|†} on lab 1, then Bob₂
/// measures a basis chosen by Bob₁'s outcome on lab 2. Both measurements are
/// rank-one projective.
struct Locc1Scheme {
  TwoQubitParams bob1;
  std::array<TwoQubitParams, 4> bob2;

  static constexpr std::size_t kParameterCount = 5 * TwoQubitParams::kParameterCount;
  static Locc1Scheme from_parameters(std::span<const double> v);
  std::vector<double> parameters() const;

  /// Basis-rotating unitaries: index 0 is Bob₁, 1 + y₁ is Bob₂ after y₁.
  std::array<Matrix, 5> unitaries() const;
};

nlohmann::json to_json(const Locc1Scheme& s);
Locc1Scheme locc1_scheme_from_json(const nlohmann::json& j);

struct Locc1Information {
  /// I(X; Y₁Y₂) from the full joint distribution over (x, y₁, y₂).
  double total = 0.0;
  /// Chain-rule terms built from the post-measurement ensembles.
  double first_stage = 0.0;                  // I(X; Y₁)
  std::array<double, 4> p_y1{};              // p_{Y₁}(y₁)
  std::array<double, 4> conditional{};       // I(X; Y₂ | Y₁ = y₁)
  double chain_rule_total() const;
};

/// Ensemble members must live on two labs of two qubits each, lab 1 being
/// positions (1, 2) and lab 2 positions (3, 4).
Locc1Information locc1_mutual_information(const Ensemble& e, const Locc1Scheme& s);

}  // namespace ncrdc
