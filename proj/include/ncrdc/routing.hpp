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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ncrdc/encoding.hpp"
#include "ncrdc/information.hpp"
#include "ncrdc/linalg.hpp"
#include "ncrdc/states.hpp"

// Coherently controlled encoding and routing of the sender's qubit.
//
// The lab register for M receivers is (B1, A, B2, C2, ..., BM, CM): lab i
// owns positions 2i−1 and 2i. Branch i of the control applies SWAP(2, 2i),
// moving the sender's qubit into lab i, and then U_i on position 2i. The
// control is a qudit of dimension M, prepared in |+_M> and post-selected on
// the same state after the multiplexed unitary.
namespace ncrdc {

/// Success probabilities below this are rejected as degenerate.
inline constexpr double kPostSelectionFloor = 1e-12;

class PostSelectionFailure : public std::runtime_error {
 public:
  PostSelectionFailure(double probability, std::optional<std::size_t> letter);

  double probability() const { return probability_; }
  std::optional<std::size_t> letter() const { return letter_; }

 private:
  double probability_;
  std::optional<std::size_t> letter_;
};

/// One single-qubit unitary per receiver branch.
struct RoutingLetter {
  std::vector<Matrix> unitaries;

  static RoutingLetter from(const EncodingLetter& letter);
  /// Throws unless every entry is a 2×2 unitary to 1e-10.
  void validate(int receivers) const;
};

/// Lab register plus the control qudit as the last subsystem.
SystemLayout routed_layout(int receivers);

/// W = Σ_i embed(U_i, 2i)·SWAP(2, 2i) ⊗ |i−1><i−1|, control last.
Matrix multiplex_unitary(const RoutingLetter& letter, int receivers);

/// (1/M) Σ_i embed(U_i, 2i)·SWAP(2, 2i): the lab-register operator
/// <+_M| W |+_M> left after a successful post-selection.
Matrix routing_operator(const RoutingLetter& letter, int receivers);

struct RoutedPure {
  PureState state;
  double success_probability;
};

/// Routes a pure lab-register state whose auxiliaries are |0>.
RoutedPure route_pure(const PureState& psi, const RoutingLetter& letter, int receivers);

struct RoutedOutcome {
  DensityMatrix state;
  double success_probability;
};

/// Routes a physical-order state (A, B1..BM): reorder into the lab register,
/// attach auxiliaries and |+_M>, conjugate by W, project the control on
/// |+_M>, renormalize, and trace out the control.
RoutedOutcome route_and_postselect(const DensityMatrix& rho, const RoutingLetter& letter,
                                   int receivers);

/// Probabilities of all M outcomes of the control measurement in the
/// discrete Fourier basis; entry 0 is the |+_M> outcome.
std::vector<double> control_outcome_probabilities(const DensityMatrix& rho,
                                                  const RoutingLetter& letter,
                                                  int receivers);

enum class EnsembleWeights {
  kPrior,             // p_X(x) as chosen by the sender
  kPostSelectionBayes // p_X(x)·P(success|x), renormalized
};

Ensemble encode_ensemble(const DensityMatrix& rho, const EncodingScheme& scheme,
                         int receivers,
                         EnsembleWeights weights = EnsembleWeights::kPrior);

/// Routing of one fixed input under many encodings, for optimizer inner
/// loops. The lab-register input is held as a factor F with ρ_t = F F†, and
/// a letter maps it to the unnormalized factor K F whose squared Frobenius
/// norm is the success probability.
class RoutingEngine {
 public:
  RoutingEngine(const DensityMatrix& rho, int receivers);
  RoutingEngine(const PureState& physical, int receivers);

  int receivers() const { return receivers_; }
  std::size_t lab_dim() const { return lab_dim_; }
  Eigen::Index rank() const { return swapped_.front().cols(); }

  /// K F for the letter's unitaries (2×2 each).
  Matrix apply(const std::vector<Matrix>& unitaries) const;

 private:
  void build(const Matrix& factor);

  int receivers_;
  std::size_t lab_dim_;
  std::vector<Matrix> swapped_;  // SWAP(2, 2i) F, one per branch
};

}  // namespace ncrdc
