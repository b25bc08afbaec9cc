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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ncrdc/linalg.hpp"

namespace ncrdc {

/// ZYZ Euler angles, optionally with a global phase:
/// e^{iα} Rz(φ) Ry(θ) Rz(λ). Without α the matrix is in SU(2).
struct SingleQubitParams {
  double theta = 0.0;
  double phi = 0.0;
  double lam = 0.0;
  std::optional<double> alpha;
};

Matrix single_qubit_unitary(const SingleQubitParams& p);

/// (A ⊗ B) · Ud(αx, αy, αz) · (C ⊗ D) with A..D in U(2). 19 real parameters.
struct TwoQubitParams {
  std::array<SingleQubitParams, 4> locals{};  // A, B, C, D; each with a phase
  std::array<double, 3> alphas{};             // αx, αy, αz

  static constexpr std::size_t kParameterCount = 19;
  static TwoQubitParams from_parameters(std::span<const double> v);
  void write_parameters(std::span<double> v) const;
};

/// exp(−i[αx X⊗X + αy Y⊗Y + αz Z⊗Z]) in closed form.
Matrix canonical_two_qubit_gate(const std::array<double, 3>& alphas);

Matrix two_qubit_unitary_kak(const TwoQubitParams& p);

/// Weyl operators M_(p,q)|j> = e^{2πi pj/d}|j+q mod d>, ordered k = p·d + q.
std::vector<Matrix> shift_multiply_basis(int d);

/// Softmax onto the probability simplex.
std::vector<double> to_simplex(std::span<const double> raw);

enum class ProbabilityMode { kFree, kUniform };

std::string to_string(ProbabilityMode mode);
ProbabilityMode probability_mode_from_string(const std::string& s);

/// One letter: its probability and one unitary per receiver branch. Branch 1
/// is special unitary; branches 2..M carry a free global phase.
struct EncodingLetter {
  double probability = 0.0;
  std::vector<SingleQubitParams> unitaries;
};

struct EncodingScheme {
  int receivers = 2;
  std::vector<EncodingLetter> letters;

  std::size_t alphabet_size() const { return letters.size(); }
  /// Throws std::invalid_argument on a malformed scheme.
  void validate() const;
};

/// Flat real-vector view of an EncodingScheme, the optimizer's search space.
/// Per letter: [θ φ λ] for branch 1, [θ φ λ α] for each later branch, then
/// one softmax logit when probabilities are free.
class EncodingParameterization {
 public:
  EncodingParameterization(int receivers, int alphabet_size,
                           ProbabilityMode mode);

  int receivers() const { return receivers_; }
  int alphabet_size() const { return alphabet_size_; }
  ProbabilityMode mode() const { return mode_; }
  std::size_t per_letter() const;
  std::size_t size() const { return per_letter() * alphabet_size_; }

  EncodingScheme decode(std::span<const double> v) const;
  /// Inverse of decode up to the softmax shift; logits are log-probabilities.
  std::vector<double> encode(const EncodingScheme& scheme) const;

 private:
  int receivers_;
  int alphabet_size_;
  ProbabilityMode mode_;
};

nlohmann::json to_json(const SingleQubitParams& p);
SingleQubitParams single_qubit_params_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TwoQubitParams& p);
TwoQubitParams two_qubit_params_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EncodingScheme& scheme);
EncodingScheme encoding_scheme_from_json(const nlohmann::json& j);

}  // namespace ncrdc
