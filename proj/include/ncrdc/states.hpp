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
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ncrdc/linalg.hpp"

namespace ncrdc {

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kDensityTolerance = 1e-9;

/// Unit-norm state vector on a layout.
class PureState {
 public:
  PureState(SystemLayout layout, Vector amplitudes);

  const SystemLayout& layout() const { return layout_; }
  const Vector& amplitudes() const { return amplitudes_; }
  Matrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  SystemLayout layout_;
  Vector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite operator on a layout.
class DensityMatrix {
 public:
  DensityMatrix(SystemLayout layout, Matrix matrix);

  static DensityMatrix from_pure(const PureState& psi);

  const SystemLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return matrix_; }

  /// Reduced state on the kept positions (1-based).
  DensityMatrix reduced(const std::set<int>& keep) const;

 private:
  SystemLayout layout_;
  Matrix matrix_;
};

/// Real 3-vector with norm at most one.
class BlochVector {
 public:
  BlochVector(double x, double y, double z);
  static BlochVector from_angles(double polar, double azimuth);

  const std::array<double, 3>& components() const { return n_; }
  double norm() const;
  /// (I + n·σ)/2
  Matrix density() const;

 private:
  std::array<double, 3> n_;
};

/// Physical party order (A, B1, ..., B_{parties-1}).
SystemLayout physical_layout(int parties);

/// cos(θ/2)|0...0> + e^{iφ} sin(θ/2)|1...1> with θ in [0, π], φ in [0, 2π].
PureState gghz_state(int num_parties, double theta, double phi = 0.0);

/// gghz_state for any real θ, folded into [0, π] using
/// gGHZ(2π − θ, φ) = gGHZ(θ, φ + π) up to a global phase.
PureState gghz_state_periodic(int num_parties, double theta, double phi = 0.0);

DensityMatrix maximally_mixed_state(int num_qubits);

struct SeparableTerm {
  double probability = 0.0;
  std::vector<BlochVector> bloch;  // one per party, physical order
};

/// Σ p_i ⊗_k (I + n_ik·σ)/2 over unit Bloch vectors.
DensityMatrix separable_mixed_state(std::span<const SeparableTerm> terms);

/// |φ>_A ⊗ |Φ>_{B1..BM} in physical order.
PureState product_pure_state(const PureState& phi_a, const PureState& phi_b);

/// Computational basis ket on `layout`.
PureState basis_state(const SystemLayout& layout, std::span<const int> digits);

/// (|00> + |11>)/√2 on two qubits.
PureState bell_state();

PureState haar_random_state(const SystemLayout& layout, std::mt19937_64& rng);

/// Reorders a physical-order state (A, B1..BM) into the protocol lab register
/// (B1, A, B2, C2, ..., BM, CM) with every auxiliary C_i in |0>.
PureState to_protocol_order(const PureState& physical);
DensityMatrix to_protocol_order(const DensityMatrix& physical);

/// Order used by to_protocol_order, over the layout (A, B1..BM, C2..CM).
std::vector<int> protocol_permutation(int receivers);

// JSON documents: {"kind": "pure"|"density", "layout": [{"label","dim"}...],
// "real": [...], "imag": [...]}, entries flattened row-major.
nlohmann::json to_json(const PureState& psi);
nlohmann::json to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const nlohmann::json& doc);

DensityMatrix load_state_file(const std::filesystem::path& path);
void save_state_file(const std::filesystem::path& path,
                     const DensityMatrix& rho);

}  // namespace ncrdc
