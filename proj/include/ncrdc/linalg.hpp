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

#include <complex>
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ncrdc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Max-norm tolerance on ‖h − h†‖ accepted before an eigensolve.
inline constexpr double kHermitianTolerance = 1e-9;

/// One tensor factor of a register.
struct Subsystem {
  std::string label;
  int dim = 2;
};

/// Ordered tensor factors of a register. The leftmost subsystem is the most
/// significant digit of a basis index, so for qubits |b1 b2 ... bn> is the
/// integer b1·2^(n-1) + ... + bn.
///
/// All public functions taking subsystem positions use 1-based positions:
/// position 2 is the second subsystem from the left.
class SystemLayout {
 public:
  SystemLayout() = default;
  explicit SystemLayout(std::vector<Subsystem> subsystems);

  /// n qubits labelled q1..qn.
  static SystemLayout qubits(int n);

  /// Lab register of the routed protocol for `receivers` labs:
  /// (B1, A, B2, C2, ..., BM, CM). Position 2 holds the sender's qubit,
  /// position 2i the auxiliary of lab i.
  static SystemLayout protocol(int receivers);

  std::size_t size() const { return subsystems_.size(); }
  const std::vector<Subsystem>& subsystems() const { return subsystems_; }
  const Subsystem& at(int position) const;
  int dim(int position) const { return at(position).dim; }
  std::size_t total_dim() const { return total_dim_; }

  /// 1-based position of a label; throws if absent.
  int position_of(const std::string& label) const;

  /// Digits of basis index `index`, one per subsystem, leftmost first.
  std::vector<int> digits(std::size_t index) const;
  std::size_t index(std::span<const int> digits) const;

  /// Layout restricted to the given positions, preserving layout order.
  SystemLayout restrict_to(const std::set<int>& positions) const;

  /// Layout with subsystems reordered: new position k holds old position
  /// order[k-1].
  SystemLayout permuted(std::span<const int> order) const;

  friend bool operator==(const SystemLayout&, const SystemLayout&);

 private:
  std::vector<Subsystem> subsystems_;
  std::size_t total_dim_ = 1;
};

bool operator==(const Subsystem& a, const Subsystem& b);

/// Throws std::invalid_argument if any entry is NaN or infinite.
void require_finite(const Matrix& m, const char* what);

Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

/// Pauli matrices and the 2×2 identity.
Matrix pauli_i();
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

/// Full-register operator acting as `op` on `targets` (in the listed order)
/// and as the identity elsewhere.
Matrix embed_operator(const Matrix& op, const SystemLayout& layout,
                      std::span<const int> targets);

/// Permutation unitary exchanging subsystems i and j. SWAP(i, i) is the
/// identity.
Matrix swap_operator(const SystemLayout& layout, int i, int j);

/// Basis-index map for reordering subsystems: entry k is the index in the
/// reordered layout of basis state k of the original layout.
std::vector<std::size_t> permutation_map(const SystemLayout& layout,
                                         std::span<const int> order);

/// Permutation unitary P with P|d_1..d_n> = |d_order[0]..d_order[n-1]>.
Matrix permutation_operator(const SystemLayout& layout,
                            std::span<const int> order);

/// Reduced operator on the kept positions (in layout order).
Matrix partial_trace(const Matrix& rho, const SystemLayout& layout,
                     const std::set<int>& keep);

/// Real eigenvalues of a Hermitian matrix, sorted descending. Inputs within
/// kHermitianTolerance of Hermitian are symmetrized first.
RealVector hermitian_spectrum(const Matrix& h);

double max_abs_deviation_from_hermitian(const Matrix& h);

}  // namespace ncrdc
