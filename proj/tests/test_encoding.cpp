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

#include <doctest.h>

#include <random>

#include "ncrdc/encoding.hpp"
#include "ncrdc/routing.hpp"
#include "ncrdc/states.hpp"
#include "oracles.hpp"

using namespace ncrdc;

namespace {

Matrix canonical_oracle(const std::array<double, 3>& a) {
  const Matrix h = a[0] * oracle::kron(oracle::pauli('x'), oracle::pauli('x')) +
                   a[1] * oracle::kron(oracle::pauli('y'), oracle::pauli('y')) +
                   a[2] * oracle::kron(oracle::pauli('z'), oracle::pauli('z'));
  return oracle::expm(Complex(0, -1) * h);
}

double unitarity(const Matrix& u) {
  return oracle::max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()));
}

}  // namespace

TEST_CASE("single-qubit unitaries") {
  CHECK(oracle::max_abs(single_qubit_unitary({}) - Matrix::Identity(2, 2)) < 1e-15);
  const Matrix flip = single_qubit_unitary({M_PI, 0.0, M_PI, 0.0});
  CHECK(oracle::max_abs(flip - Complex(0, -1) * pauli_x()) < 1e-15);
  const Matrix x = single_qubit_unitary({M_PI, 0.0, M_PI, M_PI / 2});
  CHECK(oracle::max_abs(x - pauli_x()) < 1e-15);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ang(0.0, 2 * M_PI);
  for (int draw = 0; draw < 1000; ++draw) {
    const Matrix su = single_qubit_unitary({ang(rng), ang(rng), ang(rng)});
    CHECK(unitarity(su) < 1e-12);
    CHECK(std::abs(su.determinant() - Complex(1, 0)) < 1e-12);
    CHECK(unitarity(single_qubit_unitary({ang(rng), ang(rng), ang(rng), ang(rng)})) < 1e-12);
  }
}

TEST_CASE("canonical two-qubit gate") {
  CHECK(oracle::max_abs(canonical_two_qubit_gate({0, 0, 0}) - Matrix::Identity(4, 4)) < 1e-15);
  const Matrix xx = (Matrix::Identity(4, 4) - Complex(0, 1) * kron(pauli_x(), pauli_x())) /
                    std::sqrt(2.0);
  CHECK(oracle::max_abs(canonical_two_qubit_gate({M_PI / 4, 0, 0}) - xx) < 1e-15);
  const Matrix swap = std::exp(Complex(0, -M_PI / 4)) * swap_operator(SystemLayout::qubits(2), 1, 2);
  CHECK(oracle::max_abs(canonical_two_qubit_gate({M_PI / 4, M_PI / 4, M_PI / 4}) - swap) < 1e-12);
  CHECK(oracle::max_abs(canonical_oracle({M_PI / 4, M_PI / 4, M_PI / 4}) - swap) < 1e-12);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> a(-M_PI, M_PI);
  for (int draw = 0; draw < 100; ++draw) {
    const std::array<double, 3> alphas{a(rng), a(rng), a(rng)};
    CHECK(oracle::max_abs(canonical_two_qubit_gate(alphas) - canonical_oracle(alphas)) < 1e-10);
  }
}

TEST_CASE("KAK two-qubit unitaries") {
  CHECK(oracle::max_abs(two_qubit_unitary_kak({}) - Matrix::Identity(4, 4)) < 1e-15);
  TwoQubitParams swap_like;
  swap_like.alphas = {M_PI / 4, M_PI / 4, M_PI / 4};
  const Matrix swap = std::exp(Complex(0, -M_PI / 4)) * swap_operator(SystemLayout::qubits(2), 1, 2);
  CHECK(oracle::max_abs(two_qubit_unitary_kak(swap_like) - swap) < 1e-12);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(0.0, 2 * M_PI);
  for (int draw = 0; draw < 1000; ++draw) {
    std::vector<double> v(TwoQubitParams::kParameterCount);
    for (double& x : v) x = ang(rng);
    const auto p = TwoQubitParams::from_parameters(v);
    CHECK(unitarity(two_qubit_unitary_kak(p)) < 1e-10);
    std::vector<double> back(TwoQubitParams::kParameterCount);
    p.write_parameters(back);
    CHECK(back == v);
  }
}

TEST_CASE("shift-and-multiply operators") {
  const auto basis2 = shift_multiply_basis(2);
  REQUIRE(basis2.size() == 4);
  CHECK(oracle::max_abs(basis2[0] - pauli_i()) < 1e-15);
  CHECK(oracle::max_abs(basis2[1] - pauli_x()) < 1e-15);
  CHECK(oracle::max_abs(basis2[2] - pauli_z()) < 1e-15);
  CHECK(oracle::max_abs(basis2[3] - pauli_x() * pauli_z()) < 1e-15);

  std::mt19937_64 rng(4);
  for (int d : {2, 3, 4}) {
    const auto ops = shift_multiply_basis(d);
    REQUIRE(ops.size() == static_cast<std::size_t>(d * d));
    for (std::size_t j = 0; j < ops.size(); ++j) {
      for (std::size_t k = 0; k < ops.size(); ++k) {
        const Complex ip = (ops[j].adjoint() * ops[k]).trace();
        CHECK(std::abs(ip - Complex(j == k ? d : 0, 0)) < 1e-12);
      }
    }
    // twirl: (1/d²) Σ M† Q M = Tr(Q) I/d
    for (int draw = 0; draw < 20; ++draw) {
      Matrix q = oracle::random_unitary(d, rng) + oracle::random_density(d, rng);
      Matrix twirl = Matrix::Zero(d, d);
      for (const auto& m : ops) twirl += m.adjoint() * q * m;
      twirl /= static_cast<double>(d * d);
      CHECK(oracle::max_abs(twirl - q.trace() * Matrix::Identity(d, d) / static_cast<double>(d)) < 1e-10);
    }
  }
  Matrix zero = Matrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  Matrix twirl = Matrix::Zero(2, 2);
  for (const auto& m : basis2) twirl += m.adjoint() * zero * m;
  CHECK(oracle::max_abs(twirl / 4.0 - Matrix::Identity(2, 2) / 2.0) < 1e-15);
}

TEST_CASE("softmax simplex") {
  const std::vector<double> flat{0, 0, 0, 0};
  for (double p : to_simplex(flat)) CHECK(p == doctest::Approx(0.25));
  const std::vector<double> peaked{20, 0};
  CHECK(to_simplex(peaked)[0] > 1 - 1e-8);
  const std::vector<double> raw{0.3, -1.2, 2.5};
  const std::vector<double> shifted{5.3, 3.8, 7.5};
  const auto a = to_simplex(raw), b = to_simplex(shifted);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) < 1e-12);
}

TEST_CASE("encoding parameterization") {
  const EncodingParameterization free(2, 3, ProbabilityMode::kFree);
  CHECK(free.per_letter() == 8);
  CHECK(free.size() == 24);
  const EncodingParameterization uniform(3, 2, ProbabilityMode::kUniform);
  CHECK(uniform.per_letter() == 11);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(0.0, 2 * M_PI);
  std::vector<double> v(free.size());
  for (double& x : v) x = ang(rng);
  const auto scheme = free.decode(v);
  CHECK(scheme.alphabet_size() == 3);
  double total = 0;
  for (const auto& l : scheme.letters) {
    total += l.probability;
    CHECK_FALSE(l.unitaries[0].alpha.has_value());
    CHECK(l.unitaries[1].alpha.has_value());
  }
  CHECK(std::abs(total - 1.0) < 1e-10);
  const auto again = free.decode(free.encode(scheme));
  for (std::size_t x = 0; x < 3; ++x) {
    CHECK(std::abs(again.letters[x].probability - scheme.letters[x].probability) < 1e-12);
  }
  const auto u = uniform.decode(std::vector<double>(uniform.size(), 0.1));
  for (const auto& l : u.letters) CHECK(l.probability == doctest::Approx(0.5));
  CHECK_THROWS_AS(EncodingParameterization(2, 0, ProbabilityMode::kFree), std::invalid_argument);
  CHECK(probability_mode_from_string(to_string(ProbabilityMode::kUniform)) == ProbabilityMode::kUniform);
}

TEST_CASE("the free phase of the second branch changes the routed state") {
  const auto psi = to_protocol_order(gghz_state(3, M_PI / 2));
  const SingleQubitParams u{0.4, 0.2, 1.1};
  double lo = 1.0, hi = 0.0;
  Vector reference;
  for (int k = 0; k < 8; ++k) {
    const double alpha = 2 * M_PI * k / 8;
    const RoutingLetter letter{{single_qubit_unitary(u), single_qubit_unitary({0.4, 0.2, 1.1, alpha})}};
    const auto out = route_pure(psi, letter, 2);
    if (k == 0) reference = out.state.amplitudes();
    const double fidelity = std::norm(reference.dot(out.state.amplitudes()));
    lo = std::min(lo, fidelity);
    hi = std::max(hi, fidelity);
  }
  CHECK(hi - lo > 0.1);
}
