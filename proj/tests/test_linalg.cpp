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

#include "ncrdc/linalg.hpp"
#include "oracles.hpp"

using namespace ncrdc;

namespace {

Vector basis(std::size_t dim, std::size_t k) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(k)) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("kron examples") {
  CHECK(oracle::max_abs(kron(pauli_i(), pauli_i()) - Matrix::Identity(4, 4)) == 0.0);
  CHECK(oracle::max_abs(kron(pauli_x(), pauli_x()) * basis(4, 0) - basis(4, 3)) == 0.0);
  Matrix p0 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 1.0;
  expected(1, 1) = -1.0;
  CHECK(oracle::max_abs(kron(p0, pauli_z()) - expected) == 0.0);
}

TEST_CASE("embed_operator") {
  const auto two = SystemLayout::qubits(2);
  const int second[] = {2};
  CHECK(oracle::max_abs(embed_operator(pauli_x(), two, second) * basis(4, 0) - basis(4, 1)) == 0.0);
  const auto three = SystemLayout::qubits(3);
  const int first[] = {1};
  CHECK(oracle::max_abs(embed_operator(pauli_z(), three, first) * basis(8, 4) + basis(8, 4)) == 0.0);
  CHECK(oracle::max_abs(embed_operator(pauli_i(), three, second) - Matrix::Identity(8, 8)) == 0.0);

  std::mt19937_64 rng(7);
  for (int draw = 0; draw < 50; ++draw) {
    const Matrix u = oracle::random_unitary(2, rng);
    const int target[] = {1 + draw % 3};
    const Vector psi = oracle::random_state(8, rng);
    CHECK(std::abs((embed_operator(u, three, target) * psi).norm() - 1.0) < 1e-10);
    CHECK(oracle::max_abs(embed_operator(u, three, target) - oracle::on_qubit(u, 3, target[0])) < 1e-14);
  }
}

TEST_CASE("swap_operator") {
  const auto two = SystemLayout::qubits(2);
  CHECK(oracle::max_abs(swap_operator(two, 1, 2) * basis(4, 1) - basis(4, 2)) == 0.0);
  const auto four = SystemLayout::qubits(4);
  CHECK(oracle::max_abs(swap_operator(four, 2, 4) * basis(16, 0b1110) - basis(16, 0b1011)) == 0.0);
  CHECK(oracle::max_abs(swap_operator(four, 2, 2) - Matrix::Identity(16, 16)) == 0.0);
  for (int n = 2; n <= 6; ++n) {
    const auto layout = SystemLayout::qubits(n);
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        const Matrix s = swap_operator(layout, i, j);
        CHECK(oracle::max_abs(s * s - Matrix::Identity(s.rows(), s.cols())) < 1e-12);
        CHECK(oracle::max_abs(s - oracle::swap_qubits(n, i, j)) == 0.0);
      }
    }
  }
}

TEST_CASE("permutation_operator reorders subsystems") {
  const auto layout = SystemLayout::qubits(3);
  const int order[] = {2, 1, 3};
  CHECK(oracle::max_abs(permutation_operator(layout, order) - oracle::swap_qubits(3, 1, 2)) == 0.0);
  const auto moved = layout.permuted(order);
  CHECK(moved.at(1).label == layout.at(2).label);
}

TEST_CASE("partial_trace") {
  const auto two = SystemLayout::qubits(2);
  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const Matrix r = partial_trace(bell * bell.adjoint(), two, {1});
  CHECK(oracle::max_abs(r - Matrix::Identity(2, 2) / 2.0) < 1e-15);

  Matrix classical = Matrix::Zero(4, 4);
  classical(0, 0) = classical(3, 3) = 0.5;
  CHECK(oracle::max_abs(partial_trace(classical, two, {2}) - Matrix::Identity(2, 2) / 2.0) < 1e-15);

  std::mt19937_64 rng(11);
  const auto three = SystemLayout::qubits(3);
  for (int draw = 0; draw < 30; ++draw) {
    const Matrix a = oracle::random_density(2, rng);
    const Matrix b = oracle::random_density(4, rng);
    CHECK(oracle::max_abs(partial_trace(kron(a, b), three, {1}) - a) < 1e-12);
    CHECK(oracle::max_abs(partial_trace(kron(a, b), three, {2, 3}) - b) < 1e-12);

    const Matrix rho = oracle::random_density(8, rng);
    CHECK(oracle::max_abs(partial_trace(rho, three, {1}) - oracle::trace_right(rho, 2, 4)) < 1e-12);
    // tracing 2 then 3 equals tracing {2, 3} at once
    const Matrix step = partial_trace(rho, three, {1, 3});
    const Matrix twice = partial_trace(step, three.restrict_to({1, 3}), {1});
    CHECK(oracle::max_abs(twice - partial_trace(rho, three, {1})) < 1e-12);
  }
}

TEST_CASE("hermitian_spectrum") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 0.25;
  d(1, 1) = 0.75;
  const RealVector s = hermitian_spectrum(d);
  CHECK(s(0) == doctest::Approx(0.75));
  CHECK(s(1) == doctest::Approx(0.25));
  const RealVector x = hermitian_spectrum(pauli_x());
  CHECK(x(0) == doctest::Approx(1.0));
  CHECK(x(1) == doctest::Approx(-1.0));

  Matrix mix = Matrix::Zero(2, 2);
  mix(0, 0) = 1.0;
  mix += Matrix::Constant(2, 2, 0.5);
  mix /= 2.0;
  const RealVector m = hermitian_spectrum(mix);
  CHECK(m(0) == doctest::Approx(std::pow(std::cos(M_PI / 8), 2)).epsilon(1e-12));
  CHECK(m(1) == doctest::Approx(std::pow(std::sin(M_PI / 8), 2)).epsilon(1e-12));

  std::mt19937_64 rng(3);
  for (int draw = 0; draw < 50; ++draw) {
    const Matrix g = oracle::random_density(6, rng);
    const Matrix h = g + g.adjoint() - Matrix::Identity(6, 6) * 0.3;
    CHECK(std::abs(hermitian_spectrum(h).sum() - h.trace().real()) < 1e-10);
  }

  Matrix skew = pauli_x();
  skew(0, 1) = 1.1;
  CHECK_THROWS_AS(hermitian_spectrum(skew), std::invalid_argument);
}

TEST_CASE("non-finite input is rejected") {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS(require_finite(m, "test"));
}
