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

#include "ncrdc/capacity.hpp"
#include "ncrdc/routing.hpp"
#include "oracles.hpp"

using namespace ncrdc;

namespace {

RoutingLetter random_letter(int receivers, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(0.0, 2 * M_PI);
  RoutingLetter letter;
  letter.unitaries.push_back(single_qubit_unitary({ang(rng), ang(rng), ang(rng)}));
  for (int i = 1; i < receivers; ++i) {
    letter.unitaries.push_back(single_qubit_unitary({ang(rng), ang(rng), ang(rng), ang(rng)}));
  }
  return letter;
}

Vector ket(std::size_t dim, std::initializer_list<std::pair<std::size_t, double>> entries) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  for (const auto& [k, a] : entries) v(static_cast<Eigen::Index>(k)) = a;
  return v / v.norm();
}

const RoutingLetter kIdentity{{Matrix::Identity(2, 2), Matrix::Identity(2, 2)}};

}  // namespace

TEST_CASE("multiplexed unitary") {
  const Matrix w = multiplex_unitary(kIdentity, 2);
  REQUIRE(w.rows() == 32);
  // control is the last subsystem: interleaved 2x2 control blocks
  for (int r = 0; r < 32; ++r)
    for (int c = 0; c < 32; ++c)
      if (r % 2 != c % 2) CHECK(w(r, c) == Complex(0, 0));
  Matrix block0(16, 16), block1(16, 16);
  for (int r = 0; r < 16; ++r)
    for (int c = 0; c < 16; ++c) {
      block0(r, c) = w(2 * r, 2 * c);
      block1(r, c) = w(2 * r + 1, 2 * c + 1);
    }
  CHECK(oracle::max_abs(block0 - Matrix::Identity(16, 16)) == 0.0);
  CHECK(oracle::max_abs(block1 - oracle::swap_qubits(4, 2, 4)) == 0.0);

  const RoutingLetter flip{{pauli_x(), Matrix::Identity(2, 2)}};
  const Matrix wf = multiplex_unitary(flip, 2);
  for (int r = 0; r < 16; ++r)
    for (int c = 0; c < 16; ++c) block0(r, c) = wf(2 * r, 2 * c), block1(r, c) = wf(2 * r + 1, 2 * c + 1);
  CHECK(oracle::max_abs(block0 * ket(16, {{0, 1}}) - ket(16, {{0b0100, 1}})) == 0.0);
  CHECK(oracle::max_abs(block1 * ket(16, {{0, 1}}) - ket(16, {{0, 1}})) == 0.0);

  std::mt19937_64 rng(1);
  for (int receivers : {2, 3}) {
    for (int draw = 0; draw < 10; ++draw) {
      const Matrix u = multiplex_unitary(random_letter(receivers, rng), receivers);
      CHECK(oracle::max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())) < 1e-10);
    }
  }
}

TEST_CASE("route_pure examples") {
  const auto layout = SystemLayout::protocol(2);
  const auto r0 = route_pure(PureState(layout, ket(16, {{0, 1}})), kIdentity, 2);
  CHECK(r0.success_probability == doctest::Approx(1.0));
  CHECK(oracle::max_abs(r0.state.amplitudes() - ket(16, {{0, 1}})) < 1e-15);

  const auto ghz = PureState(layout, ket(16, {{0, 1}, {0b1110, 1}}));
  const auto r1 = route_pure(ghz, kIdentity, 2);
  CHECK(r1.success_probability == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(oracle::max_abs(r1.state.amplitudes() -
                        ket(16, {{0, 2}, {0b1110, 1}, {0b1011, 1}})) < 1e-15);

  const RoutingLetter vx{{Matrix::Identity(2, 2), pauli_x()}};
  const auto r2 = route_pure(PureState(layout, ket(16, {{0, 1}})), vx, 2);
  CHECK(r2.success_probability == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(oracle::max_abs(r2.state.amplitudes() - ket(16, {{0, 1}, {1, 1}})) < 1e-15);

  // non-zero auxiliary is rejected
  CHECK_THROWS_AS(route_pure(PureState(layout, ket(16, {{1, 1}})), kIdentity, 2),
                  std::invalid_argument);
}

TEST_CASE("route_pure success probability matches the half-amplitude formula") {
  std::mt19937_64 rng(2);
  for (int draw = 0; draw < 100; ++draw) {
    const Vector psi = oracle::lab_register_m2(oracle::random_state(8, rng));
    const auto letter = random_letter(2, rng);
    const Matrix k = oracle::routed_operator_m2(letter.unitaries[0], letter.unitaries[1]);
    const Vector out = k * psi;
    const auto routed = route_pure(PureState(SystemLayout::protocol(2), psi), letter, 2);
    CHECK(std::abs(routed.success_probability - out.squaredNorm()) < 1e-12);
    CHECK(oracle::max_abs(routed.state.projector() - out * out.adjoint() / out.squaredNorm()) < 1e-10);
  }
}

TEST_CASE("pure path and density path agree") {
  std::mt19937_64 rng(3);
  for (int receivers : {2, 3}) {
    for (int draw = 0; draw < (receivers == 2 ? 100 : 10); ++draw) {
      const auto psi = haar_random_state(physical_layout(receivers + 1), rng);
      const auto letter = random_letter(receivers, rng);
      const auto pure = route_pure(to_protocol_order(psi), letter, receivers);
      const auto dense = route_and_postselect(DensityMatrix::from_pure(psi), letter, receivers);
      CHECK(oracle::max_abs(pure.state.projector() - dense.state.matrix()) < 1e-10);
      CHECK(std::abs(pure.success_probability - dense.success_probability) < 1e-10);
      CHECK(hermitian_spectrum(dense.state.matrix()).minCoeff() > -1e-9);
    }
  }
}

TEST_CASE("maximally mixed input succeeds with probability 3/4") {
  // a = 0 inputs survive with probability 1, a = 1 inputs with 1/2
  const auto mixed = route_and_postselect(maximally_mixed_state(3), kIdentity, 2);
  CHECK(std::abs(mixed.success_probability - 0.75) < 1e-12);
  // brute force: average over the eight computational basis inputs
  double total = 0.0;
  for (std::size_t b = 0; b < 8; ++b) {
    Vector e = Vector::Zero(8);
    e(static_cast<Eigen::Index>(b)) = 1.0;
    const Vector out = oracle::routed_operator_m2(oracle::identity(2), oracle::identity(2)) *
                       oracle::lab_register_m2(e);
    total += out.squaredNorm() / 8.0;
  }
  CHECK(std::abs(total - 0.75) < 1e-12);
  CHECK(std::abs(total - mixed.success_probability) < 1e-12);
}

TEST_CASE("identical branches interfere constructively") {
  // A = C2 = |0>: both branches leave |b1 0 b2 0> up to the phase U|0>, V|0>
  const int digits[] = {0, 1, 1};
  const auto psi = DensityMatrix::from_pure(basis_state(physical_layout(3), digits));
  const Matrix phase = single_qubit_unitary({0.0, 0.7, 0.0});
  const RoutingLetter same{{phase, phase}};
  const auto out = route_and_postselect(psi, same, 2);
  CHECK(std::abs(out.success_probability - 1.0) < 1e-12);
}

TEST_CASE("control outcomes are complete") {
  std::mt19937_64 rng(4);
  for (int receivers : {2, 3}) {
    for (int draw = 0; draw < 20; ++draw) {
      const auto psi = haar_random_state(physical_layout(receivers + 1), rng);
      const auto rho = DensityMatrix::from_pure(psi);
      const auto letter = random_letter(receivers, rng);
      const auto p = control_outcome_probabilities(rho, letter, receivers);
      REQUIRE(p.size() == static_cast<std::size_t>(receivers));
      double total = 0;
      for (double v : p) {
        total += v;
        CHECK(v >= -1e-12);
      }
      CHECK(std::abs(total - 1.0) < 1e-10);
      CHECK(std::abs(p[0] - route_and_postselect(rho, letter, receivers).success_probability) < 1e-10);
    }
  }
}

TEST_CASE("relabeling receivers conjugates by the lab swap") {
  std::mt19937_64 rng(5);
  const auto psi = haar_random_state(physical_layout(4), rng);
  const auto letter = random_letter(3, rng);
  // swap B2 and B3 in the input (physical positions 3 and 4)
  const Matrix swap_b = swap_operator(physical_layout(4), 3, 4);
  const PureState swapped(physical_layout(4), swap_b * psi.amplitudes());
  const RoutingLetter relabeled{{letter.unitaries[0], letter.unitaries[2], letter.unitaries[1]}};
  const auto a = route_pure(to_protocol_order(psi), letter, 3);
  const auto b = route_pure(to_protocol_order(swapped), relabeled, 3);
  // labs 2 and 3 are (B2, C2) = positions 3, 4 and (B3, C3) = positions 5, 6
  const auto lab = SystemLayout::protocol(3);
  const Matrix swap_labs = swap_operator(lab, 3, 5) * swap_operator(lab, 4, 6);
  CHECK(std::abs(a.success_probability - b.success_probability) < 1e-12);
  CHECK(oracle::max_abs(swap_labs * a.state.projector() * swap_labs.adjoint() - b.state.projector()) < 1e-10);
}

TEST_CASE("post-selection failure names the letter") {
  // U|0> = |0>, V|0> = -|0> on an all-zero input cancels exactly
  const RoutingLetter cancel{{Matrix::Identity(2, 2), -Matrix::Identity(2, 2)}};
  const auto zero = DensityMatrix::from_pure(gghz_state(3, 0.0));
  CHECK_THROWS_AS(route_and_postselect(zero, cancel, 2), PostSelectionFailure);

  EncodingScheme scheme;
  scheme.letters.push_back({0.5, {SingleQubitParams{}, SingleQubitParams{0, 0, 0, 0.0}}});
  scheme.letters.push_back({0.5, {SingleQubitParams{}, SingleQubitParams{0, 0, 0, M_PI}}});
  try {
    encode_ensemble(zero, scheme, 2);
    FAIL("expected a post-selection failure");
  } catch (const PostSelectionFailure& e) {
    REQUIRE(e.letter().has_value());
    CHECK(*e.letter() == 1);
  }
}

TEST_CASE("encode_ensemble on GHZ with Pauli letters") {
  const auto ghz = DensityMatrix::from_pure(gghz_state(3, M_PI / 2));
  // (I,I), (X,X), (Z,Z), (XZ,XZ) as ZYZ angles with the phase on branch 2
  const SingleQubitParams id{}, x{M_PI, 0, M_PI}, z{0, 0, M_PI}, xz{M_PI, 0, 0};
  const auto phased = [](SingleQubitParams p, double a) { p.alpha = a; return p; };
  EncodingScheme scheme;
  scheme.letters = {{0.25, {id, phased(id, 0)}},
                    {0.25, {x, phased(x, 0)}},
                    {0.25, {z, phased(z, 0)}},
                    {0.25, {xz, phased(xz, 0)}}};
  const auto e = encode_ensemble(ghz, scheme, 2);
  REQUIRE(e.size() == 4);
  double total = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    total += e.members()[k].probability;
    const auto& l = scheme.letters[k];
    const Matrix op = oracle::routed_operator_m2(single_qubit_unitary(l.unitaries[0]),
                                                 single_qubit_unitary(l.unitaries[1]));
    Vector g = Vector::Zero(8);
    g(0) = g(7) = 1 / std::sqrt(2.0);
    const double success = (op * oracle::lab_register_m2(g)).squaredNorm();
    CHECK(success > 0.0);
    CHECK(std::abs(success - route_and_postselect(ghz, RoutingLetter::from(l), 2).success_probability) < 1e-12);
  }
  CHECK(std::abs(total - 1.0) < 1e-12);

  EncodingScheme single;
  single.letters = {{1.0, {id, phased(id, 0)}}};
  const auto one = encode_ensemble(ghz, single, 2);
  CHECK(one.size() == 1);
  CHECK(one.members()[0].probability == 1.0);
}

TEST_CASE("routing engine reproduces the literal construction") {
  std::mt19937_64 rng(6);
  for (int receivers : {2, 3}) {
    for (int draw = 0; draw < 10; ++draw) {
      const auto layout = physical_layout(receivers + 1);
      Matrix rho = Matrix::Zero(static_cast<Eigen::Index>(layout.total_dim()),
                                static_cast<Eigen::Index>(layout.total_dim()));
      for (int k = 0; k < 2; ++k) rho += 0.5 * haar_random_state(layout, rng).projector();
      const DensityMatrix input(layout, rho);
      const RoutingEngine engine(input, receivers);
      const auto letter = random_letter(receivers, rng);
      const Matrix g = engine.apply(letter.unitaries);
      const auto literal = route_and_postselect(input, letter, receivers);
      CHECK(std::abs(g.squaredNorm() - literal.success_probability) < 1e-12);
      CHECK(oracle::max_abs(g * g.adjoint() / g.squaredNorm() - literal.state.matrix()) < 1e-10);
    }
  }
}
