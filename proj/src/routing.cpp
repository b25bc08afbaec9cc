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

#include "ncrdc/routing.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace ncrdc {

namespace {

std::string failure_message(double probability, std::optional<std::size_t> letter) {
  std::ostringstream os;
  os << "post-selection failed";
  if (letter) os << " for letter " << *letter;
  os << ": success probability " << probability << " below floor "
     << kPostSelectionFloor;
  return os.str();
}

void check_receivers(int receivers) {
  if (receivers < 2) {
    throw std::invalid_argument("routing needs at least two receivers");
  }
}

// Discrete Fourier basis vector k of a d-level control.
Vector fourier_vector(int d, int k) {
  Vector v(d);
  for (int j = 0; j < d; ++j) {
    v(j) = std::polar(1.0 / std::sqrt(static_cast<double>(d)),
                      2.0 * std::numbers::pi * j * k / d);
  }
  return v;
}

Matrix lab_branch(const RoutingLetter& letter, int receivers, int branch) {
  const SystemLayout lab = SystemLayout::protocol(receivers);
  const std::array<int, 1> target{2 * branch};
  return embed_operator(letter.unitaries[static_cast<std::size_t>(branch - 1)], lab,
                        target) *
         swap_operator(lab, 2, 2 * branch);
}

// Lab register with auxiliaries and control, ready for W.
Matrix prepared_input(const DensityMatrix& rho, int receivers) {
  const DensityMatrix lab = to_protocol_order(rho);
  const Vector plus = fourier_vector(receivers, 0);
  return kron(lab.matrix(), Matrix(plus * plus.adjoint()));
}

std::set<int> lab_positions(int receivers) {
  std::set<int> keep;
  for (int p = 1; p <= 2 * receivers; ++p) keep.insert(p);
  return keep;
}

}  // namespace

PostSelectionFailure::PostSelectionFailure(double probability,
                                           std::optional<std::size_t> letter)
    : std::runtime_error(failure_message(probability, letter)),
      probability_(probability),
      letter_(letter) {}

RoutingLetter RoutingLetter::from(const EncodingLetter& letter) {
  RoutingLetter out;
  for (const auto& u : letter.unitaries) out.unitaries.push_back(single_qubit_unitary(u));
  return out;
}

void RoutingLetter::validate(int receivers) const {
  if (unitaries.size() != static_cast<std::size_t>(receivers)) {
    throw std::invalid_argument("routing letter needs " + std::to_string(receivers) +
                                " unitaries, got " + std::to_string(unitaries.size()));
  }
  for (const auto& u : unitaries) {
    if (u.rows() != 2 || u.cols() != 2) {
      throw std::invalid_argument("routing letter entries must be 2x2");
    }
    require_finite(u, "routing letter");
    if ((u.adjoint() * u - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() > 1e-10) {
      throw std::invalid_argument("routing letter entry is not unitary");
    }
  }
}

SystemLayout routed_layout(int receivers) {
  check_receivers(receivers);
  auto subs = SystemLayout::protocol(receivers).subsystems();
  subs.push_back({"control", receivers});
  return SystemLayout(std::move(subs));
}

Matrix multiplex_unitary(const RoutingLetter& letter, int receivers) {
  check_receivers(receivers);
  letter.validate(receivers);
  const auto lab_dim = static_cast<Eigen::Index>(
      SystemLayout::protocol(receivers).total_dim());
  Matrix w = Matrix::Zero(lab_dim * receivers, lab_dim * receivers);
  for (int i = 1; i <= receivers; ++i) {
    Matrix ctrl = Matrix::Zero(receivers, receivers);
    ctrl(i - 1, i - 1) = 1.0;
    w += kron(lab_branch(letter, receivers, i), ctrl);
  }
  return w;
}

Matrix routing_operator(const RoutingLetter& letter, int receivers) {
  check_receivers(receivers);
  letter.validate(receivers);
  Matrix k = lab_branch(letter, receivers, 1);
  for (int i = 2; i <= receivers; ++i) k += lab_branch(letter, receivers, i);
  return k / static_cast<double>(receivers);
}

RoutedPure route_pure(const PureState& psi, const RoutingLetter& letter, int receivers) {
  check_receivers(receivers);
  if (!(psi.layout() == SystemLayout::protocol(receivers))) {
    throw std::invalid_argument("route_pure: state must be on the lab register");
  }
  // Auxiliaries must start in |0>.
  const SystemLayout& lab = psi.layout();
  double aux_weight = 0.0;
  for (std::size_t k = 0; k < lab.total_dim(); ++k) {
    const auto d = lab.digits(k);
    for (int i = 2; i <= receivers; ++i) {
      if (d[static_cast<std::size_t>(2 * i - 1)] != 0) {
        aux_weight += std::norm(psi.amplitudes()(static_cast<Eigen::Index>(k)));
        break;
      }
    }
  }
  if (aux_weight > kNormTolerance) {
    throw std::invalid_argument("route_pure: auxiliary qubits must be in |0>");
  }
  const Vector v = routing_operator(letter, receivers) * psi.amplitudes();
  const double p = v.squaredNorm();
  if (p < kPostSelectionFloor) throw PostSelectionFailure(p, std::nullopt);
  return {PureState(lab, v / std::sqrt(p)), p};
}

RoutedOutcome route_and_postselect(const DensityMatrix& rho, const RoutingLetter& letter,
                                   int receivers) {
  check_receivers(receivers);
  if (rho.layout().size() != static_cast<std::size_t>(receivers + 1)) {
    throw std::invalid_argument("route_and_postselect: need a sender and " +
                                std::to_string(receivers) + " receivers");
  }
  const Matrix w = multiplex_unitary(letter, receivers);
  const Matrix evolved = w * prepared_input(rho, receivers) * w.adjoint();

  const auto lab_dim = static_cast<Eigen::Index>(
      SystemLayout::protocol(receivers).total_dim());
  const Vector plus = fourier_vector(receivers, 0);
  const Matrix projector =
      kron(Matrix::Identity(lab_dim, lab_dim), Matrix(plus * plus.adjoint()));
  const Matrix kept = projector * evolved * projector;
  const double p = kept.trace().real();
  if (p < kPostSelectionFloor) throw PostSelectionFailure(p, std::nullopt);

  const Matrix lab_state =
      partial_trace(kept / p, routed_layout(receivers), lab_positions(receivers));
  return {DensityMatrix(SystemLayout::protocol(receivers), lab_state), p};
}

std::vector<double> control_outcome_probabilities(const DensityMatrix& rho,
                                                  const RoutingLetter& letter,
                                                  int receivers) {
  check_receivers(receivers);
  const Matrix w = multiplex_unitary(letter, receivers);
  const Matrix evolved = w * prepared_input(rho, receivers) * w.adjoint();
  const auto lab_dim = static_cast<Eigen::Index>(
      SystemLayout::protocol(receivers).total_dim());
  std::vector<double> probs;
  for (int k = 0; k < receivers; ++k) {
    const Vector f = fourier_vector(receivers, k);
    const Matrix projector =
        kron(Matrix::Identity(lab_dim, lab_dim), Matrix(f * f.adjoint()));
    probs.push_back((projector * evolved).trace().real());
  }
  return probs;
}

Ensemble encode_ensemble(const DensityMatrix& rho, const EncodingScheme& scheme,
                         int receivers, EnsembleWeights weights) {
  scheme.validate();
  if (scheme.receivers != receivers) {
    throw std::invalid_argument("encode_ensemble: scheme is for " +
                                std::to_string(scheme.receivers) + " receivers");
  }
  std::vector<EnsembleMember> members;
  std::vector<double> success;
  for (std::size_t x = 0; x < scheme.letters.size(); ++x) {
    const auto& letter = scheme.letters[x];
    try {
      auto out = route_and_postselect(rho, RoutingLetter::from(letter), receivers);
      success.push_back(out.success_probability);
      members.push_back({letter.probability, std::move(out.state)});
    } catch (const PostSelectionFailure& f) {
      throw PostSelectionFailure(f.probability(), x);
    }
  }
  if (weights == EnsembleWeights::kPostSelectionBayes) {
    double total = 0.0;
    for (std::size_t x = 0; x < members.size(); ++x) {
      members[x].probability *= success[x];
      total += members[x].probability;
    }
    for (auto& m : members) m.probability /= total;
  }
  return Ensemble(std::move(members));
}

RoutingEngine::RoutingEngine(const DensityMatrix& rho, int receivers)
    : receivers_(receivers) {
  check_receivers(receivers);
  const DensityMatrix lab = to_protocol_order(rho);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(lab.matrix());
  const RealVector& ev = solver.eigenvalues();
  const double cutoff = 1e-14 * std::max(1.0, ev.maxCoeff());
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = ev.size(); k-- > 0;) {
    if (ev(k) > cutoff) kept.push_back(k);
  }
  Matrix factor(lab.matrix().rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    factor.col(static_cast<Eigen::Index>(c)) =
        solver.eigenvectors().col(kept[c]) * std::sqrt(ev(kept[c]));
  }
  build(factor);
}

RoutingEngine::RoutingEngine(const PureState& physical, int receivers)
    : receivers_(receivers) {
  check_receivers(receivers);
  build(to_protocol_order(physical).amplitudes());
}

void RoutingEngine::build(const Matrix& factor) {
  const SystemLayout lab = SystemLayout::protocol(receivers_);
  lab_dim_ = lab.total_dim();
  if (static_cast<std::size_t>(factor.rows()) != lab_dim_) {
    throw std::invalid_argument("RoutingEngine: input does not fit the lab register");
  }
  swapped_.clear();
  for (int i = 1; i <= receivers_; ++i) {
    std::vector<int> order(lab.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k + 1);
    std::swap(order[1], order[static_cast<std::size_t>(2 * i - 1)]);
    const auto map = permutation_map(lab, order);
    Matrix s(factor.rows(), factor.cols());
    for (std::size_t k = 0; k < map.size(); ++k) {
      s.row(static_cast<Eigen::Index>(map[k])) = factor.row(static_cast<Eigen::Index>(k));
    }
    swapped_.push_back(std::move(s));
  }
}

Matrix RoutingEngine::apply(const std::vector<Matrix>& unitaries) const {
  if (unitaries.size() != static_cast<std::size_t>(receivers_)) {
    throw std::invalid_argument("RoutingEngine: wrong number of unitaries");
  }
  const auto qubits = static_cast<std::size_t>(2 * receivers_);
  Matrix out = Matrix::Zero(swapped_.front().rows(), swapped_.front().cols());
  for (int i = 1; i <= receivers_; ++i) {
    const Matrix& s = swapped_[static_cast<std::size_t>(i - 1)];
    const Matrix& u = unitaries[static_cast<std::size_t>(i - 1)];
    // Qubit at 1-based position 2i is bit (qubits − 2i) of the row index.
    const std::size_t mask = std::size_t{1} << (qubits - static_cast<std::size_t>(2 * i));
    for (std::size_t r0 = 0; r0 < lab_dim_; ++r0) {
      if (r0 & mask) continue;
      const auto a = static_cast<Eigen::Index>(r0);
      const auto b = static_cast<Eigen::Index>(r0 | mask);
      out.row(a) += u(0, 0) * s.row(a) + u(0, 1) * s.row(b);
      out.row(b) += u(1, 0) * s.row(a) + u(1, 1) * s.row(b);
    }
  }
  return out / static_cast<double>(receivers_);
}

}  // namespace ncrdc
