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

#include "ncrdc/states.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace ncrdc {

PureState::PureState(SystemLayout layout, Vector amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != layout_.total_dim()) {
    throw std::invalid_argument("PureState: amplitude count " +
                                std::to_string(amplitudes_.size()) +
                                " does not match layout dimension " +
                                std::to_string(layout_.total_dim()));
  }
  if (!amplitudes_.allFinite()) {
    throw std::invalid_argument("PureState: non-finite amplitude");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("PureState: amplitudes are not unit norm");
  }
}

DensityMatrix::DensityMatrix(SystemLayout layout, Matrix matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(layout_.total_dim());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw std::invalid_argument("DensityMatrix: matrix does not match layout");
  }
  require_finite(matrix_, "DensityMatrix");
  if (max_abs_deviation_from_hermitian(matrix_) > kDensityTolerance) {
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  }
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
  if (std::abs(matrix_.trace().real() - 1.0) > kDensityTolerance) {
    throw std::invalid_argument("DensityMatrix: trace is not one");
  }
  const RealVector ev = hermitian_spectrum(matrix_);
  if (ev(ev.size() - 1) < -kDensityTolerance) {
    throw std::invalid_argument("DensityMatrix: matrix is not positive");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.layout(), psi.projector());
}

DensityMatrix DensityMatrix::reduced(const std::set<int>& keep) const {
  return DensityMatrix(layout_.restrict_to(keep),
                       partial_trace(matrix_, layout_, keep));
}

BlochVector::BlochVector(double x, double y, double z) : n_{x, y, z} {
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
    throw std::invalid_argument("BlochVector: non-finite component");
  }
  if (norm() > 1.0 + 1e-12) {
    throw std::invalid_argument("BlochVector: norm exceeds one");
  }
}

BlochVector BlochVector::from_angles(double polar, double azimuth) {
  return BlochVector(std::sin(polar) * std::cos(azimuth),
                     std::sin(polar) * std::sin(azimuth), std::cos(polar));
}

double BlochVector::norm() const {
  return std::sqrt(n_[0] * n_[0] + n_[1] * n_[1] + n_[2] * n_[2]);
}

Matrix BlochVector::density() const {
  return 0.5 * (pauli_i() + n_[0] * pauli_x() + n_[1] * pauli_y() +
                n_[2] * pauli_z());
}

SystemLayout physical_layout(int parties) {
  if (parties < 1) throw std::invalid_argument("need at least one party");
  std::vector<Subsystem> subs{{"A", 2}};
  for (int i = 1; i < parties; ++i) subs.push_back({"B" + std::to_string(i), 2});
  return SystemLayout(std::move(subs));
}

PureState gghz_state(int num_parties, double theta, double phi) {
  if (num_parties < 2) {
    throw std::invalid_argument("gghz_state: need at least two parties");
  }
  constexpr double kSlack = 1e-12;
  if (!(theta >= -kSlack && theta <= std::numbers::pi + kSlack)) {
    throw std::invalid_argument("gghz_state: theta must lie in [0, pi]");
  }
  if (!(phi >= -kSlack && phi <= 2.0 * std::numbers::pi + kSlack)) {
    throw std::invalid_argument("gghz_state: phi must lie in [0, 2pi]");
  }
  const SystemLayout layout = physical_layout(num_parties);
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  amps(0) = std::cos(theta / 2.0);
  amps(amps.size() - 1) = std::polar(std::sin(theta / 2.0), phi);
  return PureState(layout, amps);
}

PureState gghz_state_periodic(int num_parties, double theta, double phi) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  theta = std::fmod(theta, kTwoPi);
  if (theta < 0) theta += kTwoPi;
  if (theta > std::numbers::pi) {
    theta = kTwoPi - theta;
    phi += std::numbers::pi;
  }
  phi = std::fmod(phi, kTwoPi);
  if (phi < 0) phi += kTwoPi;
  return gghz_state(num_parties, theta, phi);
}

DensityMatrix maximally_mixed_state(int num_qubits) {
  if (num_qubits < 1) {
    throw std::invalid_argument("maximally_mixed_state: need at least one qubit");
  }
  const SystemLayout layout = physical_layout(num_qubits);
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  return DensityMatrix(layout,
                       Matrix::Identity(n, n) / static_cast<double>(n));
}

DensityMatrix separable_mixed_state(std::span<const SeparableTerm> terms) {
  if (terms.empty()) {
    throw std::invalid_argument("separable_mixed_state: no terms");
  }
  const std::size_t parties = terms.front().bloch.size();
  if (parties < 1) {
    throw std::invalid_argument("separable_mixed_state: term has no parties");
  }
  double total = 0.0;
  for (const auto& t : terms) {
    if (t.probability < 0.0 || !std::isfinite(t.probability)) {
      throw std::invalid_argument(
          "separable_mixed_state: probabilities must be nonnegative");
    }
    if (t.bloch.size() != parties) {
      throw std::invalid_argument(
          "separable_mixed_state: terms disagree on party count");
    }
    for (const auto& b : t.bloch) {
      if (std::abs(b.norm() - 1.0) > kDensityTolerance) {
        throw std::invalid_argument(
            "separable_mixed_state: Bloch vectors must be unit norm");
      }
    }
    total += t.probability;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument(
        "separable_mixed_state: probabilities must sum to one");
  }

  const SystemLayout layout = physical_layout(static_cast<int>(parties));
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  Matrix rho = Matrix::Zero(n, n);
  for (const auto& t : terms) {
    Matrix prod = t.bloch.front().density();
    for (std::size_t k = 1; k < parties; ++k) {
      prod = kron(prod, t.bloch[k].density());
    }
    rho += t.probability * prod;
  }
  return DensityMatrix(layout, rho);
}

PureState product_pure_state(const PureState& phi_a, const PureState& phi_b) {
  if (phi_a.layout().total_dim() != 2) {
    throw std::invalid_argument("product_pure_state: sender state must be a qubit");
  }
  if (phi_b.layout().total_dim() < 2 ||
      (phi_b.layout().total_dim() & (phi_b.layout().total_dim() - 1)) != 0) {
    throw std::invalid_argument(
        "product_pure_state: receiver state must be on qubits");
  }
  const int receivers =
      static_cast<int>(std::log2(static_cast<double>(phi_b.layout().total_dim())) + 0.5);
  return PureState(physical_layout(receivers + 1),
                   kron(phi_a.amplitudes(), phi_b.amplitudes()));
}

PureState basis_state(const SystemLayout& layout, std::span<const int> digits) {
  if (digits.size() != layout.size()) {
    throw std::invalid_argument("basis_state: one digit per subsystem required");
  }
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (digits[k] < 0 || digits[k] >= layout.subsystems()[k].dim) {
      throw std::out_of_range("basis_state: digit out of range");
    }
  }
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  amps(static_cast<Eigen::Index>(layout.index(digits))) = 1.0;
  return PureState(layout, amps);
}

PureState bell_state() {
  Vector amps = Vector::Zero(4);
  amps(0) = amps(3) = 1.0 / std::numbers::sqrt2;
  return PureState(SystemLayout::qubits(2), amps);
}

PureState haar_random_state(const SystemLayout& layout, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Vector amps(static_cast<Eigen::Index>(layout.total_dim()));
  for (auto& a : amps) a = Complex(gauss(rng), gauss(rng));
  amps.normalize();
  return PureState(layout, amps);
}

std::vector<int> protocol_permutation(int receivers) {
  // Source layout: A=1, B1..BM = 2..M+1, C2..CM = M+2..2M.
  std::vector<int> order{2, 1};
  for (int i = 2; i <= receivers; ++i) {
    order.push_back(i + 1);
    order.push_back(receivers + i);
  }
  return order;
}

namespace {

int receivers_of(const SystemLayout& physical) {
  const int receivers = static_cast<int>(physical.size()) - 1;
  if (receivers < 1) {
    throw std::invalid_argument(
        "to_protocol_order: need a sender and at least one receiver");
  }
  for (const auto& s : physical.subsystems()) {
    if (s.dim != 2) {
      throw std::invalid_argument("to_protocol_order: all parties must be qubits");
    }
  }
  return receivers;
}

SystemLayout with_auxiliaries(int receivers) {
  std::vector<Subsystem> subs = physical_layout(receivers + 1).subsystems();
  for (int i = 2; i <= receivers; ++i) subs.push_back({"C" + std::to_string(i), 2});
  return SystemLayout(std::move(subs));
}

}  // namespace

PureState to_protocol_order(const PureState& physical) {
  const int receivers = receivers_of(physical.layout());
  Vector amps = physical.amplitudes();
  if (receivers > 1) {
    Vector aux = Vector::Zero(Eigen::Index{1} << (receivers - 1));
    aux(0) = 1.0;
    amps = kron(amps, aux);
  }
  const SystemLayout extended = with_auxiliaries(receivers);
  const auto order = protocol_permutation(receivers);
  const auto map = permutation_map(extended, order);
  Vector out(amps.size());
  for (std::size_t k = 0; k < map.size(); ++k) {
    out(static_cast<Eigen::Index>(map[k])) = amps(static_cast<Eigen::Index>(k));
  }
  return PureState(SystemLayout::protocol(receivers), out);
}

DensityMatrix to_protocol_order(const DensityMatrix& physical) {
  const int receivers = receivers_of(physical.layout());
  Matrix rho = physical.matrix();
  if (receivers > 1) {
    const Eigen::Index aux_dim = Eigen::Index{1} << (receivers - 1);
    Matrix aux = Matrix::Zero(aux_dim, aux_dim);
    aux(0, 0) = 1.0;
    rho = kron(rho, aux);
  }
  const SystemLayout extended = with_auxiliaries(receivers);
  const Matrix p = permutation_operator(extended, protocol_permutation(receivers));
  return DensityMatrix(SystemLayout::protocol(receivers), p * rho * p.adjoint());
}

namespace {

nlohmann::json layout_to_json(const SystemLayout& layout) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : layout.subsystems()) {
    arr.push_back({{"label", s.label}, {"dim", s.dim}});
  }
  return arr;
}

SystemLayout layout_from_json(const nlohmann::json& arr) {
  if (!arr.is_array()) throw std::invalid_argument("state file: 'layout' must be an array");
  std::vector<Subsystem> subs;
  for (const auto& s : arr) {
    subs.push_back({s.at("label").get<std::string>(), s.at("dim").get<int>()});
  }
  return SystemLayout(std::move(subs));
}

}  // namespace

nlohmann::json to_json(const PureState& psi) {
  std::vector<double> re;
  std::vector<double> im;
  for (const auto& a : psi.amplitudes()) {
    re.push_back(a.real());
    im.push_back(a.imag());
  }
  return {{"kind", "pure"},
          {"layout", layout_to_json(psi.layout())},
          {"real", re},
          {"imag", im}};
}

nlohmann::json to_json(const DensityMatrix& rho) {
  std::vector<double> re;
  std::vector<double> im;
  const Matrix& m = rho.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  }
  return {{"kind", "density"},
          {"layout", layout_to_json(rho.layout())},
          {"real", re},
          {"imag", im}};
}

DensityMatrix density_from_json(const nlohmann::json& doc) {
  try {
    const SystemLayout layout = layout_from_json(doc.at("layout"));
    const auto re = doc.at("real").get<std::vector<double>>();
    const auto im = doc.at("imag").get<std::vector<double>>();
    if (re.size() != im.size()) {
      throw std::invalid_argument("state file: 'real' and 'imag' differ in length");
    }
    const std::string kind = doc.at("kind").get<std::string>();
    const auto n = static_cast<Eigen::Index>(layout.total_dim());
    if (kind == "pure") {
      if (re.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("state file: wrong amplitude count");
      }
      Vector amps(n);
      for (Eigen::Index k = 0; k < n; ++k) {
        amps(k) = Complex(re[static_cast<std::size_t>(k)], im[static_cast<std::size_t>(k)]);
      }
      return DensityMatrix::from_pure(PureState(layout, amps));
    }
    if (kind == "density") {
      if (re.size() != static_cast<std::size_t>(n * n)) {
        throw std::invalid_argument("state file: wrong matrix entry count");
      }
      Matrix m(n, n);
      for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
          const auto k = static_cast<std::size_t>(r * n + c);
          m(r, c) = Complex(re[k], im[k]);
        }
      }
      return DensityMatrix(layout, m);
    }
    throw std::invalid_argument("state file: unknown kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("state file: ") + e.what());
  }
}

DensityMatrix load_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open state file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("cannot parse state file " + path.string() +
                                ": " + e.what());
  }
  return density_from_json(doc);
}

void save_state_file(const std::filesystem::path& path, const DensityMatrix& rho) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write state file " + path.string());
  out << to_json(rho).dump(2) << '\n';
}

}  // namespace ncrdc
