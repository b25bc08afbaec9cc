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

#include "ncrdc/information.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ncrdc {

Ensemble::Ensemble(std::vector<EnsembleMember> members)
    : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("Ensemble: no members");
  double total = 0.0;
  for (const auto& m : members_) {
    if (!(m.probability >= 0.0)) {
      throw std::invalid_argument("Ensemble: negative probability");
    }
    if (!(m.state.layout() == members_.front().state.layout())) {
      throw std::invalid_argument("Ensemble: members disagree on layout");
    }
    total += m.probability;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw std::invalid_argument("Ensemble: probabilities must sum to one");
  }
}

Matrix Ensemble::average() const {
  Matrix avg = Matrix::Zero(members_.front().state.matrix().rows(),
                            members_.front().state.matrix().cols());
  for (const auto& m : members_) avg += m.probability * m.state.matrix();
  return avg;
}

double entropy_of_spectrum(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double l : eigenvalues) {
    if (l < -kEigenvalueClamp) {
      throw std::domain_error("entropy: eigenvalue " + std::to_string(l) +
                              " is significantly negative");
    }
    if (l > 0.0) s -= l * std::log2(l);
  }
  return s;
}

double entropy_of_spectrum(const RealVector& eigenvalues) {
  return entropy_of_spectrum(
      std::span<const double>(eigenvalues.data(), static_cast<std::size_t>(eigenvalues.size())));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return von_neumann_entropy(rho.matrix());
}

double von_neumann_entropy(const Matrix& rho) {
  return entropy_of_spectrum(hermitian_spectrum(rho));
}

double binary_entropy(double p) {
  const double q = 1.0 - p;
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (q > 0.0) h -= q * std::log2(q);
  return h;
}

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

double holevo_quantity(const Ensemble& e) {
  double mixed = 0.0;
  for (const auto& m : e.members()) mixed += m.probability * von_neumann_entropy(m.state);
  return std::max(0.0, von_neumann_entropy(e.average()) - mixed);
}

double chi_sdc_gghz(double theta) {
  const double c = std::cos(theta / 2.0);
  return 1.0 + binary_entropy(c * c);
}

double chi_dc_bipartite(const DensityMatrix& rho, int sender_position,
                        bool floor_at_log_dim) {
  const SystemLayout& layout = rho.layout();
  if (layout.size() < 2) {
    throw std::invalid_argument("chi_dc_bipartite: need a bipartite layout");
  }
  std::set<int> receivers;
  for (int p = 1; p <= static_cast<int>(layout.size()); ++p) {
    if (p != sender_position) receivers.insert(p);
  }
  const double log_da = std::log2(static_cast<double>(layout.dim(sender_position)));
  const double value = log_da +
                       von_neumann_entropy(partial_trace(rho.matrix(), layout, receivers)) -
                       von_neumann_entropy(rho.matrix());
  return floor_at_log_dim ? std::max(log_da, value) : value;
}

double locc_accessible_upper_bound(const Ensemble& e, const std::set<int>& part_a) {
  const SystemLayout& layout = e.layout();
  std::set<int> part_b;
  for (int p = 1; p <= static_cast<int>(layout.size()); ++p) {
    if (!part_a.contains(p)) part_b.insert(p);
  }
  if (part_a.empty() || part_b.empty()) {
    throw std::invalid_argument("locc_accessible_upper_bound: cut must be nontrivial");
  }
  const Matrix avg = e.average();
  const double s_a = von_neumann_entropy(partial_trace(avg, layout, part_a));
  const double s_b = von_neumann_entropy(partial_trace(avg, layout, part_b));
  double mean_a = 0.0;
  double mean_b = 0.0;
  for (const auto& m : e.members()) {
    mean_a += m.probability * von_neumann_entropy(partial_trace(m.state.matrix(), layout, part_a));
    mean_b += m.probability * von_neumann_entropy(partial_trace(m.state.matrix(), layout, part_b));
  }
  return s_a + s_b - std::max(mean_a, mean_b);
}

JointDistribution::JointDistribution(std::size_t nx, std::size_t ny, std::vector<double> p)
    : nx_(nx), ny_(ny), p_(std::move(p)) {
  if (nx_ == 0 || ny_ == 0 || p_.size() != nx_ * ny_) {
    throw std::invalid_argument("JointDistribution: shape mismatch");
  }
  double total = 0.0;
  for (double v : p_) {
    if (!(v >= 0.0)) throw std::invalid_argument("JointDistribution: negative entry");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw std::invalid_argument("JointDistribution: entries must sum to one");
  }
}

std::vector<double> JointDistribution::marginal_x() const {
  std::vector<double> m(nx_, 0.0);
  for (std::size_t x = 0; x < nx_; ++x) {
    for (std::size_t y = 0; y < ny_; ++y) m[x] += (*this)(x, y);
  }
  return m;
}

std::vector<double> JointDistribution::marginal_y() const {
  std::vector<double> m(ny_, 0.0);
  for (std::size_t x = 0; x < nx_; ++x) {
    for (std::size_t y = 0; y < ny_; ++y) m[y] += (*this)(x, y);
  }
  return m;
}

double mutual_information(const JointDistribution& j) {
  const auto px = j.marginal_x();
  const auto py = j.marginal_y();
  double mi = 0.0;
  for (std::size_t x = 0; x < j.nx(); ++x) {
    for (std::size_t y = 0; y < j.ny(); ++y) {
      const double p = j(x, y);
      if (p > 0.0) mi += p * std::log2(p / (px[x] * py[y]));
    }
  }
  return std::max(0.0, mi);
}

Locc1Scheme Locc1Scheme::from_parameters(std::span<const double> v) {
  if (v.size() != kParameterCount) {
    throw std::invalid_argument("Locc1Scheme: expected 95 parameters");
  }
  constexpr std::size_t n = TwoQubitParams::kParameterCount;
  Locc1Scheme s;
  s.bob1 = TwoQubitParams::from_parameters(v.subspan(0, n));
  for (std::size_t k = 0; k < 4; ++k) {
    s.bob2[k] = TwoQubitParams::from_parameters(v.subspan(n * (k + 1), n));
  }
  return s;
}

std::vector<double> Locc1Scheme::parameters() const {
  constexpr std::size_t n = TwoQubitParams::kParameterCount;
  std::vector<double> v(kParameterCount);
  bob1.write_parameters(std::span<double>(v).subspan(0, n));
  for (std::size_t k = 0; k < 4; ++k) {
    bob2[k].write_parameters(std::span<double>(v).subspan(n * (k + 1), n));
  }
  return v;
}

std::array<Matrix, 5> Locc1Scheme::unitaries() const {
  return {two_qubit_unitary_kak(bob1), two_qubit_unitary_kak(bob2[0]),
          two_qubit_unitary_kak(bob2[1]), two_qubit_unitary_kak(bob2[2]),
          two_qubit_unitary_kak(bob2[3])};
}

nlohmann::json to_json(const Locc1Scheme& s) {
  nlohmann::json cond = nlohmann::json::array();
  for (const auto& p : s.bob2) cond.push_back(to_json(p));
  return {{"bob1", to_json(s.bob1)}, {"bob2_conditional", cond}};
}

Locc1Scheme locc1_scheme_from_json(const nlohmann::json& j) {
  Locc1Scheme s;
  s.bob1 = two_qubit_params_from_json(j.at("bob1"));
  const auto& cond = j.at("bob2_conditional");
  if (cond.size() != 4) {
    throw std::invalid_argument("Locc1Scheme: need four conditional measurements");
  }
  for (std::size_t k = 0; k < 4; ++k) s.bob2[k] = two_qubit_params_from_json(cond[k]);
  return s;
}

double Locc1Information::chain_rule_total() const {
  double total = first_stage;
  for (std::size_t y = 0; y < 4; ++y) total += p_y1[y] * conditional[y];
  return total;
}

namespace {

Matrix rank_one_projector(const Matrix& u, Eigen::Index i) {
  return u.col(i) * u.col(i).adjoint();
}

}  // namespace

Locc1Information locc1_mutual_information(const Ensemble& e, const Locc1Scheme& s) {
  if (e.layout().total_dim() != 16 || e.layout().size() != 4) {
    throw std::invalid_argument(
        "locc1_mutual_information: ensemble must live on two two-qubit labs");
  }
  const auto us = s.unitaries();
  const Matrix id4 = Matrix::Identity(4, 4);
  std::array<Matrix, 4> lab1;
  std::array<std::array<Matrix, 4>, 4> lab2;
  for (Eigen::Index y1 = 0; y1 < 4; ++y1) {
    lab1[static_cast<std::size_t>(y1)] = kron(rank_one_projector(us[0], y1), id4);
    for (Eigen::Index y2 = 0; y2 < 4; ++y2) {
      lab2[static_cast<std::size_t>(y1)][static_cast<std::size_t>(y2)] =
          kron(id4, rank_one_projector(us[static_cast<std::size_t>(1 + y1)], y2));
    }
  }

  const std::size_t nx = e.size();
  // first[x][y1] = Tr[Π_y1 ρ_x]; second[x][y1][y2] = Tr[Π_y2|y1 ρ_x|y1].
  std::vector<std::array<double, 4>> first(nx);
  std::vector<std::array<std::array<double, 4>, 4>> second(nx);
  for (std::size_t x = 0; x < nx; ++x) {
    const Matrix& rho = e.members()[x].state.matrix();
    for (std::size_t y1 = 0; y1 < 4; ++y1) {
      const Matrix collapsed = lab1[y1] * rho * lab1[y1];
      const double t = std::max(0.0, collapsed.trace().real());
      first[x][y1] = t;
      second[x][y1].fill(0.0);
      if (t <= 0.0) continue;
      const Matrix post = collapsed / t;
      for (std::size_t y2 = 0; y2 < 4; ++y2) {
        second[x][y1][y2] = std::max(0.0, (lab2[y1][y2] * post).trace().real());
      }
    }
  }

  Locc1Information info;

  std::vector<double> joint(nx * 16);
  std::vector<double> stage1(nx * 4);
  for (std::size_t x = 0; x < nx; ++x) {
    const double px = e.members()[x].probability;
    for (std::size_t y1 = 0; y1 < 4; ++y1) {
      stage1[x * 4 + y1] = px * first[x][y1];
      for (std::size_t y2 = 0; y2 < 4; ++y2) {
        joint[x * 16 + y1 * 4 + y2] = px * first[x][y1] * second[x][y1][y2];
      }
    }
  }
  auto normalize = [](std::vector<double>& v) {
    double t = 0.0;
    for (double a : v) t += a;
    for (double& a : v) a /= t;
  };
  info.total = mutual_information(JointDistribution(nx, 16, joint));

  // Chain rule through the post-measurement ensembles.
  info.first_stage = mutual_information(JointDistribution(nx, 4, stage1));
  for (std::size_t y1 = 0; y1 < 4; ++y1) {
    double py1 = 0.0;
    for (std::size_t x = 0; x < nx; ++x) py1 += stage1[x * 4 + y1];
    info.p_y1[y1] = py1;
    if (py1 <= 0.0) continue;
    std::vector<double> cond(nx * 4);
    for (std::size_t x = 0; x < nx; ++x) {
      const double posterior = stage1[x * 4 + y1] / py1;
      for (std::size_t y2 = 0; y2 < 4; ++y2) {
        cond[x * 4 + y2] = posterior * second[x][y1][y2];
      }
    }
    normalize(cond);
    info.conditional[y1] = mutual_information(JointDistribution(nx, 4, cond));
  }
  return info;
}

}  // namespace ncrdc
