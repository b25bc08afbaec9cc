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

#include "ncrdc/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ncrdc {

Matrix single_qubit_unitary(const SingleQubitParams& p) {
  const double c = std::cos(p.theta / 2.0);
  const double s = std::sin(p.theta / 2.0);
  // Rz(φ) Ry(θ) Rz(λ), Rz(x) = diag(e^{-ix/2}, e^{ix/2}).
  const double plus = (p.phi + p.lam) / 2.0;
  const double minus = (p.phi - p.lam) / 2.0;
  Matrix u(2, 2);
  u << std::polar(c, -plus), -std::polar(s, -minus),
       std::polar(s, minus), std::polar(c, plus);
  if (p.alpha) u *= std::polar(1.0, *p.alpha);
  return u;
}

void TwoQubitParams::write_parameters(std::span<double> v) const {
  if (v.size() != kParameterCount) {
    throw std::invalid_argument("TwoQubitParams: expected 19 parameters");
  }
  std::size_t k = 0;
  for (const auto& l : locals) {
    v[k++] = l.theta;
    v[k++] = l.phi;
    v[k++] = l.lam;
    v[k++] = l.alpha.value_or(0.0);
  }
  for (double a : alphas) v[k++] = a;
}

TwoQubitParams TwoQubitParams::from_parameters(std::span<const double> v) {
  if (v.size() != kParameterCount) {
    throw std::invalid_argument("TwoQubitParams: expected 19 parameters");
  }
  TwoQubitParams p;
  std::size_t k = 0;
  for (auto& l : p.locals) {
    l.theta = v[k++];
    l.phi = v[k++];
    l.lam = v[k++];
    l.alpha = v[k++];
  }
  for (double& a : p.alphas) a = v[k++];
  return p;
}

Matrix canonical_two_qubit_gate(const std::array<double, 3>& alphas) {
  // X⊗X, Y⊗Y and Z⊗Z commute, so the exponential factorizes, and each
  // factor is cos(α) I − i sin(α) σ⊗σ because (σ⊗σ)² = I.
  const std::array<Matrix, 3> generators{kron(pauli_x(), pauli_x()),
                                         kron(pauli_y(), pauli_y()),
                                         kron(pauli_z(), pauli_z())};
  Matrix out = Matrix::Identity(4, 4);
  for (std::size_t k = 0; k < 3; ++k) {
    if (!std::isfinite(alphas[k])) {
      throw std::invalid_argument("canonical_two_qubit_gate: non-finite alpha");
    }
    const Matrix factor = std::cos(alphas[k]) * Matrix::Identity(4, 4) -
                          kI * std::sin(alphas[k]) * generators[k];
    out = out * factor;
  }
  return out;
}

Matrix two_qubit_unitary_kak(const TwoQubitParams& p) {
  const Matrix left = kron(single_qubit_unitary(p.locals[0]),
                           single_qubit_unitary(p.locals[1]));
  const Matrix right = kron(single_qubit_unitary(p.locals[2]),
                            single_qubit_unitary(p.locals[3]));
  return left * canonical_two_qubit_gate(p.alphas) * right;
}

std::vector<Matrix> shift_multiply_basis(int d) {
  if (d < 2) throw std::invalid_argument("shift_multiply_basis: d must be >= 2");
  std::vector<Matrix> ops;
  ops.reserve(static_cast<std::size_t>(d * d));
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      Matrix m = Matrix::Zero(d, d);
      for (int j = 0; j < d; ++j) {
        m((j + q) % d, j) = std::polar(1.0, 2.0 * std::numbers::pi * p * j / d);
      }
      ops.push_back(std::move(m));
    }
  }
  return ops;
}

std::vector<double> to_simplex(std::span<const double> raw) {
  if (raw.empty()) throw std::invalid_argument("to_simplex: empty input");
  const double top = *std::max_element(raw.begin(), raw.end());
  if (!std::isfinite(top)) throw std::invalid_argument("to_simplex: non-finite input");
  std::vector<double> out(raw.size());
  double total = 0.0;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (!std::isfinite(raw[k])) {
      throw std::invalid_argument("to_simplex: non-finite input");
    }
    out[k] = std::exp(raw[k] - top);
    total += out[k];
  }
  for (double& v : out) v /= total;
  return out;
}

std::string to_string(ProbabilityMode mode) {
  return mode == ProbabilityMode::kFree ? "free" : "uniform";
}

ProbabilityMode probability_mode_from_string(const std::string& s) {
  if (s == "free") return ProbabilityMode::kFree;
  if (s == "uniform") return ProbabilityMode::kUniform;
  throw std::invalid_argument("probability mode must be 'free' or 'uniform', got '" +
                              s + "'");
}

void EncodingScheme::validate() const {
  if (receivers < 1) throw std::invalid_argument("encoding scheme: receivers must be >= 1");
  if (letters.empty()) {
    throw std::invalid_argument("encoding scheme: alphabet size must be ≥ 1");
  }
  double total = 0.0;
  for (const auto& l : letters) {
    if (!(l.probability >= 0.0)) {
      throw std::invalid_argument("encoding scheme: negative probability");
    }
    if (l.unitaries.size() != static_cast<std::size_t>(receivers)) {
      throw std::invalid_argument(
          "encoding scheme: each letter needs one unitary per receiver");
    }
    total += l.probability;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw std::invalid_argument("encoding scheme: probabilities must sum to one");
  }
}

EncodingParameterization::EncodingParameterization(int receivers,
                                                   int alphabet_size,
                                                   ProbabilityMode mode)
    : receivers_(receivers), alphabet_size_(alphabet_size), mode_(mode) {
  if (receivers < 1) throw std::invalid_argument("receivers must be >= 1");
  if (alphabet_size < 1) throw std::invalid_argument("alphabet size must be ≥ 1");
}

std::size_t EncodingParameterization::per_letter() const {
  return 3 + 4 * static_cast<std::size_t>(receivers_ - 1) +
         (mode_ == ProbabilityMode::kFree ? 1 : 0);
}

EncodingScheme EncodingParameterization::decode(std::span<const double> v) const {
  if (v.size() != size()) {
    throw std::invalid_argument("encoding parameter vector has wrong length");
  }
  EncodingScheme scheme;
  scheme.receivers = receivers_;
  std::vector<double> logits;
  for (int x = 0; x < alphabet_size_; ++x) {
    auto it = v.begin() + static_cast<std::ptrdiff_t>(per_letter() * x);
    EncodingLetter letter;
    letter.unitaries.push_back({it[0], it[1], it[2], std::nullopt});
    it += 3;
    for (int i = 1; i < receivers_; ++i, it += 4) {
      letter.unitaries.push_back({it[0], it[1], it[2], it[3]});
    }
    if (mode_ == ProbabilityMode::kFree) logits.push_back(*it);
    scheme.letters.push_back(std::move(letter));
  }
  if (mode_ == ProbabilityMode::kFree) {
    const auto p = to_simplex(logits);
    for (std::size_t x = 0; x < p.size(); ++x) scheme.letters[x].probability = p[x];
  } else {
    for (auto& l : scheme.letters) l.probability = 1.0 / alphabet_size_;
  }
  return scheme;
}

std::vector<double> EncodingParameterization::encode(const EncodingScheme& scheme) const {
  if (scheme.receivers != receivers_ ||
      scheme.alphabet_size() != static_cast<std::size_t>(alphabet_size_)) {
    throw std::invalid_argument("encoding scheme does not match parameterization");
  }
  std::vector<double> v;
  v.reserve(size());
  for (const auto& l : scheme.letters) {
    const auto& u0 = l.unitaries.at(0);
    v.insert(v.end(), {u0.theta, u0.phi, u0.lam});
    for (int i = 1; i < receivers_; ++i) {
      const auto& u = l.unitaries.at(static_cast<std::size_t>(i));
      v.insert(v.end(), {u.theta, u.phi, u.lam, u.alpha.value_or(0.0)});
    }
    if (mode_ == ProbabilityMode::kFree) {
      v.push_back(std::log(std::max(l.probability, 1e-300)));
    }
  }
  return v;
}

nlohmann::json to_json(const SingleQubitParams& p) {
  nlohmann::json j{{"theta", p.theta}, {"phi", p.phi}, {"lambda", p.lam}};
  if (p.alpha) j["alpha"] = *p.alpha;
  return j;
}

SingleQubitParams single_qubit_params_from_json(const nlohmann::json& j) {
  SingleQubitParams p;
  p.theta = j.at("theta").get<double>();
  p.phi = j.at("phi").get<double>();
  p.lam = j.at("lambda").get<double>();
  if (j.contains("alpha")) p.alpha = j.at("alpha").get<double>();
  return p;
}

nlohmann::json to_json(const TwoQubitParams& p) {
  nlohmann::json locals = nlohmann::json::array();
  for (const auto& l : p.locals) locals.push_back(to_json(l));
  return {{"locals", locals}, {"alphas", p.alphas}};
}

TwoQubitParams two_qubit_params_from_json(const nlohmann::json& j) {
  TwoQubitParams p;
  const auto& locals = j.at("locals");
  if (locals.size() != 4) throw std::invalid_argument("two-qubit params need 4 locals");
  for (std::size_t k = 0; k < 4; ++k) {
    p.locals[k] = single_qubit_params_from_json(locals[k]);
  }
  p.alphas = j.at("alphas").get<std::array<double, 3>>();
  return p;
}

nlohmann::json to_json(const EncodingScheme& scheme) {
  nlohmann::json letters = nlohmann::json::array();
  for (const auto& l : scheme.letters) {
    nlohmann::json us = nlohmann::json::array();
    for (const auto& u : l.unitaries) us.push_back(to_json(u));
    letters.push_back({{"probability", l.probability}, {"unitaries", us}});
  }
  return {{"receivers", scheme.receivers}, {"letters", letters}};
}

EncodingScheme encoding_scheme_from_json(const nlohmann::json& j) {
  EncodingScheme s;
  s.receivers = j.at("receivers").get<int>();
  for (const auto& l : j.at("letters")) {
    EncodingLetter letter;
    letter.probability = l.at("probability").get<double>();
    for (const auto& u : l.at("unitaries")) {
      letter.unitaries.push_back(single_qubit_params_from_json(u));
    }
    s.letters.push_back(std::move(letter));
  }
  s.validate();
  return s;
}

}  // namespace ncrdc
