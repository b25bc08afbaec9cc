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

#include "ncrdc/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace ncrdc {

SystemLayout::SystemLayout(std::vector<Subsystem> subsystems)
    : subsystems_(std::move(subsystems)) {
  if (subsystems_.empty()) {
    throw std::invalid_argument("layout must have at least one subsystem");
  }
  std::set<std::string> seen;
  for (const auto& s : subsystems_) {
    if (s.dim < 2) {
      throw std::invalid_argument("subsystem '" + s.label +
                                  "' must have dimension >= 2");
    }
    if (!seen.insert(s.label).second) {
      throw std::invalid_argument("duplicate subsystem label '" + s.label +
                                  "'");
    }
    total_dim_ *= static_cast<std::size_t>(s.dim);
  }
}

SystemLayout SystemLayout::qubits(int n) {
  if (n < 1) throw std::invalid_argument("need at least one qubit");
  std::vector<Subsystem> subs;
  for (int k = 1; k <= n; ++k) subs.push_back({"q" + std::to_string(k), 2});
  return SystemLayout(std::move(subs));
}

SystemLayout SystemLayout::protocol(int receivers) {
  if (receivers < 1) throw std::invalid_argument("need at least one receiver");
  std::vector<Subsystem> subs;
  subs.push_back({"B1", 2});
  subs.push_back({"A", 2});
  for (int i = 2; i <= receivers; ++i) {
    subs.push_back({"B" + std::to_string(i), 2});
    subs.push_back({"C" + std::to_string(i), 2});
  }
  return SystemLayout(std::move(subs));
}

const Subsystem& SystemLayout::at(int position) const {
  if (position < 1 || position > static_cast<int>(subsystems_.size())) {
    throw std::out_of_range("subsystem position " + std::to_string(position) +
                            " out of range 1.." +
                            std::to_string(subsystems_.size()));
  }
  return subsystems_[static_cast<std::size_t>(position - 1)];
}

int SystemLayout::position_of(const std::string& label) const {
  for (std::size_t k = 0; k < subsystems_.size(); ++k) {
    if (subsystems_[k].label == label) return static_cast<int>(k + 1);
  }
  throw std::out_of_range("no subsystem labelled '" + label + "'");
}

std::vector<int> SystemLayout::digits(std::size_t index) const {
  std::vector<int> d(subsystems_.size());
  for (std::size_t k = subsystems_.size(); k-- > 0;) {
    const auto dim = static_cast<std::size_t>(subsystems_[k].dim);
    d[k] = static_cast<int>(index % dim);
    index /= dim;
  }
  return d;
}

std::size_t SystemLayout::index(std::span<const int> digits) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < subsystems_.size(); ++k) {
    idx = idx * static_cast<std::size_t>(subsystems_[k].dim) +
          static_cast<std::size_t>(digits[k]);
  }
  return idx;
}

SystemLayout SystemLayout::restrict_to(const std::set<int>& positions) const {
  std::vector<Subsystem> subs;
  for (int p : positions) subs.push_back(at(p));
  return SystemLayout(std::move(subs));
}

SystemLayout SystemLayout::permuted(std::span<const int> order) const {
  if (order.size() != subsystems_.size()) {
    throw std::invalid_argument("permutation length must match layout size");
  }
  std::vector<Subsystem> subs;
  std::set<int> seen;
  for (int p : order) {
    if (!seen.insert(p).second) {
      throw std::invalid_argument("permutation repeats a position");
    }
    subs.push_back(at(p));
  }
  return SystemLayout(std::move(subs));
}

bool operator==(const Subsystem& a, const Subsystem& b) {
  return a.label == b.label && a.dim == b.dim;
}

bool operator==(const SystemLayout& a, const SystemLayout& b) {
  return a.subsystems_ == b.subsystems_;
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) +
                                ": matrix has non-finite entries");
  }
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

Matrix pauli_i() { return Matrix::Identity(2, 2); }

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

namespace {

void check_targets(const SystemLayout& layout, std::span<const int> targets) {
  if (targets.empty()) throw std::invalid_argument("no target subsystems");
  std::set<int> seen;
  for (int t : targets) {
    (void)layout.at(t);
    if (!seen.insert(t).second) {
      throw std::invalid_argument("target subsystems must be distinct");
    }
  }
}

}  // namespace

Matrix embed_operator(const Matrix& op, const SystemLayout& layout,
                      std::span<const int> targets) {
  require_finite(op, "embed_operator");
  check_targets(layout, targets);
  std::size_t op_dim = 1;
  for (int t : targets) op_dim *= static_cast<std::size_t>(layout.dim(t));
  if (op.rows() != op.cols() ||
      static_cast<std::size_t>(op.rows()) != op_dim) {
    throw std::invalid_argument(
        "embed_operator: operator dimension does not match targets");
  }

  const std::size_t n = layout.total_dim();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(n),
                            static_cast<Eigen::Index>(n));
  for (std::size_t col = 0; col < n; ++col) {
    auto d = layout.digits(col);
    std::size_t local_col = 0;
    for (int t : targets) {
      local_col = local_col * static_cast<std::size_t>(layout.dim(t)) +
                  static_cast<std::size_t>(d[static_cast<std::size_t>(t - 1)]);
    }
    for (std::size_t local_row = 0; local_row < op_dim; ++local_row) {
      const Complex v = op(static_cast<Eigen::Index>(local_row),
                           static_cast<Eigen::Index>(local_col));
      if (v == Complex{}) continue;
      std::size_t rest = local_row;
      for (std::size_t k = targets.size(); k-- > 0;) {
        const int t = targets[k];
        const auto dim = static_cast<std::size_t>(layout.dim(t));
        d[static_cast<std::size_t>(t - 1)] = static_cast<int>(rest % dim);
        rest /= dim;
      }
      out(static_cast<Eigen::Index>(layout.index(d)),
          static_cast<Eigen::Index>(col)) += v;
    }
  }
  return out;
}

std::vector<std::size_t> permutation_map(const SystemLayout& layout,
                                         std::span<const int> order) {
  const SystemLayout target = layout.permuted(order);
  const std::size_t n = layout.total_dim();
  std::vector<std::size_t> map(n);
  std::vector<int> nd(layout.size());
  for (std::size_t k = 0; k < n; ++k) {
    const auto d = layout.digits(k);
    for (std::size_t p = 0; p < order.size(); ++p) {
      nd[p] = d[static_cast<std::size_t>(order[p] - 1)];
    }
    map[k] = target.index(nd);
  }
  return map;
}

Matrix permutation_operator(const SystemLayout& layout,
                            std::span<const int> order) {
  const auto map = permutation_map(layout, order);
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  Matrix p = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < map.size(); ++k) {
    p(static_cast<Eigen::Index>(map[k]), static_cast<Eigen::Index>(k)) = 1.0;
  }
  return p;
}

Matrix swap_operator(const SystemLayout& layout, int i, int j) {
  if (layout.dim(i) != layout.dim(j)) {
    throw std::invalid_argument("swap_operator: subsystem dimensions differ");
  }
  std::vector<int> order(layout.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    order[k] = static_cast<int>(k + 1);
  }
  std::swap(order[static_cast<std::size_t>(i - 1)],
            order[static_cast<std::size_t>(j - 1)]);
  return permutation_operator(layout, order);
}

Matrix partial_trace(const Matrix& rho, const SystemLayout& layout,
                     const std::set<int>& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  if (rho.rows() != n || rho.cols() != n) {
    throw std::invalid_argument(
        "partial_trace: matrix dimension does not match layout");
  }
  for (int k : keep) (void)layout.at(k);

  const SystemLayout kept = layout.restrict_to(keep);
  std::set<int> traced;
  for (int p = 1; p <= static_cast<int>(layout.size()); ++p) {
    if (!keep.contains(p)) traced.insert(p);
  }

  // Split every basis index into (kept index, traced index).
  std::vector<std::size_t> kept_idx(layout.total_dim());
  std::vector<std::size_t> traced_idx(layout.total_dim());
  for (std::size_t k = 0; k < layout.total_dim(); ++k) {
    const auto d = layout.digits(k);
    std::size_t a = 0;
    std::size_t b = 0;
    for (int p = 1; p <= static_cast<int>(layout.size()); ++p) {
      const auto dim = static_cast<std::size_t>(layout.dim(p));
      const auto digit = static_cast<std::size_t>(d[static_cast<std::size_t>(p - 1)]);
      if (keep.contains(p)) {
        a = a * dim + digit;
      } else {
        b = b * dim + digit;
      }
    }
    kept_idx[k] = a;
    traced_idx[k] = b;
  }

  const auto m = static_cast<Eigen::Index>(kept.total_dim());
  Matrix out = Matrix::Zero(m, m);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      if (traced_idx[static_cast<std::size_t>(r)] !=
          traced_idx[static_cast<std::size_t>(c)]) {
        continue;
      }
      out(static_cast<Eigen::Index>(kept_idx[static_cast<std::size_t>(r)]),
          static_cast<Eigen::Index>(kept_idx[static_cast<std::size_t>(c)])) +=
          rho(r, c);
    }
  }
  return out;
}

double max_abs_deviation_from_hermitian(const Matrix& h) {
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

RealVector hermitian_spectrum(const Matrix& h) {
  if (h.rows() != h.cols()) {
    throw std::invalid_argument("hermitian_spectrum: matrix is not square");
  }
  require_finite(h, "hermitian_spectrum");
  if (max_abs_deviation_from_hermitian(h) > kHermitianTolerance) {
    throw std::invalid_argument("hermitian_spectrum: matrix is not Hermitian");
  }
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  RealVector ev = solver.eigenvalues();
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

}  // namespace ncrdc
