// Copyright 2026 The dsm Authors
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

#include "dsm/deterministic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dsm {

bool validate_pitch_constraint(const PitchConstraint& c) {
  if (c.f0_star <= 0.0 || c.fm <= 0.0 || c.f_nyquist <= 0.0 || c.f0_min <= 0.0)
    throw std::invalid_argument("validate_pitch_constraint: all fields must be positive");
  if (c.fm > c.f_nyquist)
    throw std::invalid_argument("validate_pitch_constraint: fm above Nyquist");
  return c.f0_star <= (c.f_nyquist / c.fm) * c.f0_min;
}

void EigenBasis::truncate(int k) {
  if (k < 1 || k > rows) throw std::invalid_argument("EigenBasis::truncate: bad row count");
  rows = k;
  vectors.resize(static_cast<size_t>(k) * m);
}

EigenBasis pca_decompose(const ResidualFrameSet& frames) {
  const int n = frames.n();
  const int m = frames.m();
  if (n < 2) throw std::runtime_error("insufficient frames");

  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> f(frames.frames.data.data(), n, m);
  // Second-moment matrix, no mean removal: the first eigenvector absorbs
  // the mean residual shape.
  Eigen::MatrixXd moment = (f.transpose() * f) / static_cast<double>(n);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(moment);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("pca_decompose: eigendecomposition failed");

  EigenBasis basis;
  basis.m = m;
  basis.rows = m;
  basis.f0_star = frames.f0_star;
  basis.vectors.resize(static_cast<size_t>(m) * m);
  basis.eigenvalues.resize(static_cast<size_t>(m));

  // Eigen returns ascending order; store descending with clamped values.
  for (int i = 0; i < m; ++i) {
    const int src = m - 1 - i;
    basis.eigenvalues[static_cast<size_t>(i)] = std::max(0.0, solver.eigenvalues()(src));
    Eigen::VectorXd v = solver.eigenvectors().col(src);
    // Sign convention: GCI-centered sample <= 0; tie -> first nonzero > 0.
    const double center = v(m / 2);
    bool flip = false;
    if (center > 0.0) {
      flip = true;
    } else if (center == 0.0) {
      for (int j = 0; j < m; ++j) {
        if (v(j) != 0.0) {
          flip = v(j) < 0.0;
          break;
        }
      }
    }
    if (flip) v = -v;
    for (int j = 0; j < m; ++j) basis.vectors[static_cast<size_t>(i) * m + j] = v(j);
  }
  return basis;
}

double crd(const EigenBasis& basis, int k) {
  if (k < 1 || k > basis.m) throw std::invalid_argument("crd: k out of range [1, m]");
  double total = 0.0, head = 0.0;
  for (int i = 0; i < basis.m; ++i) {
    total += basis.eigenvalues[static_cast<size_t>(i)];
    if (i < k) head += basis.eigenvalues[static_cast<size_t>(i)];
  }
  if (total <= 0.0) throw std::runtime_error("crd: eigenvalue mass is zero");
  return head / total;
}

std::vector<double> reconstruct(std::span<const double> frame, const EigenBasis& basis, int k) {
  if (static_cast<int>(frame.size()) != basis.m)
    throw std::invalid_argument("reconstruct: frame length mismatch");
  if (k < 1 || k > basis.rows) throw std::invalid_argument("reconstruct: k out of range");

  std::vector<double> out(static_cast<size_t>(basis.m), 0.0);
  for (int i = 0; i < k; ++i) {
    const double* mu = basis.row(i);
    double proj = 0.0;
    for (int j = 0; j < basis.m; ++j) proj += frame[static_cast<size_t>(j)] * mu[j];
    for (int j = 0; j < basis.m; ++j) out[static_cast<size_t>(j)] += proj * mu[j];
  }
  return out;
}

}  // namespace dsm
