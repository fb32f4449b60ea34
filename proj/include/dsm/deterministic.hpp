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

#ifndef DSM_DETERMINISTIC_HPP
#define DSM_DETERMINISTIC_HPP

#include <span>
#include <vector>

#include "dsm/frames.hpp"

namespace dsm {

// Pitch-normalization feasibility: the normalized pitch f0_star must not
// exceed (f_nyquist / fm) * f0_min, or upsampling a frame to the lowest
// pitch leaves a spectral hole below fm.
struct PitchConstraint {
  double f0_star = 0.0;
  double fm = 0.0;
  double f_nyquist = 0.0;
  double f0_min = 0.0;
};

bool validate_pitch_constraint(const PitchConstraint& c);

// Orthonormal eigenresidual basis of the frame second-moment matrix.
// Rows are ordered by descending eigenvalue; all m eigenvalues are kept
// even when the stored rows are truncated.
struct EigenBasis {
  int m = 0;
  int rows = 0;
  std::vector<double> vectors;      // rows x m, row-major, orthonormal rows
  std::vector<double> eigenvalues;  // m values, descending, >= 0
  double f0_star = 0.0;

  const double* row(int i) const { return vectors.data() + static_cast<size_t>(i) * m; }
  // Keep only the first k rows (eigenvalues stay complete).
  void truncate(int k);
};

// Eigendecomposition of (1/N) F^T F — no mean removal, so the first
// eigenresidual absorbs the mean shape. Sign convention: the sample at
// the frame center (the GCI) is <= 0; ties resolved by making the first
// nonzero component positive. Throws "insufficient frames" for N < 2.
EigenBasis pca_decompose(const ResidualFrameSet& frames);

// Cumulative relative dispersion of the first k eigenvalues; k in [1, m].
double crd(const EigenBasis& basis, int k);

// Projection of frame onto the first k eigenresiduals.
std::vector<double> reconstruct(std::span<const double> frame, const EigenBasis& basis, int k);

}  // namespace dsm

#endif  // DSM_DETERMINISTIC_HPP
