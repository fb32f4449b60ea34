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

#ifndef DSM_SPEAKERID_HPP
#define DSM_SPEAKERID_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dsm/frames.hpp"
#include "dsm/pipeline.hpp"

namespace dsm {

// Speaker-dependent waveform pair used for identification. The envelope
// channel is absent when fm sits at Nyquist (low-sample-rate corpora).
struct GlottalSignature {
  std::vector<double> eigenresidual;    // unit norm, length m
  std::vector<double> energy_envelope;  // unit peak, length m; may be empty
  double f0_star = 0.0;
  double fm = 0.0;
  int sample_rate = 0;
  std::uint64_t n_frames_used = 0;
  std::string label;

  int m() const { return static_cast<int>(eigenresidual.size()); }
  bool has_envelope() const { return !energy_envelope.empty(); }
};

// Relative time squared error: sum (est - ref)^2 / sum ref^2.
// Throws "undefined relative error" on an all-zero reference.
double rtse(std::span<const double> estimate, std::span<const double> reference);

struct SignatureConfig {
  TrainConfig train;
  int eigen_index = 1;  // which eigenresidual forms the signature
};

// Pooled analysis of a corpus into a signature. Zero voiced frames is an
// error; fewer than train.min_frames sets the warning flag.
GlottalSignature extract_signature(const std::vector<AudioSignal>& corpus,
                                   const SignatureConfig& cfg, bool* warned_min_frames = nullptr);
// Same, from an already-analyzed frame set.
GlottalSignature signature_from_frames(const ResidualFrameSet& frames,
                                       const SignatureConfig& cfg);

// Signatures travel in the DSM1 container with the signature-only flag.
void save_signature(const GlottalSignature& sig, const std::string& path);
GlottalSignature load_signature(const std::string& path);

struct DistanceMatrix {
  int n_train = 0;
  int n_test = 0;
  std::vector<double> values;  // n_train x n_test, row-major
  std::vector<std::string> train_labels;
  std::vector<std::string> test_labels;

  double& at(int i, int j) { return values[static_cast<size_t>(i) * n_test + j]; }
  double at(int i, int j) const { return values[static_cast<size_t>(i) * n_test + j]; }
};

enum class Channel { Eigenresidual, Envelope };

// values[i][j] = rtse(test_j.channel, train_i.channel). All signatures
// must share (f0_star, fm, sample_rate, m); mismatches name the pair.
DistanceMatrix distance_matrix(const std::vector<GlottalSignature>& train,
                               const std::vector<GlottalSignature>& test, Channel channel);

// Elementwise Dx^alpha * Dy^(1-alpha); boundary weights reproduce the
// input bit-exactly, interior weights floor entries at 1e-12 first.
DistanceMatrix combine_mul(const DistanceMatrix& dx, const DistanceMatrix& dy, double alpha);
// Elementwise beta * Dx + (1-beta) * Dy.
DistanceMatrix combine_add(const DistanceMatrix& dx, const DistanceMatrix& dy, double beta);

struct IdentifyResult {
  std::vector<int> predicted;               // train index per test column
  std::vector<std::string> predicted_label;
  // 1-based rank of the true-label row per test column (0 when the test
  // label has no matching train row).
  std::vector<int> rank_of_true;
  int n_correct = 0;
  double accuracy = 0.0;  // over test columns with a matching train label
};

// Argmin over rows per test column, ties to the lowest train index.
IdentifyResult identify(const DistanceMatrix& d);

struct ConvergencePoint {
  int size = 0;
  double rtse_eigen = 0.0;
  double rtse_env = 0.0;  // -1 when the reference has no envelope channel
};

// Signature estimates from growing frame-count prefixes, scored against a
// reference signature.
std::vector<ConvergencePoint> convergence_curve(const ResidualFrameSet& frames,
                                                const GlottalSignature& reference,
                                                const std::vector<int>& sizes,
                                                const SignatureConfig& cfg);

}  // namespace dsm

#endif  // DSM_SPEAKERID_HPP
