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

#ifndef DSM_ENVELOPE_HPP
#define DSM_ENVELOPE_HPP

#include <vector>

#include "dsm/audio.hpp"

namespace dsm {

struct EnvelopeConfig {
  int order = 24;  // all-pole order p (24 @ 16 kHz, 12 @ 8 kHz)
  double window_sec = 0.025;
  double hop_sec = 0.005;
  // First-order emphasis applied before analysis. The emphasis zero is
  // convolved into the stored coefficient vectors, so inverse and
  // synthesis filtering stay exact inverses of each other.
  double preemphasis = 0.97;

  static int default_order(int sample_rate) { return sample_rate >= 12000 ? 24 : 12; }
};

// Per-frame all-pole inverse-filter coefficients c[0..P] (c[0]=1, P = p or
// p+1 with emphasis folded in) plus a per-frame gain equal to the RMS of
// the prediction error in that frame.
struct EnvelopeTrack {
  int frame_hop = 0;
  int window_len = 0;
  int num_coeffs = 0;  // P+1 values per frame
  std::vector<double> coeffs;  // num_frames x num_coeffs, row-major
  std::vector<double> gain;

  int num_frames() const { return static_cast<int>(gain.size()); }
  const double* frame(int k) const { return coeffs.data() + static_cast<size_t>(k) * num_coeffs; }
  int frame_for_sample(int n) const;
  // Number of samples the track covers (frame grid extent).
  int coverage() const { return num_frames() > 0 ? (num_frames() - 1) * frame_hop + window_len : 0; }
};

// Autocorrelation-method LP fit per frame (Hamming window). All-zero
// frames get identity coefficients and zero gain.
EnvelopeTrack fit_envelope(const AudioSignal& signal, const EnvelopeConfig& cfg);

// Residual via the per-frame inverse FIR, coefficients switched per
// sample on the continuous input. Exact inverse of synthesis_filter.
AudioSignal inverse_filter(const AudioSignal& signal, const EnvelopeTrack& env);

// Time-varying all-pole synthesis filter. With apply_gain the excitation
// is scaled by each frame's gain before filtering (vocoder path); without
// it the filter is the exact inverse of inverse_filter.
// Throws on unstable coefficient frames, naming the frame index.
AudioSignal synthesis_filter(const AudioSignal& excitation, const EnvelopeTrack& env,
                             bool apply_gain);

}  // namespace dsm

#endif  // DSM_ENVELOPE_HPP
