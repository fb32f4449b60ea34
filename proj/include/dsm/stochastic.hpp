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

#ifndef DSM_STOCHASTIC_HPP
#define DSM_STOCHASTIC_HPP

#include <span>
#include <vector>

#include "dsm/frames.hpp"

namespace dsm {

// High-band noise model: spectral shaping all-pole filter plus a
// GCI-centered time envelope with unit peak.
struct NoiseModel {
  std::vector<double> ar;  // a[0..q], a[0] = 1
  double ar_gain = 0.0;
  std::vector<double> energy_envelope;  // length m, nonnegative, max = 1
  double fm = 0.0;
  double f0_star = 0.0;

  int order() const { return static_cast<int>(ar.size()) - 1; }
};

// Zero-phase (forward-backward) order-8 Butterworth high-pass of every
// frame at the set's fm. Throws when fm is at or above Nyquist.
FrameMatrix highpass_fm(const ResidualFrameSet& frames);

struct ArFit {
  std::vector<double> a;
  double gain = 0.0;
};

// All-pole fit of the frames' averaged amplitude spectrum: mean of
// magnitude spectra, squared into an autocorrelation, Levinson-Durbin of
// the given order. Throws "empty high band" if the frames carry no energy.
ArFit fit_noise_ar(const FrameMatrix& highband, int order);

// Magnitude of the analytic signal (FFT method).
std::vector<double> hilbert_env(std::span<const double> frame);

// Pointwise mean of per-frame Hilbert envelopes, normalized to unit peak.
std::vector<double> fit_energy_envelope(const FrameMatrix& highband);

// highpass_fm + fit_noise_ar + fit_energy_envelope on a normalized set.
NoiseModel fit_noise_model(const ResidualFrameSet& frames, int order);

}  // namespace dsm

#endif  // DSM_STOCHASTIC_HPP
