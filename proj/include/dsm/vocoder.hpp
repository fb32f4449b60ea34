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

#ifndef DSM_VOCODER_HPP
#define DSM_VOCODER_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dsm/deterministic.hpp"
#include "dsm/envelope.hpp"
#include "dsm/pipeline.hpp"
#include "dsm/stochastic.hpp"

namespace dsm {

// Trained speaker excitation model. The stochastic half may be absent
// when fm sits at Nyquist (8 kHz corpora).
struct DsmModel {
  EigenBasis basis;  // k_det rows stored, all m eigenvalues kept
  NoiseModel noise;
  bool has_noise = false;
  double fm = 0.0;
  double f0_star = 0.0;
  int sample_rate = 0;
  int k_det = 1;
  double f0_min = 60.0;
  double f0_max = 400.0;
  // Stochastic-vs-deterministic level match at the fm boundary,
  // calibrated once at training time.
  double noise_gain = 1.0;
  std::uint64_t n_frames = 0;
  bool signature_only = false;

  int m() const { return basis.m; }
  int t0_min() const;  // admissible synthesis period range (samples)
  int t0_max() const;
};

// Binary "DSM1" container (little-endian; see README for the layout).
// Writes are atomic.
void save_model(const DsmModel& model, const std::string& path);
DsmModel load_model(const std::string& path);
// Human-readable dump of the same content.
void export_model_text(const DsmModel& model, const std::string& path);

struct SynthesisPlan {
  PitchTrack pitch;
  EnvelopeTrack envelope;
  std::uint64_t rng_seed = 0;
};

struct SynthOptions {
  bool deterministic_only = false;  // mute the stochastic component
  bool unvoiced_noise = true;       // white noise in unvoiced regions
};

// Eigenresidual sum resampled to two target periods; equals mu_1 exactly
// when k_det = 1 and t0 = m/2.
std::vector<double> make_deterministic_frame(const DsmModel& model, int t0);

// e ⊙ (h * n): enveloped filtered Gaussian noise at the calibrated level.
std::vector<double> make_stochastic_frame(const DsmModel& model, int t0,
                                          std::mt19937_64& rng);

// GCI-synchronous overlap-add excitation: deterministic + stochastic
// frames through voiced regions, white noise at matched RMS elsewhere.
AudioSignal synth_residual(const DsmModel& model, const SynthesisPlan& plan,
                           const SynthOptions& opt = {});

// synth_residual pushed through the plan's time-varying synthesis filter
// with per-frame gain; output peak-limited to 0.99.
AudioSignal synth_speech(const DsmModel& model, const SynthesisPlan& plan,
                         const SynthOptions& opt = {});

struct TrainStats {
  CollectStats collect;
  int n_frames = 0;
  bool eq1_ok = true;
  bool below_min_frames = false;
};

// Full training pass: corpus analysis, PCA, noise model, boundary-level
// calibration.
DsmModel train_model(const std::vector<AudioSignal>& corpus, const TrainConfig& cfg,
                     TrainStats* stats = nullptr);
DsmModel train_model_from_frames(const ResidualFrameSet& frames, const TrainConfig& cfg);

struct CopySynthOptions {
  TrainConfig train;
  double pitch_scale = 1.0;
  bool deterministic_only = false;
};

struct CopySynthMetrics {
  double f0_in_hz = 0.0;
  double f0_out_hz = 0.0;
  int n_frames = 0;
  bool below_min_frames = false;
  double env_distortion_db = 0.0;   // mean |dB| envelope gap below fm, mean-aligned
  double band_snr_low_db = 0.0;     // spectral SNR below fm on aligned spectra
  double band_snr_high_db = 0.0;    // same, above fm
};

// Analysis → train-on-self → resynthesis with the signal's own pitch and
// envelope (pitch optionally scaled). Errors out when too few residual
// frames are available for a usable model.
AudioSignal copy_synthesis(const AudioSignal& signal, const CopySynthOptions& opt,
                           CopySynthMetrics* metrics = nullptr);

// Same resynthesis path but with a pre-trained excitation model instead
// of training on the input. Sample rates must match.
AudioSignal copy_synthesis_with_model(const DsmModel& model, const AudioSignal& signal,
                                      const CopySynthOptions& opt,
                                      CopySynthMetrics* metrics = nullptr);

}  // namespace dsm

#endif  // DSM_VOCODER_HPP
