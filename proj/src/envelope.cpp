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

#include "dsm/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dsm/dsp.hpp"

namespace dsm {

int EnvelopeTrack::frame_for_sample(int n) const {
  if (num_frames() == 0) return 0;
  // Nearest frame center: centers sit at k*hop + window/2.
  const int k = static_cast<int>(std::lround(static_cast<double>(n - window_len / 2) / frame_hop));
  return std::clamp(k, 0, num_frames() - 1);
}

EnvelopeTrack fit_envelope(const AudioSignal& signal, const EnvelopeConfig& cfg) {
  if (cfg.order < 2) throw std::invalid_argument("fit_envelope: order must be >= 2");
  const int sr = signal.sample_rate;
  const int n = signal.size();
  if (n == 0) throw std::invalid_argument("fit_envelope: empty signal");
  int win = std::max(cfg.order + 2, static_cast<int>(std::lround(cfg.window_sec * sr)));
  const int hop = std::max(1, static_cast<int>(std::lround(cfg.hop_sec * sr)));
  win = std::min(win, n);

  const bool emphasize = cfg.preemphasis != 0.0;
  std::vector<double> pe(signal.samples);
  if (emphasize) {
    for (int i = n - 1; i >= 1; --i) pe[static_cast<size_t>(i)] -= cfg.preemphasis * pe[static_cast<size_t>(i) - 1];
  }

  const auto window = dsp::hamming(win);
  double window_energy = 0.0;
  for (double w : window) window_energy += w * w;

  EnvelopeTrack env;
  env.frame_hop = hop;
  env.window_len = win;
  env.num_coeffs = cfg.order + 1 + (emphasize ? 1 : 0);

  const int num_frames = std::max(1, (n - win) / hop + 1);
  env.coeffs.assign(static_cast<size_t>(num_frames) * env.num_coeffs, 0.0);
  env.gain.assign(static_cast<size_t>(num_frames), 0.0);

  std::vector<double> frame(static_cast<size_t>(win));
  for (int k = 0; k < num_frames; ++k) {
    const double* x = pe.data() + static_cast<size_t>(k) * hop;
    for (int i = 0; i < win; ++i) frame[static_cast<size_t>(i)] = x[i] * window[static_cast<size_t>(i)];

    double* c = env.coeffs.data() + static_cast<size_t>(k) * env.num_coeffs;
    const auto r = dsp::autocorrelation(frame, cfg.order);
    if (r[0] <= 0.0) {
      c[0] = 1.0;  // identity coefficients, zero gain
      continue;
    }
    const auto ld = dsp::levinson(r, cfg.order);
    if (emphasize) {
      // c(z) = A(z) * (1 - beta z^-1)
      for (int i = 0; i <= cfg.order; ++i) c[i] += ld.a[static_cast<size_t>(i)];
      for (int i = 0; i <= cfg.order; ++i) c[i + 1] -= cfg.preemphasis * ld.a[static_cast<size_t>(i)];
    } else {
      std::copy(ld.a.begin(), ld.a.end(), c);
    }
    env.gain[static_cast<size_t>(k)] = std::sqrt(std::max(0.0, ld.error) / window_energy);
  }
  return env;
}

AudioSignal inverse_filter(const AudioSignal& signal, const EnvelopeTrack& env) {
  const int n = signal.size();
  if (env.num_frames() == 0) throw std::invalid_argument("inverse_filter: empty envelope");
  if (env.coverage() + env.frame_hop < n)
    throw std::invalid_argument("inverse_filter: envelope does not cover signal");

  AudioSignal out;
  out.sample_rate = signal.sample_rate;
  out.samples.assign(static_cast<size_t>(n), 0.0);
  const int P = env.num_coeffs - 1;
  const double* x = signal.samples.data();
  for (int i = 0; i < n; ++i) {
    const double* c = env.frame(env.frame_for_sample(i));
    double acc = 0.0;
    const int jmax = std::min(P, i);
    for (int j = 0; j <= jmax; ++j) acc += c[j] * x[i - j];
    out.samples[static_cast<size_t>(i)] = acc;
  }
  return out;
}

AudioSignal synthesis_filter(const AudioSignal& excitation, const EnvelopeTrack& env,
                             bool apply_gain) {
  const int n = excitation.size();
  if (env.num_frames() == 0) throw std::invalid_argument("synthesis_filter: empty envelope");
  for (int k = 0; k < env.num_frames(); ++k) {
    if (!dsp::is_min_phase(std::span<const double>(env.frame(k), static_cast<size_t>(env.num_coeffs))))
      throw std::runtime_error("unstable envelope at frame " + std::to_string(k));
  }

  AudioSignal out;
  out.sample_rate = excitation.sample_rate;
  out.samples.assign(static_cast<size_t>(n), 0.0);
  const int P = env.num_coeffs - 1;
  double* y = out.samples.data();
  for (int i = 0; i < n; ++i) {
    const int k = env.frame_for_sample(i);
    const double* c = env.frame(k);
    const double g = apply_gain ? env.gain[static_cast<size_t>(k)] : 1.0;
    double acc = g * excitation.samples[static_cast<size_t>(i)];
    const int jmax = std::min(P, i);
    for (int j = 1; j <= jmax; ++j) acc -= c[j] * y[i - j];
    y[i] = acc;
  }
  return out;
}

}  // namespace dsm
