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

#include "dsm/gci.hpp"

#include <algorithm>
#include <cmath>

#include "dsm/dsp.hpp"
#include "dsm/envelope.hpp"

namespace dsm {

namespace {

// Clamped local pitch period (samples) at position n.
int local_period(const PitchTrack& pitch, int sr, int n) {
  const int t_min = std::max(2, static_cast<int>(std::lround(sr / pitch.f0_max)));
  const int t_max = std::max(t_min + 1, static_cast<int>(std::lround(sr / pitch.f0_min)));
  const double f0 = pitch.f0_at_sample(n);
  if (f0 <= 0.0) return t_max;
  return std::clamp(static_cast<int>(std::lround(sr / f0)), t_min, t_max);
}

}  // namespace

GciSequence detect_gci(const AudioSignal& signal, const PitchTrack& pitch) {
  GciSequence out;
  const int n = signal.size();
  const int sr = signal.sample_rate;
  if (n == 0 || pitch.num_frames() == 0) return out;

  double f0_sum = 0.0;
  int voiced_count = 0;
  for (int k = 0; k < pitch.num_frames(); ++k) {
    if (pitch.voiced[static_cast<size_t>(k)]) {
      f0_sum += pitch.f0[static_cast<size_t>(k)];
      ++voiced_count;
    }
  }
  if (voiced_count == 0) return out;
  const double mean_t0 = sr / (f0_sum / voiced_count);

  // Low-order LP residual keeps the per-cycle discontinuity sharp.
  EnvelopeConfig env_cfg;
  env_cfg.order = sr / 1000 + 2;
  env_cfg.preemphasis = 0.0;
  env_cfg.window_sec = 0.025;
  env_cfg.hop_sec = 0.005;
  const AudioSignal residual = inverse_filter(signal, fit_envelope(signal, env_cfg));

  // Mean-based signal: sliding Blackman mean over 1.75 mean periods.
  int mbs_len = static_cast<int>(std::lround(1.75 * mean_t0));
  if (mbs_len % 2 == 0) ++mbs_len;
  mbs_len = std::max(mbs_len, 5);
  auto w = dsp::blackman(mbs_len);
  double wsum = 0.0;
  for (double v : w) wsum += v;
  for (double& v : w) v /= wsum;
  const auto mbs = dsp::convolve_same(signal.samples, w);

  // One local MBS minimum per glottal cycle, voiced regions only.
  std::vector<int> minima;
  for (int i = 1; i + 1 < n; ++i) {
    if (!(mbs[static_cast<size_t>(i)] < mbs[static_cast<size_t>(i) - 1] &&
          mbs[static_cast<size_t>(i)] <= mbs[static_cast<size_t>(i) + 1]))
      continue;
    if (!pitch.voiced_at_sample(i)) continue;
    const int t0 = local_period(pitch, sr, i);
    if (!minima.empty() && i - minima.back() < t0 / 2) {
      if (mbs[static_cast<size_t>(i)] < mbs[static_cast<size_t>(minima.back())])
        minima.back() = i;
      continue;
    }
    minima.push_back(i);
  }

  // Strongest negative residual peak inside each per-cycle interval.
  std::vector<int> gcis;
  for (int m : minima) {
    const int t0 = local_period(pitch, sr, m);
    const int radius = static_cast<int>(std::lround(0.4 * t0));
    const int lo = std::max(0, m - radius);
    const int hi = std::min(n - 1, m + radius);
    int best = lo;
    for (int i = lo; i <= hi; ++i) {
      if (residual.samples[static_cast<size_t>(i)] < residual.samples[static_cast<size_t>(best)])
        best = i;
    }
    if (!pitch.voiced_at_sample(best)) continue;
    gcis.push_back(best);
  }

  std::sort(gcis.begin(), gcis.end());
  gcis.erase(std::unique(gcis.begin(), gcis.end()), gcis.end());

  // Enforce one GCI per period: merge pairs closer than ~half a period.
  std::vector<int> kept;
  for (int g : gcis) {
    if (!kept.empty()) {
      const int t0 = local_period(pitch, sr, g);
      if (g - kept.back() < std::max(2, static_cast<int>(std::lround(0.45 * t0)))) {
        if (residual.samples[static_cast<size_t>(g)] <
            residual.samples[static_cast<size_t>(kept.back())])
          kept.back() = g;
        continue;
      }
    }
    kept.push_back(g);
  }

  out.positions = std::move(kept);
  return out;
}

}  // namespace dsm
