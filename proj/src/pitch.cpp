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

#include "dsm/pitch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dsm/dsp.hpp"

namespace dsm {

namespace {

// Within-frame normalized autocorrelation at a given lag.
double norm_autocorr(const double* x, int w, int lag) {
  const int n = w - lag;
  if (n <= 0) return 0.0;
  double num = 0.0, e0 = 0.0, e1 = 0.0;
  for (int i = 0; i < n; ++i) {
    num += x[i] * x[i + lag];
    e0 += x[i] * x[i];
    e1 += x[i + lag] * x[i + lag];
  }
  const double denom = std::sqrt(e0 * e1);
  return denom > 0.0 ? num / denom : 0.0;
}

// Parabolic refinement of a peak at integer lag given neighbor values.
double refine_peak(double lag, double ym1, double y0, double yp1) {
  const double denom = ym1 - 2.0 * y0 + yp1;
  if (std::abs(denom) < 1e-12) return lag;
  const double delta = 0.5 * (ym1 - yp1) / denom;
  return lag + std::clamp(delta, -0.5, 0.5);
}

}  // namespace

int PitchTrack::frame_for_sample(int n) const {
  if (frame_hop <= 0 || f0.empty()) return 0;
  return std::clamp(n / frame_hop, 0, num_frames() - 1);
}

bool PitchTrack::voiced_at_sample(int n) const {
  if (f0.empty()) return false;
  return voiced[static_cast<size_t>(frame_for_sample(n))] != 0;
}

double PitchTrack::f0_at_sample(int n) const {
  if (f0.empty() || frame_hop <= 0) return 0.0;
  const int k = frame_for_sample(n);
  if (!voiced[static_cast<size_t>(k)]) return 0.0;
  const int k2 = std::min(k + 1, num_frames() - 1);
  if (k2 == k || !voiced[static_cast<size_t>(k2)]) return f0[static_cast<size_t>(k)];
  const double frac = static_cast<double>(n - k * frame_hop) / frame_hop;
  return f0[static_cast<size_t>(k)] +
         frac * (f0[static_cast<size_t>(k2)] - f0[static_cast<size_t>(k)]);
}

PitchTrack estimate_pitch(const AudioSignal& signal, const PitchConfig& cfg) {
  if (cfg.f0_min <= 0.0 || cfg.f0_min >= cfg.f0_max)
    throw std::invalid_argument("estimate_pitch: need 0 < f0_min < f0_max");
  const int sr = signal.sample_rate;
  const int win = std::max(8, static_cast<int>(std::lround(cfg.window_sec * sr)));
  const int hop = std::max(1, static_cast<int>(std::lround(cfg.hop_sec * sr)));
  const int n = signal.size();
  if (n < win) throw std::invalid_argument("insufficient samples");

  const int lag_min = std::max(2, static_cast<int>(std::floor(sr / cfg.f0_max)));
  const int lag_max = std::min(win - 4, static_cast<int>(std::ceil(sr / cfg.f0_min)));
  if (lag_max <= lag_min)
    throw std::invalid_argument("estimate_pitch: window too short for f0_min");

  PitchTrack track;
  track.frame_hop = hop;
  track.f0_min = cfg.f0_min;
  track.f0_max = cfg.f0_max;

  const int num_frames = (n - win) / hop + 1;
  track.f0.assign(static_cast<size_t>(num_frames), 0.0);
  track.voiced.assign(static_cast<size_t>(num_frames), 0);

  std::vector<double> r(static_cast<size_t>(lag_max) + 2, 0.0);
  for (int k = 0; k < num_frames; ++k) {
    const double* x = signal.samples.data() + static_cast<size_t>(k) * hop;
    double energy = 0.0;
    for (int i = 0; i < win; ++i) energy += x[i] * x[i];
    if (energy < 1e-12) continue;  // silence stays unvoiced

    for (int lag = lag_min - 1; lag <= lag_max + 1; ++lag)
      r[static_cast<size_t>(lag)] = (lag >= 1) ? norm_autocorr(x, win, lag) : 0.0;

    double best = -1.0;
    for (int lag = lag_min; lag <= lag_max; ++lag)
      best = std::max(best, r[static_cast<size_t>(lag)]);
    if (best < cfg.voicing_threshold) continue;

    // Prefer the smallest-lag local maximum close to the global peak;
    // this suppresses subharmonic (octave-down) picks.
    int pick = -1;
    for (int lag = lag_min; lag <= lag_max; ++lag) {
      const double v = r[static_cast<size_t>(lag)];
      if (v >= 0.9 * best && v >= r[static_cast<size_t>(lag) - 1] &&
          v >= r[static_cast<size_t>(lag) + 1]) {
        pick = lag;
        break;
      }
    }
    if (pick < 0) continue;

    const double lag_refined =
        refine_peak(pick, r[static_cast<size_t>(pick) - 1], r[static_cast<size_t>(pick)],
                    r[static_cast<size_t>(pick) + 1]);
    const double f0 = std::clamp(sr / lag_refined, cfg.f0_min, cfg.f0_max);
    track.f0[static_cast<size_t>(k)] = f0;
    track.voiced[static_cast<size_t>(k)] = 1;
  }

  // Median smoothing over voiced frames only (octave-error cleanup).
  if (cfg.median_window > 1) {
    std::vector<int> voiced_idx;
    std::vector<double> voiced_f0;
    for (int k = 0; k < num_frames; ++k) {
      if (track.voiced[static_cast<size_t>(k)]) {
        voiced_idx.push_back(k);
        voiced_f0.push_back(track.f0[static_cast<size_t>(k)]);
      }
    }
    const auto smoothed = dsp::median_filter(voiced_f0, cfg.median_window);
    for (size_t i = 0; i < voiced_idx.size(); ++i)
      track.f0[static_cast<size_t>(voiced_idx[i])] =
          std::clamp(smoothed[i], cfg.f0_min, cfg.f0_max);
  }

  return track;
}

}  // namespace dsm
