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

#include "dsm/frames.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dsm/deterministic.hpp"
#include "dsm/dsp.hpp"

namespace dsm {

RawFrameSet extract_frames(const AudioSignal& residual, const GciSequence& gcis,
                           const PitchTrack& pitch) {
  RawFrameSet out;
  const int n = residual.size();
  const int sr = residual.sample_rate;
  const int count = gcis.size();
  out.gcis_in = count;

  const int t_min = std::max(2, static_cast<int>(std::lround(sr / pitch.f0_max)));
  const int t_max = std::max(t_min + 1, static_cast<int>(std::lround(sr / pitch.f0_min)));

  for (int i = 0; i < count; ++i) {
    const int g = gcis.positions[static_cast<size_t>(i)];
    int dist = 0;
    if (i > 0) dist = g - gcis.positions[static_cast<size_t>(i) - 1];
    if (i + 1 < count) {
      const int d2 = gcis.positions[static_cast<size_t>(i) + 1] - g;
      dist = dist > 0 ? std::min(dist, d2) : d2;
    }
    if (dist <= 0) {  // isolated GCI, no local period
      ++out.skipped_no_period;
      continue;
    }
    const int t0 = std::clamp(dist, t_min, t_max);
    if (g - t0 < 0 || g + t0 > n) {
      ++out.dropped_edges;
      continue;
    }
    const auto w = dsp::blackman_periodic(2 * t0);
    std::vector<double> frame(static_cast<size_t>(2 * t0));
    for (int j = 0; j < 2 * t0; ++j)
      frame[static_cast<size_t>(j)] =
          residual.samples[static_cast<size_t>(g - t0 + j)] * w[static_cast<size_t>(j)];
    out.frames.push_back(std::move(frame));
    out.t0.push_back(t0);
  }
  out.source_ids.assign(out.frames.size(), 0);
  return out;
}

ResidualFrameSet normalize_frames(const RawFrameSet& raw, double f0_star, double fm,
                                  int sample_rate, double f0_min) {
  PitchConstraint c;
  c.f0_star = f0_star;
  c.fm = fm;
  c.f_nyquist = sample_rate / 2.0;
  c.f0_min = f0_min;
  if (!validate_pitch_constraint(c))
    throw std::runtime_error("pitch normalization constraint violated: f0_star=" +
                             std::to_string(f0_star) + " exceeds (f_nyquist/fm)*f0_min=" +
                             std::to_string(c.f_nyquist / fm * f0_min));

  const int m = static_cast<int>(std::lround(2.0 * sample_rate / f0_star));
  ResidualFrameSet out;
  out.f0_star = f0_star;
  out.fm = fm;
  out.sample_rate = sample_rate;
  out.frames.m = m;

  for (size_t i = 0; i < raw.frames.size(); ++i) {
    auto row = dsp::resample_to(raw.frames[i], m);
    double energy = 0.0;
    for (double v : row) energy += v * v;
    if (energy <= 0.0) {
      ++out.skipped_zero_energy;
      continue;
    }
    const double scale = 1.0 / std::sqrt(energy);
    for (double& v : row) v *= scale;
    out.frames.data.insert(out.frames.data.end(), row.begin(), row.end());
    out.source_ids.push_back(i < raw.source_ids.size() ? raw.source_ids[i] : 0);
    ++out.frames.n;
  }
  return out;
}

ResidualFrameSet ResidualFrameSet::prefix(int k) const {
  if (k > n()) throw std::invalid_argument("prefix: size exceeds frame count");
  ResidualFrameSet out;
  out.f0_star = f0_star;
  out.fm = fm;
  out.sample_rate = sample_rate;
  out.frames.n = k;
  out.frames.m = m();
  out.frames.data.assign(frames.data.begin(),
                         frames.data.begin() + static_cast<size_t>(k) * m());
  out.source_ids.assign(source_ids.begin(), source_ids.begin() + k);
  out.source_names = source_names;
  return out;
}

}  // namespace dsm
