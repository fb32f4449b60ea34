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

#ifndef DSM_PITCH_HPP
#define DSM_PITCH_HPP

#include <cstdint>
#include <vector>

#include "dsm/audio.hpp"

namespace dsm {

struct PitchConfig {
  double f0_min = 60.0;   // Hz
  double f0_max = 400.0;  // Hz
  double window_sec = 0.030;
  double hop_sec = 0.010;
  double voicing_threshold = 0.3;  // on the normalized autocorrelation peak
  int median_window = 5;           // frames
};

// Frame-rate pitch track. f0[k] > 0 iff voiced[k]; unvoiced frames carry 0.
struct PitchTrack {
  int frame_hop = 0;  // samples between frame starts
  std::vector<double> f0;
  std::vector<std::uint8_t> voiced;
  // Search range the track was produced with; consumers use it to clamp
  // period estimates.
  double f0_min = 60.0;
  double f0_max = 400.0;

  int num_frames() const { return static_cast<int>(f0.size()); }
  int frame_for_sample(int n) const;
  bool voiced_at_sample(int n) const;
  // Linear interpolation of f0 between frame starts; 0 in unvoiced frames.
  double f0_at_sample(int n) const;
};

// Normalized-autocorrelation pitch with a voicing threshold on the peak
// and median smoothing of voiced f0 values.
// Throws std::invalid_argument("insufficient samples") when the signal is
// shorter than one analysis window.
PitchTrack estimate_pitch(const AudioSignal& signal, const PitchConfig& cfg);

}  // namespace dsm

#endif  // DSM_PITCH_HPP
