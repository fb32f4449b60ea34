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

#ifndef DSM_FRAMES_HPP
#define DSM_FRAMES_HPP

#include <string>
#include <vector>

#include "dsm/audio.hpp"
#include "dsm/gci.hpp"
#include "dsm/pitch.hpp"

namespace dsm {

// Dense row-major frame matrix (n frames of length m).
struct FrameMatrix {
  int n = 0;
  int m = 0;
  std::vector<double> data;  // n x m

  double* row(int i) { return data.data() + static_cast<size_t>(i) * m; }
  const double* row(int i) const { return data.data() + static_cast<size_t>(i) * m; }
};

// GCI-centered, Blackman-windowed, two-period residual frames before
// pitch/energy normalization, plus the bookkeeping counters
// (frames.size() == gcis_in - dropped_edges - skipped_no_period).
struct RawFrameSet {
  std::vector<std::vector<double>> frames;  // each of length 2 * t0
  std::vector<int> t0;                      // local period per frame (samples)
  std::vector<int> source_ids;              // filled by corpus pooling
  int gcis_in = 0;
  int dropped_edges = 0;
  int skipped_no_period = 0;
};

// One frame per GCI with a valid local period (distance to the nearest
// neighboring GCI, clamped to the pitch search range). Frames that would
// overlap the signal edges are dropped and counted.
RawFrameSet extract_frames(const AudioSignal& residual, const GciSequence& gcis,
                           const PitchTrack& pitch);

// Pitch- and energy-normalized dataset: every row has length
// m = round(2 * sample_rate / f0_star) and unit energy, GCI at index m/2.
struct ResidualFrameSet {
  FrameMatrix frames;
  double f0_star = 0.0;
  double fm = 0.0;
  int sample_rate = 0;
  std::vector<int> source_ids;             // per row
  std::vector<std::string> source_names;   // id -> tag
  int skipped_zero_energy = 0;

  int n() const { return frames.n; }
  int m() const { return frames.m; }
  const double* row(int i) const { return frames.row(i); }
  // Subset of the first k rows (convergence experiments).
  ResidualFrameSet prefix(int k) const;
};

// Resamples every raw frame to the common length and scales it to unit
// energy. Throws "pitch normalization constraint violated" when the
// (f0_star, fm, sample_rate, f0_min) combination fails the feasibility
// bound, and drops zero-energy frames with a counter.
ResidualFrameSet normalize_frames(const RawFrameSet& raw, double f0_star, double fm,
                                  int sample_rate, double f0_min);

}  // namespace dsm

#endif  // DSM_FRAMES_HPP
