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

#ifndef DSM_PIPELINE_HPP
#define DSM_PIPELINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dsm/envelope.hpp"
#include "dsm/frames.hpp"
#include "dsm/gci.hpp"
#include "dsm/pitch.hpp"

namespace dsm {

// Everything a training or signature run needs to know.
struct TrainConfig {
  double f0_star = 100.0;  // Hz
  double fm = 4000.0;      // Hz
  PitchConfig pitch;       // carries f0_min / f0_max
  int lp_order = 0;        // 0 = pick by sample rate
  int noise_order = 12;
  int k_det = 1;
  int min_frames = 1000;   // warn (not fail) below this
  std::uint64_t seed = 0;
  double preemphasis = 0.97;

  EnvelopeConfig envelope_config(int sample_rate) const {
    EnvelopeConfig cfg;
    cfg.order = lp_order > 0 ? lp_order : EnvelopeConfig::default_order(sample_rate);
    cfg.preemphasis = preemphasis;
    return cfg;
  }
};

// Per-utterance analysis products (kept for CSV debugging exports).
struct UtteranceAnalysis {
  PitchTrack pitch;
  GciSequence gcis;
  EnvelopeTrack envelope;
  AudioSignal residual;
  RawFrameSet raw;
};

UtteranceAnalysis analyze_utterance(const AudioSignal& signal, const TrainConfig& cfg);

struct CollectStats {
  int gcis_in = 0;
  int dropped_edges = 0;
  int skipped_no_period = 0;
  int skipped_zero_energy = 0;
};

// Full analysis of a corpus pooled into one normalized frame set, with
// per-frame source ids set to the utterance index.
ResidualFrameSet collect_frames(const std::vector<AudioSignal>& corpus,
                                const std::vector<std::string>& names, const TrainConfig& cfg,
                                CollectStats* stats = nullptr);

}  // namespace dsm

#endif  // DSM_PIPELINE_HPP
