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

#include "dsm/pipeline.hpp"

#include <stdexcept>

namespace dsm {

UtteranceAnalysis analyze_utterance(const AudioSignal& signal, const TrainConfig& cfg) {
  UtteranceAnalysis a;
  a.pitch = estimate_pitch(signal, cfg.pitch);
  a.envelope = fit_envelope(signal, cfg.envelope_config(signal.sample_rate));
  a.gcis = detect_gci(signal, a.pitch);
  a.residual = inverse_filter(signal, a.envelope);
  a.raw = extract_frames(a.residual, a.gcis, a.pitch);
  return a;
}

ResidualFrameSet collect_frames(const std::vector<AudioSignal>& corpus,
                                const std::vector<std::string>& names, const TrainConfig& cfg,
                                CollectStats* stats) {
  if (corpus.empty()) throw std::invalid_argument("collect_frames: empty corpus");
  const int sr = corpus.front().sample_rate;
  RawFrameSet pooled;
  for (size_t u = 0; u < corpus.size(); ++u) {
    if (corpus[u].sample_rate != sr)
      throw std::runtime_error("collect_frames: mixed sample rates in corpus");
    UtteranceAnalysis a = analyze_utterance(corpus[u], cfg);
    pooled.gcis_in += a.raw.gcis_in;
    pooled.dropped_edges += a.raw.dropped_edges;
    pooled.skipped_no_period += a.raw.skipped_no_period;
    for (size_t i = 0; i < a.raw.frames.size(); ++i) {
      pooled.frames.push_back(std::move(a.raw.frames[i]));
      pooled.t0.push_back(a.raw.t0[i]);
      pooled.source_ids.push_back(static_cast<int>(u));
    }
  }

  ResidualFrameSet frames =
      normalize_frames(pooled, cfg.f0_star, cfg.fm, sr, cfg.pitch.f0_min);
  frames.source_names = names;

  if (stats != nullptr) {
    stats->gcis_in = pooled.gcis_in;
    stats->dropped_edges = pooled.dropped_edges;
    stats->skipped_no_period = pooled.skipped_no_period;
    stats->skipped_zero_energy = frames.skipped_zero_energy;
  }
  return frames;
}

}  // namespace dsm
