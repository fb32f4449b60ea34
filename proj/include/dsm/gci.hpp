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

#ifndef DSM_GCI_HPP
#define DSM_GCI_HPP

#include <vector>

#include "dsm/audio.hpp"
#include "dsm/pitch.hpp"

namespace dsm {

// Strictly increasing glottal-closure-instant sample positions, all inside
// voiced regions of the pitch track they were detected with.
struct GciSequence {
  std::vector<int> positions;

  int size() const { return static_cast<int>(positions.size()); }
  bool empty() const { return positions.empty(); }
};

// Mean-based-signal GCI detector: a sliding Blackman mean (window
// 1.75 * mean pitch period) marks one search interval per glottal cycle;
// the GCI is the strongest negative peak of the low-order LP residual
// inside the interval. Fully unvoiced input yields an empty sequence.
GciSequence detect_gci(const AudioSignal& signal, const PitchTrack& pitch);

}  // namespace dsm

#endif  // DSM_GCI_HPP
