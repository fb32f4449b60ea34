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

#ifndef DSM_AUDIO_HPP
#define DSM_AUDIO_HPP

#include <string>
#include <vector>

namespace dsm {

// Mono sample sequence plus its sample rate. Amplitudes are nominally
// in [-1, 1]; sample_rate must be positive.
struct AudioSignal {
  std::vector<double> samples;
  int sample_rate = 0;

  int size() const { return static_cast<int>(samples.size()); }
  double duration_sec() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

// Reads a mono WAV file (PCM 16-bit or IEEE float 32-bit).
// Throws std::runtime_error on malformed files or non-mono content.
AudioSignal read_wav(const std::string& path);

// Writes PCM 16-bit mono. Samples are clamped to [-1, 1]. The write is
// atomic (temp file + rename).
void write_wav(const std::string& path, const AudioSignal& audio);

}  // namespace dsm

#endif  // DSM_AUDIO_HPP
