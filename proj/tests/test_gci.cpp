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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "dsm/gci.hpp"
#include "dsm/pitch.hpp"
#include "support/testutil.hpp"

using namespace dsm;

namespace {

// Synthetic voiced speech: negative impulse train through a fixed
// all-pole filter. True excitation instants are known by construction.
struct SyntheticVoice {
  AudioSignal audio;
  std::vector<int> true_gcis;
};

SyntheticVoice make_voice(const std::vector<int>& periods, int sr = 16000) {
  SyntheticVoice v;
  const auto train = testutil::make_impulse_train(sr, periods, -1.0, 400);
  int pos = 400;
  for (int p : periods) {
    v.true_gcis.push_back(pos);
    pos += p;
  }
  const auto vt = testutil::vocal_tract_coeffs(sr);
  v.audio.sample_rate = sr;
  v.audio.samples = testutil::all_pole_filter(train.samples, vt, 1.0);
  return v;
}

}  // namespace

TEST_CASE("impulse train at period 160: one GCI per period within 0.25 ms") {
  const int sr = 16000;
  const std::vector<int> periods(60, 160);
  const SyntheticVoice v = make_voice(periods);
  const PitchTrack pitch = estimate_pitch(v.audio, PitchConfig{});
  const GciSequence gcis = detect_gci(v.audio, pitch);

  // Count detections within the tolerance of each true instant.
  const int tol = sr / 4000;  // 0.25 ms
  int hits = 0;
  for (int truth : v.true_gcis) {
    for (int g : gcis.positions) {
      if (std::abs(g - truth) <= tol) {
        ++hits;
        break;
      }
    }
  }
  // Ignore the first/last instants that sit under voicing ramps.
  CHECK(hits >= static_cast<int>(0.95 * (v.true_gcis.size() - 2)));
  CHECK(std::abs(static_cast<int>(gcis.positions.size()) -
                 static_cast<int>(v.true_gcis.size())) <= 3);

  // Strictly increasing positions.
  for (size_t i = 1; i < gcis.positions.size(); ++i)
    CHECK(gcis.positions[i] > gcis.positions[i - 1]);
}

TEST_CASE("fully unvoiced input yields an empty sequence") {
  const auto sig = testutil::make_white_noise(16000, 0.8, 5);
  PitchTrack pitch = estimate_pitch(sig, PitchConfig{});
  std::fill(pitch.voiced.begin(), pitch.voiced.end(), 0);
  std::fill(pitch.f0.begin(), pitch.f0.end(), 0.0);
  const GciSequence gcis = detect_gci(sig, pitch);
  CHECK(gcis.empty());
}

TEST_CASE("drifting period 160 to 200 is followed") {
  std::vector<int> periods;
  for (int i = 0; i <= 40; ++i) periods.push_back(160 + i);
  const SyntheticVoice v = make_voice(periods);
  const PitchTrack pitch = estimate_pitch(v.audio, PitchConfig{});
  const GciSequence gcis = detect_gci(v.audio, pitch);

  REQUIRE(static_cast<int>(gcis.positions.size()) >=
          static_cast<int>(v.true_gcis.size()) - 3);
  CHECK(std::abs(static_cast<int>(gcis.positions.size()) -
                 static_cast<int>(v.true_gcis.size())) <= 3);

  // Spacing drifts monotonically (allowing +-2 samples of jitter).
  std::vector<int> spacing;
  for (size_t i = 1; i < gcis.positions.size(); ++i)
    spacing.push_back(gcis.positions[i] - gcis.positions[i - 1]);
  CHECK(spacing.front() < spacing.back());
  for (size_t i = 1; i < spacing.size(); ++i) CHECK(spacing[i] + 2 >= spacing[i - 1]);
}

TEST_CASE("every GCI lies in a voiced region") {
  const std::vector<int> periods(50, 170);
  const SyntheticVoice v = make_voice(periods);
  const PitchTrack pitch = estimate_pitch(v.audio, PitchConfig{});
  const GciSequence gcis = detect_gci(v.audio, pitch);
  REQUIRE_FALSE(gcis.empty());
  for (int g : gcis.positions) CHECK(pitch.voiced_at_sample(g));
}
