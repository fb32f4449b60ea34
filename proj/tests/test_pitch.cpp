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

#include "dsm/pitch.hpp"
#include "support/testutil.hpp"

using namespace dsm;

TEST_CASE("pure 200 Hz sine tracks within 2 Hz everywhere") {
  const auto sig = testutil::make_sine(16000, 200.0, 1.0);
  // Oracle: zero-crossing count confirms the true frequency.
  CHECK(testutil::zero_crossing_f0(sig) == doctest::Approx(200.0).epsilon(0.005));

  const PitchTrack track = estimate_pitch(sig, PitchConfig{});
  REQUIRE(track.num_frames() > 50);
  for (int k = 0; k < track.num_frames(); ++k) {
    CHECK(track.voiced[k] == 1);
    CHECK(std::abs(track.f0[k] - 200.0) < 2.0);
  }
}

TEST_CASE("white noise is mostly unvoiced") {
  const auto sig = testutil::make_white_noise(16000, 1.0, 2024);
  const PitchTrack track = estimate_pitch(sig, PitchConfig{});
  int unvoiced = 0;
  for (int k = 0; k < track.num_frames(); ++k)
    if (!track.voiced[k]) ++unvoiced;
  CHECK(unvoiced >= static_cast<int>(0.9 * track.num_frames()));
}

TEST_CASE("silence is fully unvoiced with f0 = 0") {
  AudioSignal sig;
  sig.sample_rate = 16000;
  sig.samples.assign(16000, 0.0);
  const PitchTrack track = estimate_pitch(sig, PitchConfig{});
  for (int k = 0; k < track.num_frames(); ++k) {
    CHECK(track.voiced[k] == 0);
    CHECK(track.f0[k] == 0.0);
  }
}

TEST_CASE("too-short input raises insufficient samples") {
  AudioSignal sig;
  sig.sample_rate = 16000;
  sig.samples.assign(100, 0.1);
  CHECK_THROWS_WITH_AS(estimate_pitch(sig, PitchConfig{}), "insufficient samples",
                       std::invalid_argument);
}

TEST_CASE("voiced f0 stays inside the configured range") {
  const auto sig = testutil::make_sine(16000, 395.0, 0.5);
  PitchConfig cfg;
  const PitchTrack track = estimate_pitch(sig, cfg);
  for (int k = 0; k < track.num_frames(); ++k) {
    if (!track.voiced[k]) continue;
    CHECK(track.f0[k] >= cfg.f0_min);
    CHECK(track.f0[k] <= cfg.f0_max);
  }
}

TEST_CASE("f0 interpolation between frames is linear and clamps to voiced") {
  PitchTrack track;
  track.frame_hop = 160;
  track.f0 = {100.0, 120.0, 0.0};
  track.voiced = {1, 1, 0};
  CHECK(track.f0_at_sample(0) == doctest::Approx(100.0));
  CHECK(track.f0_at_sample(80) == doctest::Approx(110.0));
  CHECK(track.f0_at_sample(160) == doctest::Approx(120.0));  // next frame unvoiced
  CHECK(track.f0_at_sample(400) == 0.0);
}
