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

#include "dsm/frames.hpp"
#include "support/testutil.hpp"

using namespace dsm;

namespace {

GciSequence gcis_at(const std::vector<int>& positions) {
  GciSequence g;
  g.positions = positions;
  return g;
}

}  // namespace

TEST_CASE("impulse-train residual frames peak at the center index") {
  const int sr = 16000;
  const std::vector<int> periods(20, 160);
  const auto residual = testutil::make_impulse_train(sr, periods, 1.0, 400);
  std::vector<int> positions;
  int pos = 400;
  for (int p : periods) {
    positions.push_back(pos);
    pos += p;
  }
  const auto pitch = testutil::constant_pitch(sr, 100.0, residual.size());
  const RawFrameSet raw = extract_frames(residual, gcis_at(positions), pitch);

  REQUIRE_FALSE(raw.frames.empty());
  for (size_t i = 0; i < raw.frames.size(); ++i) {
    CHECK(static_cast<int>(raw.frames[i].size()) == 2 * raw.t0[i]);
    CHECK(raw.t0[i] == 160);
    int argmax = 0;
    for (size_t j = 0; j < raw.frames[i].size(); ++j)
      if (std::abs(raw.frames[i][j]) > std::abs(raw.frames[i][static_cast<size_t>(argmax)]))
        argmax = static_cast<int>(j);
    CHECK(argmax == 160);
  }
}

TEST_CASE("frame overlapping the signal start is dropped") {
  AudioSignal residual;
  residual.sample_rate = 16000;
  residual.samples.assign(4000, 0.0);
  residual.samples[10] = 1.0;
  residual.samples[2000] = 1.0;
  const auto pitch = testutil::constant_pitch(16000, 160.0, residual.size());
  // T0 for the first GCI = distance to neighbor, clamped to <= sr/f0_min.
  const RawFrameSet raw = extract_frames(residual, gcis_at({10, 2000}), pitch);
  CHECK(raw.gcis_in == 2);
  CHECK(raw.dropped_edges >= 1);
  CHECK(raw.frames.size() + raw.dropped_edges + raw.skipped_no_period == 2);
}

TEST_CASE("single GCI has no local period and is skipped") {
  AudioSignal residual;
  residual.sample_rate = 16000;
  residual.samples.assign(4000, 0.0);
  residual.samples[2000] = 1.0;
  const auto pitch = testutil::constant_pitch(16000, 100.0, residual.size());
  const RawFrameSet raw = extract_frames(residual, gcis_at({2000}), pitch);
  CHECK(raw.frames.empty());
  CHECK(raw.skipped_no_period == 1);
}

TEST_CASE("frame count conservation over many GCIs") {
  const int sr = 16000;
  const auto noise = testutil::make_white_noise(sr, 11.0, 17);
  std::vector<int> positions;
  for (int g = 80; g + 80 < noise.size(); g += 160) positions.push_back(g);
  const auto pitch = testutil::constant_pitch(sr, 100.0, noise.size());
  const RawFrameSet raw = extract_frames(noise, gcis_at(positions), pitch);
  CHECK(static_cast<int>(raw.frames.size()) ==
        raw.gcis_in - raw.dropped_edges - raw.skipped_no_period);
  CHECK(raw.gcis_in == static_cast<int>(positions.size()));
  for (size_t i = 0; i < raw.frames.size(); ++i)
    CHECK(static_cast<int>(raw.frames[i].size()) == 2 * raw.t0[i]);
}

TEST_CASE("normalization to m=280 with the matching f0_star") {
  // f0_star chosen so round(2*16000/f0_star) = 280.
  const double f0_star = 2.0 * 16000 / 280.0;
  RawFrameSet raw;
  raw.gcis_in = 1;
  std::vector<double> frame(320);
  for (size_t i = 0; i < frame.size(); ++i)
    frame[i] = std::sin(2.0 * M_PI * 7.0 * static_cast<double>(i) / 320.0);
  raw.frames.push_back(frame);
  raw.t0.push_back(160);
  raw.source_ids.push_back(0);

  const ResidualFrameSet set = normalize_frames(raw, f0_star, 4000.0, 16000, 60.0);
  REQUIRE(set.n() == 1);
  CHECK(set.m() == 280);
  double energy = 0.0;
  for (int j = 0; j < set.m(); ++j) energy += set.row(0)[j] * set.row(0)[j];
  CHECK(energy == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("a frame already of length m is only rescaled") {
  RawFrameSet raw;
  raw.gcis_in = 1;
  std::vector<double> frame(320, 0.0);
  frame[160] = 2.0;  // energy 4
  raw.frames.push_back(frame);
  raw.t0.push_back(160);
  raw.source_ids.push_back(0);
  const ResidualFrameSet set = normalize_frames(raw, 100.0, 4000.0, 16000, 60.0);
  REQUIRE(set.n() == 1);
  REQUIRE(set.m() == 320);
  CHECK(set.row(0)[160] == doctest::Approx(1.0));
  for (int j = 0; j < 320; ++j)
    if (j != 160) CHECK(set.row(0)[j] == 0.0);
}

TEST_CASE("time-scaled copies normalize to the same row") {
  // Band-limited bump at two different lengths.
  auto bump = [](int len) {
    std::vector<double> f(static_cast<size_t>(len));
    for (int i = 0; i < len; ++i) {
      const double u = (i - len / 2.0) / (len / 8.0);
      f[static_cast<size_t>(i)] = std::exp(-0.5 * u * u);
    }
    return f;
  };
  RawFrameSet raw;
  raw.gcis_in = 2;
  raw.frames.push_back(bump(256));
  raw.frames.push_back(bump(320));
  raw.t0 = {128, 160};
  raw.source_ids = {0, 0};
  const ResidualFrameSet set = normalize_frames(raw, 100.0, 4000.0, 16000, 60.0);
  REQUIRE(set.n() == 2);
  double err = 0.0;
  for (int j = 0; j < set.m(); ++j) {
    const double d = set.row(0)[j] - set.row(1)[j];
    err += d * d;
  }
  CHECK(std::sqrt(err / set.m()) < 1e-3);
}

TEST_CASE("infeasible normalization pitch is refused") {
  RawFrameSet raw;
  raw.frames.push_back(std::vector<double>(320, 0.1));
  raw.t0.push_back(160);
  raw.source_ids.push_back(0);
  raw.gcis_in = 1;
  // Bound is (8000/6000)*100 = 133.3 Hz < 200 Hz.
  CHECK_THROWS_WITH_AS(normalize_frames(raw, 200.0, 6000.0, 16000, 100.0),
                       doctest::Contains("pitch normalization constraint violated"),
                       std::runtime_error);
}

TEST_CASE("zero-energy raw frames are dropped and counted") {
  RawFrameSet raw;
  raw.gcis_in = 2;
  raw.frames.push_back(std::vector<double>(320, 0.0));
  std::vector<double> ok(320, 0.0);
  ok[100] = 1.0;
  raw.frames.push_back(ok);
  raw.t0 = {160, 160};
  raw.source_ids = {0, 1};
  const ResidualFrameSet set = normalize_frames(raw, 100.0, 4000.0, 16000, 60.0);
  CHECK(set.n() == 1);
  CHECK(set.skipped_zero_energy == 1);
  CHECK(set.source_ids[0] == 1);
}
