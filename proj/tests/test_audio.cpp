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
#include <cstdio>
#include <fstream>

#include "dsm/audio.hpp"
#include "support/testutil.hpp"

using namespace dsm;

namespace {
std::string temp_path(const std::string& name) { return "/tmp/dsm_audio_" + name; }
}  // namespace

TEST_CASE("wav round trip preserves samples to 16-bit precision") {
  const auto sig = testutil::make_sine(16000, 220.0, 0.25, 0.8);
  const std::string path = temp_path("roundtrip.wav");
  write_wav(path, sig);
  const AudioSignal back = read_wav(path);
  REQUIRE(back.sample_rate == 16000);
  REQUIRE(back.size() == sig.size());
  for (int i = 0; i < sig.size(); ++i)
    CHECK(std::abs(back.samples[i] - sig.samples[i]) < 1e-4);
  std::remove(path.c_str());
}

TEST_CASE("wav writes are byte-stable") {
  const auto sig = testutil::make_white_noise(8000, 0.1, 42);
  const std::string p1 = temp_path("det1.wav");
  const std::string p2 = temp_path("det2.wav");
  write_wav(p1, sig);
  write_wav(p2, sig);
  std::ifstream a(p1, std::ios::binary), b(p2, std::ios::binary);
  const std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  const std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(sa == sb);
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("stereo wav is rejected with an explicit error") {
  // Hand-build a 2-channel PCM16 header.
  const std::string path = temp_path("stereo.wav");
  {
    std::ofstream f(path, std::ios::binary);
    auto u32 = [&](uint32_t v) { f.write(reinterpret_cast<const char*>(&v), 4); };
    auto u16 = [&](uint16_t v) { f.write(reinterpret_cast<const char*>(&v), 2); };
    f.write("RIFF", 4);
    u32(36 + 8);
    f.write("WAVE", 4);
    f.write("fmt ", 4);
    u32(16);
    u16(1);
    u16(2);  // stereo
    u32(16000);
    u32(16000 * 4);
    u16(4);
    u16(16);
    f.write("data", 4);
    u32(8);
    u32(0);
    u32(0);
  }
  CHECK_THROWS_WITH_AS(read_wav(path), doctest::Contains("mono"), std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("garbage file is rejected") {
  const std::string path = temp_path("garbage.wav");
  {
    std::ofstream f(path, std::ios::binary);
    f << "this is not audio";
  }
  CHECK_THROWS_AS(read_wav(path), std::runtime_error);
  std::remove(path.c_str());
}
