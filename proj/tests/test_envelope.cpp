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

#include "dsm/dsp.hpp"
#include "dsm/envelope.hpp"
#include "support/testutil.hpp"

using namespace dsm;

TEST_CASE("order-10 fit recovers a known all-pole generator") {
  const int sr = 16000;
  // Stable random-ish AR(10) built from reflection coefficients.
  std::vector<double> a = {1.0};
  const std::vector<double> ks = {-0.5, 0.3, -0.2, 0.25, -0.15, 0.1, -0.12, 0.08, -0.05, 0.04};
  for (double k : ks) {
    std::vector<double> next(a.size() + 1, 0.0);
    for (size_t j = 0; j < a.size(); ++j) next[j] += a[j];
    for (size_t j = 0; j < a.size(); ++j) next[a.size() - j] += k * a[j];
    a = next;
  }
  REQUIRE(dsp::is_min_phase(a));

  auto noise = testutil::make_white_noise(sr, 20.0, 77, 1.0);
  AudioSignal sig;
  sig.sample_rate = sr;
  sig.samples = testutil::all_pole_filter(noise.samples, a, 1.0);

  EnvelopeConfig cfg;
  cfg.order = 10;
  cfg.preemphasis = 0.0;  // exact generator recovery
  cfg.window_sec = 30.0;  // one window over the whole signal
  cfg.hop_sec = 10.0;
  const EnvelopeTrack env = fit_envelope(sig, cfg);
  REQUIRE(env.num_frames() >= 1);
  const int k = 0;
  for (int j = 1; j <= 10; ++j)
    CHECK(env.frame(k)[j] == doctest::Approx(a[static_cast<size_t>(j)])
                                 .epsilon(0.05)
                                 .scale(std::max(0.05, std::abs(a[static_cast<size_t>(j)]))));
}

TEST_CASE("all-zero signal gives identity envelope with zero gain") {
  AudioSignal sig;
  sig.sample_rate = 16000;
  sig.samples.assign(8000, 0.0);
  const EnvelopeTrack env = fit_envelope(sig, EnvelopeConfig{});
  for (int k = 0; k < env.num_frames(); ++k) {
    CHECK(env.gain[k] == 0.0);
    CHECK(env.frame(k)[0] == 1.0);
    for (int j = 1; j < env.num_coeffs; ++j) CHECK(env.frame(k)[j] == 0.0);
  }
}

TEST_CASE("fitted envelope peaks at the sine frequency") {
  const auto sig = testutil::make_sine(16000, 100.0, 1.0);
  EnvelopeConfig cfg;
  cfg.order = 24;
  const EnvelopeTrack env = fit_envelope(sig, cfg);
  const int k = env.num_frames() / 2;
  const int nfft = 8192;
  const auto mag = dsp::all_pole_magnitude(
      std::span<const double>(env.frame(k), static_cast<size_t>(env.num_coeffs)), 1.0, nfft);
  int argmax = 1;
  for (int i = 1; i < nfft / 2; ++i)
    if (mag[static_cast<size_t>(i)] > mag[static_cast<size_t>(argmax)]) argmax = i;
  const double peak_hz = static_cast<double>(argmax) * 16000 / nfft;
  CHECK(std::abs(peak_hz - 100.0) < 10.0);
}

TEST_CASE("inverse filtering the exact synthesis recovers the excitation") {
  // impulse-train * known all-pole, deconvolved with that envelope.
  const int sr = 16000;
  const std::vector<int> periods(40, 160);
  const auto train = testutil::make_impulse_train(sr, periods, -1.0, 200);
  const auto vt = testutil::vocal_tract_coeffs(sr);
  AudioSignal speech;
  speech.sample_rate = sr;
  speech.samples = testutil::all_pole_filter(train.samples, vt, 1.0);

  const EnvelopeTrack env = testutil::constant_envelope(vt, 1.0, speech.size());
  const AudioSignal resid = inverse_filter(speech, env);

  // Cross-correlation against the true excitation peaks at zero shift.
  double num = 0.0, ea = 0.0, eb = 0.0;
  for (int i = 0; i < speech.size(); ++i) {
    num += resid.samples[static_cast<size_t>(i)] * train.samples[static_cast<size_t>(i)];
    ea += resid.samples[static_cast<size_t>(i)] * resid.samples[static_cast<size_t>(i)];
    eb += train.samples[static_cast<size_t>(i)] * train.samples[static_cast<size_t>(i)];
  }
  CHECK(num / std::sqrt(ea * eb) > 0.9);
}

TEST_CASE("identity envelope passes white noise through unchanged") {
  const auto noise = testutil::make_white_noise(16000, 0.5, 9);
  const std::vector<double> ident = {1.0};
  const EnvelopeTrack env = testutil::constant_envelope(ident, 1.0, noise.size());
  const AudioSignal out = inverse_filter(noise, env);
  for (int i = 0; i < noise.size(); ++i)
    CHECK(out.samples[static_cast<size_t>(i)] == noise.samples[static_cast<size_t>(i)]);
}

TEST_CASE("residual of a sine is flatter than the sine") {
  const auto sig = testutil::make_sine(16000, 150.0, 1.0);
  EnvelopeConfig cfg;
  const EnvelopeTrack env = fit_envelope(sig, cfg);
  const AudioSignal resid = inverse_filter(sig, env);
  const double flat_in = testutil::spectral_flatness(sig.samples);
  const double flat_out = testutil::spectral_flatness(resid.samples);
  CHECK(flat_out >= 2.0 * flat_in);
}

TEST_CASE("inverse then synthesis filter is the exact identity") {
  const auto sig = testutil::make_white_noise(16000, 1.0, 31);
  EnvelopeConfig cfg;  // default preemphasis folded into coefficients
  const EnvelopeTrack env = fit_envelope(sig, cfg);
  const AudioSignal resid = inverse_filter(sig, env);
  const AudioSignal back = synthesis_filter(resid, env, /*apply_gain=*/false);
  double err = 0.0;
  for (int i = 0; i < sig.size(); ++i) {
    const double d = back.samples[static_cast<size_t>(i)] - sig.samples[static_cast<size_t>(i)];
    err += d * d;
  }
  CHECK(std::sqrt(err / sig.size()) < 1e-6);
}

TEST_CASE("unstable envelope frame is reported by index") {
  const std::vector<double> bad = {1.0, -1.7};
  const EnvelopeTrack env = testutil::constant_envelope(bad, 1.0, 100);
  AudioSignal x;
  x.sample_rate = 16000;
  x.samples.assign(100, 0.1);
  CHECK_THROWS_WITH_AS(synthesis_filter(x, env, true), doctest::Contains("unstable envelope"),
                       std::runtime_error);
}
