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
#include <random>

#include "dsm/dsp.hpp"
#include "support/testutil.hpp"

using namespace dsm;

TEST_CASE("fft matches the naive DFT") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int n : {1, 2, 5, 8, 60, 128, 320}) {
    std::vector<std::complex<double>> x(static_cast<size_t>(n));
    for (auto& v : x) v = {gauss(rng), gauss(rng)};
    auto want = testutil::naive_dft(x, false);
    auto got = x;
    dsp::fft(got, false);
    for (int i = 0; i < n; ++i) CHECK(std::abs(got[i] - want[i]) < 1e-9 * (1 + std::abs(want[i])));

    auto back = got;
    dsp::fft(back, true);
    for (int i = 0; i < n; ++i) CHECK(std::abs(back[i] - x[i]) < 1e-9);
  }
}

TEST_CASE("windows have the expected peaks") {
  const auto wp = dsp::blackman_periodic(320);
  CHECK(wp[160] == doctest::Approx(1.0));
  CHECK(wp[0] == doctest::Approx(0.0).epsilon(1e-12));
  const auto ws = dsp::blackman(321);
  CHECK(ws[160] == doctest::Approx(1.0));
}

TEST_CASE("resampler fidelity on a band-limited tone") {
  // A mid-band sine, time-scaled: compare against its analytic form.
  const int n_in = 320;
  const int n_out = 280;
  const double cycles = 11.0;
  std::vector<double> x(n_in);
  for (int i = 0; i < n_in; ++i) x[i] = std::sin(2.0 * M_PI * cycles * i / n_in);
  const auto y = dsp::resample_to(x, n_out);
  double err = 0.0, ref = 0.0;
  for (int j = 20; j < n_out - 20; ++j) {  // interior (edges lack support)
    const double t = static_cast<double>(j) * n_in / n_out;
    const double want = std::sin(2.0 * M_PI * cycles * t / n_in);
    err += (y[j] - want) * (y[j] - want);
    ref += want * want;
  }
  CHECK(std::sqrt(err / ref) < 1e-3);
}

TEST_CASE("resampler keeps the center at the center") {
  std::vector<double> x(240, 0.0);
  x[120] = 1.0;
  const auto y = dsp::resample_to(x, 320);
  int argmax = 0;
  for (size_t i = 0; i < y.size(); ++i)
    if (y[i] > y[static_cast<size_t>(argmax)]) argmax = static_cast<int>(i);
  CHECK(argmax == 160);
}

TEST_CASE("butterworth highpass attenuates and passes as designed") {
  const int sr = 16000;
  const double fm = 4000.0;
  const auto sos = dsp::butterworth_highpass(8, fm, sr);

  auto tone_energy_ratio = [&](double freq) {
    std::vector<double> x(2048);
    for (size_t i = 0; i < x.size(); ++i)
      x[i] = std::sin(2.0 * M_PI * freq * static_cast<double>(i) / sr);
    const auto y = dsp::filtfilt(sos, x);
    double ein = 0.0, eout = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
      ein += x[i] * x[i];
      eout += y[i] * y[i];
    }
    return eout / ein;
  };
  CHECK(tone_energy_ratio(0.5 * fm) < 1e-4);
  CHECK(tone_energy_ratio(1.5 * fm) > 0.9);
}

TEST_CASE("levinson recovers a known AR model") {
  // AR(2) driven by white noise: r is known analytically via simulation.
  const std::vector<double> a_true = {1.0, -0.6, 0.2};
  std::mt19937_64 rng(99);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> x(200000);
  for (size_t i = 0; i < x.size(); ++i) {
    double v = gauss(rng);
    if (i >= 1) v -= a_true[1] * x[i - 1];
    if (i >= 2) v -= a_true[2] * x[i - 2];
    x[i] = v;
  }
  const auto r = dsp::autocorrelation(x, 2);
  const auto fit = dsp::levinson(r, 2);
  CHECK(fit.a[1] == doctest::Approx(a_true[1]).epsilon(0.02));
  CHECK(fit.a[2] == doctest::Approx(a_true[2]).epsilon(0.02));
  CHECK(dsp::is_min_phase(fit.a));
}

TEST_CASE("levinson degenerate autocorrelation yields identity") {
  const std::vector<double> r = {0.0, 0.0, 0.0};
  const auto fit = dsp::levinson(r, 2);
  CHECK(fit.a[0] == 1.0);
  CHECK(fit.a[1] == 0.0);
  CHECK(fit.error == 0.0);
}

TEST_CASE("convolve_same matches direct convolution with centered kernel") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> x(100), h(11);
  for (auto& v : x) v = gauss(rng);
  for (auto& v : h) v = gauss(rng);
  const auto y = dsp::convolve_same(x, h);
  REQUIRE(y.size() == x.size());
  const int delay = 5;
  for (int i = 0; i < 100; ++i) {
    double want = 0.0;
    for (int j = 0; j < 11; ++j) {
      const int k = i + delay - j;
      if (k >= 0 && k < 100) want += x[static_cast<size_t>(k)] * h[static_cast<size_t>(j)];
    }
    CHECK(y[static_cast<size_t>(i)] == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("median filter handles edges") {
  const std::vector<double> x = {1.0, 100.0, 2.0, 3.0, 4.0};
  const auto y = dsp::median_filter(x, 3);
  CHECK(y[1] == 2.0);
  CHECK(y[2] == 3.0);
  CHECK(y[0] == 100.0);  // two-value edge window takes the upper median
}

TEST_CASE("is_min_phase flags an unstable polynomial") {
  CHECK(dsp::is_min_phase(std::vector<double>{1.0, -0.5}));
  CHECK_FALSE(dsp::is_min_phase(std::vector<double>{1.0, -1.5}));
}
