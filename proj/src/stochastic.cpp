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

#include "dsm/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "dsm/dsp.hpp"

namespace dsm {

FrameMatrix highpass_fm(const ResidualFrameSet& frames) {
  const double nyquist = frames.sample_rate / 2.0;
  if (frames.fm >= nyquist)
    throw std::invalid_argument("highpass_fm: fm must be below Nyquist");
  const auto sos = dsp::butterworth_highpass(8, frames.fm, frames.sample_rate);

  FrameMatrix out;
  out.n = frames.n();
  out.m = frames.m();
  out.data.resize(frames.frames.data.size());
  for (int i = 0; i < out.n; ++i) {
    const auto filtered =
        dsp::filtfilt(sos, std::span<const double>(frames.row(i), static_cast<size_t>(out.m)));
    std::copy(filtered.begin(), filtered.end(), out.row(i));
  }
  return out;
}

ArFit fit_noise_ar(const FrameMatrix& highband, int order) {
  if (highband.n < 1) throw std::invalid_argument("fit_noise_ar: need at least one frame");
  if (order < 2) throw std::invalid_argument("fit_noise_ar: order must be >= 2");

  const int nfft = dsp::next_pow2(2 * std::max(highband.m, order + 1));
  std::vector<double> mean_mag(static_cast<size_t>(nfft / 2 + 1), 0.0);
  for (int i = 0; i < highband.n; ++i) {
    const auto mag = dsp::magnitude_spectrum(
        std::span<const double>(highband.row(i), static_cast<size_t>(highband.m)), nfft);
    for (size_t k = 0; k < mean_mag.size(); ++k) mean_mag[k] += mag[k];
  }
  for (double& v : mean_mag) v /= highband.n;

  double total = 0.0;
  for (double v : mean_mag) total += v;
  if (total <= 0.0) throw std::runtime_error("empty high band");

  // Autocorrelation of the averaged amplitude spectrum (squared only here).
  std::vector<std::complex<double>> power(static_cast<size_t>(nfft));
  for (int k = 0; k <= nfft / 2; ++k) {
    const double p = mean_mag[static_cast<size_t>(k)] * mean_mag[static_cast<size_t>(k)];
    power[static_cast<size_t>(k)] = p;
    if (k > 0 && k < nfft / 2) power[static_cast<size_t>(nfft - k)] = p;
  }
  dsp::fft(power, true);
  std::vector<double> r(static_cast<size_t>(order) + 1);
  for (int i = 0; i <= order; ++i) r[static_cast<size_t>(i)] = power[static_cast<size_t>(i)].real();

  const auto ld = dsp::levinson(r, order);
  ArFit fit;
  fit.a = ld.a;
  fit.gain = std::sqrt(std::max(0.0, ld.error));
  return fit;
}

std::vector<double> hilbert_env(std::span<const double> frame) {
  const int n = static_cast<int>(frame.size());
  if (n == 0) throw std::invalid_argument("hilbert_env: empty frame");
  std::vector<std::complex<double>> spec(frame.begin(), frame.end());
  dsp::fft(spec, false);
  // Analytic-signal spectrum: keep DC (and Nyquist for even n), double
  // positive frequencies, zero negative ones.
  const int half = n / 2;
  for (int k = 1; k < half + (n % 2 ? 1 : 0); ++k) spec[static_cast<size_t>(k)] *= 2.0;
  for (int k = half + 1; k < n; ++k) spec[static_cast<size_t>(k)] = 0.0;
  dsp::fft(spec, true);
  std::vector<double> env(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) env[static_cast<size_t>(i)] = std::abs(spec[static_cast<size_t>(i)]);
  return env;
}

std::vector<double> fit_energy_envelope(const FrameMatrix& highband) {
  if (highband.n < 1) throw std::invalid_argument("fit_energy_envelope: empty input");
  std::vector<double> mean(static_cast<size_t>(highband.m), 0.0);
  for (int i = 0; i < highband.n; ++i) {
    const auto env =
        hilbert_env(std::span<const double>(highband.row(i), static_cast<size_t>(highband.m)));
    for (size_t j = 0; j < mean.size(); ++j) mean[j] += env[j];
  }
  for (double& v : mean) v /= highband.n;
  const double peak = *std::max_element(mean.begin(), mean.end());
  if (peak <= 0.0) throw std::runtime_error("fit_energy_envelope: zero envelope");
  for (double& v : mean) v /= peak;
  return mean;
}

NoiseModel fit_noise_model(const ResidualFrameSet& frames, int order) {
  const FrameMatrix highband = highpass_fm(frames);
  NoiseModel model;
  const ArFit fit = fit_noise_ar(highband, order);
  model.ar = fit.a;
  model.ar_gain = fit.gain;
  model.energy_envelope = fit_energy_envelope(highband);
  model.fm = frames.fm;
  model.f0_star = frames.f0_star;
  return model;
}

}  // namespace dsm
