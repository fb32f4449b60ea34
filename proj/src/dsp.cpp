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

#include "dsm/dsp.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>

namespace dsm::dsp {

namespace {

constexpr double kPi = 3.14159265358979323846;

// One cached FFTW complex-to-complex plan per (size, direction).
// FFTW_ESTIMATE keeps planning deterministic. Single-threaded use only.
struct PlanEntry {
  fftw_complex* buf = nullptr;
  fftw_plan plan = nullptr;
  ~PlanEntry() {
    if (plan) fftw_destroy_plan(plan);
    if (buf) fftw_free(buf);
  }
};

PlanEntry& plan_for(int n, bool inverse) {
  static std::map<std::pair<int, bool>, std::unique_ptr<PlanEntry>> cache;
  auto key = std::make_pair(n, inverse);
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto entry = std::make_unique<PlanEntry>();
    entry->buf = fftw_alloc_complex(static_cast<size_t>(n));
    entry->plan = fftw_plan_dft_1d(n, entry->buf, entry->buf,
                                   inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                   FFTW_ESTIMATE);
    it = cache.emplace(key, std::move(entry)).first;
  }
  return *it->second;
}

}  // namespace

std::vector<double> blackman_periodic(int n) {
  std::vector<double> w(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * kPi * i / n;
    w[i] = 0.42 - 0.5 * std::cos(t) + 0.08 * std::cos(2.0 * t);
  }
  return w;
}

std::vector<double> blackman(int n) {
  std::vector<double> w(static_cast<size_t>(n));
  if (n == 1) {
    w[0] = 1.0;
    return w;
  }
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * kPi * i / (n - 1);
    w[i] = 0.42 - 0.5 * std::cos(t) + 0.08 * std::cos(2.0 * t);
  }
  return w;
}

std::vector<double> hamming(int n) {
  std::vector<double> w(static_cast<size_t>(n));
  if (n == 1) {
    w[0] = 1.0;
    return w;
  }
  for (int i = 0; i < n; ++i)
    w[i] = 0.54 - 0.46 * std::cos(2.0 * kPi * i / (n - 1));
  return w;
}

std::vector<double> hann(int n) {
  std::vector<double> w(static_cast<size_t>(n));
  if (n == 1) {
    w[0] = 1.0;
    return w;
  }
  for (int i = 0; i < n; ++i)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * i / (n - 1));
  return w;
}

void fft(std::vector<std::complex<double>>& x, bool inverse) {
  const int n = static_cast<int>(x.size());
  if (n == 0) return;
  if (n == 1) return;
  PlanEntry& entry = plan_for(n, inverse);
  auto* buf = reinterpret_cast<std::complex<double>*>(entry.buf);
  std::copy(x.begin(), x.end(), buf);
  fftw_execute(entry.plan);
  std::copy(buf, buf + n, x.begin());
  if (inverse) {
    const double scale = 1.0 / n;
    for (auto& v : x) v *= scale;
  }
}

std::vector<std::complex<double>> fft_real(std::span<const double> x, int nfft) {
  std::vector<std::complex<double>> buf(static_cast<size_t>(nfft));
  const size_t n = std::min(x.size(), static_cast<size_t>(nfft));
  for (size_t i = 0; i < n; ++i) buf[i] = x[i];
  fft(buf, false);
  return buf;
}

std::vector<double> magnitude_spectrum(std::span<const double> x, int nfft) {
  auto spec = fft_real(x, nfft);
  std::vector<double> mag(static_cast<size_t>(nfft / 2 + 1));
  for (size_t k = 0; k < mag.size(); ++k) mag[k] = std::abs(spec[k]);
  return mag;
}

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<double> resample_to(std::span<const double> x, int out_len) {
  const int in_len = static_cast<int>(x.size());
  if (out_len <= 0) throw std::invalid_argument("resample_to: out_len must be positive");
  if (in_len == 0) return std::vector<double>(static_cast<size_t>(out_len), 0.0);
  if (out_len == in_len) return std::vector<double>(x.begin(), x.end());

  const double ratio = static_cast<double>(in_len) / out_len;  // input samples per output sample
  const double cutoff = std::min(1.0, 1.0 / ratio);            // fraction of the input Nyquist
  const int base_half = 32;                                    // kernel half-width at unit ratio
  const double stretch = std::max(1.0, ratio);
  const int half = static_cast<int>(std::ceil(base_half * stretch));

  std::vector<double> y(static_cast<size_t>(out_len), 0.0);
  for (int j = 0; j < out_len; ++j) {
    const double t = j * ratio;
    const int n0 = static_cast<int>(std::ceil(t)) - half;
    const int n1 = static_cast<int>(std::floor(t)) + half;
    double acc = 0.0;
    for (int n = std::max(0, n0); n <= std::min(in_len - 1, n1); ++n) {
      const double u = (n - t) / stretch;  // in [-base_half, base_half]
      const double c = std::abs(u) / base_half;
      if (c >= 1.0) continue;
      // Blackman taper over the kernel support.
      const double w = 0.42 + 0.5 * std::cos(kPi * c) + 0.08 * std::cos(2.0 * kPi * c);
      acc += x[n] * cutoff * sinc(cutoff * (n - t)) * w;
    }
    y[j] = acc;
  }
  return y;
}

std::vector<Biquad> butterworth_highpass(int order, double cutoff_hz, double sample_rate) {
  if (order < 2 || order % 2 != 0)
    throw std::invalid_argument("butterworth_highpass: order must be even and >= 2");
  if (!(cutoff_hz > 0.0 && cutoff_hz < sample_rate / 2.0))
    throw std::invalid_argument("butterworth_highpass: cutoff must be in (0, Nyquist)");

  const double warp = std::tan(kPi * cutoff_hz / sample_rate);
  std::vector<Biquad> sos;
  sos.reserve(static_cast<size_t>(order / 2));
  for (int k = 0; k < order / 2; ++k) {
    // Prototype pole pair: s^2 + a1*s + 1 with a1 = 2 sin((2k+1)pi/(2n)).
    const double a1 = 2.0 * std::sin((2.0 * k + 1.0) * kPi / (2.0 * order));
    const double d0 = 1.0 + a1 * warp + warp * warp;
    Biquad s{};
    s.b0 = 1.0 / d0;
    s.b1 = -2.0 / d0;
    s.b2 = 1.0 / d0;
    s.a1 = (2.0 * warp * warp - 2.0) / d0;
    s.a2 = (1.0 - a1 * warp + warp * warp) / d0;
    sos.push_back(s);
  }
  return sos;
}

std::vector<double> sos_filter(const std::vector<Biquad>& sos, std::span<const double> x) {
  std::vector<double> y(x.begin(), x.end());
  for (const Biquad& s : sos) {
    double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
    for (double& v : y) {
      const double xn = v;
      const double yn = s.b0 * xn + s.b1 * x1 + s.b2 * x2 - s.a1 * y1 - s.a2 * y2;
      x2 = x1;
      x1 = xn;
      y2 = y1;
      y1 = yn;
      v = yn;
    }
  }
  return y;
}

std::vector<double> filtfilt(const std::vector<Biquad>& sos, std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  if (n == 0) return {};
  const int pad = std::min(n - 1, 8 * static_cast<int>(sos.size()) * 2 + 16);

  // Odd reflection about the end samples tames edge transients.
  std::vector<double> ext;
  ext.reserve(static_cast<size_t>(n + 2 * pad));
  for (int i = pad; i >= 1; --i) ext.push_back(2.0 * x[0] - x[i]);
  ext.insert(ext.end(), x.begin(), x.end());
  for (int i = 1; i <= pad; ++i) ext.push_back(2.0 * x[n - 1] - x[n - 1 - i]);

  std::vector<double> fwd = sos_filter(sos, ext);
  std::reverse(fwd.begin(), fwd.end());
  std::vector<double> bwd = sos_filter(sos, fwd);
  std::reverse(bwd.begin(), bwd.end());

  return std::vector<double>(bwd.begin() + pad, bwd.begin() + pad + n);
}

LevinsonResult levinson(std::span<const double> r, int order) {
  if (static_cast<int>(r.size()) < order + 1)
    throw std::invalid_argument("levinson: need order+1 autocorrelation lags");
  LevinsonResult out;
  out.a.assign(static_cast<size_t>(order) + 1, 0.0);
  out.a[0] = 1.0;
  out.reflection.assign(static_cast<size_t>(order) + 1, 0.0);
  double err = r[0];
  if (err <= 0.0) {
    out.error = 0.0;
    return out;
  }
  std::vector<double> tmp(out.a.size());
  for (int i = 1; i <= order; ++i) {
    double acc = r[i];
    for (int j = 1; j < i; ++j) acc += out.a[j] * r[i - j];
    double k = -acc / err;
    k = std::clamp(k, -0.999999, 0.999999);
    out.reflection[i] = k;
    for (int j = 1; j < i; ++j) tmp[j] = out.a[j] + k * out.a[i - j];
    for (int j = 1; j < i; ++j) out.a[j] = tmp[j];
    out.a[i] = k;
    err *= (1.0 - k * k);
  }
  out.error = err;
  return out;
}

std::vector<double> autocorrelation(std::span<const double> x, int max_lag) {
  const int n = static_cast<int>(x.size());
  std::vector<double> r(static_cast<size_t>(max_lag) + 1, 0.0);
  for (int lag = 0; lag <= max_lag; ++lag) {
    double acc = 0.0;
    for (int i = 0; i + lag < n; ++i) acc += x[i] * x[i + lag];
    r[lag] = acc;
  }
  return r;
}

std::vector<double> convolve_same(std::span<const double> x, std::span<const double> h) {
  const int n = static_cast<int>(x.size());
  const int m = static_cast<int>(h.size());
  if (n == 0) return {};
  const int nfft = next_pow2(n + m - 1);
  auto fx = fft_real(x, nfft);
  auto fh = fft_real(h, nfft);
  for (int i = 0; i < nfft; ++i) fx[i] *= fh[i];
  fft(fx, true);
  const int delay = (m - 1) / 2;
  std::vector<double> y(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) y[i] = fx[i + delay].real();
  return y;
}

std::vector<double> median_filter(const std::vector<double>& x, int w) {
  if (w <= 1 || x.size() <= 1) return x;
  const int n = static_cast<int>(x.size());
  const int half = w / 2;
  std::vector<double> out(x.size());
  std::vector<double> window;
  window.reserve(static_cast<size_t>(w));
  for (int i = 0; i < n; ++i) {
    window.clear();
    for (int j = std::max(0, i - half); j <= std::min(n - 1, i + half); ++j)
      window.push_back(x[j]);
    std::nth_element(window.begin(), window.begin() + window.size() / 2, window.end());
    out[i] = window[window.size() / 2];
  }
  return out;
}

std::vector<double> all_pole_magnitude(std::span<const double> a, double gain, int nfft) {
  auto fa = fft_real(a, nfft);
  std::vector<double> mag(static_cast<size_t>(nfft / 2 + 1));
  for (size_t k = 0; k < mag.size(); ++k) {
    const double denom = std::abs(fa[k]);
    mag[k] = denom > 0.0 ? gain / denom : 0.0;
  }
  return mag;
}

bool is_min_phase(std::span<const double> a) {
  // Step-down (reverse Levinson) recursion; stable iff all |k_i| < 1.
  const int p = static_cast<int>(a.size()) - 1;
  if (p <= 0) return true;
  std::vector<double> cur(a.begin(), a.end());
  std::vector<double> nxt(cur.size());
  for (int i = p; i >= 1; --i) {
    const double k = cur[i];
    if (std::abs(k) >= 1.0) return false;
    const double denom = 1.0 - k * k;
    for (int j = 1; j < i; ++j) nxt[j] = (cur[j] - k * cur[i - j]) / denom;
    for (int j = 1; j < i; ++j) cur[j] = nxt[j];
  }
  return true;
}

}  // namespace dsm::dsp
