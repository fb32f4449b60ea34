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

#ifndef DSM_DSP_HPP
#define DSM_DSP_HPP

#include <complex>
#include <span>
#include <vector>

// Shared signal-processing primitives: windows, FFT (FFTW-backed),
// band-limited resampling, Levinson-Durbin, Butterworth sections and
// zero-phase filtering. Everything here is deterministic for fixed inputs.

namespace dsm::dsp {

// Periodic Blackman window of length n: peak value 1 at index n/2.
// Used for GCI-centered frames so the window maximum sits exactly on
// the (even-length) frame center.
std::vector<double> blackman_periodic(int n);

// Symmetric Blackman window of length n (endpoints ~0).
std::vector<double> blackman(int n);

// Symmetric Hamming window of length n.
std::vector<double> hamming(int n);

// Symmetric Hann window of length n.
std::vector<double> hann(int n);

// In-place complex FFT (inverse applies the 1/n factor). Any n >= 1.
void fft(std::vector<std::complex<double>>& x, bool inverse);

// Forward FFT of a real signal zero-padded/truncated to nfft.
std::vector<std::complex<double>> fft_real(std::span<const double> x, int nfft);

// |X[k]| for k = 0..nfft/2 of the real signal x (zero-padded to nfft).
std::vector<double> magnitude_spectrum(std::span<const double> x, int nfft);

// Smallest power of two >= n.
int next_pow2(int n);

// Band-limited resampling of x to exactly out_len samples via a
// Blackman-windowed-sinc polyphase kernel. The time axis is scaled
// linearly (index i maps to i * len(x) / out_len), so a feature at the
// center stays at the center. Samples outside x are treated as zero.
std::vector<double> resample_to(std::span<const double> x, int out_len);

struct Biquad {
  double b0, b1, b2;  // numerator
  double a1, a2;      // denominator (a0 = 1)
};

// High-pass Butterworth of even order as cascaded biquads.
// cutoff_hz must lie in (0, sample_rate/2).
std::vector<Biquad> butterworth_highpass(int order, double cutoff_hz, double sample_rate);

// Single-pass cascade filtering with zero initial state.
std::vector<double> sos_filter(const std::vector<Biquad>& sos, std::span<const double> x);

// Zero-phase forward-backward filtering with odd-reflection edge padding.
std::vector<double> filtfilt(const std::vector<Biquad>& sos, std::span<const double> x);

struct LevinsonResult {
  std::vector<double> a;           // a[0] = 1, length order+1
  double error = 0.0;              // final prediction error energy
  std::vector<double> reflection;  // k[1..order]
};

// Levinson-Durbin recursion on autocorrelation r[0..order].
// A nonpositive r[0] yields the identity predictor with zero error.
LevinsonResult levinson(std::span<const double> r, int order);

// Biased autocorrelation r[0..max_lag] of x.
std::vector<double> autocorrelation(std::span<const double> x, int max_lag);

// Linear convolution of x and h, cropped to x's extent with the kernel
// centered (delay (len(h)-1)/2 removed). FFT-based.
std::vector<double> convolve_same(std::span<const double> x, std::span<const double> h);

// Median filter with window w (odd); edges use the available neighbors.
std::vector<double> median_filter(const std::vector<double>& x, int w);

// |1/A(e^{jw})| magnitude of an all-pole filter at nfft/2+1 frequencies,
// scaled by gain.
std::vector<double> all_pole_magnitude(std::span<const double> a, double gain, int nfft);

// True iff 1/A(z) is stable (all reflection coefficients |k| < 1).
bool is_min_phase(std::span<const double> a);

inline double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = 3.14159265358979323846 * x;
  return std::sin(px) / px;
}

}  // namespace dsm::dsp

#endif  // DSM_DSP_HPP
