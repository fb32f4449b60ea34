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

#ifndef DSM_TESTS_SUPPORT_TESTUTIL_HPP
#define DSM_TESTS_SUPPORT_TESTUTIL_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "dsm/audio.hpp"
#include "dsm/envelope.hpp"
#include "dsm/pitch.hpp"
#include "dsm/vocoder.hpp"

// Test-only oracles and generators. The oracles here are deliberately
// brute-force and independent of the library's implementation paths.
namespace testutil {

// ---- oracles ----------------------------------------------------------------

// O(n^2) DFT used to validate the FFT wrapper.
std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& x,
                                            bool inverse);

// Brute-force cyclic Jacobi eigendecomposition of a symmetric matrix
// (row-major n x n). Returns eigenvalues descending and eigenvectors as
// rows, with the same sign convention as the library (center sample <= 0,
// ties -> first nonzero positive).
struct JacobiResult {
  std::vector<double> eigenvalues;  // descending
  std::vector<double> vectors;      // n x n row-major, row i <-> eigenvalue i
};
JacobiResult jacobi_eigen(const std::vector<double>& matrix, int n);

// Energy of x in [f_lo, f_hi) Hz measured on a zero-padded DFT grid.
double band_energy(std::span<const double> x, int sample_rate, double f_lo, double f_hi);

// Geometric / arithmetic mean ratio of the power spectrum (0 = tonal, 1 = flat).
double spectral_flatness(std::span<const double> x);

// Zero-crossing pitch oracle for clean periodic signals.
double zero_crossing_f0(const dsm::AudioSignal& signal);

// Normalized autocorrelation of x at a given lag.
double autocorr_at_lag(std::span<const double> x, int lag);

// Peak normalized autocorrelation over a lag range.
double max_autocorr_in_range(std::span<const double> x, int lag_min, int lag_max);

double kurtosis(std::span<const double> x);

double rms(std::span<const double> x);

// Direct all-pole IIR: y[n] = gain*x[n] - sum a[j] y[n-j].
std::vector<double> all_pole_filter(std::span<const double> x, std::span<const double> a,
                                    double gain);

// ---- generators ---------------------------------------------------------------

dsm::AudioSignal make_sine(int sample_rate, double freq, double seconds, double amp = 0.5);
dsm::AudioSignal make_white_noise(int sample_rate, double seconds, std::uint64_t seed,
                                  double amp = 0.3);

// Impulse train (impulses of the given sign) with per-impulse period list.
dsm::AudioSignal make_impulse_train(int sample_rate, const std::vector<int>& periods,
                                    double amp = 1.0, int offset = 100);

// Constant single-frame envelope track covering n samples (an all-pole
// "vocal tract" for synthesis tests).
dsm::EnvelopeTrack constant_envelope(std::span<const double> coeffs, double gain, int n_samples);

// Two-resonance vocal-tract denominator polynomial.
std::vector<double> vocal_tract_coeffs(int sample_rate, double f1 = 500.0, double f2 = 1500.0,
                                       double r = 0.95);

// Fully voiced pitch track at constant f0 covering n_samples.
dsm::PitchTrack constant_pitch(int sample_rate, double f0, int n_samples, double f0_min = 60.0,
                               double f0_max = 400.0);

// ---- synthetic speakers ---------------------------------------------------------

struct SpeakerParams {
  double sigma_left = 2.5;    // main pulse width (samples at 16 kHz)
  double sigma_right = 4.0;
  double bump_amp = 0.35;     // secondary bump relative amplitude
  double bump_delay = 18.0;   // samples after the GCI
  double bump_sigma = 6.0;
  double env_width_left = 0.10;   // fraction of m
  double env_width_right = 0.16;
  double env_floor = 0.08;
  double noise_level = 0.10;  // stochastic-to-deterministic energy ratio
};

// Distinct, deterministic parameter set per speaker index.
SpeakerParams speaker_params(int speaker_index);

// Band-limited excitation model with a known first eigenresidual and
// energy envelope.
dsm::DsmModel make_test_model(int sample_rate, double f0_star, double fm,
                              const SpeakerParams& params, double f0_min = 60.0,
                              double f0_max = 400.0);

// DSM-rendered speech for that model: slowly varying f0 with short
// unvoiced gaps, through a fixed two-formant vocal tract.
dsm::AudioSignal generate_speaker_audio(const dsm::DsmModel& model, double seconds,
                                        std::uint64_t seed, double f0_lo = 95.0,
                                        double f0_hi = 125.0);

}  // namespace testutil

#endif  // DSM_TESTS_SUPPORT_TESTUTIL_HPP
