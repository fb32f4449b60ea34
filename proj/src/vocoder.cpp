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

#include "dsm/vocoder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dsm/dsp.hpp"

namespace dsm {

namespace {

constexpr std::uint32_t kFlagSignatureOnly = 1u << 0;
constexpr std::uint32_t kFlagHasEnvelope = 1u << 1;
constexpr std::uint32_t kFlagHasNoiseAr = 1u << 2;

void put_bytes(std::string& s, const void* p, size_t len) {
  s.append(reinterpret_cast<const char*>(p), len);
}

template <typename T>
void put_pod(std::string& s, T v) {
  put_bytes(s, &v, sizeof(v));
}

void put_f64s(std::string& s, const std::vector<double>& v) {
  put_bytes(s, v.data(), v.size() * sizeof(double));
}

template <typename T>
T take_pod(const std::string& s, size_t& pos) {
  if (pos + sizeof(T) > s.size()) throw std::runtime_error("model file truncated");
  T v;
  std::memcpy(&v, s.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

std::vector<double> take_f64s(const std::string& s, size_t& pos, size_t count) {
  if (pos + count * sizeof(double) > s.size())
    throw std::runtime_error("model file truncated");
  std::vector<double> v(count);
  std::memcpy(v.data(), s.data() + pos, count * sizeof(double));
  pos += count * sizeof(double);
  return v;
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open for writing: " + tmp);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("short write: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

// Weighted eigenresidual sum at the native length m: sqrt(lambda_i/lambda_1)
// weights, so k_det = 1 gives mu_1 itself.
std::vector<double> deterministic_prototype(const DsmModel& model) {
  const int m = model.m();
  const int k = std::clamp(model.k_det, 1, model.basis.rows);
  std::vector<double> v(static_cast<size_t>(m), 0.0);
  const double lambda1 = std::max(model.basis.eigenvalues.empty() ? 0.0 : model.basis.eigenvalues[0], 0.0);
  for (int i = 0; i < k; ++i) {
    double w = 1.0;
    if (i > 0)
      w = lambda1 > 0.0 ? std::sqrt(model.basis.eigenvalues[static_cast<size_t>(i)] / lambda1) : 0.0;
    const double* mu = model.basis.row(i);
    for (int j = 0; j < m; ++j) v[static_cast<size_t>(j)] += w * mu[j];
  }
  return v;
}

double mean_band_level(const std::vector<double>& mag, double lo_hz, double hi_hz, int nfft,
                       int sample_rate) {
  const int k0 = std::max(0, static_cast<int>(std::ceil(lo_hz * nfft / sample_rate)));
  const int k1 = std::min(static_cast<int>(mag.size()) - 1,
                          static_cast<int>(std::floor(hi_hz * nfft / sample_rate)));
  if (k1 < k0) return 0.0;
  double acc = 0.0;
  for (int k = k0; k <= k1; ++k) acc += mag[static_cast<size_t>(k)];
  return acc / (k1 - k0 + 1);
}

// Level-match the stochastic ensemble to the deterministic frame across
// the fm boundary at the normalization pitch.
double calibrate_noise_gain(const DsmModel& model, std::uint64_t seed) {
  const int m = model.m();
  const int t0 = m / 2;
  const int sr = model.sample_rate;
  const double nyq = sr / 2.0;
  const double bw = std::min({1000.0, 0.5 * model.fm, nyq - model.fm});
  if (bw <= 0.0) return 1.0;
  const int nfft = dsp::next_pow2(4 * m);

  const auto det = dsp::resample_to(deterministic_prototype(model), 2 * t0);
  const auto det_mag = dsp::magnitude_spectrum(det, nfft);
  const double level_d = mean_band_level(det_mag, model.fm - bw, model.fm, nfft, sr);

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto env = dsp::resample_to(model.noise.energy_envelope, 2 * t0);
  const int q = model.noise.order();
  std::vector<double> mean_mag(static_cast<size_t>(nfft / 2 + 1), 0.0);
  std::vector<double> y(static_cast<size_t>(2 * t0));
  const int kEnsemble = 256;
  for (int it = 0; it < kEnsemble; ++it) {
    for (int i = 0; i < 2 * t0; ++i) {
      double acc = model.noise.ar_gain * gauss(rng);
      for (int j = 1; j <= std::min(q, i); ++j)
        acc -= model.noise.ar[static_cast<size_t>(j)] * y[static_cast<size_t>(i - j)];
      y[static_cast<size_t>(i)] = acc;
    }
    for (int i = 0; i < 2 * t0; ++i)
      y[static_cast<size_t>(i)] *= std::max(0.0, env[static_cast<size_t>(i)]);
    const auto mag = dsp::magnitude_spectrum(y, nfft);
    for (size_t k2 = 0; k2 < mean_mag.size(); ++k2) mean_mag[k2] += mag[k2];
  }
  for (double& v : mean_mag) v /= kEnsemble;
  const double level_s = mean_band_level(mean_mag, model.fm, model.fm + bw, nfft, sr);
  if (level_s <= 0.0 || level_d <= 0.0) return 1.0;
  return level_d / level_s;
}

double median_voiced_f0(const PitchTrack& track) {
  std::vector<double> v;
  for (int k = 0; k < track.num_frames(); ++k)
    if (track.voiced[static_cast<size_t>(k)]) v.push_back(track.f0[static_cast<size_t>(k)]);
  if (v.empty()) return 0.0;
  std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
  return v[v.size() / 2];
}

// Mean all-pole envelope magnitude over voiced frames, on an nfft grid.
std::vector<double> mean_envelope_magnitude(const EnvelopeTrack& env, const PitchTrack& pitch,
                                            int nfft) {
  std::vector<double> acc(static_cast<size_t>(nfft / 2 + 1), 0.0);
  int count = 0;
  for (int k = 0; k < env.num_frames(); ++k) {
    const int center = k * env.frame_hop + env.window_len / 2;
    if (!pitch.voiced_at_sample(center)) continue;
    const auto mag = dsp::all_pole_magnitude(
        std::span<const double>(env.frame(k), static_cast<size_t>(env.num_coeffs)),
        env.gain[static_cast<size_t>(k)], nfft);
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += mag[i];
    ++count;
  }
  if (count > 0)
    for (double& v : acc) v /= count;
  return acc;
}

}  // namespace

int DsmModel::t0_min() const {
  return std::max(2, static_cast<int>(std::lround(sample_rate / f0_max)));
}

int DsmModel::t0_max() const {
  return std::max(t0_min() + 1, static_cast<int>(std::lround(sample_rate / f0_min)));
}

void save_model(const DsmModel& model, const std::string& path) {
  std::string out;
  out += "DSM1";
  std::uint32_t flags = 0;
  if (model.signature_only) flags |= kFlagSignatureOnly;
  const bool has_env = !model.noise.energy_envelope.empty();
  const bool has_ar = !model.noise.ar.empty();
  if (has_env) flags |= kFlagHasEnvelope;
  if (has_ar) flags |= kFlagHasNoiseAr;
  put_pod(out, flags);
  put_pod(out, static_cast<std::uint32_t>(model.sample_rate));
  put_pod(out, static_cast<std::uint32_t>(model.m()));
  put_pod(out, static_cast<std::uint32_t>(model.basis.rows));
  put_pod(out, static_cast<std::uint32_t>(has_ar ? model.noise.order() : 0));
  put_pod(out, static_cast<std::uint32_t>(0));  // reserved
  put_pod(out, model.f0_star);
  put_pod(out, model.fm);
  put_pod(out, model.f0_min);
  put_pod(out, model.f0_max);
  put_pod(out, model.noise_gain);
  put_pod(out, static_cast<std::uint64_t>(model.n_frames));
  put_f64s(out, model.basis.vectors);
  put_f64s(out, model.basis.eigenvalues);
  if (has_env) put_f64s(out, model.noise.energy_envelope);
  if (has_ar) {
    put_f64s(out, model.noise.ar);
    put_pod(out, model.noise.ar_gain);
  }
  write_atomic(path, out);
}

DsmModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < 4 || bytes.compare(0, 4, "DSM1") != 0)
    throw std::runtime_error("not a DSM1 model file: " + path);

  size_t pos = 4;
  const auto flags = take_pod<std::uint32_t>(bytes, pos);
  DsmModel model;
  model.signature_only = (flags & kFlagSignatureOnly) != 0;
  model.sample_rate = static_cast<int>(take_pod<std::uint32_t>(bytes, pos));
  const int m = static_cast<int>(take_pod<std::uint32_t>(bytes, pos));
  const int rows = static_cast<int>(take_pod<std::uint32_t>(bytes, pos));
  const int q = static_cast<int>(take_pod<std::uint32_t>(bytes, pos));
  take_pod<std::uint32_t>(bytes, pos);  // reserved
  model.f0_star = take_pod<double>(bytes, pos);
  model.fm = take_pod<double>(bytes, pos);
  model.f0_min = take_pod<double>(bytes, pos);
  model.f0_max = take_pod<double>(bytes, pos);
  model.noise_gain = take_pod<double>(bytes, pos);
  model.n_frames = take_pod<std::uint64_t>(bytes, pos);

  model.basis.m = m;
  model.basis.rows = rows;
  model.basis.f0_star = model.f0_star;
  model.basis.vectors = take_f64s(bytes, pos, static_cast<size_t>(rows) * m);
  model.basis.eigenvalues = take_f64s(bytes, pos, static_cast<size_t>(m));
  model.k_det = rows;

  if (flags & kFlagHasEnvelope)
    model.noise.energy_envelope = take_f64s(bytes, pos, static_cast<size_t>(m));
  if (flags & kFlagHasNoiseAr) {
    model.noise.ar = take_f64s(bytes, pos, static_cast<size_t>(q) + 1);
    model.noise.ar_gain = take_pod<double>(bytes, pos);
  }
  model.noise.fm = model.fm;
  model.noise.f0_star = model.f0_star;
  model.has_noise = (flags & kFlagHasEnvelope) && (flags & kFlagHasNoiseAr);
  return model;
}

void export_model_text(const DsmModel& model, const std::string& path) {
  std::ostringstream os;
  os.precision(17);
  os << "format: DSM1\n";
  os << "signature_only: " << (model.signature_only ? 1 : 0) << "\n";
  os << "sample_rate: " << model.sample_rate << "\n";
  os << "f0_star: " << model.f0_star << "\n";
  os << "fm: " << model.fm << "\n";
  os << "f0_min: " << model.f0_min << "\n";
  os << "f0_max: " << model.f0_max << "\n";
  os << "m: " << model.m() << "\n";
  os << "k_det: " << model.basis.rows << "\n";
  os << "q: " << (model.noise.ar.empty() ? 0 : model.noise.order()) << "\n";
  os << "noise_gain: " << model.noise_gain << "\n";
  os << "n_frames: " << model.n_frames << "\n";
  for (int i = 0; i < model.basis.rows; ++i) {
    os << "eigenresidual_" << (i + 1) << ":";
    for (int j = 0; j < model.m(); ++j) os << " " << model.basis.row(i)[j];
    os << "\n";
  }
  os << "eigenvalues:";
  for (double v : model.basis.eigenvalues) os << " " << v;
  os << "\n";
  if (!model.noise.energy_envelope.empty()) {
    os << "energy_envelope:";
    for (double v : model.noise.energy_envelope) os << " " << v;
    os << "\n";
  }
  if (!model.noise.ar.empty()) {
    os << "noise_ar:";
    for (double v : model.noise.ar) os << " " << v;
    os << "\n";
    os << "noise_ar_gain: " << model.noise.ar_gain << "\n";
  }
  write_atomic(path, os.str());
}

std::vector<double> make_deterministic_frame(const DsmModel& model, int t0) {
  if (t0 < model.t0_min() || t0 > model.t0_max())
    throw std::invalid_argument("make_deterministic_frame: t0 out of admissible range");
  return dsp::resample_to(deterministic_prototype(model), 2 * t0);
}

std::vector<double> make_stochastic_frame(const DsmModel& model, int t0, std::mt19937_64& rng) {
  if (!model.has_noise)
    throw std::logic_error("make_stochastic_frame: model has no stochastic component");
  if (t0 < model.t0_min() || t0 > model.t0_max())
    throw std::invalid_argument("make_stochastic_frame: t0 out of admissible range");

  const int n = 2 * t0;
  const int q = model.noise.order();
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> y(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double acc = model.noise.ar_gain * gauss(rng);
    for (int j = 1; j <= std::min(q, i); ++j)
      acc -= model.noise.ar[static_cast<size_t>(j)] * y[static_cast<size_t>(i - j)];
    y[static_cast<size_t>(i)] = acc;
  }

  auto env = dsp::resample_to(model.noise.energy_envelope, n);
  double peak = 0.0;
  for (double& v : env) {
    v = std::max(0.0, v);
    peak = std::max(peak, v);
  }
  if (peak > 0.0)
    for (double& v : env) v /= peak;
  for (int i = 0; i < n; ++i)
    y[static_cast<size_t>(i)] *= model.noise_gain * env[static_cast<size_t>(i)];
  return y;
}

AudioSignal synth_residual(const DsmModel& model, const SynthesisPlan& plan,
                           const SynthOptions& opt) {
  AudioSignal out;
  out.sample_rate = model.sample_rate;
  const PitchTrack& pitch = plan.pitch;
  const int hop = pitch.frame_hop;
  const int n_out = pitch.num_frames() * std::max(hop, 0);
  if (n_out <= 0) return out;
  out.samples.assign(static_cast<size_t>(n_out), 0.0);

  std::mt19937_64 rng(plan.rng_seed);
  const bool stochastic = model.has_noise && !opt.deterministic_only;

  // GCI-synchronous voiced excitation, one run of frames at a time.
  int k = 0;
  while (k < pitch.num_frames()) {
    if (!pitch.voiced[static_cast<size_t>(k)]) {
      ++k;
      continue;
    }
    int k_end = k;
    while (k_end < pitch.num_frames() && pitch.voiced[static_cast<size_t>(k_end)]) ++k_end;
    const double run_start = static_cast<double>(k) * hop;
    const double run_end = static_cast<double>(k_end) * hop;

    double t = run_start;
    while (t < run_end) {
      const int g = static_cast<int>(std::lround(t));
      double f0 = pitch.f0_at_sample(std::min(g, n_out - 1));
      if (f0 <= 0.0) f0 = model.f0_star;
      const int t0 = std::clamp(static_cast<int>(std::lround(model.sample_rate / f0)),
                                model.t0_min(), model.t0_max());
      std::vector<double> frame = make_deterministic_frame(model, t0);
      if (stochastic) {
        const auto sf = make_stochastic_frame(model, t0, rng);
        for (size_t i = 0; i < frame.size(); ++i) frame[i] += sf[i];
      }
      double energy = 0.0;
      for (double v : frame) energy += v * v;
      if (energy > 0.0) {
        // Unit mean-square per period: period-energy target t0.
        const double scale = std::sqrt(static_cast<double>(t0) / energy);
        for (int i = 0; i < 2 * t0; ++i) {
          const int idx = g - t0 + i;
          if (idx >= 0 && idx < n_out)
            out.samples[static_cast<size_t>(idx)] += scale * frame[static_cast<size_t>(i)];
        }
      }
      t += model.sample_rate / f0;
    }
    k = k_end;
  }

  // Unvoiced regions: white Gaussian noise at the voiced excitation RMS.
  if (opt.unvoiced_noise) {
    double voiced_energy = 0.0;
    long voiced_count = 0;
    for (int i = 0; i < n_out; ++i) {
      if (pitch.voiced_at_sample(i)) {
        voiced_energy += out.samples[static_cast<size_t>(i)] * out.samples[static_cast<size_t>(i)];
        ++voiced_count;
      }
    }
    const double rms =
        voiced_count > 0 && voiced_energy > 0.0 ? std::sqrt(voiced_energy / voiced_count) : 1.0;
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < n_out; ++i) {
      if (!pitch.voiced_at_sample(i)) out.samples[static_cast<size_t>(i)] += rms * gauss(rng);
    }
  }
  return out;
}

AudioSignal synth_speech(const DsmModel& model, const SynthesisPlan& plan,
                         const SynthOptions& opt) {
  const int n_out = plan.pitch.num_frames() * std::max(plan.pitch.frame_hop, 0);
  if (n_out > 0 && plan.envelope.coverage() + plan.envelope.window_len < n_out)
    throw std::invalid_argument("synth_speech: envelope does not cover the pitch extent");

  AudioSignal excitation = synth_residual(model, plan, opt);
  AudioSignal out = synthesis_filter(excitation, plan.envelope, /*apply_gain=*/true);
  double peak = 0.0;
  for (double v : out.samples) peak = std::max(peak, std::abs(v));
  if (peak > 0.99) {
    const double scale = 0.99 / peak;
    for (double& v : out.samples) v *= scale;
  }
  return out;
}

DsmModel train_model_from_frames(const ResidualFrameSet& frames, const TrainConfig& cfg) {
  PitchConstraint c;
  c.f0_star = frames.f0_star;
  c.fm = frames.fm;
  c.f_nyquist = frames.sample_rate / 2.0;
  c.f0_min = cfg.pitch.f0_min;
  if (!validate_pitch_constraint(c))
    throw std::runtime_error("pitch normalization constraint violated: f0_star=" +
                             std::to_string(c.f0_star) + " exceeds (f_nyquist/fm)*f0_min=" +
                             std::to_string(c.f_nyquist / c.fm * c.f0_min));

  DsmModel model;
  model.basis = pca_decompose(frames);
  model.k_det = std::clamp(cfg.k_det, 1, model.basis.rows);
  model.basis.truncate(model.k_det);
  model.fm = frames.fm;
  model.f0_star = frames.f0_star;
  model.sample_rate = frames.sample_rate;
  model.f0_min = cfg.pitch.f0_min;
  model.f0_max = cfg.pitch.f0_max;
  model.n_frames = static_cast<std::uint64_t>(frames.n());

  const double nyquist = frames.sample_rate / 2.0;
  if (frames.fm < nyquist) {
    model.noise = fit_noise_model(frames, cfg.noise_order);
    model.has_noise = true;
    model.noise_gain = calibrate_noise_gain(model, cfg.seed);
  }
  return model;
}

DsmModel train_model(const std::vector<AudioSignal>& corpus, const TrainConfig& cfg,
                     TrainStats* stats) {
  CollectStats collect;
  const ResidualFrameSet frames = collect_frames(corpus, {}, cfg, &collect);
  DsmModel model = train_model_from_frames(frames, cfg);
  if (stats != nullptr) {
    stats->collect = collect;
    stats->n_frames = frames.n();
    stats->eq1_ok = true;
    stats->below_min_frames = frames.n() < cfg.min_frames;
  }
  return model;
}

namespace {

AudioSignal resynthesize(const DsmModel& model, const AudioSignal& signal,
                         const PitchTrack& pitch, const EnvelopeTrack& env,
                         const CopySynthOptions& opt, CopySynthMetrics* metrics) {
  const TrainConfig& cfg = opt.train;
  const int sr = signal.sample_rate;

  SynthesisPlan plan;
  plan.pitch = pitch;
  if (opt.pitch_scale != 1.0) {
    for (size_t i = 0; i < plan.pitch.f0.size(); ++i)
      if (plan.pitch.voiced[i]) plan.pitch.f0[i] *= opt.pitch_scale;
  }
  plan.envelope = env;
  plan.rng_seed = cfg.seed;

  SynthOptions sopt;
  sopt.deterministic_only = opt.deterministic_only;
  sopt.unvoiced_noise = !opt.deterministic_only;
  AudioSignal out = synth_speech(model, plan, sopt);

  if (metrics != nullptr) {
    metrics->f0_in_hz = median_voiced_f0(pitch);

    PitchConfig out_cfg = cfg.pitch;
    const double s = std::max(opt.pitch_scale, 1e-3);
    out_cfg.f0_min = std::max(20.0, cfg.pitch.f0_min * std::min(1.0, s) * 0.7);
    out_cfg.f0_max = std::min(sr / 4.0, cfg.pitch.f0_max * std::max(1.0, s) * 1.3);
    metrics->f0_out_hz = median_voiced_f0(estimate_pitch(out, out_cfg));

    const int nfft = 2048;
    const EnvelopeTrack env_out = fit_envelope(out, cfg.envelope_config(sr));
    const PitchTrack pitch_out = estimate_pitch(out, out_cfg);
    auto a_in = mean_envelope_magnitude(env, pitch, nfft);
    auto a_out = mean_envelope_magnitude(env_out, pitch_out, nfft);

    const int k_fm =
        std::min(static_cast<int>(a_in.size()) - 1, static_cast<int>(model.fm * nfft / sr));
    double sum_db = 0.0;
    int count = 0;
    std::vector<double> diff_db(a_in.size(), 0.0);
    for (int k = 1; k <= k_fm; ++k) {
      if (a_in[static_cast<size_t>(k)] > 0.0 && a_out[static_cast<size_t>(k)] > 0.0) {
        diff_db[static_cast<size_t>(k)] = 20.0 * std::log10(a_out[static_cast<size_t>(k)] /
                                                            a_in[static_cast<size_t>(k)]);
        sum_db += diff_db[static_cast<size_t>(k)];
        ++count;
      }
    }
    const double mean_db = count > 0 ? sum_db / count : 0.0;
    double dist = 0.0;
    for (int k = 1; k <= k_fm; ++k)
      if (a_in[static_cast<size_t>(k)] > 0.0 && a_out[static_cast<size_t>(k)] > 0.0)
        dist += std::abs(diff_db[static_cast<size_t>(k)] - mean_db);
    metrics->env_distortion_db = count > 0 ? dist / count : 0.0;

    // Spectral SNR per band after removing the mean level offset.
    const double align = std::pow(10.0, -mean_db / 20.0);
    auto band_snr = [&](int klo, int khi) {
      double sig = 0.0, err = 0.0;
      for (int k = klo; k <= khi; ++k) {
        const double ain = a_in[static_cast<size_t>(k)];
        const double aout = a_out[static_cast<size_t>(k)] * align;
        sig += ain * ain;
        err += (ain - aout) * (ain - aout);
      }
      return err > 0.0 ? 10.0 * std::log10(sig / err) : 99.0;
    };
    metrics->band_snr_low_db = band_snr(1, k_fm);
    metrics->band_snr_high_db =
        k_fm + 1 < static_cast<int>(a_in.size()) ? band_snr(k_fm + 1, static_cast<int>(a_in.size()) - 1) : 0.0;
  }
  return out;
}

}  // namespace

AudioSignal copy_synthesis(const AudioSignal& signal, const CopySynthOptions& opt,
                           CopySynthMetrics* metrics) {
  const TrainConfig& cfg = opt.train;
  const int sr = signal.sample_rate;

  const PitchTrack pitch = estimate_pitch(signal, cfg.pitch);
  const EnvelopeTrack env = fit_envelope(signal, cfg.envelope_config(sr));
  const GciSequence gcis = detect_gci(signal, pitch);
  const AudioSignal residual = inverse_filter(signal, env);
  const RawFrameSet raw = extract_frames(residual, gcis, pitch);
  const ResidualFrameSet frames =
      normalize_frames(raw, cfg.f0_star, cfg.fm, sr, cfg.pitch.f0_min);

  if (frames.n() < 50)
    throw std::runtime_error(
        "too little voiced data: got " + std::to_string(frames.n()) +
        " residual frames; a reliable model needs around 1000 voiced frames");

  const DsmModel model = train_model_from_frames(frames, cfg);
  AudioSignal out = resynthesize(model, signal, pitch, env, opt, metrics);
  if (metrics != nullptr) {
    metrics->n_frames = frames.n();
    metrics->below_min_frames = frames.n() < cfg.min_frames;
  }
  return out;
}

AudioSignal copy_synthesis_with_model(const DsmModel& model, const AudioSignal& signal,
                                      const CopySynthOptions& opt, CopySynthMetrics* metrics) {
  if (model.sample_rate != signal.sample_rate)
    throw std::runtime_error("sample-rate mismatch: model " + std::to_string(model.sample_rate) +
                             " Hz vs input " + std::to_string(signal.sample_rate) + " Hz");
  const TrainConfig& cfg = opt.train;
  const PitchTrack pitch = estimate_pitch(signal, cfg.pitch);
  const EnvelopeTrack env = fit_envelope(signal, cfg.envelope_config(signal.sample_rate));
  AudioSignal out = resynthesize(model, signal, pitch, env, opt, metrics);
  if (metrics != nullptr) {
    metrics->n_frames = static_cast<int>(model.n_frames);
    metrics->below_min_frames = false;
  }
  return out;
}

}  // namespace dsm
