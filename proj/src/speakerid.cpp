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

#include "dsm/speakerid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dsm/deterministic.hpp"
#include "dsm/stochastic.hpp"
#include "dsm/vocoder.hpp"

namespace dsm {

double rtse(std::span<const double> estimate, std::span<const double> reference) {
  if (estimate.size() != reference.size())
    throw std::invalid_argument("rtse: length mismatch");
  double num = 0.0, denom = 0.0;
  for (size_t i = 0; i < reference.size(); ++i) {
    const double d = estimate[i] - reference[i];
    num += d * d;
    denom += reference[i] * reference[i];
  }
  if (denom <= 0.0) throw std::invalid_argument("undefined relative error: zero reference");
  return num / denom;
}

GlottalSignature signature_from_frames(const ResidualFrameSet& frames,
                                       const SignatureConfig& cfg) {
  if (frames.n() == 0) throw std::runtime_error("no voiced frames for signature extraction");
  const EigenBasis basis = pca_decompose(frames);
  const int idx = cfg.eigen_index;
  if (idx < 1 || idx > basis.rows)
    throw std::invalid_argument("signature_from_frames: eigen index out of range");

  GlottalSignature sig;
  sig.eigenresidual.assign(basis.row(idx - 1), basis.row(idx - 1) + basis.m);
  sig.f0_star = frames.f0_star;
  sig.fm = frames.fm;
  sig.sample_rate = frames.sample_rate;
  sig.n_frames_used = static_cast<std::uint64_t>(frames.n());

  const double nyquist = frames.sample_rate / 2.0;
  if (frames.fm < nyquist) {
    const FrameMatrix highband = highpass_fm(frames);
    sig.energy_envelope = fit_energy_envelope(highband);
  }
  return sig;
}

GlottalSignature extract_signature(const std::vector<AudioSignal>& corpus,
                                   const SignatureConfig& cfg, bool* warned_min_frames) {
  CollectStats stats;
  const ResidualFrameSet frames = collect_frames(corpus, {}, cfg.train, &stats);
  if (frames.n() == 0) throw std::runtime_error("no voiced frames for signature extraction");
  if (warned_min_frames != nullptr)
    *warned_min_frames = frames.n() < cfg.train.min_frames;
  return signature_from_frames(frames, cfg);
}

void save_signature(const GlottalSignature& sig, const std::string& path) {
  DsmModel model;
  model.signature_only = true;
  model.sample_rate = sig.sample_rate;
  model.f0_star = sig.f0_star;
  model.fm = sig.fm;
  model.n_frames = sig.n_frames_used;
  model.basis.m = sig.m();
  model.basis.rows = 1;
  model.basis.f0_star = sig.f0_star;
  model.basis.vectors = sig.eigenresidual;
  model.basis.eigenvalues.assign(static_cast<size_t>(sig.m()), 0.0);
  model.noise.energy_envelope = sig.energy_envelope;
  model.noise.fm = sig.fm;
  model.noise.f0_star = sig.f0_star;
  save_model(model, path);
}

GlottalSignature load_signature(const std::string& path) {
  const DsmModel model = load_model(path);
  GlottalSignature sig;
  sig.eigenresidual.assign(model.basis.row(0), model.basis.row(0) + model.m());
  sig.energy_envelope = model.noise.energy_envelope;
  sig.f0_star = model.f0_star;
  sig.fm = model.fm;
  sig.sample_rate = model.sample_rate;
  sig.n_frames_used = model.n_frames;
  return sig;
}

namespace {

void check_compatible(const GlottalSignature& a, const GlottalSignature& b,
                      const std::string& name_a, const std::string& name_b, Channel channel) {
  if (a.f0_star != b.f0_star || a.fm != b.fm || a.sample_rate != b.sample_rate ||
      a.m() != b.m())
    throw std::runtime_error("signature constant mismatch between '" + name_a + "' and '" +
                             name_b + "'");
  if (channel == Channel::Envelope && (!a.has_envelope() || !b.has_envelope()))
    throw std::runtime_error("envelope channel missing for '" +
                             (a.has_envelope() ? name_b : name_a) + "'");
}

}  // namespace

DistanceMatrix distance_matrix(const std::vector<GlottalSignature>& train,
                               const std::vector<GlottalSignature>& test, Channel channel) {
  if (train.empty() || test.empty())
    throw std::invalid_argument("distance_matrix: empty signature list");
  DistanceMatrix d;
  d.n_train = static_cast<int>(train.size());
  d.n_test = static_cast<int>(test.size());
  d.values.assign(static_cast<size_t>(d.n_train) * d.n_test, 0.0);
  for (const auto& s : train) d.train_labels.push_back(s.label);
  for (const auto& s : test) d.test_labels.push_back(s.label);

  for (int i = 0; i < d.n_train; ++i) {
    for (int j = 0; j < d.n_test; ++j) {
      const auto& tr = train[static_cast<size_t>(i)];
      const auto& te = test[static_cast<size_t>(j)];
      check_compatible(tr, te, tr.label, te.label, channel);
      const auto& ref = channel == Channel::Eigenresidual ? tr.eigenresidual : tr.energy_envelope;
      const auto& est = channel == Channel::Eigenresidual ? te.eigenresidual : te.energy_envelope;
      d.at(i, j) = rtse(est, ref);
    }
  }
  return d;
}

namespace {

void check_same_shape(const DistanceMatrix& dx, const DistanceMatrix& dy) {
  if (dx.n_train != dy.n_train || dx.n_test != dy.n_test)
    throw std::invalid_argument("distance matrix shape mismatch");
}

}  // namespace

DistanceMatrix combine_mul(const DistanceMatrix& dx, const DistanceMatrix& dy, double alpha) {
  check_same_shape(dx, dy);
  if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("combine_mul: alpha in [0,1]");
  if (alpha == 1.0) return dx;
  if (alpha == 0.0) return dy;
  DistanceMatrix out = dx;
  for (size_t i = 0; i < out.values.size(); ++i) {
    const double x = std::max(dx.values[i], 1e-12);
    const double y = std::max(dy.values[i], 1e-12);
    out.values[i] = std::pow(x, alpha) * std::pow(y, 1.0 - alpha);
  }
  return out;
}

DistanceMatrix combine_add(const DistanceMatrix& dx, const DistanceMatrix& dy, double beta) {
  check_same_shape(dx, dy);
  if (beta < 0.0 || beta > 1.0) throw std::invalid_argument("combine_add: beta in [0,1]");
  if (beta == 1.0) return dx;
  if (beta == 0.0) return dy;
  DistanceMatrix out = dx;
  for (size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = beta * dx.values[i] + (1.0 - beta) * dy.values[i];
  return out;
}

IdentifyResult identify(const DistanceMatrix& d) {
  IdentifyResult res;
  int evaluated = 0;
  for (int j = 0; j < d.n_test; ++j) {
    int best = 0;
    for (int i = 1; i < d.n_train; ++i)
      if (d.at(i, j) < d.at(best, j)) best = i;  // ties keep the lowest index
    res.predicted.push_back(best);
    res.predicted_label.push_back(
        best < static_cast<int>(d.train_labels.size()) ? d.train_labels[static_cast<size_t>(best)]
                                                       : "");

    // Rank of the true row, consistent with the tie-break.
    int true_row = -1;
    if (j < static_cast<int>(d.test_labels.size())) {
      for (int i = 0; i < d.n_train; ++i) {
        if (i < static_cast<int>(d.train_labels.size()) &&
            d.train_labels[static_cast<size_t>(i)] == d.test_labels[static_cast<size_t>(j)]) {
          true_row = i;
          break;
        }
      }
    }
    if (true_row < 0) {
      res.rank_of_true.push_back(0);
      continue;
    }
    int rank = 1;
    for (int i = 0; i < d.n_train; ++i) {
      if (i == true_row) continue;
      if (d.at(i, j) < d.at(true_row, j) || (d.at(i, j) == d.at(true_row, j) && i < true_row))
        ++rank;
    }
    res.rank_of_true.push_back(rank);
    ++evaluated;
    if (rank == 1) ++res.n_correct;
  }
  res.accuracy = evaluated > 0 ? static_cast<double>(res.n_correct) / evaluated : 0.0;
  return res;
}

std::vector<ConvergencePoint> convergence_curve(const ResidualFrameSet& frames,
                                                const GlottalSignature& reference,
                                                const std::vector<int>& sizes,
                                                const SignatureConfig& cfg) {
  std::vector<ConvergencePoint> out;
  for (int size : sizes) {
    if (size > frames.n())
      throw std::invalid_argument("convergence_curve: size " + std::to_string(size) +
                                  " exceeds available frames " + std::to_string(frames.n()));
    const ResidualFrameSet subset = frames.prefix(size);
    const GlottalSignature est = signature_from_frames(subset, cfg);
    ConvergencePoint p;
    p.size = size;
    p.rtse_eigen = rtse(est.eigenresidual, reference.eigenresidual);
    p.rtse_env = (reference.has_envelope() && est.has_envelope())
                     ? rtse(est.energy_envelope, reference.energy_envelope)
                     : -1.0;
    out.push_back(p);
  }
  return out;
}

}  // namespace dsm
