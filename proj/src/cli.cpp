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

#include "dsm/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "dsm/audio.hpp"
#include "dsm/config.hpp"
#include "dsm/csvio.hpp"
#include "dsm/manifest.hpp"
#include "dsm/pipeline.hpp"
#include "dsm/speakerid.hpp"
#include "dsm/vocoder.hpp"

namespace dsm {

namespace {

// Shared flags; a --config file applies first, explicit flags override.
struct Common {
  std::string config_path;
  RunConfig flags;
  std::map<std::string, CLI::Option*> opts;

  void add(CLI::App* app) {
    opts["config"] = app->add_option("--config", config_path, "key=value config file");
    opts["seed"] = app->add_option("--seed", flags.seed, "RNG seed");
    opts["f0_star"] = app->add_option("--f0-star", flags.f0_star, "normalization pitch (Hz)");
    opts["fm"] = app->add_option("--fm", flags.fm, "maximum voiced frequency (Hz)");
    opts["f0_min"] = app->add_option("--f0-min", flags.f0_min, "pitch search floor (Hz)");
    opts["f0_max"] = app->add_option("--f0-max", flags.f0_max, "pitch search ceiling (Hz)");
    opts["lp_order"] = app->add_option("--lp-order", flags.lp_order, "envelope order (0 = auto)");
    opts["noise_order"] = app->add_option("--noise-order", flags.noise_order, "noise AR order");
    opts["k_det"] = app->add_option("--k-det", flags.k_det, "retained eigenresiduals");
    opts["min_frames"] =
        app->add_option("--min-frames", flags.min_frames, "frame count warning threshold");
    opts["eigen_index"] =
        app->add_option("--eigen-index", flags.eigen_index, "signature eigenresidual index");
    opts["channel"] = app->add_option("--channel", flags.channel, "eigen | envelope | both")
                          ->check(CLI::IsMember({"eigen", "envelope", "both"}));
    opts["fusion"] = app->add_option("--fusion", flags.fusion, "mul | add")
                         ->check(CLI::IsMember({"mul", "add"}));
    opts["alpha"] = app->add_option("--alpha", flags.alpha, "multiplicative fusion weight");
    opts["beta"] = app->add_option("--beta", flags.beta, "additive fusion weight");
  }

  RunConfig resolve() const {
    RunConfig cfg;
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    auto set = [&](const char* name) { return opts.at(name)->count() > 0; };
    if (set("seed")) cfg.seed = flags.seed;
    if (set("f0_star")) cfg.f0_star = flags.f0_star;
    if (set("fm")) cfg.fm = flags.fm;
    if (set("f0_min")) cfg.f0_min = flags.f0_min;
    if (set("f0_max")) cfg.f0_max = flags.f0_max;
    if (set("lp_order")) cfg.lp_order = flags.lp_order;
    if (set("noise_order")) cfg.noise_order = flags.noise_order;
    if (set("k_det")) cfg.k_det = flags.k_det;
    if (set("min_frames")) cfg.min_frames = flags.min_frames;
    if (set("eigen_index")) cfg.eigen_index = flags.eigen_index;
    if (set("channel")) cfg.channel = flags.channel;
    if (set("fusion")) cfg.fusion = flags.fusion;
    if (set("alpha")) cfg.alpha = flags.alpha;
    if (set("beta")) cfg.beta = flags.beta;
    return cfg;
  }
};

std::vector<AudioSignal> load_wavs(const std::vector<std::string>& paths) {
  if (paths.empty()) throw std::runtime_error("no WAV files to load");
  std::vector<AudioSignal> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back(read_wav(p));
  for (size_t i = 1; i < out.size(); ++i) {
    if (out[i].sample_rate != out[0].sample_rate)
      throw std::runtime_error("sample-rate mismatch inside corpus: " + paths[i]);
  }
  return out;
}

ResidualFrameSet merge_frame_sets(const std::vector<const ResidualFrameSet*>& sets) {
  ResidualFrameSet out = *sets.front();
  for (size_t i = 1; i < sets.size(); ++i) {
    const auto& s = *sets[i];
    if (s.m() != out.m())
      throw std::runtime_error("cannot merge frame sets with different lengths");
    out.frames.data.insert(out.frames.data.end(), s.frames.data.begin(), s.frames.data.end());
    out.frames.n += s.frames.n;
    out.source_ids.insert(out.source_ids.end(), s.source_ids.begin(), s.source_ids.end());
  }
  return out;
}

void write_matrix_csv(const DistanceMatrix& d, const RunConfig& cfg, const std::string& path) {
  CsvWriter w;
  w.comment(config_echo(cfg));
  std::vector<std::string> header = {"train_label"};
  for (const auto& l : d.test_labels) header.push_back(l);
  w.row(header);
  for (int i = 0; i < d.n_train; ++i) {
    std::vector<std::string> row = {d.train_labels[static_cast<size_t>(i)]};
    for (int j = 0; j < d.n_test; ++j) row.push_back(CsvWriter::num(d.at(i, j)));
    w.row(row);
  }
  w.save(path);
}

// ---- train ----------------------------------------------------------------

struct TrainArgs {
  Common common;
  std::string manifest, out, report, crd_csv;
};

void cmd_train(const TrainArgs& a) {
  const RunConfig cfg = a.common.resolve();
  const Manifest man = read_manifest(a.manifest);
  const auto entries = man.split("train");
  if (entries.empty()) throw std::runtime_error("manifest has no train entries: " + a.manifest);

  std::vector<std::string> paths, names;
  for (const auto& e : entries) {
    paths.push_back(e.wav_path);
    names.push_back(e.speaker_id + "/" + e.session_id);
  }
  const auto corpus = load_wavs(paths);
  cfg.validate(corpus.front().sample_rate);

  const TrainConfig tc = cfg.train_config();
  CollectStats stats;
  const ResidualFrameSet frames = collect_frames(corpus, names, tc, &stats);
  if (frames.n() == 0) throw std::runtime_error("no voiced frames found in training corpus");
  if (frames.n() < 2)
    throw std::runtime_error("insufficient frames: need at least 2 residual frames, got " +
                             std::to_string(frames.n()));
  const DsmModel model = train_model_from_frames(frames, tc);
  save_model(model, a.out);

  const bool below = frames.n() < cfg.min_frames;
  if (below)
    std::cerr << "warning: only " << frames.n() << " voiced frames; around 1000 are "
              << "recommended for a reliable estimate\n";

  if (!a.report.empty()) {
    CsvWriter w;
    w.comment(config_echo(cfg));
    w.row({"key", "value"});
    w.row({"n_utterances", CsvWriter::num(static_cast<int>(corpus.size()))});
    w.row({"gcis_in", CsvWriter::num(stats.gcis_in)});
    w.row({"dropped_edges", CsvWriter::num(stats.dropped_edges)});
    w.row({"skipped_no_period", CsvWriter::num(stats.skipped_no_period)});
    w.row({"skipped_zero_energy", CsvWriter::num(stats.skipped_zero_energy)});
    w.row({"n_frames", CsvWriter::num(frames.n())});
    w.row({"m", CsvWriter::num(frames.m())});
    w.row({"sample_rate", CsvWriter::num(frames.sample_rate)});
    w.row({"eq1_ok", "1"});
    w.row({"eq1_bound_hz",
           CsvWriter::num(frames.sample_rate / 2.0 / cfg.fm * cfg.f0_min)});
    w.row({"has_noise", model.has_noise ? "1" : "0"});
    w.row({"noise_gain", CsvWriter::num(model.noise_gain)});
    w.row({"below_min_frames", below ? "1" : "0"});
    if (below)
      w.row({"warning", "only " + std::to_string(frames.n()) +
                            " voiced frames; around 1000 are recommended"});
    for (int k = 1; k <= model.m(); ++k)
      w.row({"crd_" + std::to_string(k), CsvWriter::num(crd(model.basis, k))});
    w.save(a.report);
  }
  if (!a.crd_csv.empty()) {
    CsvWriter w;
    w.comment(config_echo(cfg));
    w.row({"k", "crd"});
    for (int k = 1; k <= model.m(); ++k)
      w.row({CsvWriter::num(k), CsvWriter::num(crd(model.basis, k))});
    w.save(a.crd_csv);
  }
  std::cout << "trained model: " << a.out << " (frames=" << frames.n() << ", m=" << frames.m()
            << ", noise=" << (model.has_noise ? "yes" : "no") << ")\n";
}

// ---- copysynth ------------------------------------------------------------

struct CopySynthArgs {
  Common common;
  std::string model, in_wav, out_wav, metrics;
  double pitch_scale = 1.0;
  bool deterministic_only = false;
};

void cmd_copysynth(const CopySynthArgs& a) {
  const RunConfig cfg = a.common.resolve();
  const DsmModel model = load_model(a.model);
  const AudioSignal audio = read_wav(a.in_wav);

  CopySynthOptions opt;
  opt.train = cfg.train_config();
  // The model is authoritative for the analysis constants.
  opt.train.f0_star = model.f0_star;
  opt.train.fm = model.fm;
  opt.train.pitch.f0_min = model.f0_min;
  opt.train.pitch.f0_max = model.f0_max;
  opt.pitch_scale = a.pitch_scale;
  opt.deterministic_only = a.deterministic_only;

  CopySynthMetrics metrics;
  const AudioSignal out = copy_synthesis_with_model(model, audio, opt, &metrics);
  write_wav(a.out_wav, out);

  if (!a.metrics.empty()) {
    CsvWriter w;
    w.comment(config_echo(cfg));
    w.row({"key", "value"});
    w.row({"f0_in_hz", CsvWriter::num(metrics.f0_in_hz)});
    w.row({"f0_out_hz", CsvWriter::num(metrics.f0_out_hz)});
    w.row({"f0_ratio", CsvWriter::num(metrics.f0_in_hz > 0.0 ? metrics.f0_out_hz / metrics.f0_in_hz
                                                             : 0.0)});
    w.row({"pitch_scale", CsvWriter::num(a.pitch_scale)});
    w.row({"env_distortion_db", CsvWriter::num(metrics.env_distortion_db)});
    w.row({"band_snr_low_db", CsvWriter::num(metrics.band_snr_low_db)});
    w.row({"band_snr_high_db", CsvWriter::num(metrics.band_snr_high_db)});
    w.row({"model_frames", CsvWriter::num(metrics.n_frames)});
    w.save(a.metrics);
  }
  std::cout << "wrote " << a.out_wav << " (f0 " << metrics.f0_in_hz << " -> "
            << metrics.f0_out_hz << " Hz)\n";
}

// ---- identify ---------------------------------------------------------------

struct IdentifyArgs {
  Common common;
  std::string train_manifest, test_manifest, report, matrix_prefix;
};

void cmd_identify(const IdentifyArgs& a) {
  const RunConfig cfg = a.common.resolve();
  const Manifest man_tr = read_manifest(a.train_manifest);
  const Manifest man_te = read_manifest(a.test_manifest);
  const auto spk_tr = man_tr.speakers("train");
  const auto spk_te = man_te.speakers("test");
  if (spk_tr.empty()) throw std::runtime_error("train manifest has no train entries");
  if (spk_te.empty()) throw std::runtime_error("test manifest has no test entries");

  SignatureConfig sig_cfg;
  sig_cfg.train = cfg.train_config();
  sig_cfg.eigen_index = cfg.eigen_index;

  auto extract_all = [&](const Manifest& man, const std::vector<std::string>& speakers,
                         const std::string& which) {
    std::vector<GlottalSignature> sigs;
    bool validated = false;
    for (const auto& spk : speakers) {
      const auto corpus = load_wavs(man.paths_for(spk, which));
      if (!validated) {
        cfg.validate(corpus.front().sample_rate);
        validated = true;
      }
      bool warned = false;
      GlottalSignature sig = extract_signature(corpus, sig_cfg, &warned);
      sig.label = spk;
      if (warned)
        std::cerr << "warning: speaker " << spk << " (" << which << ") has only "
                  << sig.n_frames_used << " voiced frames; around 1000 are recommended\n";
      sigs.push_back(std::move(sig));
    }
    return sigs;
  };
  const auto train_sigs = extract_all(man_tr, spk_tr, "train");
  const auto test_sigs = extract_all(man_te, spk_te, "test");

  const bool want_eigen = cfg.channel != "envelope";
  const bool want_env = cfg.channel != "eigen";
  DistanceMatrix d_eigen, d_env, fused;
  if (want_eigen) d_eigen = distance_matrix(train_sigs, test_sigs, Channel::Eigenresidual);
  if (want_env) d_env = distance_matrix(train_sigs, test_sigs, Channel::Envelope);
  if (cfg.channel == "eigen") fused = d_eigen;
  else if (cfg.channel == "envelope") fused = d_env;
  else
    fused = cfg.fusion == "mul" ? combine_mul(d_eigen, d_env, cfg.alpha)
                                : combine_add(d_eigen, d_env, cfg.beta);

  const IdentifyResult res = identify(fused);

  int rank2 = 0, rank3 = 0;
  for (int r : res.rank_of_true) {
    if (r == 2) ++rank2;
    if (r == 3) ++rank3;
  }
  std::cout << "identification accuracy: " << res.accuracy * 100.0 << "% (" << res.n_correct
            << "/" << res.rank_of_true.size() << ", second position: " << rank2
            << ", third position: " << rank3 << ")\n";

  if (!a.report.empty()) {
    CsvWriter w;
    w.comment(config_echo(cfg));
    w.comment("accuracy=" + CsvWriter::num(res.accuracy));
    w.row({"test_label", "predicted_label", "rank_of_true", "correct"});
    for (size_t j = 0; j < test_sigs.size(); ++j) {
      const int rank = res.rank_of_true[j];
      w.row({test_sigs[j].label, res.predicted_label[j], CsvWriter::num(rank),
             rank == 1 ? "1" : "0"});
    }
    w.save(a.report);
  }
  if (!a.matrix_prefix.empty()) {
    if (want_eigen) write_matrix_csv(d_eigen, cfg, a.matrix_prefix + "_eigen.csv");
    if (want_env) write_matrix_csv(d_env, cfg, a.matrix_prefix + "_envelope.csv");
    write_matrix_csv(fused, cfg, a.matrix_prefix + "_fused.csv");
  }
}

// ---- signature --------------------------------------------------------------

struct SignatureArgs {
  Common common;
  std::string manifest, out, speaker, split = "train";
};

void cmd_signature(const SignatureArgs& a) {
  const RunConfig cfg = a.common.resolve();
  const Manifest man = read_manifest(a.manifest);
  std::vector<std::string> speakers = man.speakers(a.split);
  if (!a.speaker.empty()) {
    speakers.clear();
    speakers.push_back(a.speaker);
  }
  if (speakers.empty()) throw std::runtime_error("manifest has no " + a.split + " entries");
  if (speakers.size() != 1)
    throw std::invalid_argument("manifest holds several speakers; pick one with --speaker");

  const auto paths = man.paths_for(speakers.front(), a.split);
  if (paths.empty())
    throw std::runtime_error("no " + a.split + " entries for speaker " + speakers.front());
  const auto corpus = load_wavs(paths);
  cfg.validate(corpus.front().sample_rate);

  SignatureConfig sig_cfg;
  sig_cfg.train = cfg.train_config();
  sig_cfg.eigen_index = cfg.eigen_index;
  bool warned = false;
  GlottalSignature sig = extract_signature(corpus, sig_cfg, &warned);
  sig.label = speakers.front();
  save_signature(sig, a.out);
  if (warned)
    std::cerr << "warning: only " << sig.n_frames_used
              << " voiced frames; around 1000 are recommended\n";
  std::cout << "wrote signature " << a.out << " (speaker=" << sig.label
            << ", frames=" << sig.n_frames_used
            << ", envelope=" << (sig.has_envelope() ? "yes" : "no") << ")\n";
}

// ---- convergence ------------------------------------------------------------

struct ConvergenceArgs {
  Common common;
  std::string manifest, reference, out, sizes = "50,200,1000,5000";
};

void cmd_convergence(const ConvergenceArgs& a) {
  const RunConfig cfg = a.common.resolve();
  const GlottalSignature ref = load_signature(a.reference);
  const Manifest man = read_manifest(a.manifest);
  const auto entries = man.split("train");
  if (entries.empty()) throw std::runtime_error("manifest has no train entries");
  std::vector<std::string> paths;
  for (const auto& e : entries) paths.push_back(e.wav_path);
  const auto corpus = load_wavs(paths);
  cfg.validate(corpus.front().sample_rate);

  SignatureConfig sig_cfg;
  sig_cfg.train = cfg.train_config();
  sig_cfg.eigen_index = cfg.eigen_index;
  const ResidualFrameSet frames = collect_frames(corpus, {}, sig_cfg.train);

  std::vector<int> sizes;
  std::istringstream ss(a.sizes);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) sizes.push_back(std::stoi(tok));
  }
  if (sizes.empty()) throw std::invalid_argument("--sizes must name at least one size");

  const auto curve = convergence_curve(frames, ref, sizes, sig_cfg);
  CsvWriter w;
  w.comment(config_echo(cfg));
  w.row({"size", "rtse_eigen", "rtse_env"});
  for (const auto& p : curve)
    w.row({CsvWriter::num(p.size), CsvWriter::num(p.rtse_eigen), CsvWriter::num(p.rtse_env)});
  w.save(a.out);
  std::cout << "wrote convergence curve " << a.out << " (" << curve.size() << " points)\n";
}

// ---- crd ----------------------------------------------------------------------

struct CrdArgs {
  Common common;
  std::string model, out;
};

void cmd_crd(const CrdArgs& a) {
  const RunConfig cfg = a.common.resolve();
  const DsmModel model = load_model(a.model);
  CsvWriter w;
  w.comment(config_echo(cfg));
  w.row({"k", "crd"});
  for (int k = 1; k <= model.m(); ++k)
    w.row({CsvWriter::num(k), CsvWriter::num(crd(model.basis, k))});
  w.save(a.out);
  std::cout << "wrote CRD curve " << a.out << "\n";
}

// ---- phoneclass ----------------------------------------------------------------

struct PhoneClassArgs {
  Common common;
  std::string manifest, out;
};

void cmd_phoneclass(const PhoneClassArgs& a) {
  const RunConfig cfg = a.common.resolve();
  const Manifest man = read_manifest(a.manifest);
  const auto entries = man.split("train");
  if (entries.empty()) throw std::runtime_error("manifest has no train entries");

  // session_id doubles as the phone-class label.
  std::vector<std::string> classes;
  for (const auto& e : entries)
    if (std::find(classes.begin(), classes.end(), e.session_id) == classes.end())
      classes.push_back(e.session_id);

  SignatureConfig sig_cfg;
  sig_cfg.train = cfg.train_config();
  sig_cfg.eigen_index = cfg.eigen_index;

  std::vector<ResidualFrameSet> per_class;
  bool validated = false;
  for (const auto& cls : classes) {
    std::vector<std::string> paths;
    for (const auto& e : entries)
      if (e.session_id == cls) paths.push_back(e.wav_path);
    const auto corpus = load_wavs(paths);
    if (!validated) {
      cfg.validate(corpus.front().sample_rate);
      validated = true;
    }
    per_class.push_back(collect_frames(corpus, {}, sig_cfg.train));
  }
  std::vector<const ResidualFrameSet*> ptrs;
  for (const auto& f : per_class) ptrs.push_back(&f);
  const ResidualFrameSet pooled = merge_frame_sets(ptrs);
  const GlottalSignature pooled_sig = signature_from_frames(pooled, sig_cfg);

  CsvWriter w;
  w.comment(config_echo(cfg));
  w.row({"class", "n_frames", "rtse_eigen", "rtse_env"});
  for (size_t c = 0; c < classes.size(); ++c) {
    const GlottalSignature cls_sig = signature_from_frames(per_class[c], sig_cfg);
    const double r_eig = rtse(cls_sig.eigenresidual, pooled_sig.eigenresidual);
    const double r_env = (cls_sig.has_envelope() && pooled_sig.has_envelope())
                             ? rtse(cls_sig.energy_envelope, pooled_sig.energy_envelope)
                             : -1.0;
    w.row({classes[c], CsvWriter::num(per_class[c].n()), CsvWriter::num(r_eig),
           CsvWriter::num(r_env)});
  }
  w.save(a.out);
  std::cout << "wrote phone-class report " << a.out << " (" << classes.size() << " classes)\n";
}

// ---- export ---------------------------------------------------------------------

struct ExportArgs {
  std::string model, out;
};

void cmd_export(const ExportArgs& a) {
  export_model_text(load_model(a.model), a.out);
  std::cout << "wrote " << a.out << "\n";
}

// ---- analyze --------------------------------------------------------------------

struct AnalyzeArgs {
  Common common;
  std::string in_wav, pitch_csv, gci_csv, env_csv, frames_csv, residual_wav;
};

void cmd_analyze(const AnalyzeArgs& a) {
  const RunConfig cfg = a.common.resolve();
  const AudioSignal audio = read_wav(a.in_wav);
  cfg.validate(audio.sample_rate);
  const TrainConfig tc = cfg.train_config();
  const UtteranceAnalysis ua = analyze_utterance(audio, tc);
  const int sr = audio.sample_rate;

  if (!a.pitch_csv.empty()) {
    CsvWriter w;
    w.comment(config_echo(cfg));
    w.row({"frame", "time_sec", "f0_hz", "voiced"});
    for (int k = 0; k < ua.pitch.num_frames(); ++k)
      w.row({CsvWriter::num(k), CsvWriter::num(static_cast<double>(k) * ua.pitch.frame_hop / sr),
             CsvWriter::num(ua.pitch.f0[static_cast<size_t>(k)]),
             ua.pitch.voiced[static_cast<size_t>(k)] ? "1" : "0"});
    w.save(a.pitch_csv);
  }
  if (!a.gci_csv.empty()) {
    CsvWriter w;
    w.comment(config_echo(cfg));
    w.row({"sample", "time_sec"});
    for (int g : ua.gcis.positions)
      w.row({CsvWriter::num(g), CsvWriter::num(static_cast<double>(g) / sr)});
    w.save(a.gci_csv);
  }
  if (!a.env_csv.empty()) {
    CsvWriter w;
    w.comment(config_echo(cfg));
    w.row({"frame", "time_sec", "gain"});
    for (int k = 0; k < ua.envelope.num_frames(); ++k)
      w.row({CsvWriter::num(k),
             CsvWriter::num(static_cast<double>(k) * ua.envelope.frame_hop / sr),
             CsvWriter::num(ua.envelope.gain[static_cast<size_t>(k)])});
    w.save(a.env_csv);
  }
  if (!a.frames_csv.empty()) {
    const ResidualFrameSet frames =
        normalize_frames(ua.raw, cfg.f0_star, cfg.fm, sr, cfg.f0_min);
    CsvWriter w;
    w.comment(config_echo(cfg));
    std::vector<std::string> header;
    for (int j = 0; j < frames.m(); ++j) header.push_back("s" + std::to_string(j));
    w.row(header);
    for (int i = 0; i < frames.n(); ++i) {
      std::vector<std::string> row;
      for (int j = 0; j < frames.m(); ++j) row.push_back(CsvWriter::num(frames.row(i)[j]));
      w.row(row);
    }
    w.save(a.frames_csv);
  }
  if (!a.residual_wav.empty()) write_wav(a.residual_wav, ua.residual);
  std::cout << "analyzed " << a.in_wav << ": " << ua.gcis.size() << " GCIs, "
            << ua.raw.frames.size() << " raw frames\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"deterministic plus stochastic residual vocoder and glottal-signature toolkit"};
  app.require_subcommand(1);

  auto train_args = std::make_shared<TrainArgs>();
  {
    auto* sub = app.add_subcommand("train", "train a speaker excitation model from a manifest");
    train_args->common.add(sub);
    sub->add_option("--manifest", train_args->manifest, "corpus manifest CSV")->required();
    sub->add_option("--out", train_args->out, "output model file")->required();
    sub->add_option("--report", train_args->report, "training report CSV");
    sub->add_option("--crd-csv", train_args->crd_csv, "CRD curve CSV");
    sub->callback([train_args]() { cmd_train(*train_args); });
  }

  auto cs_args = std::make_shared<CopySynthArgs>();
  {
    auto* sub = app.add_subcommand("copysynth", "resynthesize a WAV through a trained model");
    cs_args->common.add(sub);
    sub->add_option("--model", cs_args->model, "trained model file")->required();
    sub->add_option("--in", cs_args->in_wav, "input WAV")->required();
    sub->add_option("--out", cs_args->out_wav, "output WAV")->required();
    sub->add_option("--pitch-scale", cs_args->pitch_scale, "multiply voiced f0 by this factor");
    sub->add_option("--metrics", cs_args->metrics, "metrics CSV");
    sub->add_flag("--deterministic-only", cs_args->deterministic_only,
                  "render only the deterministic excitation");
    sub->callback([cs_args]() { cmd_copysynth(*cs_args); });
  }

  auto id_args = std::make_shared<IdentifyArgs>();
  {
    auto* sub = app.add_subcommand("identify", "glottal-signature speaker identification");
    id_args->common.add(sub);
    sub->add_option("--train", id_args->train_manifest, "train manifest CSV")->required();
    sub->add_option("--test", id_args->test_manifest, "test manifest CSV")->required();
    sub->add_option("--report", id_args->report, "per-speaker rank report CSV");
    sub->add_option("--matrix-prefix", id_args->matrix_prefix,
                    "write raw distance matrices with this path prefix");
    sub->callback([id_args]() { cmd_identify(*id_args); });
  }

  auto sig_args = std::make_shared<SignatureArgs>();
  {
    auto* sub = app.add_subcommand("signature", "extract a glottal signature");
    sig_args->common.add(sub);
    sub->add_option("--manifest", sig_args->manifest, "corpus manifest CSV")->required();
    sub->add_option("--out", sig_args->out, "output signature file")->required();
    sub->add_option("--speaker", sig_args->speaker, "speaker id (required for multi-speaker manifests)");
    sub->add_option("--split", sig_args->split, "manifest split to use (train|test)")
        ->check(CLI::IsMember({"train", "test"}));
    sub->callback([sig_args]() { cmd_signature(*sig_args); });
  }

  auto conv_args = std::make_shared<ConvergenceArgs>();
  {
    auto* sub = app.add_subcommand("convergence", "signature estimation error vs frame count");
    conv_args->common.add(sub);
    sub->add_option("--manifest", conv_args->manifest, "corpus manifest CSV")->required();
    sub->add_option("--reference", conv_args->reference, "reference signature file")->required();
    sub->add_option("--sizes", conv_args->sizes, "comma-separated frame counts");
    sub->add_option("--out", conv_args->out, "output CSV")->required();
    sub->callback([conv_args]() { cmd_convergence(*conv_args); });
  }

  auto crd_args = std::make_shared<CrdArgs>();
  {
    auto* sub = app.add_subcommand("crd", "export the cumulative relative dispersion curve");
    crd_args->common.add(sub);
    sub->add_option("--model", crd_args->model, "trained model file")->required();
    sub->add_option("--out", crd_args->out, "output CSV")->required();
    sub->callback([crd_args]() { cmd_crd(*crd_args); });
  }

  auto pc_args = std::make_shared<PhoneClassArgs>();
  {
    auto* sub = app.add_subcommand(
        "phoneclass", "per-class vs pooled signature deviation report (class = session_id)");
    pc_args->common.add(sub);
    sub->add_option("--manifest", pc_args->manifest, "labeled corpus manifest CSV")->required();
    sub->add_option("--out", pc_args->out, "report CSV")->required();
    sub->callback([pc_args]() { cmd_phoneclass(*pc_args); });
  }

  auto exp_args = std::make_shared<ExportArgs>();
  {
    auto* sub = app.add_subcommand("export", "dump a model file as readable text");
    sub->add_option("--model", exp_args->model, "model file")->required();
    sub->add_option("--out", exp_args->out, "output text file")->required();
    sub->callback([exp_args]() { cmd_export(*exp_args); });
  }

  auto an_args = std::make_shared<AnalyzeArgs>();
  {
    auto* sub = app.add_subcommand("analyze", "dump analysis intermediates as CSV");
    an_args->common.add(sub);
    sub->add_option("--in", an_args->in_wav, "input WAV")->required();
    sub->add_option("--pitch-csv", an_args->pitch_csv, "pitch track CSV");
    sub->add_option("--gci-csv", an_args->gci_csv, "GCI positions CSV");
    sub->add_option("--env-csv", an_args->env_csv, "envelope gain CSV");
    sub->add_option("--frames-csv", an_args->frames_csv, "normalized frames CSV (one per row)");
    sub->add_option("--residual-wav", an_args->residual_wav, "residual signal WAV");
    sub->callback([an_args]() { cmd_analyze(*an_args); });
  }

  std::vector<std::string> full;
  full.reserve(args.size() + 1);
  full.push_back("dsmtool");
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : full) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace dsm
