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

#include "dsm/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dsm/deterministic.hpp"

namespace dsm {

TrainConfig RunConfig::train_config() const {
  TrainConfig t;
  t.f0_star = f0_star;
  t.fm = fm;
  t.pitch.f0_min = f0_min;
  t.pitch.f0_max = f0_max;
  t.lp_order = lp_order;
  t.noise_order = noise_order;
  t.k_det = k_det;
  t.min_frames = min_frames;
  t.seed = seed;
  return t;
}

void RunConfig::validate(int sample_rate) const {
  if (sample_rate <= 0) throw std::invalid_argument("sample rate must be positive");
  if (f0_min <= 0.0 || f0_min >= f0_max)
    throw std::invalid_argument("need 0 < f0_min < f0_max");
  if (f0_star <= 0.0) throw std::invalid_argument("f0_star must be positive");
  if (fm <= 0.0 || fm > sample_rate / 2.0)
    throw std::invalid_argument("fm must be in (0, Nyquist]");
  if (lp_order != 0 && lp_order < 2) throw std::invalid_argument("lp order must be >= 2");
  if (noise_order < 2) throw std::invalid_argument("noise AR order must be >= 2");
  if (k_det < 1) throw std::invalid_argument("k_det must be >= 1");
  if (eigen_index < 1) throw std::invalid_argument("eigen index must be >= 1");
  if (channel != "eigen" && channel != "envelope" && channel != "both")
    throw std::invalid_argument("channel must be eigen, envelope or both");
  if (fusion != "mul" && fusion != "add")
    throw std::invalid_argument("fusion must be mul or add");
  if (alpha < 0.0 || alpha > 1.0 || beta < 0.0 || beta > 1.0)
    throw std::invalid_argument("alpha and beta must lie in [0, 1]");

  PitchConstraint c;
  c.f0_star = f0_star;
  c.fm = fm;
  c.f_nyquist = sample_rate / 2.0;
  c.f0_min = f0_min;
  if (!validate_pitch_constraint(c)) {
    std::ostringstream os;
    os << "pitch normalization constraint violated: f0_star=" << f0_star
       << " must not exceed (f_nyquist/fm)*f0_min=" << (c.f_nyquist / fm * f0_min)
       << " (lower f0_star, lower fm, or raise f0_min)";
    throw std::invalid_argument(os.str());
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const char* ws = " \t\r\n";
      const auto b = s.find_first_not_of(ws);
      if (b == std::string::npos) return std::string();
      return s.substr(b, s.find_last_not_of(ws) - b + 1);
    };
    const std::string all = trim(line);
    if (all.empty()) continue;
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string where = path + ":" + std::to_string(lineno);
    auto to_d = [&](const std::string& v) {
      try { return std::stod(v); }
      catch (...) { throw std::invalid_argument(where + ": bad value for " + key); }
    };
    auto to_i = [&](const std::string& v) {
      try { return std::stoi(v); }
      catch (...) { throw std::invalid_argument(where + ": bad value for " + key); }
    };
    if (key == "f0_star") cfg.f0_star = to_d(value);
    else if (key == "fm") cfg.fm = to_d(value);
    else if (key == "f0_min") cfg.f0_min = to_d(value);
    else if (key == "f0_max") cfg.f0_max = to_d(value);
    else if (key == "lp_order") cfg.lp_order = to_i(value);
    else if (key == "noise_order") cfg.noise_order = to_i(value);
    else if (key == "k_det") cfg.k_det = to_i(value);
    else if (key == "min_frames") cfg.min_frames = to_i(value);
    else if (key == "seed") {
      try { cfg.seed = std::stoull(value); }
      catch (...) { throw std::invalid_argument(where + ": bad value for seed"); }
    }
    else if (key == "eigen_index") cfg.eigen_index = to_i(value);
    else if (key == "channel") cfg.channel = value;
    else if (key == "fusion") cfg.fusion = value;
    else if (key == "alpha") cfg.alpha = to_d(value);
    else if (key == "beta") cfg.beta = to_d(value);
    else throw std::invalid_argument(where + ": unknown key '" + key + "'");
  }
}

std::string config_echo(const RunConfig& cfg) {
  std::ostringstream os;
  os << "config: f0_star=" << cfg.f0_star << " fm=" << cfg.fm << " f0_min=" << cfg.f0_min
     << " f0_max=" << cfg.f0_max << " lp_order=" << cfg.lp_order
     << " noise_order=" << cfg.noise_order << " k_det=" << cfg.k_det
     << " min_frames=" << cfg.min_frames << " seed=" << cfg.seed
     << " eigen_index=" << cfg.eigen_index << " channel=" << cfg.channel
     << " fusion=" << cfg.fusion << " alpha=" << cfg.alpha << " beta=" << cfg.beta;
  return os.str();
}

}  // namespace dsm
