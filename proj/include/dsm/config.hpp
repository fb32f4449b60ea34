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

#ifndef DSM_CONFIG_HPP
#define DSM_CONFIG_HPP

#include <cstdint>
#include <string>

#include "dsm/pipeline.hpp"

namespace dsm {

// All operator-settable knobs, with the standard defaults.
struct RunConfig {
  double f0_star = 100.0;
  double fm = 4000.0;
  double f0_min = 60.0;
  double f0_max = 400.0;
  int lp_order = 0;  // 0 = auto (24 @ 16 kHz, 12 @ 8 kHz)
  int noise_order = 12;
  int k_det = 1;
  int min_frames = 1000;
  std::uint64_t seed = 0;
  int eigen_index = 1;
  std::string channel = "both";  // eigen | envelope | both
  std::string fusion = "mul";    // mul | add
  double alpha = 0.5;
  double beta = 0.5;

  TrainConfig train_config() const;
  // Throws std::invalid_argument on out-of-range values or an infeasible
  // (f0_star, fm, f0_min) combination for the given sample rate.
  void validate(int sample_rate) const;
};

// key=value overlay (UTF-8, '#' comments). Unknown keys are an error.
void apply_config_file(RunConfig& cfg, const std::string& path);

std::string config_echo(const RunConfig& cfg);

}  // namespace dsm

#endif  // DSM_CONFIG_HPP
