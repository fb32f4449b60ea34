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

#ifndef DSM_MANIFEST_HPP
#define DSM_MANIFEST_HPP

#include <string>
#include <vector>

namespace dsm {

// One corpus file: CSV with header
//   speaker_id,session_id,wav_path,split
// split is "train" or "test". Relative wav paths resolve against the
// manifest's directory. For phone-class reports session_id doubles as the
// class label.
struct ManifestEntry {
  std::string speaker_id;
  std::string session_id;
  std::string wav_path;
  std::string split;
};

struct Manifest {
  std::vector<ManifestEntry> entries;

  std::vector<ManifestEntry> split(const std::string& which) const;
  // Distinct speaker ids in first-appearance order within the split.
  std::vector<std::string> speakers(const std::string& which) const;
  std::vector<std::string> paths_for(const std::string& speaker, const std::string& which) const;
};

// Parses and validates field presence; wav files are opened lazily by the
// commands so missing files fail with the offending path.
Manifest read_manifest(const std::string& path);

}  // namespace dsm

#endif  // DSM_MANIFEST_HPP
