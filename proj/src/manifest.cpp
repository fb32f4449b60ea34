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

#include "dsm/manifest.hpp"

#include <algorithm>
#include <stdexcept>

#include "dsm/csvio.hpp"

namespace dsm {

namespace {

std::string dirname(const std::string& path) {
  const auto pos = path.find_last_of('/');
  return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

}  // namespace

Manifest read_manifest(const std::string& path) {
  const auto rows = read_csv(path);
  if (rows.empty()) throw std::runtime_error("empty manifest: " + path);
  const auto& header = rows.front();
  if (header.size() < 4 || header[0] != "speaker_id" || header[1] != "session_id" ||
      header[2] != "wav_path" || header[3] != "split")
    throw std::runtime_error(
        "manifest header must be speaker_id,session_id,wav_path,split: " + path);

  const std::string base = dirname(path);
  Manifest m;
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() < 4)
      throw std::runtime_error("manifest row " + std::to_string(r + 1) + " has fewer than 4 fields");
    ManifestEntry e;
    e.speaker_id = row[0];
    e.session_id = row[1];
    e.wav_path = row[2];
    e.split = row[3];
    if (e.speaker_id.empty())
      throw std::runtime_error("manifest row " + std::to_string(r + 1) + ": empty speaker_id");
    if (e.split != "train" && e.split != "test")
      throw std::runtime_error("manifest row " + std::to_string(r + 1) +
                               ": split must be 'train' or 'test'");
    if (!e.wav_path.empty() && e.wav_path[0] != '/') e.wav_path = base + "/" + e.wav_path;
    m.entries.push_back(std::move(e));
  }
  return m;
}

std::vector<ManifestEntry> Manifest::split(const std::string& which) const {
  std::vector<ManifestEntry> out;
  for (const auto& e : entries)
    if (e.split == which) out.push_back(e);
  return out;
}

std::vector<std::string> Manifest::speakers(const std::string& which) const {
  std::vector<std::string> out;
  for (const auto& e : entries) {
    if (e.split != which) continue;
    if (std::find(out.begin(), out.end(), e.speaker_id) == out.end())
      out.push_back(e.speaker_id);
  }
  return out;
}

std::vector<std::string> Manifest::paths_for(const std::string& speaker,
                                             const std::string& which) const {
  std::vector<std::string> out;
  for (const auto& e : entries)
    if (e.split == which && e.speaker_id == speaker) out.push_back(e.wav_path);
  return out;
}

}  // namespace dsm
