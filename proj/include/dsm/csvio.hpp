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

#ifndef DSM_CSVIO_HPP
#define DSM_CSVIO_HPP

#include <sstream>
#include <string>
#include <vector>

namespace dsm {

// CSV accumulator: a leading config-echo comment line, a header row,
// then data rows. save() is atomic (temp + rename).
class CsvWriter {
 public:
  void comment(const std::string& line) { out_ << "# " << line << "\n"; }
  void row(const std::vector<std::string>& fields);
  void save(const std::string& path) const;
  std::string str() const { return out_.str(); }

  static std::string num(double v);
  static std::string num(int v) { return std::to_string(v); }

 private:
  std::ostringstream out_;
};

// Minimal CSV reader: comma-separated, '#'-prefixed comment lines are
// skipped, fields trimmed of surrounding whitespace.
std::vector<std::vector<std::string>> read_csv(const std::string& path);

void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace dsm

#endif  // DSM_CSVIO_HPP
