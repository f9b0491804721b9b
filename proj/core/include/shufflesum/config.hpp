// Copyright 2026 The shufflesum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SHUFFLESUM_CONFIG_HPP
#define SHUFFLESUM_CONFIG_HPP

#include <map>
#include <string>

#include "shufflesum/binary_protocol.hpp"

namespace shufflesum {

inline constexpr const char* kVersion = "0.1.0";

// Flat key-value config with [section] headers, UTF-8, '#' comments.
// Section and key names are case-sensitive; values are strings until a
// consumer parses them. Unknown keys are rejected by the consumers.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  const std::string& get(const std::string& section,
                         const std::string& key) const;
  void set(const std::string& section, const std::string& key,
           std::string value);

  const std::map<std::string, std::map<std::string, std::string>>& sections()
      const {
    return sections_;
  }

  std::string serialize() const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

// `[binary]` section with keys epsilon, n, d, s, p, mode.
void write_binary_section(Config& config, const BinaryParams& params);
BinaryParams read_binary_section(const Config& config);

}  // namespace shufflesum

#endif  // SHUFFLESUM_CONFIG_HPP
