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

#include "shufflesum/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace shufflesum {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line, section;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty())
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": empty section name");
      cfg.sections_[section];
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    if (section.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": key outside any [section]");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key");
    cfg.sections_[section][key] = value;
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

bool Config::has(const std::string& section, const std::string& key) const {
  auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

const std::string& Config::get(const std::string& section,
                               const std::string& key) const {
  auto s = sections_.find(section);
  if (s == sections_.end())
    throw std::invalid_argument("config: no section [" + section + "]");
  auto k = s->second.find(key);
  if (k == s->second.end())
    throw std::invalid_argument("config: no key " + key + " in [" + section +
                                "]");
  return k->second;
}

void Config::set(const std::string& section, const std::string& key,
                 std::string value) {
  sections_[section][key] = std::move(value);
}

std::string Config::serialize() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, kv] : sections_) {
    if (!first) os << '\n';
    first = false;
    os << '[' << name << "]\n";
    for (const auto& [key, value] : kv) os << key << " = " << value << '\n';
  }
  return os.str();
}

void write_binary_section(Config& config, const BinaryParams& params) {
  std::ostringstream eps, s, p;
  eps.precision(17);
  s.precision(17);
  p.precision(17);
  eps << params.epsilon;
  s << params.s;
  p << params.p;
  config.set("binary", "epsilon", eps.str());
  config.set("binary", "n", std::to_string(params.n));
  config.set("binary", "d", std::to_string(params.d));
  config.set("binary", "s", s.str());
  config.set("binary", "p", p.str());
  config.set("binary", "mode",
             params.mode == ParamMode::paper_exact ? "paper_exact"
                                                   : "engineering");
}

BinaryParams read_binary_section(const Config& config) {
  static const char* kKnown[] = {"epsilon", "n", "d", "s", "p", "mode"};
  auto it = config.sections().find("binary");
  if (it == config.sections().end())
    throw std::invalid_argument("config: missing [binary] section");
  for (const auto& [key, value] : it->second) {
    bool known = false;
    for (const char* k : kKnown) known |= (key == k);
    if (!known)
      throw std::invalid_argument("config: unknown key '" + key +
                                  "' in [binary]");
  }
  const std::string& mode = config.get("binary", "mode");
  if (mode != "paper_exact" && mode != "engineering")
    throw std::invalid_argument("config: mode must be paper_exact or "
                                "engineering");
  BinaryParams p = explicit_params(std::stod(config.get("binary", "epsilon")),
                                   std::stol(config.get("binary", "n")),
                                   std::stoll(config.get("binary", "d")),
                                   std::stod(config.get("binary", "s")),
                                   std::stod(config.get("binary", "p")));
  p.mode = mode == "paper_exact" ? ParamMode::paper_exact
                                 : ParamMode::engineering;
  return p;
}

}  // namespace shufflesum
