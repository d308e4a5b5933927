// Copyright 2026 The dpcomm Authors
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
#include "config.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <regex>
#include <utility>

namespace dpcomm::cli {
namespace {

int LineAtOffset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + offset, '\n'));
}

std::string EscapeRegex(std::string_view s) {
  static const std::regex special(R"([.^$|()\[\]{}*+?\\])");
  return std::regex_replace(std::string(s), special, R"(\$&)");
}

}  // namespace

Config::Config(std::string text, std::string source)
    : text_(std::move(text)), source_(std::move(source)) {
  try {
    doc_ = nlohmann::json::parse(text_);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(source_ + ":" + std::to_string(LineAtOffset(text_, e.byte)) +
                      ": malformed JSON: " + e.what());
  }
  if (!doc_.is_object()) {
    throw ConfigError(source_ + ":1: the config must be a JSON object");
  }
}

int Config::LineOf(std::string_view key) const {
  const std::regex pattern("\"" + EscapeRegex(key) + "\"\\s*:");
  std::smatch m;
  if (std::regex_search(text_, m, pattern)) {
    return LineAtOffset(text_, static_cast<std::size_t>(m.position(0)));
  }
  return 1;
}

void Config::Fail(std::string_view key, const std::string& message) const {
  throw ConfigError(source_ + ":" + std::to_string(LineOf(key)) + ": '" +
                    std::string(key) + "': " + message);
}

void Config::Allow(std::initializer_list<std::string_view> allowed) const {
  for (const auto& [key, value] : doc_.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      Fail(key, "unknown key");
    }
  }
}

bool Config::Has(std::string_view key) const {
  return doc_.contains(std::string(key));
}

const nlohmann::json& Config::Get(std::string_view key) const {
  if (!Has(key)) {
    throw ConfigError(source_ + ":1: missing required key '" + std::string(key) +
                      "'");
  }
  return doc_.at(std::string(key));
}

double Config::AsNumber(const nlohmann::json& v, std::string_view key) const {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
  }
  if (!v.is_number()) Fail(key, "expected a number, got " + v.dump());
  return v.get<double>();
}

uint64_t Config::AsUnsigned(const nlohmann::json& v, std::string_view key) const {
  if (v.is_number_unsigned()) return v.get<uint64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d >= 0 && d == std::floor(d) && d < 1.8e19) return static_cast<uint64_t>(d);
  }
  Fail(key, "expected a non-negative integer, got " + v.dump());
}

double Config::Number(std::string_view key, std::optional<double> fallback) const {
  if (!Has(key) && fallback) return *fallback;
  return AsNumber(Get(key), key);
}

uint64_t Config::Unsigned(std::string_view key,
                          std::optional<uint64_t> fallback) const {
  if (!Has(key) && fallback) return *fallback;
  return AsUnsigned(Get(key), key);
}

bool Config::Flag(std::string_view key, bool fallback) const {
  if (!Has(key)) return fallback;
  const nlohmann::json& v = Get(key);
  if (!v.is_boolean()) Fail(key, "expected true or false, got " + v.dump());
  return v.get<bool>();
}

std::string Config::String(std::string_view key,
                           std::optional<std::string> fallback) const {
  if (!Has(key) && fallback) return *fallback;
  const nlohmann::json& v = Get(key);
  if (!v.is_string()) Fail(key, "expected a string, got " + v.dump());
  return v.get<std::string>();
}

std::vector<double> Config::Numbers(std::string_view key,
                                    std::optional<std::vector<double>> fallback) const {
  if (!Has(key) && fallback) return *fallback;
  const nlohmann::json& v = Get(key);
  std::vector<double> out;
  if (v.is_array()) {
    for (const auto& e : v) out.push_back(AsNumber(e, key));
    if (out.empty()) Fail(key, "expected a non-empty list");
  } else {
    out.push_back(AsNumber(v, key));
  }
  return out;
}

std::vector<uint64_t> Config::Unsigneds(
    std::string_view key, std::optional<std::vector<uint64_t>> fallback) const {
  if (!Has(key) && fallback) return *fallback;
  const nlohmann::json& v = Get(key);
  std::vector<uint64_t> out;
  if (v.is_array()) {
    for (const auto& e : v) out.push_back(AsUnsigned(e, key));
    if (out.empty()) Fail(key, "expected a non-empty list");
  } else {
    out.push_back(AsUnsigned(v, key));
  }
  return out;
}

std::string Config::Hash() const {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : doc_.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace dpcomm::cli
