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
// Schema-checked access to a JSON experiment config. Every failure is
// reported as "<source>:<line>: <message>".

#ifndef DPCOMM_TOOLS_CONFIG_H_
#define DPCOMM_TOOLS_CONFIG_H_

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace dpcomm::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Config {
 public:
  // Parses `text`; throws ConfigError on malformed JSON or a non-object root.
  Config(std::string text, std::string source);

  // Rejects keys outside `allowed`.
  void Allow(std::initializer_list<std::string_view> allowed) const;

  bool Has(std::string_view key) const;
  const nlohmann::json& Get(std::string_view key) const;

  double Number(std::string_view key, std::optional<double> fallback = {}) const;
  uint64_t Unsigned(std::string_view key,
                    std::optional<uint64_t> fallback = {}) const;
  bool Flag(std::string_view key, bool fallback) const;
  std::string String(std::string_view key,
                     std::optional<std::string> fallback = {}) const;
  // A scalar is promoted to a one-element list.
  std::vector<double> Numbers(std::string_view key,
                              std::optional<std::vector<double>> fallback = {}) const;
  std::vector<uint64_t> Unsigneds(
      std::string_view key, std::optional<std::vector<uint64_t>> fallback = {}) const;

  // Element-level conversions for nested values belonging to `key`.
  double AsNumber(const nlohmann::json& v, std::string_view key) const;
  uint64_t AsUnsigned(const nlohmann::json& v, std::string_view key) const;

  [[noreturn]] void Fail(std::string_view key, const std::string& message) const;

  // FNV-1a 64 of the canonical (sorted, compact) serialization.
  std::string Hash() const;

 private:
  int LineOf(std::string_view key) const;

  std::string text_;
  std::string source_;
  nlohmann::json doc_;
};

}  // namespace dpcomm::cli

#endif  // DPCOMM_TOOLS_CONFIG_H_
