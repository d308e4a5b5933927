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
// Result tables and their CSV, JSON and SVG renderings.

#ifndef DPCOMM_TOOLS_OUTPUT_H_
#define DPCOMM_TOOLS_OUTPUT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace dpcomm::cli {

// Empty cells are std::monostate.
using Cell = std::variant<std::monostate, bool, int64_t, uint64_t, double, std::string>;

struct Table {
  std::string name;  // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void Add(std::vector<Cell> row);
};

struct Provenance {
  std::string command;
  std::string config_hash;
  uint64_t seed = 0;
  std::string version;
};

enum class Format { kCsv, kJson };

// Shortest round-trip decimal form; "nan", "inf" and "-inf" otherwise.
std::string FormatNumber(double x);

std::string RenderCsv(const Table& table, const Provenance& prov);
std::string RenderJson(const Table& table, const Provenance& prov);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
};

// Self-contained SVG line chart. Non-finite points (and non-positive ones
// on log axes) are skipped.
std::string RenderSvg(const PlotSpec& spec, const std::vector<Series>& series,
                      const Provenance& prov);

// Writes through a temporary file and renames it into place.
void WriteFile(const std::filesystem::path& path, const std::string& content);

}  // namespace dpcomm::cli

#endif  // DPCOMM_TOOLS_OUTPUT_H_
