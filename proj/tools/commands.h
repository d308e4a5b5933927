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
#ifndef DPCOMM_TOOLS_COMMANDS_H_
#define DPCOMM_TOOLS_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "config.h"
#include "dpcomm/dpcomm.h"
#include "output.h"

namespace dpcomm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

// A failing library call.
class ApiError : public std::runtime_error {
 public:
  ApiError(dpc_status status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  dpc_status status() const { return status_; }

 private:
  dpc_status status_;
};

void Check(dpc_status status);

struct Context {
  const Config& config;
  uint64_t seed = 0;
  unsigned jobs = 1;
  std::filesystem::path out_dir;
  Format format = Format::kCsv;
  Provenance provenance;

  // Writes `table` as <out_dir>/<table.name>.{csv,json} and echoes the path.
  void Emit(const Table& table) const;
  void EmitPlot(const std::string& stem, const PlotSpec& spec,
                const std::vector<Series>& series) const;
};

// Each returns a process exit code.
int RunCalibrate(const Context& ctx);
int RunBinarySums(const Context& ctx);
int RunEquilibrium(const Context& ctx);
int RunMultiRound(const Context& ctx);
int RunSender(const Context& ctx);

}  // namespace dpcomm::cli

#endif  // DPCOMM_TOOLS_COMMANDS_H_
