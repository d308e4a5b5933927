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
// dpcomm_cli: experiment driver over the dpcomm C API.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "commands.h"
#include "config.h"
#include "dpcomm/dpcomm.h"

namespace {

using dpcomm::cli::ApiError;
using dpcomm::cli::Config;
using dpcomm::cli::ConfigError;
using dpcomm::cli::Context;
using dpcomm::cli::Format;

// Library errors caused by bad inputs count as usage errors.
int ExitCodeFor(dpc_status status) {
  switch (status) {
    case DPC_ERR_INVALID_PARAMETER:
    case DPC_ERR_INVALID_ACTION:
    case DPC_ERR_ENUMERATION_BUDGET:
    case DPC_ERR_SINGULAR_TARGET:
    case DPC_ERR_NULL_ARGUMENT:
      return dpcomm::cli::kExitUsage;
    default:
      return dpcomm::cli::kExitFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private multi-agent communication experiments"};
  app.set_version_flag("--version", std::string(dpc_version()));
  app.require_subcommand(1);

  std::string config_path;
  uint64_t seed = 0;
  std::string out_dir;
  unsigned jobs = 1;
  std::string format = "csv";
  app.add_option("--config", config_path, "JSON experiment config")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--out", out_dir,
                 "Output directory (default: $DPCOMM_OUT_DIR, else ./out)");
  app.add_option("--jobs", jobs, "Worker threads for Monte-Carlo runs (0 = all cores)")
      ->capture_default_str();
  app.add_option("--format", format, "Table format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  const std::map<std::string, std::function<int(const Context&)>> commands = {
      {"calibrate", dpcomm::cli::RunCalibrate},
      {"binary-sums", dpcomm::cli::RunBinarySums},
      {"equilibrium", dpcomm::cli::RunEquilibrium},
      {"multi-round", dpcomm::cli::RunMultiRound},
      {"sender", dpcomm::cli::RunSender}};
  const std::map<std::string, std::string> help = {
      {"calibrate", "Noise calibration table over a parameter grid"},
      {"binary-sums", "Randomized-response binary sums, exact vs Monte Carlo"},
      {"equilibrium", "Nash equilibria of the two-player privacy game"},
      {"multi-round", "Markov potential game check and equilibrium policies"},
      {"sender", "Noise-aware vs noise-oblivious Gaussian message senders"}};
  for (const auto& [name, fn] : commands) {
    app.add_subcommand(name, help.at(name))->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : dpcomm::cli::kExitUsage;
  }

  std::string command;
  for (const auto& [name, fn] : commands) {
    if (app.got_subcommand(name)) command = name;
  }

  try {
    std::ifstream in(config_path, std::ios::binary);
    std::stringstream text;
    text << in.rdbuf();
    if (!in) throw ConfigError(config_path + ": cannot read config");
    const Config config(text.str(), config_path);

    std::filesystem::path out = out_dir;
    if (out.empty()) {
      const char* env = std::getenv("DPCOMM_OUT_DIR");
      out = (env && *env) ? env : "out";
    }
    std::filesystem::create_directories(out);

    Context ctx{config,
                seed,
                jobs,
                out,
                format == "json" ? Format::kJson : Format::kCsv,
                {command, config.Hash(), seed, dpc_version()}};
    return commands.at(command)(ctx);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return dpcomm::cli::kExitUsage;
  } catch (const ApiError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return ExitCodeFor(e.status());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return dpcomm::cli::kExitFailure;
  }
}
