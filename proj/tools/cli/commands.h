// Copyright 2026 The dpts Authors
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

#ifndef DPTS_TOOLS_CLI_COMMANDS_H_
#define DPTS_TOOLS_CLI_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cli/io.h"
#include "dpts/privacy.h"

namespace dpts::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;

struct SimulateOptions {
  std::filesystem::path config_path;
  std::filesystem::path out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::optional<int> workers;
  bool force = false;
  // Also dump every per-step trace to raw_trace.csv.
  bool raw_traces = false;
};

// Writes trace.csv, mean_trace.csv, summary.csv and summary.json into
// out_dir and prints a summary table to `out`. Diagnostics go to `err`.
int Simulate(const SimulateOptions& options, std::ostream& out,
             std::ostream& err);

struct PrivacyCurveOptions {
  std::string method;  // gdp, rdp, advdp or all; empty defers to the config
  std::optional<std::int64_t> horizon;
  std::optional<std::int64_t> num_arms;
  std::optional<std::int64_t> prepulls;
  std::optional<double> variance_multiplier;
  std::optional<std::string> gdp_path;
  std::optional<double> delta_min;
  std::optional<double> delta_max;
  std::optional<int> points;
  std::optional<std::filesystem::path> config_path;
  std::filesystem::path out_dir;
  bool force = false;
};

// Resolves options against the config's privacy section and evaluates every
// requested curve. Throws ConfigError or std::invalid_argument on bad input.
// Unless gdp_path is given, the GDP curve follows the modified sampler when
// b or c is set and the standard one otherwise.
std::vector<PrivacyCurve> ComputePrivacyCurves(
    const PrivacyCurveOptions& options);

// Writes privacy_curve_<method>.json per method plus privacy_curve.csv.
int PrivacyCurveCommand(const PrivacyCurveOptions& options, std::ostream& out,
                        std::ostream& err);

struct SolveParamsOptions {
  double eta = 0.0;
  std::int64_t horizon = 0;
  std::int64_t num_arms = 2;
  std::vector<std::int64_t> prepulls;
};

struct SolveParamsRow {
  std::int64_t prepulls = 0;
  BcSolution solution;
};

std::vector<SolveParamsRow> SolveParams(const SolveParamsOptions& options);
int SolveParamsCommand(const SolveParamsOptions& options, std::ostream& out,
                       std::ostream& err);

struct RnmDemoOptions {
  std::vector<double> values;
  std::vector<double> sigmas;
  std::int64_t trials = 100000;
  std::uint64_t seed = 0;
};

struct RnmDemoRow {
  double frequency = 0.0;
  double exact = 0.0;
  double standard_error = 0.0;
};

std::vector<RnmDemoRow> RnmDemo(const RnmDemoOptions& options);
int RnmDemoCommand(const RnmDemoOptions& options, std::ostream& out,
                   std::ostream& err);

}  // namespace dpts::cli

#endif  // DPTS_TOOLS_CLI_COMMANDS_H_
