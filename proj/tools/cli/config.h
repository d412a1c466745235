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

#ifndef DPTS_TOOLS_CLI_CONFIG_H_
#define DPTS_TOOLS_CLI_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dpts/privacy.h"
#include "dpts/sim.h"
#include "json.hpp"

namespace dpts::cli {

// A config problem, already formatted as "<source>:<line>:<col>: ..." for
// syntax errors or "<source>: <field>: ..." for schema errors.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The "privacy" section. Every field may be overridden on the command line.
struct PrivacySection {
  std::string method = "all";
  std::optional<std::int64_t> horizon;
  std::optional<std::int64_t> num_arms;
  std::optional<std::int64_t> prepulls;
  std::optional<double> variance_multiplier;
  std::optional<GdpPath> gdp_path;
  double delta_min = 1e-8;
  double delta_max = 1e-2;
  int points = 50;
};

// Parses JSON text; `source` names the input in diagnostics.
nlohmann::json ParseConfigText(std::string_view text, std::string_view source);
nlohmann::json LoadConfigFile(const std::filesystem::path& path);

// Reads the instance, horizon, runs, seed and configs sections. An empty
// configs list is an error ("no configurations").
ExperimentConfig ReadExperimentConfig(const nlohmann::json& doc,
                                      std::string_view source);

// Reads the privacy section; absent means all defaults. T and N fall back to
// the top-level horizon and the instance arm count when present.
PrivacySection ReadPrivacySection(const nlohmann::json& doc,
                                  std::string_view source);

std::optional<GdpPath> ParseGdpPath(std::string_view name);
std::string_view ToString(GdpPath path);

}  // namespace dpts::cli

#endif  // DPTS_TOOLS_CLI_CONFIG_H_
