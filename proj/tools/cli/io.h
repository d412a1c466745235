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

#ifndef DPTS_TOOLS_CLI_IO_H_
#define DPTS_TOOLS_CLI_IO_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dpts/privacy.h"
#include "dpts/sim.h"
#include "json.hpp"

namespace dpts::cli {

// Every real number in an output file goes through this: 12 significant
// digits, shortest of fixed/scientific.
std::string FormatNumber(double value);

// A header plus string cells, one vector per row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of `column` in the header; throws std::out_of_range.
  std::size_t Column(std::string_view column) const;
};

// RFC 4180: cells holding a comma, quote or newline are quoted. Lines end in
// "\n".
std::string ToCsv(const CsvTable& table);
// Inverse of ToCsv. Throws std::invalid_argument on ragged rows or an
// unterminated quote.
CsvTable ParseCsv(std::string_view text);

inline constexpr std::string_view kTraceFile = "trace.csv";
inline constexpr std::string_view kMeanTraceFile = "mean_trace.csv";
inline constexpr std::string_view kSummaryFile = "summary.csv";
inline constexpr std::string_view kSummaryJsonFile = "summary.json";
inline constexpr std::string_view kRawTraceFile = "raw_trace.csv";
inline constexpr std::string_view kPrivacyCurveCsvFile = "privacy_curve.csv";

// config_label,b,c,eta,run_id,t,cum_empirical_regret; one row per run per
// downsampled step.
CsvTable TraceTable(const ExperimentResult& result);
// config_label,b,c,eta,t,mean_cum_empirical_regret,mean_cum_pseudo_regret
CsvTable MeanTraceTable(const ExperimentResult& result);
// config_label,b,c,eta,mean_final_regret,stderr_final_regret,runtime_seconds
CsvTable SummaryTable(const ExperimentResult& result);

// Per-configuration details that do not fit the CSV schemas, plus run
// metadata. Holds the only timestamp of a simulate invocation.
nlohmann::json SummaryJson(const ExperimentConfig& config,
                           const ExperimentResult& result,
                           std::string_view config_path,
                           std::string_view generated_at);

// ε(δ) for one accounting method.
struct PrivacyCurve {
  AccountingMethod method = AccountingMethod::kGdp;
  std::int64_t horizon = 0;
  std::int64_t num_arms = 2;
  std::int64_t prepulls = 0;
  double variance_multiplier = 1.0;
  GdpPath gdp_path = GdpPath::kOriginal;
  std::vector<double> deltas;
  // nullopt marks a δ at which the method gives no guarantee.
  std::vector<std::optional<double>> epsilons;
};

// Marker written in place of ε for infeasible points.
inline constexpr std::string_view kInfeasibleMarker = "infeasible";

std::string PrivacyCurveJsonFile(AccountingMethod method);
// {method, T, N, b, c, points: [{epsilon, delta}], metadata {...}}. Infeasible
// points carry epsilon null.
nlohmann::json PrivacyCurveJson(const PrivacyCurve& curve);
// method,T,N,b,c,delta,epsilon over all curves.
CsvTable PrivacyCurveTable(const std::vector<PrivacyCurve>& curves);
// Inverse of PrivacyCurveJson, for round-trip checks.
PrivacyCurve PrivacyCurveFromJson(const nlohmann::json& doc);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace dpts::cli

#endif  // DPTS_TOOLS_CLI_IO_H_
