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

#include "cli/io.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "cli/config.h"
#include "dpts/policy.h"

namespace dpts::cli {
namespace {

using nlohmann::json;

bool NeedsQuoting(std::string_view cell) {
  return cell.find_first_of(",\"\n\r") != std::string_view::npos;
}

void AppendCell(std::string& out, std::string_view cell) {
  if (!NeedsQuoting(cell)) {
    out.append(cell);
    return;
  }
  out.push_back('"');
  for (char ch : cell) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
}

std::string FormatInt(std::int64_t value) { return fmt::format("{}", value); }

json ArmJson(const RewardModel& arm) {
  if (arm.kind() == RewardModel::Kind::kBernoulli) {
    return {{"kind", "bernoulli"}, {"p", arm.parameter()}};
  }
  return {{"kind", "trunc_exp"}, {"lambda", arm.parameter()}};
}

json DeltaSplitJson(AccountingMethod method) {
  if (method == AccountingMethod::kAdvancedComposition) {
    return {{"rule", "delta_step = delta / (2 T)"},
            {"slack", "delta - T * delta_step = delta / 2"}};
  }
  return "none";
}

}  // namespace

std::string FormatNumber(double value) { return fmt::format("{:.12g}", value); }

std::size_t CsvTable::Column(std::string_view column) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == column) return i;
  }
  throw std::out_of_range(fmt::format("no CSV column '{}'", column));
}

std::string ToCsv(const CsvTable& table) {
  std::string out;
  auto append_row = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out.push_back(',');
      AppendCell(out, row[i]);
    }
    out.push_back('\n');
  };
  append_row(table.header);
  for (const auto& row : table.rows) append_row(row);
  return out;
}

CsvTable ParseCsv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string cell;
  bool quoted = false;
  bool cell_started = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        quoted = true;
        cell_started = true;
        break;
      case ',':
        record.push_back(std::move(cell));
        cell.clear();
        cell_started = true;
        break;
      case '\r':
        break;
      case '\n':
        record.push_back(std::move(cell));
        cell.clear();
        records.push_back(std::move(record));
        record.clear();
        cell_started = false;
        break;
      default:
        cell.push_back(ch);
        cell_started = true;
    }
  }
  if (quoted) throw std::invalid_argument("CSV: unterminated quoted cell");
  if (cell_started || !record.empty()) {
    record.push_back(std::move(cell));
    records.push_back(std::move(record));
  }
  if (records.empty()) throw std::invalid_argument("CSV: missing header");
  CsvTable table;
  table.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header.size()) {
      throw std::invalid_argument(fmt::format(
          "CSV: row {} has {} cells, header has {}", r + 1, records[r].size(),
          table.header.size()));
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

CsvTable TraceTable(const ExperimentResult& result) {
  CsvTable table{{"config_label", "b", "c", "eta", "run_id", "t",
                  "cum_empirical_regret"},
                 {}};
  for (const RegretSeries& series : result.series) {
    const std::string b = FormatInt(series.prepulls);
    const std::string c = FormatNumber(series.variance_multiplier);
    const std::string eta = FormatNumber(series.eta);
    for (std::size_t run = 0; run < series.empirical_by_run.size(); ++run) {
      for (std::size_t p = 0; p < series.steps.size(); ++p) {
        table.rows.push_back({series.label, b, c, eta,
                              FormatInt(static_cast<std::int64_t>(run)),
                              FormatInt(series.steps[p]),
                              FormatNumber(series.empirical_by_run[run][p])});
      }
    }
  }
  return table;
}

CsvTable MeanTraceTable(const ExperimentResult& result) {
  CsvTable table{{"config_label", "b", "c", "eta", "t",
                  "mean_cum_empirical_regret", "mean_cum_pseudo_regret"},
                 {}};
  for (const RegretSeries& series : result.series) {
    const std::string b = FormatInt(series.prepulls);
    const std::string c = FormatNumber(series.variance_multiplier);
    const std::string eta = FormatNumber(series.eta);
    for (std::size_t p = 0; p < series.steps.size(); ++p) {
      table.rows.push_back({series.label, b, c, eta, FormatInt(series.steps[p]),
                            FormatNumber(series.mean_empirical[p]),
                            FormatNumber(series.mean_pseudo[p])});
    }
  }
  return table;
}

CsvTable SummaryTable(const ExperimentResult& result) {
  CsvTable table{{"config_label", "b", "c", "eta", "mean_final_regret",
                  "stderr_final_regret", "runtime_seconds"},
                 {}};
  for (const RunSummary& s : result.summaries) {
    table.rows.push_back({s.label, FormatInt(s.prepulls),
                          FormatNumber(s.variance_multiplier),
                          FormatNumber(s.eta), FormatNumber(s.mean_final_regret),
                          FormatNumber(s.stderr_final_regret),
                          FormatNumber(s.wall_seconds)});
  }
  return table;
}

json SummaryJson(const ExperimentConfig& config, const ExperimentResult& result,
                 std::string_view config_path, std::string_view generated_at) {
  json arms = json::array();
  for (const RewardModel& arm : config.instance.arms()) {
    arms.push_back(ArmJson(arm));
  }
  json configs = json::array();
  for (const RunSummary& s : result.summaries) {
    TsConfig ts{.prepulls = s.prepulls,
                .variance_multiplier = s.variance_multiplier,
                .horizon = config.horizon};
    const std::optional<double> envelope =
        RegretBoundEnvelope(config.instance, ts);
    configs.push_back({
        {"label", s.label},
        {"b", s.prepulls},
        {"c", s.variance_multiplier},
        {"eta", s.eta},
        {"eta_target", s.eta_target ? json(*s.eta_target) : json(nullptr)},
        {"note", s.note},
        {"mean_final_regret", s.mean_final_regret},
        {"stderr_final_regret", s.stderr_final_regret},
        {"mean_final_pseudo_regret", s.mean_final_pseudo_regret},
        {"stderr_final_pseudo_regret", s.stderr_final_pseudo_regret},
        {"final_regret_by_run", s.final_empirical_regret},
        {"final_pseudo_regret_by_run", s.final_pseudo_regret},
        {"prepull_pseudo_regret_by_run", s.prepull_pseudo_regret},
        {"realized_eta_experimental_by_run", s.realized_eta},
        {"regret_envelope", envelope ? json(*envelope) : json(nullptr)},
        {"runtime_seconds", s.wall_seconds},
    });
  }
  json skipped = json::array();
  for (const SkippedConfig& s : result.skipped) {
    skipped.push_back({{"label", s.label}, {"reason", s.reason}});
  }
  return {
      {"config_path", config_path},
      {"generated_at", generated_at},
      {"horizon", config.horizon},
      {"runs", config.runs},
      {"seed", config.seed},
      {"workers", config.workers},
      {"max_trace_points", config.max_trace_points},
      {"seed_derivation",
       "run r of config k uses splitmix64(splitmix64(splitmix64(seed) + k) + r)"},
      {"instance", {{"arms", arms}, {"gaps", std::vector<double>(
                                                 config.instance.gaps().begin(),
                                                 config.instance.gaps().end())}}},
      {"configs", configs},
      {"skipped", skipped},
      {"realized_eta_note",
       "composition of 1/sqrt(c (n+1)) over sampling steps of each run; "
       "experimental, not a worst-case guarantee"},
  };
}

std::string PrivacyCurveJsonFile(AccountingMethod method) {
  return fmt::format("privacy_curve_{}.json", ToString(method));
}

json PrivacyCurveJson(const PrivacyCurve& curve) {
  json points = json::array();
  for (std::size_t i = 0; i < curve.deltas.size(); ++i) {
    points.push_back(
        {{"epsilon", curve.epsilons[i] ? json(*curve.epsilons[i]) : json(nullptr)},
         {"delta", curve.deltas[i]}});
  }
  json metadata = {
      {"tolerances",
       {{"epsilon_bisection", kEpsilonTolerance},
        {"quadrature_window_sigmas", kQuadratureWindowSigmas}}},
      {"delta_split", DeltaSplitJson(curve.method)},
      {"infeasible_marker", "epsilon null in JSON, \"infeasible\" in CSV"},
  };
  if (curve.method == AccountingMethod::kGdp) {
    metadata["gdp_path"] = ToString(curve.gdp_path);
  }
  return {{"method", ToString(curve.method)},
          {"T", curve.horizon},
          {"N", curve.num_arms},
          {"b", curve.prepulls},
          {"c", curve.variance_multiplier},
          {"points", points},
          {"metadata", metadata}};
}

CsvTable PrivacyCurveTable(const std::vector<PrivacyCurve>& curves) {
  CsvTable table{{"method", "T", "N", "b", "c", "delta", "epsilon"}, {}};
  for (const PrivacyCurve& curve : curves) {
    for (std::size_t i = 0; i < curve.deltas.size(); ++i) {
      table.rows.push_back(
          {std::string(ToString(curve.method)), FormatInt(curve.horizon),
           FormatInt(curve.num_arms), FormatInt(curve.prepulls),
           FormatNumber(curve.variance_multiplier), FormatNumber(curve.deltas[i]),
           curve.epsilons[i] ? FormatNumber(*curve.epsilons[i])
                             : std::string(kInfeasibleMarker)});
    }
  }
  return table;
}

PrivacyCurve PrivacyCurveFromJson(const json& doc) {
  PrivacyCurve curve;
  const auto method = ParseAccountingMethod(doc.at("method").get<std::string>());
  if (!method) throw std::invalid_argument("unknown method in privacy curve");
  curve.method = *method;
  curve.horizon = doc.at("T").get<std::int64_t>();
  curve.num_arms = doc.at("N").get<std::int64_t>();
  curve.prepulls = doc.at("b").get<std::int64_t>();
  curve.variance_multiplier = doc.at("c").get<double>();
  if (const auto& meta = doc.at("metadata"); meta.contains("gdp_path")) {
    curve.gdp_path = ParseGdpPath(meta.at("gdp_path").get<std::string>())
                         .value_or(GdpPath::kOriginal);
  }
  for (const json& point : doc.at("points")) {
    curve.deltas.push_back(point.at("delta").get<double>());
    const json& eps = point.at("epsilon");
    curve.epsilons.push_back(eps.is_null() ? std::nullopt
                                           : std::optional(eps.get<double>()));
  }
  return curve;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace dpts::cli
