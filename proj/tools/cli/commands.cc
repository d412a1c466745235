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

#include "cli/commands.h"

#include <chrono>
#include <cmath>
#include <exception>
#include <stdexcept>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "cli/config.h"
#include "dpts/policy.h"
#include "dpts/random.h"
#include "dpts/sim.h"

namespace dpts::cli {
namespace {

namespace fs = std::filesystem;

std::string UtcTimestamp() {
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}",
                     std::chrono::time_point_cast<std::chrono::seconds>(
                         std::chrono::system_clock::now()));
}

// Creates `dir` and refuses to clobber any of `files` without `force`.
void PrepareOutputDir(const fs::path& dir, const std::vector<std::string>& files,
                      bool force) {
  fs::create_directories(dir);
  if (force) return;
  for (const std::string& name : files) {
    if (fs::exists(dir / name)) {
      throw std::runtime_error(fmt::format(
          "{} already exists; pass --force to overwrite", (dir / name).string()));
    }
  }
}

CsvTable RawTraceTable(const ExperimentConfig& config,
                       const ExperimentResult& result) {
  CsvTable table{{"config_label", "run_id", "t", "arm", "reward",
                  "cum_empirical_regret", "cum_pseudo_regret"},
                 {}};
  for (const RunSummary& s : result.summaries) {
    const TsConfig ts{.prepulls = s.prepulls,
                      .variance_multiplier = s.variance_multiplier,
                      .horizon = config.horizon};
    for (int run = 0; run < config.runs; ++run) {
      const RegretTrace trace = RunOnce(
          config.instance, ts,
          DeriveSeed(config.seed, s.config_index, static_cast<std::uint64_t>(run)));
      for (std::size_t t = 0; t < trace.length(); ++t) {
        table.rows.push_back({s.label, fmt::format("{}", run),
                              fmt::format("{}", t + 1),
                              fmt::format("{}", trace.actions[t]),
                              FormatNumber(trace.rewards[t]),
                              FormatNumber(trace.cum_empirical_regret[t]),
                              FormatNumber(trace.cum_pseudo_regret[t])});
      }
    }
  }
  return table;
}

void PrintSummary(const ExperimentResult& result, std::ostream& out) {
  fmt::print(out, "{:<20} {:>7} {:>12} {:>9} {:>14} {:>10} {:>14} {:>9}\n",
             "config", "b", "c", "eta", "final_regret", "stderr",
             "pseudo_regret", "seconds");
  for (const RunSummary& s : result.summaries) {
    fmt::print(out,
               "{:<20} {:>7} {:>12.6g} {:>9.4g} {:>14.6g} {:>10.4g} {:>14.6g} "
               "{:>9.3f}\n",
               s.label, s.prepulls, s.variance_multiplier, s.eta,
               s.mean_final_regret, s.stderr_final_regret,
               s.mean_final_pseudo_regret, s.wall_seconds);
  }
}

std::vector<AccountingMethod> RequestedMethods(const std::string& method) {
  if (method == "all") {
    return {AccountingMethod::kGdp, AccountingMethod::kRdp,
            AccountingMethod::kAdvancedComposition};
  }
  const auto parsed = ParseAccountingMethod(method);
  if (!parsed) {
    throw std::invalid_argument(fmt::format(
        "unknown method '{}' (expected gdp, rdp, advdp or all)", method));
  }
  return {*parsed};
}

template <typename Fn>
int Guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitError;
  }
}

}  // namespace

int Simulate(const SimulateOptions& options, std::ostream& out,
             std::ostream& err) {
  return Guarded(err, [&] {
    const std::string source = options.config_path.string();
    ExperimentConfig config =
        ReadExperimentConfig(LoadConfigFile(options.config_path), source);
    if (options.seed) config.seed = *options.seed;
    if (options.runs) {
      if (*options.runs < 1) throw std::invalid_argument("--runs must be >= 1");
      config.runs = *options.runs;
    }
    if (options.workers) {
      if (*options.workers < 1) {
        throw std::invalid_argument("--workers must be >= 1");
      }
      config.workers = *options.workers;
    }

    std::vector<std::string> files = {
        std::string(kTraceFile), std::string(kMeanTraceFile),
        std::string(kSummaryFile), std::string(kSummaryJsonFile)};
    if (options.raw_traces) files.emplace_back(kRawTraceFile);
    PrepareOutputDir(options.out_dir, files, options.force);

    const ExperimentResult result = RunExperiment(config);
    for (const SkippedConfig& s : result.skipped) {
      fmt::print(err, "warning: config '{}' skipped: {}\n", s.label, s.reason);
    }
    for (const RunSummary& s : result.summaries) {
      if (!s.note.empty()) {
        fmt::print(err, "warning: config '{}': {} (eta = {:.6g})\n", s.label,
                   s.note, s.eta);
      }
    }
    if (result.summaries.empty()) {
      throw std::runtime_error("every configuration was infeasible");
    }

    WriteFile(options.out_dir / kTraceFile, ToCsv(TraceTable(result)));
    WriteFile(options.out_dir / kMeanTraceFile, ToCsv(MeanTraceTable(result)));
    WriteFile(options.out_dir / kSummaryFile, ToCsv(SummaryTable(result)));
    WriteFile(options.out_dir / kSummaryJsonFile,
              SummaryJson(config, result, source, UtcTimestamp()).dump(2) + "\n");
    if (options.raw_traces) {
      WriteFile(options.out_dir / kRawTraceFile,
                ToCsv(RawTraceTable(config, result)));
    }
    PrintSummary(result, out);
    fmt::print(out, "wrote {} configurations to {}\n", result.summaries.size(),
               options.out_dir.string());
    return kExitOk;
  });
}

std::vector<PrivacyCurve> ComputePrivacyCurves(
    const PrivacyCurveOptions& options) {
  PrivacySection section;
  if (options.config_path) {
    section = ReadPrivacySection(LoadConfigFile(*options.config_path),
                                 options.config_path->string());
  }
  if (!options.method.empty()) section.method = options.method;
  if (options.horizon) section.horizon = options.horizon;
  if (options.num_arms) section.num_arms = options.num_arms;
  if (options.prepulls) section.prepulls = options.prepulls;
  if (options.variance_multiplier) {
    section.variance_multiplier = options.variance_multiplier;
  }
  if (options.gdp_path) {
    section.gdp_path = ParseGdpPath(*options.gdp_path);
    if (!section.gdp_path) {
      throw std::invalid_argument("--gdp-path must be original or modified");
    }
  }
  if (options.delta_min) section.delta_min = *options.delta_min;
  if (options.delta_max) section.delta_max = *options.delta_max;
  if (options.points) section.points = *options.points;

  if (!section.horizon || *section.horizon < 1) {
    throw std::invalid_argument("T is required and must be >= 1");
  }
  if (!section.num_arms || *section.num_arms < 2) {
    throw std::invalid_argument("N is required and must be >= 2");
  }
  const std::int64_t b = section.prepulls.value_or(0);
  const double c = section.variance_multiplier.value_or(1.0);
  if (b < 0) throw std::invalid_argument("b must be >= 0");
  if (!(c >= 1.0)) throw std::invalid_argument("c must be >= 1");
  if (!(section.delta_min > 0.0 && section.delta_min <= section.delta_max &&
        section.delta_max < 1.0)) {
    throw std::invalid_argument("need 0 < delta-min <= delta-max < 1");
  }
  const GdpPath path = section.gdp_path.value_or(
      section.prepulls || section.variance_multiplier ? GdpPath::kModified
                                                      : GdpPath::kOriginal);
  const std::vector<double> grid =
      LogSpacedGrid(section.delta_min, section.delta_max, section.points);

  std::vector<PrivacyCurve> curves;
  for (AccountingMethod method : RequestedMethods(section.method)) {
    PrivacyCurve curve{.method = method,
                       .horizon = *section.horizon,
                       .num_arms = *section.num_arms,
                       .prepulls = b,
                       .variance_multiplier = c,
                       .gdp_path = path,
                       .deltas = grid,
                       .epsilons = {}};
    const AccountantQuery query{.horizon = curve.horizon,
                                .num_arms = curve.num_arms,
                                .prepulls = b,
                                .variance_multiplier = c,
                                .method = method,
                                .gdp_path = path};
    for (double delta : grid) {
      curve.epsilons.push_back(EpsilonForDelta(query, delta));
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

int PrivacyCurveCommand(const PrivacyCurveOptions& options, std::ostream& out,
                        std::ostream& err) {
  return Guarded(err, [&] {
    const std::vector<PrivacyCurve> curves = ComputePrivacyCurves(options);
    std::vector<std::string> files = {std::string(kPrivacyCurveCsvFile)};
    for (const PrivacyCurve& curve : curves) {
      files.push_back(PrivacyCurveJsonFile(curve.method));
    }
    PrepareOutputDir(options.out_dir, files, options.force);
    for (const PrivacyCurve& curve : curves) {
      WriteFile(options.out_dir / PrivacyCurveJsonFile(curve.method),
                PrivacyCurveJson(curve).dump(2) + "\n");
      std::size_t infeasible = 0;
      for (const auto& eps : curve.epsilons) infeasible += eps ? 0 : 1;
      if (infeasible > 0) {
        fmt::print(err, "warning: {}: {} of {} delta values infeasible\n",
                   ToString(curve.method), infeasible, curve.deltas.size());
      }
    }
    WriteFile(options.out_dir / kPrivacyCurveCsvFile,
              ToCsv(PrivacyCurveTable(curves)));

    fmt::print(out, "{:>12}", "delta");
    for (const PrivacyCurve& curve : curves) {
      fmt::print(out, " {:>14}", fmt::format("eps_{}", ToString(curve.method)));
    }
    fmt::print(out, "\n");
    for (std::size_t i = 0; i < curves.front().deltas.size(); ++i) {
      fmt::print(out, "{:>12.4g}", curves.front().deltas[i]);
      for (const PrivacyCurve& curve : curves) {
        if (curve.epsilons[i]) {
          fmt::print(out, " {:>14.8g}", *curve.epsilons[i]);
        } else {
          fmt::print(out, " {:>14}", kInfeasibleMarker);
        }
      }
      fmt::print(out, "\n");
    }
    return kExitOk;
  });
}

std::vector<SolveParamsRow> SolveParams(const SolveParamsOptions& options) {
  if (!(options.eta > 0.0) || !std::isfinite(options.eta)) {
    throw std::invalid_argument("eta must be > 0");
  }
  if (options.horizon < 1) throw std::invalid_argument("T must be >= 1");
  if (options.num_arms < 2) throw std::invalid_argument("N must be >= 2");
  std::vector<SolveParamsRow> rows;
  for (std::int64_t b : options.prepulls) {
    if (b < 0) throw std::invalid_argument("b values must be >= 0");
    rows.push_back({b, SolveBc(GdpBudget(options.eta), options.horizon, b,
                               options.num_arms)});
  }
  return rows;
}

int SolveParamsCommand(const SolveParamsOptions& options, std::ostream& out,
                       std::ostream& err) {
  return Guarded(err, [&] {
    const std::vector<SolveParamsRow> rows = SolveParams(options);
    fmt::print(out, "{:>10} {:>16} {:>9}  {}\n", "b", "c", "feasible", "reason");
    for (const SolveParamsRow& row : rows) {
      const bool ok = row.solution.status == BcStatus::kOk;
      const bool horizon_ok =
          row.solution.status != BcStatus::kHorizonInfeasible;
      fmt::print(out, "{:>10} {:>16} {:>9}  {}\n", row.prepulls,
                 horizon_ok ? FormatNumber(row.solution.variance_multiplier)
                            : std::string("-"),
                 ok ? "yes" : "no", ok ? "-" : ToString(row.solution.status));
    }
    return kExitOk;
  });
}

std::vector<RnmDemoRow> RnmDemo(const RnmDemoOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (options.values.size() != options.sigmas.size()) {
    throw std::invalid_argument("values and sigmas must have equal length");
  }
  const std::vector<double> exact =
      SelectionProbabilities(options.values, options.sigmas);
  std::vector<std::int64_t> counts(options.values.size(), 0);
  Rng rng(options.seed);
  for (std::int64_t i = 0; i < options.trials; ++i) {
    ++counts[ReportNoisyMax(options.values, options.sigmas, rng)];
  }
  std::vector<RnmDemoRow> rows;
  const auto trials = static_cast<double>(options.trials);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    rows.push_back({static_cast<double>(counts[i]) / trials, exact[i],
                    std::sqrt(exact[i] * (1.0 - exact[i]) / trials)});
  }
  return rows;
}

int RnmDemoCommand(const RnmDemoOptions& options, std::ostream& out,
                   std::ostream& err) {
  return Guarded(err, [&] {
    const std::vector<RnmDemoRow> rows = RnmDemo(options);
    fmt::print(out, "{:>5} {:>10} {:>10} {:>12} {:>12} {:>10}\n", "index",
               "value", "sigma", "frequency", "exact", "z");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const RnmDemoRow& row = rows[i];
      const double z = row.standard_error > 0.0
                           ? (row.frequency - row.exact) / row.standard_error
                           : 0.0;
      fmt::print(out, "{:>5} {:>10.6g} {:>10.6g} {:>12.6f} {:>12.6f} {:>10.3f}\n",
                 i, options.values[i], options.sigmas[i], row.frequency,
                 row.exact, z);
    }
    return kExitOk;
  });
}

}  // namespace dpts::cli
