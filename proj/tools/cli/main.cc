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

// dpts: simulations and privacy accounting for differentially private
// Thompson Sampling.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli/commands.h"

int main(int argc, char** argv) {
  using namespace dpts::cli;

  CLI::App app{"Differentially private Thompson Sampling: simulation and "
               "privacy accounting"};
  app.require_subcommand(1);

  SimulateOptions simulate;
  std::uint64_t seed = 0;
  int runs = 0;
  int workers = 0;
  auto* sim = app.add_subcommand("simulate", "Run a regret experiment");
  sim->add_option("--config", simulate.config_path, "Experiment config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  sim->add_option("--out", simulate.out_dir, "Output directory")->required();
  auto* seed_opt = sim->add_option("--seed", seed, "Override the master seed");
  auto* runs_opt = sim->add_option("--runs", runs, "Override runs per config")
                       ->check(CLI::PositiveNumber);
  auto* workers_opt = sim->add_option("--workers", workers, "Worker threads")
                          ->check(CLI::PositiveNumber);
  sim->add_flag("--force", simulate.force, "Overwrite existing outputs");
  sim->add_flag("--raw-traces", simulate.raw_traces,
                "Also write every per-step trace to raw_trace.csv");

  PrivacyCurveOptions curve;
  std::int64_t horizon = 0;
  std::int64_t num_arms = 0;
  std::int64_t prepulls = 0;
  double variance_multiplier = 1.0;
  std::string gdp_path;
  double delta_min = 0.0;
  double delta_max = 0.0;
  int points = 0;
  std::string curve_config;
  auto* priv = app.add_subcommand("privacy-curve", "Tabulate epsilon(delta)");
  priv->add_option("--method", curve.method, "gdp, rdp, advdp or all")
      ->check(CLI::IsMember({"gdp", "rdp", "advdp", "all"}));
  auto* t_opt = priv->add_option("--T", horizon, "Horizon");
  auto* n_opt = priv->add_option("--N", num_arms, "Number of arms");
  auto* b_opt = priv->add_option("--b", prepulls, "Pre-pulls per arm");
  auto* c_opt = priv->add_option("--c", variance_multiplier,
                                 "Variance multiplier");
  auto* path_opt = priv->add_option("--gdp-path", gdp_path,
                                    "GDP accounting path: original or modified")
                       ->check(CLI::IsMember({"original", "modified"}));
  auto* dmin_opt = priv->add_option("--delta-min", delta_min, "Smallest delta");
  auto* dmax_opt = priv->add_option("--delta-max", delta_max, "Largest delta");
  auto* points_opt = priv->add_option("--points", points, "Grid size");
  auto* pconf_opt = priv->add_option("--config", curve_config,
                                     "Config whose privacy section sets defaults")
                        ->check(CLI::ExistingFile);
  priv->add_option("--out", curve.out_dir, "Output directory")->required();
  priv->add_flag("--force", curve.force, "Overwrite existing outputs");

  SolveParamsOptions solve;
  auto* sp = app.add_subcommand("solve-params",
                                "Variance multiplier c meeting a GDP budget");
  sp->add_option("--eta", solve.eta, "Target GDP parameter")->required();
  sp->add_option("--T", solve.horizon, "Horizon")->required();
  sp->add_option("--N", solve.num_arms, "Number of arms")->required();
  sp->add_option("--b", solve.prepulls, "Pre-pull counts")
      ->required()
      ->delimiter(',');

  RnmDemoOptions rnm;
  auto* rd = app.add_subcommand("rnm-demo",
                                "ReportNoisyMax frequencies against exact values");
  rd->add_option("--values", rnm.values, "Candidate values")
      ->required()
      ->delimiter(',');
  rd->add_option("--sigmas", rnm.sigmas, "Noise standard deviations")
      ->required()
      ->delimiter(',');
  rd->add_option("--trials", rnm.trials, "Trials")->check(CLI::PositiveNumber);
  rd->add_option("--seed", rnm.seed, "Seed");

  CLI11_PARSE(app, argc, argv);

  if (*sim) {
    if (*seed_opt) simulate.seed = seed;
    if (*runs_opt) simulate.runs = runs;
    if (*workers_opt) simulate.workers = workers;
    return Simulate(simulate, std::cout, std::cerr);
  }
  if (*priv) {
    if (*t_opt) curve.horizon = horizon;
    if (*n_opt) curve.num_arms = num_arms;
    if (*b_opt) curve.prepulls = prepulls;
    if (*c_opt) curve.variance_multiplier = variance_multiplier;
    if (*path_opt) curve.gdp_path = gdp_path;
    if (*dmin_opt) curve.delta_min = delta_min;
    if (*dmax_opt) curve.delta_max = delta_max;
    if (*points_opt) curve.points = points;
    if (*pconf_opt) curve.config_path = curve_config;
    return PrivacyCurveCommand(curve, std::cout, std::cerr);
  }
  if (*sp) return SolveParamsCommand(solve, std::cout, std::cerr);
  return RnmDemoCommand(rnm, std::cout, std::cerr);
}
