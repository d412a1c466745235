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

#include "cli/config.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

#include <fmt/format.h>

namespace dpts::cli {
namespace {

using nlohmann::json;

// Tracks the field path of the value being read, for diagnostics.
class Reader {
 public:
  Reader(const json& value, std::string source, std::string path)
      : value_(value), source_(std::move(source)), path_(std::move(path)) {}

  [[noreturn]] void Fail(std::string_view what) const {
    throw ConfigError(fmt::format("{}: field '{}': {}", source_,
                                  path_.empty() ? "<root>" : path_, what));
  }

  const json& value() const { return value_; }
  const std::string& path() const { return path_; }

  bool Has(std::string_view key) const {
    return value_.is_object() && value_.contains(key);
  }

  Reader Field(std::string_view key) const {
    if (!value_.is_object()) Fail("expected an object");
    if (!value_.contains(key)) {
      Child(key).Fail("missing required field");
    }
    return Child(key);
  }

  Reader Element(std::size_t i) const {
    return Reader(value_.at(i), source_, fmt::format("{}[{}]", path_, i));
  }

  const json& Object() const {
    if (!value_.is_object()) Fail("expected an object");
    return value_;
  }

  const json& Array() const {
    if (!value_.is_array()) Fail("expected an array");
    return value_;
  }

  double Number() const {
    if (!value_.is_number()) Fail("expected a number");
    const double x = value_.get<double>();
    if (!std::isfinite(x)) Fail("expected a finite number");
    return x;
  }

  // Integers may be written as 100000 or 1e5.
  std::int64_t Integer() const {
    if (value_.is_number_integer()) return value_.get<std::int64_t>();
    const double x = Number();
    if (std::trunc(x) != x || std::abs(x) > 9.0e15) Fail("expected an integer");
    return static_cast<std::int64_t>(x);
  }

  std::int64_t NonNegativeInteger() const {
    const std::int64_t n = Integer();
    if (n < 0) Fail("expected a non-negative integer");
    return n;
  }

  std::int64_t PositiveInteger() const {
    const std::int64_t n = Integer();
    if (n < 1) Fail("expected a positive integer");
    return n;
  }

  std::string String() const {
    if (!value_.is_string()) Fail("expected a string");
    return value_.get<std::string>();
  }

  void AllowOnly(std::initializer_list<std::string_view> keys) const {
    for (const auto& [key, unused] : Object().items()) {
      bool known = false;
      for (std::string_view k : keys) known = known || key == k;
      if (!known) Child(key).Fail("unknown field");
    }
  }

 private:
  Reader Child(std::string_view key) const {
    static const json kNull;
    const json& child =
        value_.is_object() && value_.contains(key) ? value_.at(key) : kNull;
    return Reader(child, source_,
                  path_.empty() ? std::string(key)
                                : fmt::format("{}.{}", path_, key));
  }

  const json& value_;
  std::string source_;
  std::string path_;
};

RewardModel ReadArm(const Reader& arm) {
  const std::string kind = arm.Field("kind").String();
  if (kind == "bernoulli") {
    arm.AllowOnly({"kind", "p"});
    const Reader p = arm.Field("p");
    const double value = p.Number();
    if (!(value >= 0.0 && value <= 1.0)) p.Fail("p must lie in [0, 1]");
    return RewardModel::Bernoulli(value);
  }
  if (kind == "trunc_exp") {
    arm.AllowOnly({"kind", "lambda"});
    const Reader lambda = arm.Field("lambda");
    const double value = lambda.Number();
    if (!(value > 0.0)) lambda.Fail("lambda must be > 0");
    return RewardModel::TruncatedExponential(value);
  }
  arm.Field("kind").Fail(fmt::format(
      "unknown arm kind '{}' (expected \"bernoulli\" or \"trunc_exp\")", kind));
}

BanditInstance ReadInstance(const Reader& instance) {
  instance.AllowOnly({"arms"});
  const Reader arms = instance.Field("arms");
  std::vector<RewardModel> models;
  for (std::size_t i = 0; i < arms.Array().size(); ++i) {
    models.push_back(ReadArm(arms.Element(i)));
  }
  if (models.size() < 2) arms.Fail("need at least 2 arms");
  return BanditInstance(std::move(models));
}

std::string DefaultLabel(const ParamSpec& spec) {
  if (spec.eta_target.has_value()) {
    return fmt::format("b{}_eta{:.12g}", spec.prepulls, *spec.eta_target);
  }
  return fmt::format("b{}_c{:.12g}", spec.prepulls,
                     spec.variance_multiplier.value_or(1.0));
}

ParamSpec ReadParamSpec(const Reader& entry) {
  entry.AllowOnly({"label", "b", "c", "eta"});
  ParamSpec spec;
  spec.prepulls = entry.Has("b") ? entry.Field("b").NonNegativeInteger() : 0;
  if (entry.Has("c") && entry.Has("eta")) {
    entry.Fail("give at most one of 'c' and 'eta'");
  }
  if (entry.Has("c")) {
    const Reader c = entry.Field("c");
    spec.variance_multiplier = c.Number();
    if (!(*spec.variance_multiplier >= 1.0)) c.Fail("c must be >= 1");
  }
  if (entry.Has("eta")) {
    const Reader eta = entry.Field("eta");
    spec.eta_target = eta.Number();
    if (!(*spec.eta_target > 0.0)) eta.Fail("eta must be > 0");
  }
  spec.label = entry.Has("label") ? entry.Field("label").String()
                                  : DefaultLabel(spec);
  if (spec.label.empty()) entry.Field("label").Fail("label must be nonempty");
  return spec;
}

void CheckTopLevel(const Reader& root) {
  root.AllowOnly({"instance", "horizon", "runs", "seed", "configs", "privacy",
                  "workers", "max_trace_points", "description"});
}

}  // namespace

std::optional<GdpPath> ParseGdpPath(std::string_view name) {
  if (name == "original") return GdpPath::kOriginal;
  if (name == "modified") return GdpPath::kModified;
  return std::nullopt;
}

std::string_view ToString(GdpPath path) {
  return path == GdpPath::kOriginal ? "original" : "modified";
}

json ParseConfigText(std::string_view text, std::string_view source) {
  try {
    return json::parse(text.begin(), text.end(), /*cb=*/nullptr,
                       /*allow_exceptions=*/true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t end = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string message = e.what();
    if (const auto pos = message.find("syntax error"); pos != std::string::npos) {
      message = message.substr(pos);
    }
    throw ConfigError(fmt::format("{}:{}:{}: {}", source, line, column, message));
  }
}

json LoadConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError(fmt::format("{}: cannot open config file", path.string()));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseConfigText(buffer.str(), path.string());
}

ExperimentConfig ReadExperimentConfig(const json& doc, std::string_view source) {
  const Reader root(doc, std::string(source), "");
  root.Object();
  CheckTopLevel(root);
  ExperimentConfig config{.instance = ReadInstance(root.Field("instance")),
                          .horizon = 0,
                          .runs = 10,
                          .seed = 0,
                          .params = {},
                          .workers = 1,
                          .max_trace_points = 1000};
  config.horizon = root.Field("horizon").PositiveInteger();
  config.runs = root.Has("runs")
                    ? static_cast<int>(root.Field("runs").PositiveInteger())
                    : 10;
  config.seed = root.Has("seed")
                    ? static_cast<std::uint64_t>(
                          root.Field("seed").NonNegativeInteger())
                    : 0;
  if (root.Has("workers")) {
    config.workers = static_cast<int>(root.Field("workers").PositiveInteger());
  }
  if (root.Has("max_trace_points")) {
    config.max_trace_points = static_cast<std::size_t>(
        root.Field("max_trace_points").PositiveInteger());
  }
  const Reader configs = root.Field("configs");
  for (std::size_t i = 0; i < configs.Array().size(); ++i) {
    config.params.push_back(ReadParamSpec(configs.Element(i)));
  }
  if (config.params.empty()) configs.Fail("no configurations");
  for (std::size_t i = 0; i < config.params.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (config.params[i].label == config.params[j].label) {
        configs.Element(i).Fail(fmt::format("duplicate label '{}'",
                                            config.params[i].label));
      }
    }
  }
  return config;
}

PrivacySection ReadPrivacySection(const json& doc, std::string_view source) {
  const Reader root(doc, std::string(source), "");
  root.Object();
  CheckTopLevel(root);
  PrivacySection section;
  if (root.Has("horizon")) section.horizon = root.Field("horizon").PositiveInteger();
  if (root.Has("instance")) {
    section.num_arms = static_cast<std::int64_t>(
        ReadInstance(root.Field("instance")).num_arms());
  }
  if (!root.Has("privacy")) return section;
  const Reader privacy = root.Field("privacy");
  privacy.AllowOnly({"method", "T", "N", "b", "c", "gdp_path", "delta_min",
                     "delta_max", "points"});
  if (privacy.Has("method")) {
    const Reader method = privacy.Field("method");
    section.method = method.String();
    if (section.method != "all" && !ParseAccountingMethod(section.method)) {
      method.Fail("expected one of gdp, rdp, advdp, all");
    }
  }
  if (privacy.Has("T")) section.horizon = privacy.Field("T").PositiveInteger();
  if (privacy.Has("N")) {
    const Reader n = privacy.Field("N");
    section.num_arms = n.Integer();
    if (*section.num_arms < 2) n.Fail("N must be >= 2");
  }
  if (privacy.Has("b")) section.prepulls = privacy.Field("b").NonNegativeInteger();
  if (privacy.Has("c")) {
    const Reader c = privacy.Field("c");
    section.variance_multiplier = c.Number();
    if (!(*section.variance_multiplier >= 1.0)) c.Fail("c must be >= 1");
  }
  if (privacy.Has("gdp_path")) {
    const Reader path = privacy.Field("gdp_path");
    section.gdp_path = ParseGdpPath(path.String());
    if (!section.gdp_path) path.Fail("expected \"original\" or \"modified\"");
  }
  if (privacy.Has("delta_min")) {
    section.delta_min = privacy.Field("delta_min").Number();
  }
  if (privacy.Has("delta_max")) {
    section.delta_max = privacy.Field("delta_max").Number();
  }
  if (privacy.Has("points")) {
    section.points = static_cast<int>(privacy.Field("points").PositiveInteger());
  }
  if (!(section.delta_min > 0.0 && section.delta_min <= section.delta_max &&
        section.delta_max < 1.0)) {
    privacy.Fail("need 0 < delta_min <= delta_max < 1");
  }
  return section;
}

}  // namespace dpts::cli
