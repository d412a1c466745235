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

#include "dpts/normal.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/erf.hpp>

namespace dpts {
namespace {

// Below this point 0.5 * erfc(-x / sqrt(2)) loses precision to subnormals.
constexpr double kAsymptoticTailCutoff = -35.0;

}  // namespace

double NormalCdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double NormalPdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double LogNormalCdf(double x) {
  if (x > 0.0) return std::log1p(-NormalCdf(-x));
  if (x > kAsymptoticTailCutoff) return std::log(NormalCdf(x));
  // Mills ratio series: Φ(x) = φ(x)/|x| * (1 - 1/x² + 3/x⁴ - 15/x⁶ + 105/x⁸ ...)
  const double inv_x2 = 1.0 / (x * x);
  const double series =
      1.0 + inv_x2 * (-1.0 + inv_x2 * (3.0 + inv_x2 * (-15.0 + inv_x2 * 105.0)));
  return -0.5 * x * x - std::log(-x) - 0.5 * std::log(2.0 * std::numbers::pi) +
         std::log(series);
}

double NormalQuantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("NormalQuantile: p must lie in (0, 1)");
  }
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

}  // namespace dpts
