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

#ifndef DPTS_NORMAL_H_
#define DPTS_NORMAL_H_

namespace dpts {

// Standard normal CDF, evaluated through erfc so both tails keep full
// relative precision.
double NormalCdf(double x);

// log Φ(x). Finite for every finite x; switches to the asymptotic tail series
// once erfc would underflow.
double LogNormalCdf(double x);

// Standard normal density.
double NormalPdf(double x);

// Φ^{-1}(p) for p in (0, 1).
double NormalQuantile(double p);

}  // namespace dpts

#endif  // DPTS_NORMAL_H_
