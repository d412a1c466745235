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

#ifndef DPTS_RANDOM_H_
#define DPTS_RANDOM_H_

#include <cstdint>
#include <random>

namespace dpts {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t MixSeed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for run `run_index` of configuration `config_index`:
//   MixSeed(MixSeed(MixSeed(master) + config_index) + run_index)
// Any (master, config, run) triple can be reproduced without replaying others.
constexpr std::uint64_t DeriveSeed(std::uint64_t master,
                                   std::uint64_t config_index,
                                   std::uint64_t run_index) {
  return MixSeed(MixSeed(MixSeed(master) + config_index) + run_index);
}

// Private random stream owned by one simulation run.
//
// Every draw consumes exactly one 64-bit engine word:
//   Uniform()     (w >> 11) * 2^-53            in [0, 1)
//   OpenUniform() ((w >> 11) + 0.5) * 2^-53    in (0, 1)
//   Normal()      NormalQuantile(OpenUniform())
// so traces are reproducible from the seed on any conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double OpenUniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }
  double Normal();
  double Normal(double mean, double stddev) {
    return mean + stddev * Normal();
  }

  std::uint64_t NextWord() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dpts

#endif  // DPTS_RANDOM_H_
