// Copyright 2026 The qforecast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

namespace qforecast {

/// Seeded pseudo-random source used everywhere randomness is needed.
///
/// Draws are derived from the raw 64-bit output of std::mt19937_64 rather
/// than the standard distributions, so sequences are identical across
/// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform();
  double uniform(double lo, double hi);
  /// Standard normal (Box-Muller).
  double normal();
  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n);

 private:
  std::uint64_t state_[312];
  std::size_t pos_ = 312;
  std::optional<double> spare_normal_;

  void refill();
};

/// Mixes a base seed with a stream label into an independent seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace qforecast
