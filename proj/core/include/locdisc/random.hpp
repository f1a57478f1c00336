/*
 * Copyright 2026 The locdisc Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace locdisc {

/// Seeded pseudo-random stream with a fixed algorithm so that splits and
/// synthetic datasets replicate across platforms and implementations.
///
/// Bits come from std::mt19937_64 (whose output sequence is fixed by the
/// C++ standard). The derived distributions are implemented here instead of
/// using <random> distributions, whose algorithms are implementation-defined:
///  - uniform():  (bits >> 11) * 2^-53, in [0, 1).
///  - index(n):   rejection sampling, accept bits >= (2^64 - n) mod n and
///                return bits mod n.
///  - normal():   Box-Muller on two uniforms, both outputs are used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  double uniform();
  std::uint64_t index(std::uint64_t n);
  double normal();

  /// In-place Fisher-Yates shuffle (descending swap positions).
  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(index(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// SplitMix64 finalizer applied to (seed, stream); used to give independent
/// sub-streams to stages that share one user-visible seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace locdisc
