// Copyright 2026 The scenesplat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCENESPLAT__COMMON__RANDOM_HPP_
#define SCENESPLAT__COMMON__RANDOM_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace scenesplat
{

// The standard distributions are implementation-defined, so generated data
// would differ between standard libraries. These helpers only depend on the
// raw mt19937_64 stream, which the standard pins down exactly.

inline double uniform01(std::mt19937_64 & rng)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64 & rng, double lo, double hi)
{
  return lo + (hi - lo) * uniform01(rng);
}

/// Integer in [0, n).
inline std::size_t uniform_index(std::mt19937_64 & rng, std::size_t n)
{
  return static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)) % n;
}

/// Box-Muller normal sample.
inline double normal(std::mt19937_64 & rng, double mean, double stddev)
{
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  return mean + stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793 * u2);
}

/// Fisher-Yates with the helpers above.
template <typename T>
void shuffle(std::vector<T> & v, std::mt19937_64 & rng)
{
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform_index(rng, i)]);
  }
}

}  // namespace scenesplat

#endif  // SCENESPLAT__COMMON__RANDOM_HPP_
