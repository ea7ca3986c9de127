// Copyright 2026 the hetnet-egt authors
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


#pragma once

#include <cstdint>
#include <random>

namespace hetnet {

/// Independent components of one Monte Carlo draw; each gets its own stream
/// so changing how one is consumed leaves the others untouched.
enum class Stream : std::uint32_t {
  base_stations = 1,
  blockages = 2,
  fading = 3,
  activity = 4,
  antennas = 5,
  mobility = 6,
  agents = 7,
  los = 8,
};

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint64_t index, Stream component) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    static_cast<std::uint32_t>(component)};
  return Rng(seq);
}

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

}  // namespace hetnet
