//
// Copyright 2026 The dialrobust Authors.
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
//

#ifndef DIALROBUST_HASHING_H_
#define DIALROBUST_HASHING_H_

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <string_view>

namespace dialrobust {

std::uint64_t Fnv1a64(std::string_view bytes);
std::string ToHex64(std::uint64_t value);

// Lowercase hex SHA-256 digest.
std::string Sha256Hex(std::string_view bytes);

std::uint64_t SplitMix64(std::uint64_t x);

// Seeded randomness that yields the same stream on every platform. The
// engine is fully specified by the standard; the distributions below replace
// the std:: ones, whose algorithms are implementation-defined.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t UniformBelow(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double UniformUnit();

  bool Bernoulli(double p) { return UniformUnit() < p; }

  // Fisher-Yates shuffle driven by UniformBelow.
  template <typename It>
  void Shuffle(It first, It last) {
    const auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
      const std::uint64_t j = UniformBelow(i);
      std::swap(first[i - 1], first[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dialrobust

#endif  // DIALROBUST_HASHING_H_
