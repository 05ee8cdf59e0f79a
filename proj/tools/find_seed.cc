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


// Searches for the smallest seed whose seeded attack reproduces a target
// string. Used to pin the jumble and repeat seeds in the golden tests.
//
//   find_seed --attack jumble --reference "..." --target "..."

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dialrobust/attacks.h"
#include "dialrobust/errors.h"

int main(int argc, char** argv) {
  CLI::App app{"Seed search for seeded attacks"};
  std::string attack;
  std::string reference;
  std::string target;
  std::uint64_t limit = 10'000'000;
  double p = dialrobust::kDefaultRepeatProbability;
  app.add_option("--attack", attack, "jumble or repeat")
      ->required()
      ->check(CLI::IsMember({"jumble", "repeat"}));
  app.add_option("--reference", reference)->required();
  app.add_option("--target", target)->required();
  app.add_option("--limit", limit);
  app.add_option("--p", p, "repeat probability");
  CLI11_PARSE(app, argc, argv);

  try {
    for (std::uint64_t seed = 1; seed <= limit; ++seed) {
      const std::string out = attack == "jumble"
                                  ? dialrobust::Jumble(reference, seed)
                                  : dialrobust::RepeatWords(reference, p, seed);
      if (out == target) {
        std::cout << seed << "\n";
        return 0;
      }
    }
  } catch (const dialrobust::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  std::cerr << "no seed below " << limit << "\n";
  return 1;
}
