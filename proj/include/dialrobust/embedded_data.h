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

#ifndef DIALROBUST_EMBEDDED_DATA_H_
#define DIALROBUST_EMBEDDED_DATA_H_

#include <optional>
#include <span>
#include <string_view>

namespace dialrobust {

// Files from data/ compiled into the library (lexicon lists, checksums and
// prompt templates). Paths are relative to data/, e.g. "lexicon/verb.txt".
struct EmbeddedFile {
  std::string_view path;
  std::string_view contents;
};

std::span<const EmbeddedFile> EmbeddedFiles();
std::optional<std::string_view> FindEmbeddedFile(std::string_view path);

}  // namespace dialrobust

#endif  // DIALROBUST_EMBEDDED_DATA_H_
