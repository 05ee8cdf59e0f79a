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

#ifndef DIALROBUST_LEXICON_H_
#define DIALROBUST_LEXICON_H_

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

namespace dialrobust {

enum class PosTag { kNoun, kPronoun, kVerb, kAuxiliary, kStopwordClass, kOther };

std::string_view PosTagName(PosTag tag);

// Word lists backing the tokenizer's tags and the stopword filter. Each list
// is a plain UTF-8 file with one lowercase entry per line ('#' starts a
// comment line); CHECKSUMS pins the FNV-1a 64 digest of every file.
class Lexicon {
 public:
  // The copy compiled into the library from data/lexicon/.
  static const Lexicon& Builtin();

  // Loads and verifies a directory laid out like data/lexicon/.
  static Lexicon FromDirectory(const std::filesystem::path& dir);

  // Source of file contents by name ("verb.txt", "CHECKSUMS", ...).
  using FileReader = std::function<std::string(std::string_view)>;
  static Lexicon FromFiles(const FileReader& read);

  // Lexicon lookup (ASCII-lowercased, typographic apostrophes folded), then
  // suffix rules for unknown words.
  PosTag Tag(std::string_view word) const;
  bool IsStopword(std::string_view word) const;

  // Combined digest of all lists; recorded in run metadata.
  const std::string& version() const { return version_; }
  std::size_t size() const { return tags_.size(); }

 private:
  Lexicon() = default;

  std::unordered_map<std::string, PosTag> tags_;
  std::unordered_set<std::string> stopwords_;
  std::string version_;
};

// Lowercases ASCII and folds U+2019 to an ASCII apostrophe.
std::string NormalizeWord(std::string_view word);

}  // namespace dialrobust

#endif  // DIALROBUST_LEXICON_H_
