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

#include "dialrobust/lexicon.h"

#include <array>
#include <fstream>
#include <map>
#include <sstream>

#include "common/strings.h"
#include "dialrobust/embedded_data.h"
#include "dialrobust/errors.h"
#include "dialrobust/hashing.h"

namespace dialrobust {
namespace {

struct TagFile {
  std::string_view file;
  PosTag tag;
};

constexpr std::array<TagFile, 6> kTagFiles = {{
    {"pronoun.txt", PosTag::kPronoun},
    {"auxiliary.txt", PosTag::kAuxiliary},
    {"function.txt", PosTag::kStopwordClass},
    {"verb.txt", PosTag::kVerb},
    {"noun.txt", PosTag::kNoun},
    {"other.txt", PosTag::kOther},
}};
constexpr std::string_view kStopwordFile = "stopwords.txt";
constexpr std::string_view kChecksumFile = "CHECKSUMS";

std::map<std::string, std::string> ParseChecksums(std::string_view text) {
  std::map<std::string, std::string> sums;
  for (const std::string& raw : internal::SplitLines(text)) {
    const std::string_view line = internal::Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t space = line.find(' ');
    if (space == std::string_view::npos || !line.starts_with("fnv1a64:")) {
      throw DataError("malformed lexicon CHECKSUMS line: " + std::string(line));
    }
    const std::string digest(line.substr(8, space - 8));
    const std::string name(internal::Trim(line.substr(space)));
    sums[name] = digest;
  }
  return sums;
}

std::vector<std::string> Entries(std::string_view text) {
  std::vector<std::string> words;
  for (const std::string& raw : internal::SplitLines(text)) {
    const std::string_view line = internal::Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    words.push_back(NormalizeWord(line));
  }
  return words;
}

bool EndsWith(std::string_view word, std::string_view suffix,
              std::size_t min_stem = 2) {
  return word.size() >= suffix.size() + min_stem && word.ends_with(suffix);
}

PosTag SuffixTag(std::string_view word) {
  bool has_alpha = false;
  for (const char c : word) {
    if (std::isdigit(static_cast<unsigned char>(c))) return PosTag::kOther;
    if (std::isalpha(static_cast<unsigned char>(c))) has_alpha = true;
  }
  if (!has_alpha) return PosTag::kOther;
  if (EndsWith(word, "ing") || EndsWith(word, "ed")) return PosTag::kVerb;
  for (const std::string_view suffix :
       {"ly", "ful", "ous", "ive", "able", "ible", "less", "ish"}) {
    if (EndsWith(word, suffix)) return PosTag::kOther;
  }
  return PosTag::kNoun;
}

}  // namespace

std::string_view PosTagName(PosTag tag) {
  switch (tag) {
    case PosTag::kNoun:
      return "noun";
    case PosTag::kPronoun:
      return "pronoun";
    case PosTag::kVerb:
      return "verb";
    case PosTag::kAuxiliary:
      return "auxiliary";
    case PosTag::kStopwordClass:
      return "stopword-class";
    case PosTag::kOther:
      return "other";
  }
  return "other";
}

std::string NormalizeWord(std::string_view word) {
  std::string out;
  out.reserve(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) {
    // U+2019 RIGHT SINGLE QUOTATION MARK
    if (word.compare(i, 3, "\xE2\x80\x99") == 0) {
      out.push_back('\'');
      i += 2;
      continue;
    }
    out.push_back(static_cast<char>(
        std::tolower(static_cast<unsigned char>(word[i]))));
  }
  return out;
}

Lexicon Lexicon::FromFiles(const FileReader& read) {
  const std::string checksum_text = read(kChecksumFile);
  const auto sums = ParseChecksums(checksum_text);
  const auto verified = [&](std::string_view name) {
    std::string contents = read(name);
    const auto it = sums.find(std::string(name));
    if (it == sums.end()) {
      throw DataError("lexicon file " + std::string(name) +
                      " has no checksum entry");
    }
    if (ToHex64(Fnv1a64(contents)) != it->second) {
      throw DataError("lexicon file " + std::string(name) +
                      " does not match its checksum");
    }
    return contents;
  };

  Lexicon lexicon;
  for (const TagFile& entry : kTagFiles) {
    for (std::string& word : Entries(verified(entry.file))) {
      const auto [it, inserted] = lexicon.tags_.emplace(word, entry.tag);
      if (!inserted) {
        throw DataError("lexicon word '" + word + "' listed under both " +
                        std::string(PosTagName(it->second)) + " and " +
                        std::string(PosTagName(entry.tag)));
      }
    }
  }
  for (std::string& word : Entries(verified(kStopwordFile))) {
    lexicon.stopwords_.insert(std::move(word));
  }
  lexicon.version_ = "fnv1a64:" + ToHex64(Fnv1a64(checksum_text));
  return lexicon;
}

const Lexicon& Lexicon::Builtin() {
  static const Lexicon* const kBuiltin = new Lexicon(FromFiles(
      [](std::string_view name) {
        const auto contents =
            FindEmbeddedFile("lexicon/" + std::string(name));
        if (!contents) {
          throw DataError("embedded lexicon file missing: " +
                          std::string(name));
        }
        return std::string(*contents);
      }));
  return *kBuiltin;
}

Lexicon Lexicon::FromDirectory(const std::filesystem::path& dir) {
  return FromFiles([&](std::string_view name) {
    std::ifstream in(dir / std::string(name), std::ios::binary);
    if (!in) {
      throw DataError("cannot open lexicon file " +
                      (dir / std::string(name)).string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  });
}

PosTag Lexicon::Tag(std::string_view word) const {
  std::string key = NormalizeWord(word);
  if (const auto it = tags_.find(key); it != tags_.end()) return it->second;
  if (key.size() > 2 && key.ends_with("'s")) {
    key.resize(key.size() - 2);
    if (const auto it = tags_.find(key); it != tags_.end()) return it->second;
  }
  return SuffixTag(key);
}

bool Lexicon::IsStopword(std::string_view word) const {
  return stopwords_.contains(NormalizeWord(word));
}

}  // namespace dialrobust
