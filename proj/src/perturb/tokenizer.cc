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

#include "dialrobust/tokenizer.h"

#include <array>
#include <cctype>

#include "common/strings.h"

namespace dialrobust {
namespace {

// Multi-byte punctuation recognised alongside ASCII ispunct().
constexpr std::array<std::string_view, 14> kUnicodePunctuation = {
    "\xE2\x80\x9C",  // “
    "\xE2\x80\x9D",  // ”
    "\xE2\x80\x98",  // ‘
    "\xE2\x80\x99",  // ’
    "\xE2\x80\xA6",  // …
    "\xE2\x80\x93",  // –
    "\xE2\x80\x94",  // em dash
    "\xC2\xAB",      // «
    "\xC2\xBB",      // »
    "\xC2\xA1",      // ¡
    "\xC2\xBF",      // ¿
    "\xE2\x80\xA2",  // •
    "\xE3\x80\x82",  // 。
    "\xEF\xBC\x81",  // ！
};

// Length in bytes of the punctuation mark starting at `s`, or 0.
std::size_t PunctuationPrefix(std::string_view s) {
  if (s.empty()) return 0;
  const auto c = static_cast<unsigned char>(s.front());
  if (c < 0x80) return std::ispunct(c) ? 1 : 0;
  for (const std::string_view mark : kUnicodePunctuation) {
    if (s.starts_with(mark)) return mark.size();
  }
  return 0;
}

std::size_t PunctuationSuffix(std::string_view s) {
  if (s.empty()) return 0;
  const auto c = static_cast<unsigned char>(s.back());
  if (c < 0x80) return std::ispunct(c) ? 1 : 0;
  for (const std::string_view mark : kUnicodePunctuation) {
    if (s.ends_with(mark)) return mark.size();
  }
  return 0;
}

Token MakePunctuation(std::string_view text, bool space_before) {
  return Token{std::string(text), TokenKind::kPunctuation, PosTag::kOther,
               space_before};
}

}  // namespace

bool IsPunctuation(std::string_view text) {
  if (text.empty()) return false;
  while (!text.empty()) {
    const std::size_t n = PunctuationPrefix(text);
    if (n == 0) return false;
    text.remove_prefix(n);
  }
  return true;
}

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> pieces;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && internal::IsSpace(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !internal::IsSpace(text[i])) ++i;
    if (i > start) pieces.emplace_back(text.substr(start, i - start));
  }
  return pieces;
}

std::string NormalizeWhitespace(std::string_view text) {
  std::string out;
  for (const std::string& piece : SplitWhitespace(text)) {
    if (!out.empty()) out.push_back(' ');
    out += piece;
  }
  return out;
}

std::vector<Token> Tokenize(std::string_view text, const Lexicon& lexicon) {
  std::vector<Token> tokens;
  bool first_piece = true;
  for (const std::string& piece_str : SplitWhitespace(text)) {
    std::string_view piece = piece_str;
    bool space_before = !first_piece;
    first_piece = false;

    std::vector<Token> trailing;
    while (const std::size_t n = PunctuationPrefix(piece)) {
      tokens.push_back(MakePunctuation(piece.substr(0, n), space_before));
      space_before = false;
      piece.remove_prefix(n);
    }
    while (const std::size_t n = PunctuationSuffix(piece)) {
      trailing.push_back(
          MakePunctuation(piece.substr(piece.size() - n), false));
      piece.remove_suffix(n);
    }
    if (!piece.empty()) {
      tokens.push_back(Token{std::string(piece), TokenKind::kWord,
                             lexicon.Tag(piece), space_before});
    }
    tokens.insert(tokens.end(), trailing.rbegin(), trailing.rend());
  }
  return tokens;
}

std::string Detokenize(std::span<const Token> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0 && tokens[i].space_before) out.push_back(' ');
    out += tokens[i].text;
  }
  return out;
}

std::string JoinTokens(std::span<const Token> tokens) {
  std::string out;
  for (const Token& token : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += token.text;
  }
  return out;
}

}  // namespace dialrobust
