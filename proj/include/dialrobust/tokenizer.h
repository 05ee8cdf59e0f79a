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

#ifndef DIALROBUST_TOKENIZER_H_
#define DIALROBUST_TOKENIZER_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dialrobust/lexicon.h"

namespace dialrobust {

enum class TokenKind { kWord, kPunctuation };

struct Token {
  std::string text;
  TokenKind kind = TokenKind::kWord;
  PosTag tag = PosTag::kOther;
  // Whether whitespace preceded the token in the source text.
  bool space_before = false;

  bool is_word() const { return kind == TokenKind::kWord; }
  bool operator==(const Token&) const = default;
};

// Splits on whitespace, then peels leading and trailing punctuation off each
// piece into single-character punctuation tokens. Inner punctuation ("I'm",
// "40.5") stays in the word.
std::vector<Token> Tokenize(std::string_view text,
                            const Lexicon& lexicon = Lexicon::Builtin());

// Inverse of Tokenize up to whitespace normalization.
std::string Detokenize(std::span<const Token> tokens);

// Joins token texts with single spaces (used by the reordering attacks).
std::string JoinTokens(std::span<const Token> tokens);

std::vector<std::string> SplitWhitespace(std::string_view text);
std::string NormalizeWhitespace(std::string_view text);

// True when every code point of `text` is punctuation (ASCII punctuation or
// one of the common typographic marks). Empty text is not punctuation.
bool IsPunctuation(std::string_view text);

}  // namespace dialrobust

#endif  // DIALROBUST_TOKENIZER_H_
