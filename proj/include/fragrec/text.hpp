// Copyright 2026 The fragrec Authors.
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

// Small text helpers shared by the parser and both scorers.

#ifndef FRAGREC_TEXT_HPP_
#define FRAGREC_TEXT_HPP_

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace fragrec {

// A maximal run of word characters inside some text.
struct Token {
  std::string_view text;
  std::size_t begin = 0;
  std::size_t end() const { return begin + text.size(); }
};

// Letters, digits, '_' and any non-ASCII byte (so UTF-8 words stay whole).
inline bool is_word_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') ||
         (u >= 'A' && u <= 'Z') || u == '_';
}

std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
std::string_view trim(std::string_view s);

std::vector<Token> word_tokens(std::string_view text);

// Number of whitespace-separated tokens.
std::size_t count_words(std::string_view text);

// Case-insensitive phrase search; the phrase must start and end on word
// boundaries. Inner whitespace in the phrase matches any whitespace run.
bool contains_phrase(std::string_view text, std::string_view phrase);

bool is_stop_word(std::string_view lower);
bool is_java_keyword(std::string_view word);

// Index terms of a sentence for the topic model and the sentence graph:
// lowercased words, stop words and Java keywords dropped, single characters
// and pure numbers dropped. Words for which `is_api` is true are always kept.
std::vector<std::string> index_terms(
    std::string_view text, const std::function<bool(std::string_view)>& is_api);

}  // namespace fragrec

#endif  // FRAGREC_TEXT_HPP_
