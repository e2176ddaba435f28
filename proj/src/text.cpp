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

#include "fragrec/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace fragrec {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

char lower_ascii(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

const std::unordered_set<std::string_view>& stop_words() {
  static const std::unordered_set<std::string_view> words = {
      "a",        "about",   "above",   "after",   "again",    "against",
      "all",      "also",    "am",      "an",      "and",      "any",
      "are",      "as",      "at",      "be",      "because",  "been",
      "before",   "being",   "below",   "between", "both",     "but",
      "by",       "can",     "cannot",  "could",   "did",      "do",
      "does",     "doing",   "done",    "down",    "during",   "each",
      "either",   "else",    "etc",     "even",    "ever",     "every",
      "few",      "for",     "from",    "further", "had",      "has",
      "have",     "having",  "he",      "her",     "here",     "hers",
      "herself",  "him",     "himself", "his",     "how",      "however",
      "i",        "if",      "in",      "into",    "is",       "it",
      "its",      "itself",  "just",    "let",     "like",     "may",
      "me",       "might",   "more",    "most",    "much",     "must",
      "my",       "myself",  "need",    "no",      "nor",      "not",
      "now",      "of",      "off",     "often",   "on",       "once",
      "one",      "only",    "or",      "other",   "ought",    "our",
      "ours",     "ourselves", "out",   "over",    "own",      "perhaps",
      "quite",    "rather",  "re",      "really",  "same",     "shall",
      "she",      "should",  "since",   "so",      "some",     "such",
      "than",     "that",    "the",     "their",   "theirs",   "them",
      "themselves", "then",  "there",   "these",   "they",     "this",
      "those",    "through", "thus",    "to",      "too",      "under",
      "until",    "up",      "upon",    "us",      "use",      "used",
      "using",    "very",    "via",     "was",     "we",       "were",
      "what",     "when",    "where",   "whether", "which",    "while",
      "who",      "whom",    "whose",   "why",     "will",     "with",
      "within",   "without", "would",   "yet",     "you",      "your",
      "yours",    "yourself", "yourselves", "ll",  "ve",       "s",
      "t",        "d",       "m",       "don",     "doesn",    "isn",
      "aren",     "won",     "can't",   "e",       "g",        "ie",
      "eg",       "many",    "well",    "way",     "ways",     "always",
      "actually", "still",   "already", "another", "onto",     "among",
  };
  return words;
}

const std::unordered_set<std::string_view>& java_keywords() {
  static const std::unordered_set<std::string_view> words = {
      "abstract", "assert",    "boolean",  "break",      "byte",
      "case",     "catch",     "char",     "class",      "const",
      "continue", "default",   "do",       "double",     "else",
      "enum",     "extends",   "final",    "finally",    "float",
      "for",      "goto",      "if",       "implements", "import",
      "instanceof", "int",     "interface", "long",      "native",
      "new",      "package",   "private",  "protected",  "public",
      "return",   "short",     "static",   "strictfp",   "super",
      "switch",   "synchronized", "this",  "throw",      "throws",
      "transient", "try",      "void",     "volatile",   "while",
      "true",     "false",     "null",     "var",
  };
  return words;
}

bool all_digits(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), lower_ascii);
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (lower_ascii(a[i]) != lower_ascii(b[i])) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<Token> word_tokens(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_word_char(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_word_char(text[j])) ++j;
    tokens.push_back({text.substr(i, j - i), i});
    i = j;
  }
  return tokens;
}

std::size_t count_words(std::string_view text) {
  std::size_t n = 0;
  bool in_word = false;
  for (char c : text) {
    if (is_space(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++n;
    }
  }
  return n;
}

bool contains_phrase(std::string_view text, std::string_view phrase) {
  phrase = trim(phrase);
  if (phrase.empty()) return false;
  for (std::size_t start = 0; start < text.size(); ++start) {
    if (start > 0 && is_word_char(text[start - 1]) && is_word_char(phrase[0]))
      continue;
    std::size_t t = start, p = 0;
    while (p < phrase.size() && t < text.size()) {
      if (is_space(phrase[p])) {
        if (!is_space(text[t])) break;
        while (p < phrase.size() && is_space(phrase[p])) ++p;
        while (t < text.size() && is_space(text[t])) ++t;
        continue;
      }
      if (lower_ascii(phrase[p]) != lower_ascii(text[t])) break;
      ++p;
      ++t;
    }
    if (p != phrase.size()) continue;
    if (t < text.size() && is_word_char(text[t]) &&
        is_word_char(phrase.back()))
      continue;
    return true;
  }
  return false;
}

bool is_stop_word(std::string_view lower) {
  return stop_words().count(lower) > 0;
}

bool is_java_keyword(std::string_view word) {
  return java_keywords().count(word) > 0;
}

std::vector<std::string> index_terms(
    std::string_view text,
    const std::function<bool(std::string_view)>& is_api) {
  std::vector<std::string> terms;
  for (const Token& tok : word_tokens(text)) {
    if (is_api && is_api(tok.text)) {
      terms.push_back(to_lower(tok.text));
      continue;
    }
    if (tok.text.size() < 2 || all_digits(tok.text)) continue;
    std::string lower = to_lower(tok.text);
    if (is_stop_word(lower) || is_java_keyword(lower)) continue;
    terms.push_back(std::move(lower));
  }
  return terms;
}

}  // namespace fragrec
