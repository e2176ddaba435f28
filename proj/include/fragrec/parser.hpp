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

// Fragment parsing: sentence and statement boundaries, API discovery,
// pronoun and variable substitution, and sentence typing.

#ifndef FRAGREC_PARSER_HPP_
#define FRAGREC_PARSER_HPP_

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fragrec/corpus.hpp"

namespace fragrec {

enum class MarginalReason {
  Conditional,
  Enumeration,
  Example,
  Comparative,
  CodeComment,
};

std::string_view to_string(MarginalReason reason);

struct SentenceKind {
  // Empty for principal sentences.
  std::optional<MarginalReason> reason;

  static SentenceKind principal() { return {}; }
  static SentenceKind marginal(MarginalReason r) { return {r}; }
  bool is_marginal() const { return reason.has_value(); }
  bool operator==(const SentenceKind&) const = default;
};

std::string to_string(const SentenceKind& kind);

struct Sentence {
  std::size_t ordinal = 0;  // 1-based within the fragment
  std::string text;         // after substitution
  std::string source_text;  // as found in the tutorial
  bool is_code = false;
  bool is_comment = false;
  SentenceKind kind;
  std::set<std::string> apis;
  // Offsets below refer to `source_text`.
  std::vector<Anchor> anchors;
  std::vector<TextSpan> code_spans;
};

enum class MentionOrigin {
  AnchorLink,
  LexicalMatch,
  PronounResolved,
  VariableResolved,
};

std::string_view to_string(MentionOrigin origin);

struct ApiMention {
  std::string api;
  std::size_t sentence_ordinal = 0;
  MentionOrigin origin = MentionOrigin::LexicalMatch;
  // Byte offset of the API name inside the sentence's current text.
  std::size_t offset = 0;
};

struct VariableBinding {
  std::string variable;
  std::string api;
  std::size_t declaration_statement = 0;  // sentence ordinal
};

struct ParsedFragment {
  Fragment fragment;
  std::vector<Sentence> sentences;
  std::vector<ApiMention> mentions;
  std::vector<VariableBinding> bindings;
  std::vector<std::string> warnings;

  // Distinct APIs mentioned anywhere in the fragment.
  std::set<std::string> apis() const;
  std::size_t mention_count(std::string_view api) const;
};

struct CodeStatement {
  std::string text;
  bool is_comment = false;
};

// Splits a Java-style code block at top-level semicolons. Control headers
// (`if (...)`, `for (...)`, `while (...)`, ...) end at their matching right
// parenthesis, braces separate statements, and comments come out as their
// own statements. Unbalanced parentheses at the end of the block leave the
// remainder as a single statement and add a warning.
std::vector<CodeStatement> split_statements(
    std::string_view code, std::vector<std::string>* warnings = nullptr);

// Rule-based sentence boundaries for one prose paragraph. A terminator
// (. ! ?) ends a sentence when followed by whitespace and an upper-case
// letter or digit, unless it closes a known abbreviation or sits inside one
// of the `protected_spans` (inline code).
std::vector<TextSpan> split_prose(std::string_view text,
                                  std::span<const TextSpan> protected_spans = {});

// Sentences of a fragment in document order, before substitution and
// typing. Headings do not produce sentences.
std::vector<Sentence> identify_sentences(
    const Fragment& fragment, std::vector<std::string>* warnings = nullptr);

// Finds API mentions: anchors whose text or link target is in the catalog,
// catalog names with a class/interface/API keyword within two tokens, and
// catalog names inside code. Once an API is discovered in the fragment,
// its other occurrences are mentions too. Fills `Sentence::apis`.
std::vector<ApiMention> discover_apis(std::vector<Sentence>& sentences,
                                      const ApiCatalog& catalog);
std::vector<ApiMention> discover_apis(const Fragment& fragment,
                                      const ApiCatalog& catalog);

// Replaces neuter pronouns in prose sentences by the API they refer to.
// Mentions are updated in place; the added mentions are also returned.
std::vector<ApiMention> resolve_pronouns(std::vector<Sentence>& sentences,
                                         std::vector<ApiMention>& mentions);

struct StatementRewrite {
  std::string text;
  // (offset in the rewritten text, api) for every replaced variable.
  std::vector<std::pair<std::size_t, std::string>> replacements;
};

struct VariableResolution {
  std::vector<VariableBinding> bindings;
  std::vector<StatementRewrite> statements;
};

// Binds `Api ident` declarations and replaces later uses of `ident` by the
// API name. `ordinals` gives each statement's sentence ordinal for the
// bindings; when empty, statement i is numbered i + 1.
VariableResolution resolve_variables(
    std::span<const std::string> statements, const ApiCatalog& catalog,
    std::span<const std::size_t> ordinals = {});

// Applies variable resolution to the non-comment code sentences of a
// fragment, updating texts and mentions.
std::vector<VariableBinding> resolve_variables(std::vector<Sentence>& sentences,
                                               std::vector<ApiMention>& mentions,
                                               const ApiCatalog& catalog);

SentenceKind classify_sentence_kind(const Sentence& sentence);

struct ParseOptions {
  // Pronoun and variable substitution.
  bool resolve = true;
};

ParsedFragment parse_fragment(const Fragment& fragment,
                              const ApiCatalog& catalog,
                              const ParseOptions& options = {});

}  // namespace fragrec

#endif  // FRAGREC_PARSER_HPP_
