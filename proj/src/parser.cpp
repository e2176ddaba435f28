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

#include "fragrec/parser.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <unordered_set>

#include "fragrec/text.hpp"

namespace fragrec {

std::string_view to_string(MarginalReason reason) {
  switch (reason) {
    case MarginalReason::Conditional: return "conditional";
    case MarginalReason::Enumeration: return "enumeration";
    case MarginalReason::Example: return "example";
    case MarginalReason::Comparative: return "comparative";
    case MarginalReason::CodeComment: return "code_comment";
  }
  return "conditional";
}

std::string to_string(const SentenceKind& kind) {
  if (!kind.reason) return "principal";
  return "marginal:" + std::string(to_string(*kind.reason));
}

std::string_view to_string(MentionOrigin origin) {
  switch (origin) {
    case MentionOrigin::AnchorLink: return "anchor_link";
    case MentionOrigin::LexicalMatch: return "lexical_match";
    case MentionOrigin::PronounResolved: return "pronoun_resolved";
    case MentionOrigin::VariableResolved: return "variable_resolved";
  }
  return "lexical_match";
}

std::set<std::string> ParsedFragment::apis() const {
  std::set<std::string> out;
  for (const ApiMention& m : mentions) out.insert(m.api);
  return out;
}

std::size_t ParsedFragment::mention_count(std::string_view api) const {
  return static_cast<std::size_t>(
      std::count_if(mentions.begin(), mentions.end(),
                    [&](const ApiMention& m) { return m.api == api; }));
}

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : trim(s)) {
    if (is_space(c)) {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

bool inside(std::size_t pos, std::span<const TextSpan> spans) {
  return std::any_of(spans.begin(), spans.end(), [&](const TextSpan& s) {
    return pos >= s.begin && pos < s.end;
  });
}

// --- statements -----------------------------------------------------------

bool is_control_header(std::string_view stmt) {
  static const std::unordered_set<std::string_view> keywords = {
      "if", "for", "while", "switch", "catch", "synchronized", "foreach"};
  stmt = trim(stmt);
  if (stmt.starts_with("else")) {
    stmt.remove_prefix(4);
    stmt = trim(stmt);
  }
  std::size_t n = 0;
  while (n < stmt.size() && is_word_char(stmt[n])) ++n;
  return keywords.count(stmt.substr(0, n)) > 0;
}

bool is_bare_keyword(std::string_view stmt) {
  return stmt.empty() || stmt == ";" || stmt == "else" || stmt == "try" ||
         stmt == "finally" || stmt == "do";
}

// --- prose ----------------------------------------------------------------

bool is_abbreviation(std::string_view text, std::size_t dot) {
  static const std::unordered_set<std::string_view> abbreviations = {
      "e.g", "i.e", "etc", "mr", "mrs", "ms", "dr", "vs", "cf", "fig",
      "approx", "jr", "sr", "st", "inc", "ltd", "co", "al", "resp", "viz",
      "no", "vol", "eq", "sec", "ch", "ca",
  };
  std::size_t b = dot;
  while (b > 0 && !is_space(text[b - 1]) && text[b - 1] != '(' &&
         text[b - 1] != '"' && text[b - 1] != '\'')
    --b;
  std::string word = to_lower(text.substr(b, dot - b));
  if (word.empty()) return false;
  if (abbreviations.count(word)) return true;
  // A single initial such as "J." in "J. Smith".
  return word.size() == 1 && is_upper(text[b]);
}

// --- API discovery ----------------------------------------------------------

bool is_context_keyword(std::string_view word) {
  return iequals(word, "class") || iequals(word, "classes") ||
         iequals(word, "interface") || iequals(word, "interfaces") ||
         iequals(word, "api") || iequals(word, "apis");
}

bool overlaps(const TextSpan& a, std::size_t begin, std::size_t end) {
  return begin < a.end && a.begin < end;
}

void assign_sentence_apis(std::vector<Sentence>& sentences,
                          const std::vector<ApiMention>& mentions) {
  std::map<std::size_t, Sentence*> by_ordinal;
  for (Sentence& s : sentences) {
    s.apis.clear();
    by_ordinal[s.ordinal] = &s;
  }
  for (const ApiMention& m : mentions) {
    auto it = by_ordinal.find(m.sentence_ordinal);
    if (it != by_ordinal.end()) it->second->apis.insert(m.api);
  }
}

void sort_mentions(std::vector<ApiMention>& mentions) {
  std::stable_sort(mentions.begin(), mentions.end(),
                   [](const ApiMention& a, const ApiMention& b) {
                     if (a.sentence_ordinal != b.sentence_ordinal)
                       return a.sentence_ordinal < b.sentence_ordinal;
                     return a.offset < b.offset;
                   });
}

// --- pronouns ---------------------------------------------------------------

// Words that may follow a standalone demonstrative ("this is", "these can").
bool is_predicate_word(std::string_view lower) {
  static const std::unordered_set<std::string_view> words = {
      "is",      "was",      "are",     "were",     "will",    "would",
      "can",     "could",    "should",  "may",      "might",   "must",
      "shall",   "has",      "have",    "had",      "does",    "do",
      "did",     "means",    "allows",  "lets",     "makes",   "gives",
      "returns", "provides", "creates", "holds",    "works",   "requires",
      "ensures", "enables",  "causes",  "happens",  "also",    "only",
      "just",    "not",      "all",     "both",     "contains", "represents",
      "defines", "includes", "needs",   "calls",    "uses",    "helps",
  };
  return words.count(lower) > 0;
}

// Is the word token at `k` a pronoun that stands for a noun phrase?
bool is_standalone_pronoun(std::string_view text,
                           const std::vector<Token>& tokens, std::size_t k) {
  std::string lower = to_lower(tokens[k].text);
  if (lower == "it" || lower == "they" || lower == "them") return true;
  if (lower != "this" && lower != "these") return false;
  std::size_t j = tokens[k].end();
  while (j < text.size() && is_space(text[j])) ++j;
  if (j >= text.size()) return true;
  // "like this:" points forward to what follows, not back to an API.
  if (text[j] == ':') return false;
  if (!is_word_char(text[j])) return true;
  if (k + 1 >= tokens.size()) return true;
  // A following noun makes it a determiner ("this document").
  return is_predicate_word(to_lower(tokens[k + 1].text));
}

// --- variables --------------------------------------------------------------

// Copy of `stmt` with the contents of string and char literals blanked, so
// that offsets are preserved but nothing inside a literal matches.
std::string blank_literals(std::string_view stmt) {
  std::string out(stmt);
  char quote = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    char c = out[i];
    if (quote) {
      if (c == '\\' && i + 1 < out.size()) {
        out[i] = ' ';
        out[++i] = ' ';
        continue;
      }
      if (c == quote) {
        quote = 0;
        continue;
      }
      out[i] = ' ';
      continue;
    }
    if (c == '"' || c == '\'') quote = c;
  }
  return out;
}

struct Declaration {
  std::string variable;
  std::string api;
};

std::vector<Declaration> find_declarations(std::string_view blanked,
                                           const ApiCatalog& catalog) {
  static const std::regex pattern(
      R"((?:^|[^\w.])([A-Za-z_]\w*)\s*(?:<[^;=()]*>)?\s*(?:\[\s*\]\s*)*\s([A-Za-z_]\w*)\s*(?=[=;:),]|$))");
  std::vector<Declaration> out;
  std::string s(blanked);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), pattern);
       it != std::sregex_iterator(); ++it) {
    std::string type = (*it)[1].str();
    std::string var = (*it)[2].str();
    if (!catalog.contains(type) || is_java_keyword(var) ||
        catalog.contains(var))
      continue;
    out.push_back({var, type});
  }
  return out;
}

}  // namespace

std::vector<CodeStatement> split_statements(std::string_view code,
                                            std::vector<std::string>* warnings) {
  std::vector<CodeStatement> out;
  std::string cur;
  int depth = 0;
  int init_braces = 0;
  bool header = false;

  auto flush = [&] {
    std::string s = collapse_whitespace(cur);
    cur.clear();
    header = false;
    if (!is_bare_keyword(s)) out.push_back({std::move(s), false});
  };
  auto emit_comment = [&](std::string_view text) {
    std::string s = collapse_whitespace(text);
    if (!s.empty()) out.push_back({std::move(s), true});
  };

  std::size_t i = 0;
  while (i < code.size()) {
    char c = code[i];
    char next = i + 1 < code.size() ? code[i + 1] : '\0';
    if (c == '/' && next == '/') {
      std::size_t end = code.find('\n', i);
      if (end == std::string_view::npos) end = code.size();
      emit_comment(code.substr(i, end - i));
      i = end;
      continue;
    }
    if (c == '/' && next == '*') {
      std::size_t end = code.find("*/", i + 2);
      end = end == std::string_view::npos ? code.size() : end + 2;
      emit_comment(code.substr(i, end - i));
      i = end;
      continue;
    }
    if (c == '"' || c == '\'') {
      std::size_t j = i + 1;
      while (j < code.size() && code[j] != c && code[j] != '\n') {
        if (code[j] == '\\') ++j;
        ++j;
      }
      j = std::min(code.size(), j + 1);
      cur.append(code.substr(i, j - i));
      i = j;
      continue;
    }
    ++i;
    if (depth == 0 && init_braces == 0 && (c == '{' || c == '}')) {
      std::string_view t = trim(cur);
      if (c == '{' && !t.empty() && (t.back() == '=' || t.back() == ']')) {
        ++init_braces;
        cur += c;
        continue;
      }
      flush();
      continue;
    }
    if (init_braces > 0 && c == '{') ++init_braces;
    if (init_braces > 0 && c == '}') --init_braces;
    if (c == '(') {
      if (depth == 0 && init_braces == 0) header = is_control_header(cur);
      ++depth;
      cur += c;
      continue;
    }
    if (c == ')') {
      cur += c;
      if (depth > 0) --depth;
      if (depth == 0 && header) flush();
      continue;
    }
    cur += c;
    if (c == ';' && depth == 0 && init_braces == 0) flush();
  }
  if (depth != 0 && warnings)
    warnings->push_back("unbalanced parentheses in code block");
  if (!trim(cur).empty()) flush();
  return out;
}

std::vector<TextSpan> split_prose(std::string_view text,
                                  std::span<const TextSpan> protected_spans) {
  std::vector<TextSpan> spans;
  auto push = [&](std::size_t b, std::size_t e) {
    while (b < e && is_space(text[b])) ++b;
    while (e > b && is_space(text[e - 1])) --e;
    if (b < e) spans.push_back({b, e});
  };
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    if (inside(i, protected_spans)) continue;
    std::size_t j = i + 1;
    while (j < text.size() &&
           (text[j] == '.' || text[j] == '!' || text[j] == '?'))
      ++j;
    while (j < text.size() && (text[j] == ')' || text[j] == '"' ||
                               text[j] == '\'' || text[j] == ']'))
      ++j;
    if (j >= text.size() || !is_space(text[j])) continue;
    std::size_t k = j;
    while (k < text.size() && is_space(text[k])) ++k;
    if (k >= text.size()) continue;
    char first = text[k];
    if (first == '(' || first == '"' || first == '\'') {
      first = k + 1 < text.size() ? text[k + 1] : '\0';
    }
    if (!is_upper(first) && !is_digit(first)) continue;
    if (c == '.' && is_abbreviation(text, i)) continue;
    push(start, j);
    start = k;
    i = k - 1;
  }
  push(start, text.size());
  return spans;
}

std::vector<Sentence> identify_sentences(const Fragment& fragment,
                                         std::vector<std::string>* warnings) {
  std::vector<Sentence> sentences;
  for (const Paragraph& p : fragment.paragraphs) {
    if (p.kind == ParagraphKind::Heading) continue;
    if (p.kind == ParagraphKind::CodeBlock) {
      for (CodeStatement& st : split_statements(p.plain_text, warnings)) {
        Sentence s;
        s.ordinal = sentences.size() + 1;
        s.source_text = st.text;
        s.text = std::move(st.text);
        s.is_code = true;
        s.is_comment = st.is_comment;
        sentences.push_back(std::move(s));
      }
      continue;
    }
    for (const TextSpan& span : split_prose(p.plain_text, p.code_spans)) {
      Sentence s;
      s.ordinal = sentences.size() + 1;
      s.source_text = p.plain_text.substr(span.begin, span.end - span.begin);
      s.text = s.source_text;
      auto clip = [&](TextSpan t) {
        t.begin = std::max(t.begin, span.begin) - span.begin;
        t.end = std::min(t.end, span.end) - span.begin;
        return t;
      };
      for (const Anchor& a : p.anchors) {
        if (overlaps(a.span, span.begin, span.end))
          s.anchors.push_back({a.href, clip(a.span)});
      }
      for (const TextSpan& cs : p.code_spans) {
        if (overlaps(cs, span.begin, span.end)) s.code_spans.push_back(clip(cs));
      }
      sentences.push_back(std::move(s));
    }
  }
  return sentences;
}

std::vector<ApiMention> discover_apis(std::vector<Sentence>& sentences,
                                      const ApiCatalog& catalog) {
  std::vector<ApiMention> mentions;
  std::set<std::string, std::less<>> discovered;
  // Token ranges already claimed by a mention, per sentence.
  std::vector<std::vector<TextSpan>> claimed(sentences.size());

  for (std::size_t si = 0; si < sentences.size(); ++si) {
    const Sentence& s = sentences[si];
    const std::string_view text = s.source_text;
    const std::vector<Token> tokens = word_tokens(text);
    auto add = [&](std::string api, std::size_t offset, MentionOrigin origin,
                   TextSpan claim) {
      discovered.insert(api);
      claimed[si].push_back(claim);
      mentions.push_back({std::move(api), s.ordinal, origin, offset});
    };

    if (s.is_code) {
      for (const Token& tok : tokens) {
        if (catalog.contains(tok.text))
          add(std::string(tok.text), tok.begin, MentionOrigin::LexicalMatch,
              {tok.begin, tok.end()});
      }
      continue;
    }

    for (const Anchor& a : s.anchors) {
      std::string_view anchor_text =
          trim(text.substr(a.span.begin, a.span.end - a.span.begin));
      const ApiEntry* entry = catalog.find(anchor_text);
      if (!entry) entry = catalog.find_by_url(a.href);
      if (!entry) continue;
      std::size_t offset = a.span.begin;
      for (const Token& tok : tokens) {
        if (tok.begin >= a.span.begin && tok.end() <= a.span.end &&
            tok.text == entry->simple_name) {
          offset = tok.begin;
          break;
        }
      }
      add(entry->simple_name, offset, MentionOrigin::AnchorLink, a.span);
    }

    for (std::size_t k = 0; k < tokens.size(); ++k) {
      const Token& tok = tokens[k];
      if (!catalog.contains(tok.text) || inside(tok.begin, claimed[si]))
        continue;
      bool hit = inside(tok.begin, s.code_spans);
      for (std::size_t d = 1; d <= 2 && !hit; ++d) {
        if (k >= d && is_context_keyword(tokens[k - d].text)) hit = true;
        if (k + d < tokens.size() && is_context_keyword(tokens[k + d].text))
          hit = true;
      }
      if (hit)
        add(std::string(tok.text), tok.begin, MentionOrigin::LexicalMatch,
            {tok.begin, tok.end()});
    }
  }

  // Other occurrences of APIs discovered anywhere in the fragment.
  for (std::size_t si = 0; si < sentences.size(); ++si) {
    const Sentence& s = sentences[si];
    if (s.is_code) continue;
    for (const Token& tok : word_tokens(s.source_text)) {
      if (!discovered.count(tok.text) || inside(tok.begin, claimed[si]))
        continue;
      claimed[si].push_back({tok.begin, tok.end()});
      mentions.push_back({std::string(tok.text), s.ordinal,
                          MentionOrigin::LexicalMatch, tok.begin});
    }
  }

  sort_mentions(mentions);
  assign_sentence_apis(sentences, mentions);
  return mentions;
}

std::vector<ApiMention> discover_apis(const Fragment& fragment,
                                      const ApiCatalog& catalog) {
  std::vector<Sentence> sentences = identify_sentences(fragment);
  return discover_apis(sentences, catalog);
}

std::vector<ApiMention> resolve_pronouns(std::vector<Sentence>& sentences,
                                         std::vector<ApiMention>& mentions) {
  std::vector<ApiMention> added;
  for (std::size_t si = 0; si < sentences.size(); ++si) {
    Sentence& s = sentences[si];
    if (s.is_code) continue;

    std::vector<std::size_t> own;  // indices into `mentions`
    for (std::size_t m = 0; m < mentions.size(); ++m)
      if (mentions[m].sentence_ordinal == s.ordinal) own.push_back(m);

    std::optional<std::string> prev_subject;
    if (si > 0) {
      std::size_t best = static_cast<std::size_t>(-1);
      for (const ApiMention& m : mentions) {
        if (m.sentence_ordinal == sentences[si - 1].ordinal &&
            m.offset < best) {
          best = m.offset;
          prev_subject = m.api;
        }
      }
    }

    const std::string text = s.text;
    const bool same_as_source = text == s.source_text;
    const std::vector<Token> tokens = word_tokens(text);
    std::string out;
    std::size_t pos = 0;
    // (old offset, growth) for each replacement, in text order.
    std::vector<std::pair<std::size_t, long>> shifts;
    // (old offset, api) candidates created in this sentence.
    std::vector<std::pair<std::size_t, std::string>> resolved_here;

    for (std::size_t k = 0; k < tokens.size(); ++k) {
      const Token& tok = tokens[k];
      if (!is_standalone_pronoun(text, tokens, k)) continue;
      if (same_as_source && inside(tok.begin, s.code_spans)) continue;

      std::optional<std::string> nearest;
      std::size_t nearest_at = 0;
      for (std::size_t m : own) {
        if (mentions[m].offset < tok.begin &&
            (!nearest || mentions[m].offset >= nearest_at)) {
          nearest = mentions[m].api;
          nearest_at = mentions[m].offset;
        }
      }
      for (const auto& [at, api] : resolved_here) {
        if (at < tok.begin && (!nearest || at >= nearest_at)) {
          nearest = api;
          nearest_at = at;
        }
      }
      std::optional<std::string> antecedent =
          k == 0 ? (prev_subject ? prev_subject : nearest)
                 : (nearest ? nearest : prev_subject);
      if (!antecedent) continue;

      out.append(text, pos, tok.begin - pos);
      std::size_t new_offset = out.size();
      out += *antecedent;
      pos = tok.end();
      shifts.emplace_back(tok.begin, static_cast<long>(antecedent->size()) -
                                         static_cast<long>(tok.text.size()));
      resolved_here.emplace_back(tok.begin, *antecedent);
      ApiMention m{*antecedent, s.ordinal, MentionOrigin::PronounResolved,
                   new_offset};
      added.push_back(m);
    }
    if (shifts.empty()) continue;
    out.append(text, pos, std::string::npos);

    for (std::size_t m : own) {
      long growth = 0;
      for (const auto& [at, g] : shifts)
        if (at < mentions[m].offset) growth += g;
      mentions[m].offset =
          static_cast<std::size_t>(static_cast<long>(mentions[m].offset) + growth);
    }
    s.text = std::move(out);
    for (const ApiMention& m : added)
      if (m.sentence_ordinal == s.ordinal) mentions.push_back(m);
  }
  sort_mentions(mentions);
  assign_sentence_apis(sentences, mentions);
  return added;
}

VariableResolution resolve_variables(std::span<const std::string> statements,
                                     const ApiCatalog& catalog,
                                     std::span<const std::size_t> ordinals) {
  VariableResolution result;
  std::map<std::string, std::string, std::less<>> active;

  for (std::size_t i = 0; i < statements.size(); ++i) {
    const std::string& stmt = statements[i];
    const std::string blanked = blank_literals(stmt);
    const std::vector<Declaration> decls = find_declarations(blanked, catalog);
    std::set<std::string, std::less<>> declared;
    for (const Declaration& d : decls) declared.insert(d.variable);

    StatementRewrite rewrite;
    std::size_t pos = 0;
    for (const Token& tok : word_tokens(blanked)) {
      auto it = active.find(tok.text);
      if (it == active.end() || declared.count(tok.text)) continue;
      // Member access such as `x.b` names a field, not the variable.
      std::size_t p = tok.begin;
      while (p > 0 && is_space(blanked[p - 1])) --p;
      if (p > 0 && blanked[p - 1] == '.') continue;
      rewrite.text.append(stmt, pos, tok.begin - pos);
      rewrite.replacements.emplace_back(rewrite.text.size(), it->second);
      rewrite.text += it->second;
      pos = tok.end();
    }
    rewrite.text.append(stmt, pos, std::string::npos);
    result.statements.push_back(std::move(rewrite));

    const std::size_t ordinal = i < ordinals.size() ? ordinals[i] : i + 1;
    for (const Declaration& d : decls) {
      active[d.variable] = d.api;
      auto existing = std::find_if(
          result.bindings.begin(), result.bindings.end(),
          [&](const VariableBinding& b) { return b.variable == d.variable; });
      if (existing != result.bindings.end()) {
        existing->api = d.api;
        existing->declaration_statement = ordinal;
      } else {
        result.bindings.push_back({d.variable, d.api, ordinal});
      }
    }
  }
  return result;
}

std::vector<VariableBinding> resolve_variables(std::vector<Sentence>& sentences,
                                               std::vector<ApiMention>& mentions,
                                               const ApiCatalog& catalog) {
  std::vector<Sentence*> code;
  std::vector<std::string> texts;
  std::vector<std::size_t> ordinals;
  for (Sentence& s : sentences) {
    if (!s.is_code || s.is_comment) continue;
    code.push_back(&s);
    texts.push_back(s.text);
    ordinals.push_back(s.ordinal);
  }
  if (code.empty()) return {};

  VariableResolution res = resolve_variables(texts, catalog, ordinals);
  for (std::size_t i = 0; i < code.size(); ++i) {
    Sentence& s = *code[i];
    StatementRewrite& rw = res.statements[i];
    if (rw.replacements.empty()) continue;
    s.text = std::move(rw.text);
    // Code mentions are plain catalog tokens, so rebuild them on the new
    // text and tag the substituted ones.
    std::erase_if(mentions, [&](const ApiMention& m) {
      return m.sentence_ordinal == s.ordinal;
    });
    for (const Token& tok : word_tokens(s.text)) {
      bool replaced = std::any_of(
          rw.replacements.begin(), rw.replacements.end(),
          [&](const auto& r) { return r.first == tok.begin; });
      if (replaced) {
        mentions.push_back({std::string(tok.text), s.ordinal,
                            MentionOrigin::VariableResolved, tok.begin});
      } else if (catalog.contains(tok.text)) {
        mentions.push_back({std::string(tok.text), s.ordinal,
                            MentionOrigin::LexicalMatch, tok.begin});
      }
    }
  }
  sort_mentions(mentions);
  assign_sentence_apis(sentences, mentions);
  return res.bindings;
}

namespace {

bool has_word(const std::vector<Token>& tokens, std::string_view word) {
  return std::any_of(tokens.begin(), tokens.end(),
                     [&](const Token& t) { return iequals(t.text, word); });
}

// More than two APIs listed next to each other, separated by commas and
// joined by "and" / "or".
bool is_enumeration(std::string_view text, const std::set<std::string>& apis) {
  const std::vector<Token> tokens = word_tokens(text);
  auto is_api = [&](std::size_t k) {
    return apis.count(std::string(tokens[k].text)) > 0;
  };
  auto gap = [&](std::size_t a, std::size_t b, bool allow_comma) {
    for (std::size_t p = tokens[a].end(); p < tokens[b].begin; ++p) {
      char c = text[p];
      if (is_space(c)) continue;
      if (c == ',' && allow_comma) continue;
      return false;
    }
    return true;
  };
  auto has_comma = [&](std::size_t a, std::size_t b) {
    for (std::size_t p = tokens[a].end(); p < tokens[b].begin; ++p)
      if (text[p] == ',') return true;
    return false;
  };

  for (std::size_t k = 0; k < tokens.size(); ++k) {
    if (!is_api(k)) continue;
    std::size_t items = 1;
    bool joined = false;
    std::size_t cur = k;
    while (cur + 1 < tokens.size()) {
      std::size_t nxt = cur + 1;
      if ((iequals(tokens[nxt].text, "and") || iequals(tokens[nxt].text, "or")) &&
          nxt + 1 < tokens.size() && gap(cur, nxt, true) && is_api(nxt + 1) &&
          gap(nxt, nxt + 1, false)) {
        joined = true;
        ++items;
        cur = nxt + 1;
        continue;
      }
      if (is_api(nxt) && gap(cur, nxt, true) && has_comma(cur, nxt)) {
        ++items;
        cur = nxt;
        continue;
      }
      break;
    }
    if (items > 2 && joined) return true;
    k = cur;
  }
  return false;
}

bool has_more_than(const std::vector<Token>& tokens) {
  bool more = false;
  for (const Token& t : tokens) {
    if (iequals(t.text, "more")) more = true;
    else if (more && iequals(t.text, "than")) return true;
  }
  return false;
}

}  // namespace

SentenceKind classify_sentence_kind(const Sentence& sentence) {
  if (sentence.is_comment)
    return SentenceKind::marginal(MarginalReason::CodeComment);
  if (sentence.is_code) return SentenceKind::principal();

  const std::string_view text = sentence.text;
  const std::vector<Token> tokens = word_tokens(text);
  if (has_word(tokens, "if") || has_word(tokens, "whether"))
    return SentenceKind::marginal(MarginalReason::Conditional);
  if (is_enumeration(text, sentence.apis))
    return SentenceKind::marginal(MarginalReason::Enumeration);
  for (std::string_view phrase : {"for example", "for instance", "such as"}) {
    if (contains_phrase(text, phrase))
      return SentenceKind::marginal(MarginalReason::Example);
  }
  for (std::string_view phrase : {"compared to", "unlike", "extend", "extends",
                                  "inherited from", "subtype of"}) {
    if (contains_phrase(text, phrase))
      return SentenceKind::marginal(MarginalReason::Comparative);
  }
  if (has_more_than(tokens))
    return SentenceKind::marginal(MarginalReason::Comparative);
  return SentenceKind::principal();
}

ParsedFragment parse_fragment(const Fragment& fragment,
                              const ApiCatalog& catalog,
                              const ParseOptions& options) {
  ParsedFragment pf;
  pf.fragment = fragment;
  pf.sentences = identify_sentences(fragment, &pf.warnings);
  pf.mentions = discover_apis(pf.sentences, catalog);
  if (options.resolve) {
    resolve_pronouns(pf.sentences, pf.mentions);
    pf.bindings = resolve_variables(pf.sentences, pf.mentions, catalog);
  }
  for (Sentence& s : pf.sentences) s.kind = classify_sentence_kind(s);
  return pf;
}

}  // namespace fragrec
