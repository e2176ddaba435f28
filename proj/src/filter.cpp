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

#include "fragrec/filter.hpp"

#include <algorithm>
#include <fstream>

#include "fragrec/error.hpp"
#include "fragrec/text.hpp"

namespace fragrec {

std::string_view to_string(RuleId rule) {
  switch (rule) {
    case RuleId::R1_SingleApiOnce: return "R1_SingleApiOnce";
    case RuleId::R2_TooShort: return "R2_TooShort";
    case RuleId::R3_LowApiSentenceRatio: return "R3_LowApiSentenceRatio";
    case RuleId::R4_MarginalOnly: return "R4_MarginalOnly";
    case RuleId::R5_IndicatorPhrase: return "R5_IndicatorPhrase";
  }
  return "R1_SingleApiOnce";
}

std::optional<RuleId> rule_from_string(std::string_view name) {
  for (RuleId r : {RuleId::R1_SingleApiOnce, RuleId::R2_TooShort,
                   RuleId::R3_LowApiSentenceRatio, RuleId::R4_MarginalOnly,
                   RuleId::R5_IndicatorPhrase}) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

std::vector<std::string> FilterConfig::default_indicator_phrases() {
  return {"summary", "overview", "introduction", "for more information about",
          "more details in"};
}

std::vector<std::string> load_indicator_phrases(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read indicator list " + path.string());
  std::vector<std::string> phrases;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    phrases.emplace_back(t);
  }
  return phrases;
}

bool single_api_once(const ParsedFragment& pf) {
  std::set<std::string> apis = pf.apis();
  return apis.size() == 1 && pf.mentions.size() == 1;
}

bool too_short(const ParsedFragment& pf, const FilterConfig& config) {
  return pf.sentences.size() < config.min_sentences;
}

bool low_api_sentence_ratio(const ParsedFragment& pf,
                            const FilterConfig& config) {
  if (pf.sentences.empty()) return true;
  auto with_api = std::count_if(pf.sentences.begin(), pf.sentences.end(),
                                [](const Sentence& s) { return !s.apis.empty(); });
  return static_cast<double>(with_api) /
             static_cast<double>(pf.sentences.size()) <
         config.min_api_sentence_ratio;
}

bool marginal_only(const ParsedFragment& pf) {
  if (pf.mentions.empty()) return false;
  return std::all_of(pf.sentences.begin(), pf.sentences.end(),
                     [](const Sentence& s) {
                       return s.apis.empty() || s.kind.is_marginal();
                     });
}

bool has_indicator_phrase(const ParsedFragment& pf,
                          const FilterConfig& config) {
  for (const Paragraph& p : pf.fragment.paragraphs) {
    if (p.kind == ParagraphKind::CodeBlock) continue;
    for (const std::string& phrase : config.indicator_phrases) {
      if (contains_phrase(p.plain_text, phrase)) return true;
    }
  }
  return false;
}

FilterVerdict apply_filter(const ParsedFragment& pf,
                           const FilterConfig& config) {
  FilterVerdict v;
  v.fragment_id = pf.fragment.id;
  if (single_api_once(pf)) v.fired_rules.insert(RuleId::R1_SingleApiOnce);
  if (too_short(pf, config)) v.fired_rules.insert(RuleId::R2_TooShort);
  if (low_api_sentence_ratio(pf, config))
    v.fired_rules.insert(RuleId::R3_LowApiSentenceRatio);
  if (marginal_only(pf)) v.fired_rules.insert(RuleId::R4_MarginalOnly);
  if (has_indicator_phrase(pf, config))
    v.fired_rules.insert(RuleId::R5_IndicatorPhrase);
  return v;
}

}  // namespace fragrec
