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

// Detection of fragments that do not explain any API.

#ifndef FRAGREC_FILTER_HPP_
#define FRAGREC_FILTER_HPP_

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fragrec/corpus.hpp"
#include "fragrec/parser.hpp"

namespace fragrec {

enum class RuleId {
  R1_SingleApiOnce,
  R2_TooShort,
  R3_LowApiSentenceRatio,
  R4_MarginalOnly,
  R5_IndicatorPhrase,
};

std::string_view to_string(RuleId rule);
std::optional<RuleId> rule_from_string(std::string_view name);

struct FilterVerdict {
  FragmentId fragment_id;
  std::set<RuleId> fired_rules;
  bool filtered() const { return !fired_rules.empty(); }
};

struct FilterConfig {
  std::size_t min_sentences = 5;
  double min_api_sentence_ratio = 0.20;
  std::vector<std::string> indicator_phrases = default_indicator_phrases();

  static std::vector<std::string> default_indicator_phrases();
};

// One phrase per line; blank lines and '#' comments are skipped.
std::vector<std::string> load_indicator_phrases(
    const std::filesystem::path& path);

// The individual rules. Each is an independent predicate.
bool single_api_once(const ParsedFragment& pf);
bool too_short(const ParsedFragment& pf, const FilterConfig& config = {});
bool low_api_sentence_ratio(const ParsedFragment& pf,
                            const FilterConfig& config = {});
bool marginal_only(const ParsedFragment& pf);
bool has_indicator_phrase(const ParsedFragment& pf,
                          const FilterConfig& config = {});

FilterVerdict apply_filter(const ParsedFragment& pf,
                           const FilterConfig& config = {});

}  // namespace fragrec

#endif  // FRAGREC_FILTER_HPP_
