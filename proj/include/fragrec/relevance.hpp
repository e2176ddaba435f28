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

// Threshold decision that turns the two raw scores into verdicts.

#ifndef FRAGREC_RELEVANCE_HPP_
#define FRAGREC_RELEVANCE_HPP_

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fragrec/corpus.hpp"
#include "fragrec/filter.hpp"
#include "fragrec/parser.hpp"

namespace fragrec {

class ThresholdConfig {
 public:
  static ThresholdConfig automatic() { return ThresholdConfig(); }
  // Throws std::invalid_argument outside [0, 1].
  static ThresholdConfig fixed(double t);
  // "auto" or a number in [0, 1]; throws InputError otherwise.
  static ThresholdConfig parse(std::string_view text);

  bool is_auto() const { return !fixed_; }
  double value() const { return fixed_.value_or(0.0); }
  std::string str() const;

 private:
  std::optional<double> fixed_;
};

// Which raw scores take part in the conjunction.
enum class ScoreMode { Both, Topic, PageRank };

std::string_view to_string(ScoreMode mode);
std::optional<ScoreMode> score_mode_from_string(std::string_view name);

struct ApiScores {
  double score_t = 0.0;
  double score_pr = 0.0;
};

struct RelevanceRecord {
  FragmentId fragment_id;
  std::string api;
  double score_t = 0.0;
  double score_pr = 0.0;
  double norm_t = 0.0;
  double norm_pr = 0.0;
  bool marginal_only = false;
  bool relevant = false;
  std::set<RuleId> filtered_by;
};

// True when the sentence holds an API mention or a method call whose
// receiver is a catalog API or a variable bound to one.
bool mentions_api_or_method(const Sentence& sentence,
                            std::span<const VariableBinding> bindings,
                            const ApiCatalog& catalog);

// 1 - (sentences with APIs or API methods) / (all sentences), over every
// fragment of one tutorial. Throws InputError when there are no sentences.
double compute_threshold_T0(std::span<const ParsedFragment> tutorial,
                            const ApiCatalog& catalog);

// True when every sentence containing `api` is marginal.
bool is_marginal_only(std::string_view api, const ParsedFragment& pf);

// Verdict for one API from already normalized scores.
bool decide(double norm_t, double norm_pr, bool marginal_only, double t,
            ScoreMode mode = ScoreMode::Both);

// Normalizes each score type by its maximum over the fragment's APIs and
// applies the threshold. Records come out in API name order.
std::vector<RelevanceRecord> identify_relevance(
    const FragmentId& fragment, const std::map<std::string, ApiScores>& scores,
    const std::set<std::string>& marginal_only_apis, double t,
    ScoreMode mode = ScoreMode::Both);
std::vector<RelevanceRecord> identify_relevance(
    const ParsedFragment& pf, const std::map<std::string, ApiScores>& scores,
    double t, ScoreMode mode = ScoreMode::Both);

}  // namespace fragrec

#endif  // FRAGREC_RELEVANCE_HPP_
