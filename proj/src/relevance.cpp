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

#include "fragrec/relevance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "fragrec/error.hpp"
#include "fragrec/text.hpp"

namespace fragrec {

ThresholdConfig ThresholdConfig::fixed(double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("threshold must lie in [0, 1]");
  ThresholdConfig c;
  c.fixed_ = t;
  return c;
}

ThresholdConfig ThresholdConfig::parse(std::string_view text) {
  const std::string t(trim(text));
  if (iequals(t, "auto")) return automatic();
  double value = 0.0;
  auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size() ||
      !(value >= 0.0 && value <= 1.0))
    throw InputError("threshold must be 'auto' or a number in [0, 1]: " + t);
  return fixed(value);
}

std::string ThresholdConfig::str() const {
  if (!fixed_) return "auto";
  std::ostringstream os;
  os << *fixed_;
  return os.str();
}

std::string_view to_string(ScoreMode mode) {
  switch (mode) {
    case ScoreMode::Both: return "both";
    case ScoreMode::Topic: return "topic";
    case ScoreMode::PageRank: return "pagerank";
  }
  return "both";
}

std::optional<ScoreMode> score_mode_from_string(std::string_view name) {
  if (name == "both") return ScoreMode::Both;
  if (name == "topic") return ScoreMode::Topic;
  if (name == "pagerank") return ScoreMode::PageRank;
  return std::nullopt;
}

bool mentions_api_or_method(const Sentence& sentence,
                            std::span<const VariableBinding> bindings,
                            const ApiCatalog& catalog) {
  if (!sentence.apis.empty()) return true;
  static const std::regex call(R"(([A-Za-z_]\w*)\s*\.\s*[A-Za-z_]\w*\s*\()");
  for (const std::string* text : {&sentence.text, &sentence.source_text}) {
    for (std::sregex_iterator it(text->begin(), text->end(), call), end;
         it != end; ++it) {
      const std::string receiver = (*it)[1].str();
      if (catalog.contains(receiver)) return true;
      for (const VariableBinding& b : bindings)
        if (b.variable == receiver) return true;
    }
  }
  return false;
}

double compute_threshold_T0(std::span<const ParsedFragment> tutorial,
                            const ApiCatalog& catalog) {
  std::size_t total = 0;
  std::size_t with_api = 0;
  for (const ParsedFragment& pf : tutorial) {
    for (const Sentence& s : pf.sentences) {
      ++total;
      if (mentions_api_or_method(s, pf.bindings, catalog)) ++with_api;
    }
  }
  if (total == 0) throw InputError("tutorial has no sentences");
  return 1.0 - static_cast<double>(with_api) / static_cast<double>(total);
}

bool is_marginal_only(std::string_view api, const ParsedFragment& pf) {
  bool seen = false;
  for (const Sentence& s : pf.sentences) {
    if (!s.apis.count(std::string(api))) continue;
    seen = true;
    if (!s.kind.is_marginal()) return false;
  }
  return seen;
}

bool decide(double norm_t, double norm_pr, bool marginal_only, double t,
            ScoreMode mode) {
  if (marginal_only) return false;
  switch (mode) {
    case ScoreMode::Topic: return norm_t >= t;
    case ScoreMode::PageRank: return norm_pr >= t;
    case ScoreMode::Both: break;
  }
  return norm_t >= t && norm_pr >= t;
}

std::vector<RelevanceRecord> identify_relevance(
    const FragmentId& fragment, const std::map<std::string, ApiScores>& scores,
    const std::set<std::string>& marginal_only_apis, double t,
    ScoreMode mode) {
  double max_t = 0.0, max_pr = 0.0;
  for (const auto& [api, s] : scores) {
    max_t = std::max(max_t, s.score_t);
    max_pr = std::max(max_pr, s.score_pr);
  }
  std::vector<RelevanceRecord> out;
  out.reserve(scores.size());
  for (const auto& [api, s] : scores) {
    RelevanceRecord r;
    r.fragment_id = fragment;
    r.api = api;
    r.score_t = s.score_t;
    r.score_pr = s.score_pr;
    r.norm_t = max_t > 0.0 ? s.score_t / max_t : 0.0;
    r.norm_pr = max_pr > 0.0 ? s.score_pr / max_pr : 0.0;
    r.marginal_only = marginal_only_apis.count(api) > 0;
    // A score type whose fragment maximum is 0 carries no signal.
    const bool signal = (mode == ScoreMode::PageRank || max_t > 0.0) &&
                        (mode == ScoreMode::Topic || max_pr > 0.0);
    r.relevant = signal && decide(r.norm_t, r.norm_pr, r.marginal_only, t, mode);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RelevanceRecord> identify_relevance(
    const ParsedFragment& pf, const std::map<std::string, ApiScores>& scores,
    double t, ScoreMode mode) {
  std::set<std::string> marginal;
  for (const auto& [api, s] : scores)
    if (is_marginal_only(api, pf)) marginal.insert(api);
  return identify_relevance(pf.fragment.id, scores, marginal, t, mode);
}

}  // namespace fragrec
