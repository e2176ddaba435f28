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

// The discovery pipeline over a whole corpus, the persisted relevance
// index it produces, and lookups against that index.

#ifndef FRAGREC_INDEX_HPP_
#define FRAGREC_INDEX_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fragrec/corpus.hpp"
#include "fragrec/filter.hpp"
#include "fragrec/pagerank.hpp"
#include "fragrec/parser.hpp"
#include "fragrec/relevance.hpp"
#include "fragrec/topic_model.hpp"

namespace fragrec {

inline constexpr int kIndexSchemaVersion = 1;

struct AnalyzeConfig {
  std::optional<std::size_t> topics;  // default: max(5, retained / 5)
  std::uint64_t seed = 42;
  std::size_t iterations = 1000;
  std::optional<double> alpha;  // default: 50 / K
  double beta = 0.01;
  double damping = 0.85;
  ThresholdConfig threshold = ThresholdConfig::automatic();
  bool no_filter = false;
  bool no_resolution = false;
  ScoreMode scores = ScoreMode::Both;
  FilterConfig filter;
  std::string indicators_path;  // informational; phrases live in `filter`
  std::size_t threads = 0;      // 0: one per hardware thread

  // Replaces the computed raw scores of a (fragment, API) pair when it
  // returns a value. Used to replay hand-set scores through the pipeline.
  std::function<std::optional<ApiScores>(const FragmentId&, std::string_view)>
      score_override;
};

struct TutorialSummary {
  std::string id;
  std::string source;
  double threshold = 0.0;  // the T actually applied
  double t0 = 0.0;
  std::size_t topics = 0;  // 0 when no topic model was fitted
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t fragment_count = 0;
  std::size_t retained_count = 0;
  std::vector<std::string> warnings;
};

struct IndexedFragment {
  FragmentId id;
  std::size_t word_count = 0;
  std::size_t sentence_count = 0;
  bool filtered = false;
  std::set<RuleId> fired_rules;
  std::set<std::string> apis;
  std::string text;
};

struct RelevanceIndex {
  int schema_version = kIndexSchemaVersion;
  std::string corpus;
  std::string catalog;
  // Snapshot of the configuration as written to disk.
  std::optional<std::size_t> topics;
  std::uint64_t seed = 42;
  std::size_t iterations = 1000;
  std::optional<double> alpha;
  double beta = 0.01;
  double damping = 0.85;
  std::string threshold = "auto";
  bool no_filter = false;
  bool no_resolution = false;
  ScoreMode scores = ScoreMode::Both;
  std::vector<std::string> indicator_phrases;

  std::vector<TutorialSummary> tutorials;
  std::vector<IndexedFragment> fragments;
  std::vector<RelevanceRecord> records;
  std::vector<std::string> load_errors;

  const IndexedFragment* find_fragment(const FragmentId& id) const;
  const TutorialSummary* find_tutorial(std::string_view id) const;

  std::string to_json() const;  // pretty printed, trailing newline
  // Throws InputError on malformed or incompatible documents.
  static RelevanceIndex from_json(std::string_view text);
  void save(const std::filesystem::path& path) const;
  static RelevanceIndex load(const std::filesystem::path& path);
};

// Everything computed for one tutorial, kept for audits and dumps.
struct TutorialAnalysis {
  TutorialSummary summary;
  std::vector<ParsedFragment> parsed;
  std::vector<FilterVerdict> verdicts;
  std::optional<TopicModel> model;
  // Parallel to `parsed`; empty graphs for fragments that were not scored.
  std::vector<SentenceGraph> graphs;
  std::vector<PageRankVector> pageranks;
  std::vector<RelevanceRecord> records;
};

TutorialAnalysis analyze_tutorial(const TutorialDoc& doc,
                                  const ApiCatalog& catalog,
                                  const AnalyzeConfig& config);

struct Analysis {
  RelevanceIndex index;
  std::vector<TutorialAnalysis> tutorials;
};

Analysis analyze(const Corpus& corpus, const AnalyzeConfig& config);
// Loads the corpus first; InputError for a missing or empty directory.
Analysis analyze(const std::filesystem::path& corpus_dir,
                 const std::filesystem::path& catalog_path,
                 const AnalyzeConfig& config);

// Audit dumps: topic models and sentence graphs, as pretty JSON.
std::string model_dump_json(const Analysis& analysis);
std::string graph_dump_json(const Analysis& analysis);

// Recomputes every verdict of the index at a fixed T from the stored raw
// scores, the way the analysis would have produced them.
std::vector<RelevanceRecord> relabel(const RelevanceIndex& index, double t);

struct Recommendation {
  FragmentId fragment;
  double score = 0.0;  // norm_t + norm_pr
  std::string text;
};

struct RecommendResult {
  bool known_api = false;
  std::vector<Recommendation> fragments;
};

// Relevant fragments for a simple API name, best first. The lookup is
// case-insensitive; `known_api` is false when the index never saw the name.
RecommendResult recommend(const RelevanceIndex& index, std::string_view api,
                          std::optional<std::size_t> top_k = std::nullopt);

}  // namespace fragrec

#endif  // FRAGREC_INDEX_HPP_
