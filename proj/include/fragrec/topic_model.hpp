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

// LDA over fragments (collapsed Gibbs sampling) and the topic-based
// fragment/API correlation score.

#ifndef FRAGREC_TOPIC_MODEL_HPP_
#define FRAGREC_TOPIC_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fragrec/corpus.hpp"
#include "fragrec/parser.hpp"

namespace fragrec {

class Vocabulary {
 public:
  // Returns the index of `term`, adding it when new.
  std::size_t add(const std::string& term);
  std::optional<std::size_t> find(std::string_view term) const;
  const std::string& term(std::size_t index) const { return terms_[index]; }
  const std::vector<std::string>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data[r * cols + c];
  }
  std::span<const double> row(std::size_t r) const {
    return {data.data() + r * cols, cols};
  }
};

struct LdaConfig {
  std::size_t num_topics = 5;
  std::uint64_t seed = 42;
  std::size_t iterations = 1000;
  // Defaults to 50 / num_topics.
  std::optional<double> alpha;
  double beta = 0.01;
};

// max(5, fragment_count / 5).
std::size_t default_topic_count(std::size_t fragment_count);

struct TopicDocument {
  FragmentId id;
  std::vector<std::string> terms;
};

struct TopicModel {
  std::size_t num_topics = 0;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  double alpha = 0.0;
  double beta = 0.0;
  Vocabulary vocabulary;
  std::vector<FragmentId> fragments;
  DenseMatrix fragment_topic;  // P(t | fragment), one row per fragment
  DenseMatrix topic_term;      // P(term | t), one row per topic

  std::optional<std::size_t> fragment_index(const FragmentId& id) const;
};

// Bag of words of a parsed fragment: prose words and code identifiers,
// lowercased, with API names always kept.
std::vector<std::string> fragment_terms(const ParsedFragment& pf,
                                        const ApiCatalog& catalog);

// Throws std::invalid_argument for an empty corpus, an empty vocabulary,
// zero topics, or more topics than vocabulary terms.
TopicModel fit_lda(std::span<const TopicDocument> documents,
                   const LdaConfig& config);
TopicModel fit_lda(std::span<const ParsedFragment> fragments,
                   const ApiCatalog& catalog, const LdaConfig& config);

// Expected probability of a term under a topic mixture:
// sum_t term_given_topic[t] * topic_given_fragment[t].
double topic_correlation(std::span<const double> term_given_topic,
                         std::span<const double> topic_given_fragment);

// Score of `api` for a fragment of the model; 0 when the API never made it
// into the vocabulary. Throws std::invalid_argument for unknown fragments.
double score_topic(std::string_view api, const FragmentId& fragment,
                   const TopicModel& model);

}  // namespace fragrec

#endif  // FRAGREC_TOPIC_MODEL_HPP_
