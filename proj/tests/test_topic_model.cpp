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

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "fragrec/topic_model.hpp"
#include "golden.hpp"

namespace fragrec {
namespace {

std::vector<TopicDocument> two_vocabulary_corpus() {
  std::mt19937 rng(11);
  const std::vector<std::string> left{"apple", "banana", "cherry", "grape", "lemon"};
  const std::vector<std::string> right{"socket", "packet", "router", "switch", "cable"};
  std::vector<TopicDocument> docs;
  for (std::size_t d = 0; d < 20; ++d) {
    const auto& vocab = d % 2 ? right : left;
    TopicDocument doc{{"syn", d + 1}, {}};
    for (int i = 0; i < 40; ++i) doc.terms.push_back(vocab[rng() % vocab.size()]);
    docs.push_back(std::move(doc));
  }
  return docs;
}

TEST(Lda, RowsAreDistributions) {
  LdaConfig cfg;
  cfg.num_topics = 3;
  cfg.iterations = 100;
  TopicModel m = fit_lda(two_vocabulary_corpus(), cfg);
  for (std::size_t d = 0; d < m.fragment_topic.rows; ++d) {
    auto row = m.fragment_topic.row(d);
    EXPECT_NEAR(std::accumulate(row.begin(), row.end(), 0.0), 1.0, 1e-9);
  }
  for (std::size_t k = 0; k < m.topic_term.rows; ++k) {
    auto row = m.topic_term.row(k);
    EXPECT_NEAR(std::accumulate(row.begin(), row.end(), 0.0), 1.0, 1e-9);
    for (double v : row) EXPECT_GE(v, 0.0);
  }
}

TEST(Lda, SameSeedSameModel) {
  LdaConfig cfg;
  cfg.num_topics = 2;
  cfg.iterations = 50;
  TopicModel a = fit_lda(two_vocabulary_corpus(), cfg);
  TopicModel b = fit_lda(two_vocabulary_corpus(), cfg);
  EXPECT_EQ(a.fragment_topic.data, b.fragment_topic.data);
  EXPECT_EQ(a.topic_term.data, b.topic_term.data);
  cfg.seed = 43;
  TopicModel c = fit_lda(two_vocabulary_corpus(), cfg);
  EXPECT_NE(a.fragment_topic.data, c.fragment_topic.data);
}

TEST(Lda, DisjointVocabulariesSeparate) {
  LdaConfig cfg;
  cfg.num_topics = 2;
  TopicModel m = fit_lda(two_vocabulary_corpus(), cfg);
  const std::set<std::string> left{"apple", "banana", "cherry", "grape", "lemon"};
  for (std::size_t k = 0; k < 2; ++k) {
    double mass_left = 0.0;
    for (std::size_t w = 0; w < m.vocabulary.size(); ++w)
      if (left.count(m.vocabulary.term(w))) mass_left += m.topic_term(k, w);
    EXPECT_GE(std::max(mass_left, 1.0 - mass_left), 0.9) << "topic " << k;
  }
}

TEST(Lda, SingleTopicIsSmoothedFrequency) {
  LdaConfig cfg;
  cfg.num_topics = 1;
  cfg.iterations = 10;
  TopicModel m = fit_lda(std::vector<TopicDocument>{{{"t", 1}, {"a", "b", "a", "c"}}}, cfg);
  EXPECT_DOUBLE_EQ(m.fragment_topic(0, 0), 1.0);
  const double denom = 4 + 3 * cfg.beta;
  EXPECT_NEAR(m.topic_term(0, *m.vocabulary.find("a")), (2 + cfg.beta) / denom, 1e-12);
  EXPECT_NEAR(m.topic_term(0, *m.vocabulary.find("c")), (1 + cfg.beta) / denom, 1e-12);
}

TEST(Lda, Errors) {
  LdaConfig cfg;
  cfg.num_topics = 4;
  EXPECT_THROW(fit_lda(std::vector<TopicDocument>{}, cfg), std::invalid_argument);
  EXPECT_THROW(fit_lda(std::vector<TopicDocument>{{{"t", 1}, {}}}, cfg), std::invalid_argument);
  EXPECT_THROW(fit_lda(std::vector<TopicDocument>{{{"t", 1}, {"a", "b"}}}, cfg),
               std::invalid_argument);
  cfg.num_topics = 0;
  EXPECT_THROW(fit_lda(std::vector<TopicDocument>{{{"t", 1}, {"a"}}}, cfg),
               std::invalid_argument);
}

TEST(Lda, DefaultTopicCount) {
  EXPECT_EQ(default_topic_count(1), 5u);
  EXPECT_EQ(default_topic_count(24), 5u);
  EXPECT_EQ(default_topic_count(60), 12u);
}

TEST(ScoreTopic, ReferenceValues) {
  TopicModel m = testing::reference_topic_model();
  for (std::size_t a = 0; a < 4; ++a)
    EXPECT_NEAR(score_topic(testing::kGraphicsApis[a], {"graphics", 1}, m),
                testing::kScoreT[a], 1e-4);
}

TEST(ScoreTopic, AbsentAndUnknown) {
  TopicModel m = testing::reference_topic_model();
  EXPECT_EQ(score_topic("Paint", {"graphics", 1}, m), 0.0);
  EXPECT_THROW(score_topic("Canvas", {"graphics", 2}, m), std::invalid_argument);
  EXPECT_EQ(topic_correlation(std::vector<double>(5, 0.0), testing::kFragmentTopic), 0.0);
}

TEST(ScoreTopic, ExpectationOverVocabularyIsOne) {
  LdaConfig cfg;
  cfg.num_topics = 3;
  cfg.iterations = 60;
  TopicModel m = fit_lda(two_vocabulary_corpus(), cfg);
  for (const FragmentId& id : m.fragments) {
    double sum = 0.0;
    for (const std::string& term : m.vocabulary.terms()) {
      const double s = score_topic(term, id, m);
      EXPECT_GE(s, 0.0);
      sum += s;
    }
    EXPECT_NEAR(sum, 1.0, 1e-6);
  }
}

TEST(ScoreTopic, FragmentTermsKeepApisAndDropStopWords) {
  ApiCatalog cat = testing::fixture_catalog();
  auto b = parse_fragment(testing::fixture_fragment("graphics")[0], cat);
  auto terms = fragment_terms(b, cat);
  EXPECT_NE(std::find(terms.begin(), terms.end(), "canvas"), terms.end());
  EXPECT_NE(std::find(terms.begin(), terms.end(), "bitmap"), terms.end());
  EXPECT_EQ(std::find(terms.begin(), terms.end(), "the"), terms.end());
  EXPECT_EQ(std::find(terms.begin(), terms.end(), "new"), terms.end());
}

}  // namespace
}  // namespace fragrec
