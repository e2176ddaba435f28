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

#include "fragrec/topic_model.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "fragrec/simd/kernels.hpp"
#include "fragrec/text.hpp"

namespace fragrec {

std::size_t Vocabulary::add(const std::string& term) {
  auto [it, inserted] = index_.emplace(term, terms_.size());
  if (inserted) terms_.push_back(term);
  return it->second;
}

std::optional<std::size_t> Vocabulary::find(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> TopicModel::fragment_index(
    const FragmentId& id) const {
  auto it = std::find(fragments.begin(), fragments.end(), id);
  if (it == fragments.end()) return std::nullopt;
  return static_cast<std::size_t>(it - fragments.begin());
}

std::size_t default_topic_count(std::size_t fragment_count) {
  return std::max<std::size_t>(5, fragment_count / 5);
}

std::vector<std::string> fragment_terms(const ParsedFragment& pf,
                                        const ApiCatalog& catalog) {
  auto is_api = [&](std::string_view w) { return catalog.contains(w); };
  std::vector<std::string> terms;
  for (const Sentence& s : pf.sentences) {
    std::vector<std::string> t = index_terms(s.text, is_api);
    terms.insert(terms.end(), std::make_move_iterator(t.begin()),
                 std::make_move_iterator(t.end()));
  }
  return terms;
}

namespace {

// Uniform double in [0, 1) from the top 53 bits, so the sequence depends
// only on the engine and not on the standard library's distributions.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

TopicModel fit_lda(std::span<const TopicDocument> documents,
                   const LdaConfig& config) {
  if (documents.empty()) throw std::invalid_argument("LDA needs at least one document");
  if (config.num_topics == 0) throw std::invalid_argument("LDA needs at least one topic");

  TopicModel model;
  model.num_topics = config.num_topics;
  model.seed = config.seed;
  model.iterations = config.iterations;
  model.alpha = config.alpha.value_or(50.0 / static_cast<double>(config.num_topics));
  model.beta = config.beta;

  const std::size_t K = config.num_topics;
  const std::size_t D = documents.size();
  std::vector<std::int32_t> words;
  std::vector<std::size_t> doc_start{0};
  for (const TopicDocument& doc : documents) {
    model.fragments.push_back(doc.id);
    for (const std::string& term : doc.terms)
      words.push_back(static_cast<std::int32_t>(model.vocabulary.add(term)));
    doc_start.push_back(words.size());
  }
  const std::size_t V = model.vocabulary.size();
  if (V == 0) throw std::invalid_argument("empty vocabulary");
  if (K > V)
    throw std::invalid_argument("number of topics (" + std::to_string(K) +
                                ") exceeds vocabulary size (" +
                                std::to_string(V) + ")");

  std::vector<std::int32_t> doc_topic(D * K, 0);
  std::vector<std::int32_t> word_topic(V * K, 0);
  std::vector<std::int32_t> topic_total(K, 0);
  std::vector<std::int32_t> z(words.size(), 0);

  std::mt19937_64 rng(config.seed);
  for (std::size_t d = 0; d < D; ++d) {
    for (std::size_t i = doc_start[d]; i < doc_start[d + 1]; ++i) {
      auto k = std::min<std::size_t>(
          K - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(K)));
      z[i] = static_cast<std::int32_t>(k);
      ++doc_topic[d * K + k];
      ++word_topic[static_cast<std::size_t>(words[i]) * K + k];
      ++topic_total[k];
    }
  }

  const simd::KernelTable& kern = simd::kernels();
  const double vbeta = static_cast<double>(V) * model.beta;
  std::vector<double> weights(K);
  for (std::size_t iter = 0; iter < config.iterations; ++iter) {
    for (std::size_t d = 0; d < D; ++d) {
      std::int32_t* dt = doc_topic.data() + d * K;
      for (std::size_t i = doc_start[d]; i < doc_start[d + 1]; ++i) {
        const auto w = static_cast<std::size_t>(words[i]);
        std::int32_t* wt = word_topic.data() + w * K;
        auto k = static_cast<std::size_t>(z[i]);
        --dt[k];
        --wt[k];
        --topic_total[k];

        kern.gibbs_topic_weights(dt, wt, topic_total.data(), K, model.alpha,
                                 model.beta, vbeta, weights.data());
        double total = 0.0;
        for (std::size_t t = 0; t < K; ++t) {
          total += weights[t];
          weights[t] = total;
        }
        const double u = uniform01(rng) * total;
        k = K - 1;
        for (std::size_t t = 0; t < K; ++t) {
          if (u < weights[t]) {
            k = t;
            break;
          }
        }

        z[i] = static_cast<std::int32_t>(k);
        ++dt[k];
        ++wt[k];
        ++topic_total[k];
      }
    }
  }

  model.fragment_topic = DenseMatrix(D, K);
  for (std::size_t d = 0; d < D; ++d) {
    const double denom = static_cast<double>(doc_start[d + 1] - doc_start[d]) +
                         static_cast<double>(K) * model.alpha;
    for (std::size_t k = 0; k < K; ++k)
      model.fragment_topic(d, k) =
          (static_cast<double>(doc_topic[d * K + k]) + model.alpha) / denom;
  }
  model.topic_term = DenseMatrix(K, V);
  for (std::size_t k = 0; k < K; ++k) {
    const double denom = static_cast<double>(topic_total[k]) + vbeta;
    for (std::size_t w = 0; w < V; ++w)
      model.topic_term(k, w) =
          (static_cast<double>(word_topic[w * K + k]) + model.beta) / denom;
  }
  return model;
}

TopicModel fit_lda(std::span<const ParsedFragment> fragments,
                   const ApiCatalog& catalog, const LdaConfig& config) {
  std::vector<TopicDocument> docs;
  docs.reserve(fragments.size());
  for (const ParsedFragment& pf : fragments)
    docs.push_back({pf.fragment.id, fragment_terms(pf, catalog)});
  return fit_lda(docs, config);
}

double topic_correlation(std::span<const double> term_given_topic,
                         std::span<const double> topic_given_fragment) {
  if (term_given_topic.size() != topic_given_fragment.size())
    throw std::invalid_argument("topic vectors differ in length");
  double score = 0.0;
  for (std::size_t t = 0; t < term_given_topic.size(); ++t)
    score += term_given_topic[t] * topic_given_fragment[t];
  return score;
}

double score_topic(std::string_view api, const FragmentId& fragment,
                   const TopicModel& model) {
  std::optional<std::size_t> d = model.fragment_index(fragment);
  if (!d) throw std::invalid_argument("fragment not in topic model: " + fragment.str());
  std::optional<std::size_t> w = model.vocabulary.find(to_lower(api));
  if (!w) return 0.0;
  std::vector<double> column(model.num_topics);
  for (std::size_t k = 0; k < model.num_topics; ++k)
    column[k] = model.topic_term(k, *w);
  return topic_correlation(column, model.fragment_topic.row(*d));
}

}  // namespace fragrec
