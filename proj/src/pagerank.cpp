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

#include "fragrec/pagerank.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "fragrec/simd/kernels.hpp"
#include "fragrec/text.hpp"

namespace fragrec {

double TfIdfVector::norm() const {
  double sq = 0.0;
  for (const auto& [term, w] : weights) sq += w * w;
  return std::sqrt(sq);
}

std::vector<TfIdfVector> tfidf_vectors(
    std::span<const std::vector<std::string>> sentence_terms) {
  const double n = static_cast<double>(sentence_terms.size());
  std::map<std::string, std::size_t> df;
  for (const auto& terms : sentence_terms) {
    std::vector<std::string> uniq(terms);
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (const std::string& t : uniq) ++df[t];
  }
  std::vector<TfIdfVector> out(sentence_terms.size());
  for (std::size_t i = 0; i < sentence_terms.size(); ++i) {
    for (const std::string& t : sentence_terms[i]) out[i].weights[t] += 1.0;
    for (auto& [t, w] : out[i].weights)
      w *= std::log(1.0 + n / static_cast<double>(df[t]));
  }
  return out;
}

double cosine_similarity(const TfIdfVector& a, const TfIdfVector& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  double dot = 0.0;
  for (const auto& [t, w] : a.weights) {
    auto it = b.weights.find(t);
    if (it != b.weights.end()) dot += w * it->second;
  }
  return std::clamp(dot / (na * nb), 0.0, 1.0);
}

SentenceGraph::SentenceGraph(std::size_t n, std::vector<double> sim)
    : n_(n), sim_(std::move(sim)) {
  if (sim_.size() != n * n)
    throw std::invalid_argument("similarity matrix must be n x n");
  for (std::size_t i = 0; i < n; ++i) sim_[i * n + i] = 0.0;
}

std::size_t SentenceGraph::edge_count() const {
  std::size_t edges = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (has_edge(i, j)) ++edges;
  return edges;
}

double SentenceGraph::out_weight(std::size_t i) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < n_; ++j) sum += similarity(i, j);
  return sum;
}

std::vector<std::string> sentence_terms(const Sentence& sentence,
                                        const ApiCatalog& catalog) {
  return index_terms(sentence.text,
                     [&](std::string_view w) { return catalog.contains(w); });
}

SentenceGraph build_similarity_graph(
    std::span<const std::vector<std::string>> terms) {
  const std::size_t n = terms.size();
  if (n == 0) throw std::invalid_argument("sentence graph needs a sentence");
  // Dense, L2-normalised TF-IDF rows over the fragment's own vocabulary;
  // cosine similarity is then a plain dot product.
  std::vector<TfIdfVector> vectors = tfidf_vectors(terms);
  std::unordered_map<std::string, std::size_t> column;
  for (const TfIdfVector& v : vectors)
    for (const auto& [t, w] : v.weights) column.emplace(t, column.size());
  const std::size_t dim = column.size();
  std::vector<double> rows(n * dim, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double norm = vectors[i].norm();
    if (norm == 0.0) continue;
    for (const auto& [t, w] : vectors[i].weights)
      rows[i * dim + column.at(t)] = w / norm;
  }

  const simd::KernelTable& kern = simd::kernels();
  std::vector<double> sim(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = dim == 0 ? 0.0
                          : kern.dot(rows.data() + i * dim,
                                     rows.data() + j * dim, dim);
      s = std::clamp(s, 0.0, 1.0);
      sim[i * n + j] = s;
      sim[j * n + i] = s;
    }
  }
  return SentenceGraph(n, std::move(sim));
}

SentenceGraph build_similarity_graph(std::span<const Sentence> sentences,
                                     const ApiCatalog& catalog) {
  std::vector<std::vector<std::string>> terms;
  terms.reserve(sentences.size());
  for (const Sentence& s : sentences) terms.push_back(sentence_terms(s, catalog));
  return build_similarity_graph(terms);
}

double PageRankVector::sum() const {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

PageRankVector compute_pagerank(const SentenceGraph& graph,
                                const PageRankConfig& config) {
  const std::size_t n = graph.size();
  if (n == 0) throw std::invalid_argument("PageRank needs at least one vertex");

  // transition[v * n + u] = sim(u, v) / out(u)
  std::vector<double> transition(n * n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    const double out = graph.out_weight(u);
    if (out <= 0.0) continue;
    for (std::size_t v = 0; v < n; ++v)
      transition[v * n + u] = graph.similarity(u, v) / out;
  }

  PageRankVector pr;
  pr.damping = config.damping;
  pr.tolerance = config.tolerance;
  pr.values.assign(n, 1.0);
  std::vector<double> next(n, 0.0);
  const simd::KernelTable& kern = simd::kernels();
  while (pr.iterations < config.max_iterations) {
    const double change =
        kern.damped_matvec(transition.data(), pr.values.data(), n,
                           1.0 - config.damping, config.damping, next.data());
    pr.values.swap(next);
    ++pr.iterations;
    if (change < config.tolerance) {
      pr.converged = true;
      break;
    }
  }
  return pr;
}

double pagerank_share(std::span<const double> pagerank,
                      std::span<const bool> contains_api) {
  if (pagerank.size() != contains_api.size())
    throw std::invalid_argument("membership and PageRank differ in length");
  double total = 0.0, hit = 0.0;
  for (std::size_t i = 0; i < pagerank.size(); ++i) {
    total += pagerank[i];
    if (contains_api[i]) hit += pagerank[i];
  }
  return total > 0.0 ? hit / total : 0.0;
}

double score_pagerank(std::string_view api, const ParsedFragment& pf,
                      const PageRankVector& pr) {
  if (pr.values.size() != pf.sentences.size())
    throw std::invalid_argument("PageRank vector does not match the fragment");
  std::unique_ptr<bool[]> contains(new bool[pf.sentences.size()]);
  for (std::size_t i = 0; i < pf.sentences.size(); ++i)
    contains[i] = pf.sentences[i].apis.count(std::string(api)) > 0;
  return pagerank_share(pr.values, {contains.get(), pf.sentences.size()});
}

}  // namespace fragrec
