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

// Sentence similarity graph of a fragment, weighted PageRank over it, and
// the PageRank-based fragment/API correlation score.

#ifndef FRAGREC_PAGERANK_HPP_
#define FRAGREC_PAGERANK_HPP_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fragrec/corpus.hpp"
#include "fragrec/parser.hpp"

namespace fragrec {

struct TfIdfVector {
  std::map<std::string, double> weights;
  double norm() const;
};

// One vector per sentence. tf is the raw term count and
// idf(term) = ln(1 + n / df(term)) over the n given sentences.
std::vector<TfIdfVector> tfidf_vectors(
    std::span<const std::vector<std::string>> sentence_terms);

double cosine_similarity(const TfIdfVector& a, const TfIdfVector& b);

// Undirected similarities stored as a dense symmetric matrix; every pair
// with non-zero similarity is a pair of opposite directed edges.
class SentenceGraph {
 public:
  SentenceGraph() = default;
  // `sim` is row-major n x n; the diagonal is ignored.
  SentenceGraph(std::size_t n, std::vector<double> sim);

  std::size_t size() const { return n_; }
  // 0-based vertex indices; similarity(i, i) is 0.
  double similarity(std::size_t i, std::size_t j) const {
    return i == j ? 0.0 : sim_[i * n_ + j];
  }
  bool has_edge(std::size_t i, std::size_t j) const {
    return similarity(i, j) > 0.0;
  }
  std::size_t edge_count() const;  // directed edges
  double out_weight(std::size_t i) const;
  const std::vector<double>& matrix() const { return sim_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> sim_;
};

// Terms of one sentence for the graph: lowercase, stop words removed, API
// names kept.
std::vector<std::string> sentence_terms(const Sentence& sentence,
                                        const ApiCatalog& catalog);

SentenceGraph build_similarity_graph(
    std::span<const std::vector<std::string>> sentence_terms);
SentenceGraph build_similarity_graph(std::span<const Sentence> sentences,
                                     const ApiCatalog& catalog);

struct PageRankConfig {
  double damping = 0.85;
  double tolerance = 1e-8;
  std::size_t max_iterations = 200;
};

struct PageRankVector {
  std::vector<double> values;  // index i is sentence ordinal i + 1
  double damping = 0.0;
  double tolerance = 0.0;
  std::size_t iterations = 0;
  bool converged = false;

  double sum() const;
};

// pr(v) <- (1 - d) + d * sum_{u -> v} pr(u) * sim(u, v) / out(u), starting
// from pr = 1 and stopping once no value moves by `tolerance` or more. On
// a graph without isolated vertices the values sum to the vertex count.
PageRankVector compute_pagerank(const SentenceGraph& graph,
                                const PageRankConfig& config = {});

// Share of the PageRank mass held by sentences that contain the API.
double pagerank_share(std::span<const double> pagerank,
                      std::span<const bool> contains_api);
double score_pagerank(std::string_view api, const ParsedFragment& pf,
                      const PageRankVector& pr);

}  // namespace fragrec

#endif  // FRAGREC_PAGERANK_HPP_
