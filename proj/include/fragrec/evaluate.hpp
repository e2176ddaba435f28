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

// Scoring an index against manual annotations, and threshold sweeps.

#ifndef FRAGREC_EVALUATE_HPP_
#define FRAGREC_EVALUATE_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fragrec/index.hpp"

namespace fragrec {

struct Annotation {
  std::string tutorial;
  std::size_t fragment = 0;  // ordinal under the annotator's segmentation
  std::string api;
  bool relevant = false;
};

// CSV with header `tutorial,fragment_id,api,label`. Fields may be quoted.
// Throws InputError on a bad header, a bad label or fragment id, or a
// repeated (tutorial, fragment_id, api) key.
struct AnnotationSet {
  std::vector<Annotation> rows;

  static AnnotationSet parse(std::string_view csv);
  static AnnotationSet load(const std::filesystem::path& path);
};

// Maps annotated fragment ids onto the index's own ordinals. CSV header
// `tutorial,annotated_fragment,fragment_id`.
struct FragmentMap {
  std::map<std::pair<std::string, std::size_t>, std::size_t> mapping;

  static FragmentMap parse(std::string_view csv);
  static FragmentMap load(const std::filesystem::path& path);
  std::size_t map(const std::string& tutorial, std::size_t annotated) const;
};

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
};

// Percentages. Each is 0 when its denominator is 0.
struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
};

Metrics compute_metrics(const ConfusionCounts& c);

struct TutorialMetrics {
  std::string tutorial;
  ConfusionCounts counts;
  Metrics metrics;
};

struct MetricsReport {
  std::vector<TutorialMetrics> tutorials;
  ConfusionCounts total_counts;
  Metrics average;  // mean of the per-tutorial metrics
  std::size_t matched = 0;
  // Annotation rows whose fragment is absent from the index.
  std::vector<std::string> unmatched;
};

// Filtered fragments and pairs without a record count as predicted
// irrelevant. Throws AlignmentError when at least half of the annotation
// keys cannot be matched to an indexed fragment.
MetricsReport evaluate(const RelevanceIndex& index,
                       const AnnotationSet& annotations,
                       const FragmentMap* fragment_map = nullptr);
// Same, with the index's verdicts replaced by `records`.
MetricsReport evaluate(const RelevanceIndex& index,
                       const std::vector<RelevanceRecord>& records,
                       const AnnotationSet& annotations,
                       const FragmentMap* fragment_map = nullptr);

struct SweepRow {
  double t = 0.0;
  Metrics metrics;
  std::size_t relevant_pairs = 0;  // predicted relevant over the whole index
  bool is_auto = false;
};

// T = 0, step, 2 * step, ... 1. The row nearest to the mean automatic
// threshold of the evaluated tutorials is marked. `tutorial` restricts
// the sweep to one tutorial.
std::vector<SweepRow> sweep_threshold(
    const RelevanceIndex& index, const AnnotationSet& annotations,
    double step = 0.01, const FragmentMap* fragment_map = nullptr,
    std::optional<std::string> tutorial = std::nullopt);

// Header `T,precision,recall,f_measure,auto`.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace fragrec

#endif  // FRAGREC_EVALUATE_HPP_
