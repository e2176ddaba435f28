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

// fragrec: find the tutorial fragments that explain an API.
//
//   fragrec analyze --corpus DIR --apis FILE --out index.json
//   fragrec recommend --index index.json --api Canvas
//   fragrec eval --index index.json --annotations labels.csv [--sweep]

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fragrec/error.hpp"
#include "fragrec/evaluate.hpp"
#include "fragrec/filter.hpp"
#include "fragrec/index.hpp"
#include "fragrec/relevance.hpp"

namespace fs = std::filesystem;
using namespace fragrec;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitAlignment = 2;

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw InputError("cannot write " + path.string());
}

fs::path sibling(const fs::path& index_path, std::string_view suffix) {
  fs::path p = index_path;
  p.replace_extension();
  return p.string() + std::string(suffix);
}

struct AnalyzeArgs {
  std::string corpus, apis, out;
  std::optional<std::size_t> topics;
  std::uint64_t seed = 42;
  double damping = 0.85;
  std::string threshold = "auto";
  bool no_filter = false, no_resolution = false;
  std::string scores = "both";
  std::size_t iterations = 1000;
  std::optional<double> alpha;
  double beta = 0.01;
  std::string indicators;
  std::size_t threads = 0;
  bool dump_model = false, dump_graphs = false;
};

int run_analyze(const AnalyzeArgs& a) {
  AnalyzeConfig cfg;
  cfg.topics = a.topics;
  if (cfg.topics && *cfg.topics == 0) throw InputError("--topics must be positive");
  cfg.seed = a.seed;
  if (!(a.damping > 0.0 && a.damping < 1.0))
    throw InputError("--damping must lie in (0, 1)");
  cfg.damping = a.damping;
  cfg.threshold = ThresholdConfig::parse(a.threshold);
  cfg.no_filter = a.no_filter;
  cfg.no_resolution = a.no_resolution;
  auto mode = score_mode_from_string(a.scores);
  if (!mode) throw InputError("--scores must be both, topic or pagerank");
  cfg.scores = *mode;
  cfg.iterations = a.iterations;
  cfg.alpha = a.alpha;
  cfg.beta = a.beta;
  if (!a.indicators.empty()) {
    cfg.filter.indicator_phrases = load_indicator_phrases(a.indicators);
    cfg.indicators_path = a.indicators;
  }
  cfg.threads = a.threads;

  Analysis analysis = analyze(a.corpus, a.apis, cfg);
  analysis.index.save(a.out);
  if (a.dump_model) write_file(sibling(a.out, ".model.json"), model_dump_json(analysis));
  if (a.dump_graphs) write_file(sibling(a.out, ".graphs.json"), graph_dump_json(analysis));

  std::size_t filtered = 0, relevant = 0;
  for (const IndexedFragment& f : analysis.index.fragments) filtered += f.filtered;
  for (const RelevanceRecord& r : analysis.index.records) relevant += r.relevant;
  for (const std::string& e : analysis.index.load_errors)
    std::cerr << "warning: " << e << "\n";
  for (const TutorialSummary& t : analysis.index.tutorials) {
    for (const std::string& w : t.warnings)
      std::cerr << "warning: " << t.id << ": " << w << "\n";
    std::printf("%s: %zu fragments, %zu retained, T0 = %.4f, T = %.4f\n",
                t.id.c_str(), t.fragment_count, t.retained_count, t.t0,
                t.threshold);
  }
  std::printf("%zu fragments (%zu filtered), %zu records, %zu relevant -> %s\n",
              analysis.index.fragments.size(), filtered,
              analysis.index.records.size(), relevant, a.out.c_str());
  return 0;
}

int run_recommend(const std::string& index_path, const std::string& api,
                  std::optional<std::size_t> top) {
  RelevanceIndex index = RelevanceIndex::load(index_path);
  RecommendResult r = recommend(index, api, top);
  if (!r.known_api) {
    std::cout << "unknown API: " << api << "\n";
    return 0;
  }
  if (r.fragments.empty()) {
    std::cout << "no fragment is relevant to " << api << "\n";
    return 0;
  }
  std::size_t rank = 0;
  for (const Recommendation& rec : r.fragments) {
    std::printf("%zu. %s  score %.4f\n", ++rank, rec.fragment.str().c_str(),
                rec.score);
    std::cout << rec.text << "\n\n";
  }
  return 0;
}

void print_metrics(const MetricsReport& report) {
  std::printf("%-24s %5s %5s %5s %5s %9s %9s %9s\n", "tutorial", "TP", "FP",
              "FN", "TN", "precision", "recall", "f_measure");
  for (const TutorialMetrics& t : report.tutorials)
    std::printf("%-24s %5zu %5zu %5zu %5zu %9.2f %9.2f %9.2f\n",
                t.tutorial.c_str(), t.counts.tp, t.counts.fp, t.counts.fn,
                t.counts.tn, t.metrics.precision, t.metrics.recall,
                t.metrics.f_measure);
  const ConfusionCounts& c = report.total_counts;
  std::printf("%-24s %5zu %5zu %5zu %5zu %9.2f %9.2f %9.2f\n", "average", c.tp,
              c.fp, c.fn, c.tn, report.average.precision, report.average.recall,
              report.average.f_measure);
}

int run_eval(const std::string& index_path, const std::string& annotations_path,
             bool sweep, double step, const std::string& map_path,
             const std::string& tutorial, const std::string& out_path) {
  RelevanceIndex index = RelevanceIndex::load(index_path);
  AnnotationSet annotations = AnnotationSet::load(annotations_path);
  std::optional<FragmentMap> map;
  if (!map_path.empty()) map = FragmentMap::load(map_path);
  const FragmentMap* mp = map ? &*map : nullptr;

  if (!sweep) {
    MetricsReport report = evaluate(index, annotations, mp);
    for (const std::string& k : report.unmatched)
      std::cerr << "warning: annotated fragment " << k << " is not in the index\n";
    print_metrics(report);
    return 0;
  }
  std::optional<std::string> only;
  if (!tutorial.empty()) only = tutorial;
  const std::string csv =
      sweep_csv(sweep_threshold(index, annotations, step, mp, only));
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    write_file(out_path, csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Find the tutorial fragments that explain an API."};
  app.require_subcommand(1);

  AnalyzeArgs aa;
  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "Build a relevance index from a corpus");
  analyze_cmd->add_option("--corpus", aa.corpus, "Directory of HTML tutorials")->required();
  analyze_cmd->add_option("--apis", aa.apis, "API catalog file")->required();
  analyze_cmd->add_option("--out", aa.out, "Index JSON to write")->required();
  analyze_cmd->add_option("--topics", aa.topics, "Number of LDA topics");
  analyze_cmd->add_option("--seed", aa.seed, "Random seed")->capture_default_str();
  analyze_cmd->add_option("--damping", aa.damping, "PageRank damping")->capture_default_str();
  analyze_cmd->add_option("--threshold", aa.threshold, "auto or a value in [0, 1]")
      ->capture_default_str();
  analyze_cmd->add_flag("--no-filter", aa.no_filter, "Keep every fragment");
  analyze_cmd->add_flag("--no-resolution", aa.no_resolution,
                        "Skip pronoun and variable substitution");
  analyze_cmd->add_option("--scores", aa.scores, "both, topic or pagerank")
      ->capture_default_str();
  analyze_cmd->add_option("--iterations", aa.iterations, "Gibbs sweeps")->capture_default_str();
  analyze_cmd->add_option("--alpha", aa.alpha, "LDA alpha (default 50/K)");
  analyze_cmd->add_option("--beta", aa.beta, "LDA beta")->capture_default_str();
  analyze_cmd->add_option("--indicators", aa.indicators,
                          "Indicator phrases, one per line");
  analyze_cmd->add_option("--threads", aa.threads, "Worker threads (0: all cores)");
  analyze_cmd->add_flag("--dump-model", aa.dump_model,
                        "Also write <out>.model.json");
  analyze_cmd->add_flag("--dump-graphs", aa.dump_graphs,
                        "Also write <out>.graphs.json");

  std::string rec_index, rec_api;
  std::optional<std::size_t> rec_top;
  CLI::App* rec_cmd = app.add_subcommand("recommend", "Relevant fragments for an API");
  rec_cmd->add_option("--index", rec_index, "Index JSON")->required();
  rec_cmd->add_option("--api", rec_api, "Simple API name")->required();
  rec_cmd->add_option("--top", rec_top, "Show at most K fragments");

  std::string ev_index, ev_annotations, ev_map, ev_tutorial, ev_out;
  bool ev_sweep = false;
  double ev_step = 0.01;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Score an index against annotations");
  eval_cmd->add_option("--index", ev_index, "Index JSON")->required();
  eval_cmd->add_option("--annotations", ev_annotations, "Annotations CSV")->required();
  eval_cmd->add_flag("--sweep", ev_sweep, "Sweep T from 0 to 1 and print CSV");
  eval_cmd->add_option("--step", ev_step, "Sweep step")->capture_default_str();
  eval_cmd->add_option("--fragment-map", ev_map, "Annotated-to-index fragment map CSV");
  eval_cmd->add_option("--tutorial", ev_tutorial, "Sweep one tutorial only");
  eval_cmd->add_option("--out", ev_out, "Write the sweep CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*analyze_cmd) return run_analyze(aa);
    if (*rec_cmd) return run_recommend(rec_index, rec_api, rec_top);
    if (*eval_cmd)
      return run_eval(ev_index, ev_annotations, ev_sweep, ev_step, ev_map,
                      ev_tutorial, ev_out);
  } catch (const AlignmentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAlignment;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}
