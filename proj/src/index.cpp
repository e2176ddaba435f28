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

#include "fragrec/index.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "fragrec/error.hpp"
#include "fragrec/text.hpp"
#include "json.hpp"

namespace fragrec {

using Json = nlohmann::ordered_json;

namespace {

std::string fragment_text(const Fragment& f) {
  std::string out;
  for (const Paragraph& p : f.paragraphs) {
    if (!out.empty()) out += "\n\n";
    out += p.plain_text;
  }
  return out;
}

std::map<std::string, ApiScores> score_fragment(
    const ParsedFragment& pf, const TopicModel* model,
    const PageRankVector* pr, const AnalyzeConfig& config) {
  std::map<std::string, ApiScores> scores;
  for (const std::string& api : pf.apis()) {
    ApiScores s;
    if (model) s.score_t = score_topic(api, pf.fragment.id, *model);
    if (pr) s.score_pr = score_pagerank(api, pf, *pr);
    if (config.score_override) {
      if (auto o = config.score_override(pf.fragment.id, api)) s = *o;
    }
    scores[api] = s;
  }
  return scores;
}

}  // namespace

TutorialAnalysis analyze_tutorial(const TutorialDoc& doc,
                                  const ApiCatalog& catalog,
                                  const AnalyzeConfig& config) {
  TutorialAnalysis out;
  out.summary.id = doc.id;
  out.summary.source = doc.source_path;

  const ParseOptions options{.resolve = !config.no_resolution};
  for (const Fragment& f : segment_tutorial(doc))
    out.parsed.push_back(parse_fragment(f, catalog, options));
  out.summary.fragment_count = out.parsed.size();
  if (out.parsed.empty()) {
    out.summary.warnings.push_back("tutorial has no content");
    return out;
  }

  for (const ParsedFragment& pf : out.parsed) {
    FilterVerdict v{pf.fragment.id, {}};
    if (!config.no_filter) v = apply_filter(pf, config.filter);
    out.verdicts.push_back(std::move(v));
    for (const std::string& w : pf.warnings)
      out.summary.warnings.push_back(pf.fragment.id.str() + ": " + w);
  }

  try {
    out.summary.t0 = compute_threshold_T0(out.parsed, catalog);
  } catch (const InputError& e) {
    out.summary.t0 = 1.0;
    out.summary.warnings.push_back(e.what());
  }
  out.summary.threshold =
      config.threshold.is_auto() ? out.summary.t0 : config.threshold.value();

  std::vector<std::size_t> retained;
  for (std::size_t i = 0; i < out.parsed.size(); ++i)
    if (!out.verdicts[i].filtered() && !out.parsed[i].sentences.empty())
      retained.push_back(i);
  out.summary.retained_count = retained.size();

  if (!retained.empty()) {
    std::vector<TopicDocument> docs;
    for (std::size_t i : retained)
      docs.push_back({out.parsed[i].fragment.id,
                      fragment_terms(out.parsed[i], catalog)});
    Vocabulary vocab;
    for (const TopicDocument& d : docs)
      for (const std::string& t : d.terms) vocab.add(t);
    LdaConfig lda;
    lda.num_topics = config.topics.value_or(default_topic_count(retained.size()));
    lda.seed = config.seed;
    lda.iterations = config.iterations;
    lda.alpha = config.alpha;
    lda.beta = config.beta;
    if (vocab.size() == 0) {
      out.summary.warnings.push_back("no indexable terms; topic scores are 0");
    } else {
      if (lda.num_topics > vocab.size()) {
        out.summary.warnings.push_back(
            "topic count lowered from " + std::to_string(lda.num_topics) +
            " to the vocabulary size " + std::to_string(vocab.size()));
        lda.num_topics = vocab.size();
      }
      out.model = fit_lda(docs, lda);
      out.summary.topics = out.model->num_topics;
      out.summary.alpha = out.model->alpha;
      out.summary.beta = out.model->beta;
    }
  }

  out.graphs.resize(out.parsed.size());
  out.pageranks.resize(out.parsed.size());
  const PageRankConfig prc{.damping = config.damping};
  for (std::size_t i : retained) {
    out.graphs[i] = build_similarity_graph(out.parsed[i].sentences, catalog);
    out.pageranks[i] = compute_pagerank(out.graphs[i], prc);
    if (!out.pageranks[i].converged)
      out.summary.warnings.push_back(out.parsed[i].fragment.id.str() +
                                     ": PageRank did not converge");
  }

  for (std::size_t i = 0; i < out.parsed.size(); ++i) {
    const ParsedFragment& pf = out.parsed[i];
    const FilterVerdict& v = out.verdicts[i];
    if (v.filtered() || pf.sentences.empty()) {
      for (const std::string& api : pf.apis()) {
        RelevanceRecord r;
        r.fragment_id = pf.fragment.id;
        r.api = api;
        r.marginal_only = is_marginal_only(api, pf);
        r.filtered_by = v.fired_rules;
        out.records.push_back(std::move(r));
      }
      continue;
    }
    auto scores = score_fragment(pf, out.model ? &*out.model : nullptr,
                                 &out.pageranks[i], config);
    for (RelevanceRecord& r :
         identify_relevance(pf, scores, out.summary.threshold, config.scores))
      out.records.push_back(std::move(r));
  }
  return out;
}

Analysis analyze(const Corpus& corpus, const AnalyzeConfig& config) {
  if (corpus.tutorials.empty()) throw InputError("corpus has no tutorials");
  Analysis result;
  result.tutorials.resize(corpus.tutorials.size());

  std::size_t threads = config.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, corpus.tutorials.size());

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(corpus.tutorials.size());
  auto work = [&] {
    for (std::size_t i = next++; i < corpus.tutorials.size(); i = next++) {
      try {
        result.tutorials[i] =
            analyze_tutorial(corpus.tutorials[i], corpus.catalog, config);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw InputError("tutorial " + corpus.tutorials[i].id + ": " + e.what());
    }
  }

  RelevanceIndex& index = result.index;
  index.topics = config.topics;
  index.seed = config.seed;
  index.iterations = config.iterations;
  index.alpha = config.alpha;
  index.beta = config.beta;
  index.damping = config.damping;
  index.threshold = config.threshold.str();
  index.no_filter = config.no_filter;
  index.no_resolution = config.no_resolution;
  index.scores = config.scores;
  index.indicator_phrases = config.filter.indicator_phrases;
  for (const CorpusLoadError& e : corpus.errors)
    index.load_errors.push_back(e.path + ": " + e.message);

  for (std::size_t t = 0; t < result.tutorials.size(); ++t) {
    const TutorialAnalysis& ta = result.tutorials[t];
    index.tutorials.push_back(ta.summary);
    for (std::size_t i = 0; i < ta.parsed.size(); ++i) {
      const ParsedFragment& pf = ta.parsed[i];
      IndexedFragment f;
      f.id = pf.fragment.id;
      f.word_count = pf.fragment.word_count;
      f.sentence_count = pf.sentences.size();
      f.filtered = ta.verdicts[i].filtered();
      f.fired_rules = ta.verdicts[i].fired_rules;
      f.apis = pf.apis();
      f.text = fragment_text(pf.fragment);
      index.fragments.push_back(std::move(f));
    }
    index.records.insert(index.records.end(), ta.records.begin(),
                         ta.records.end());
  }
  return result;
}

Analysis analyze(const std::filesystem::path& corpus_dir,
                 const std::filesystem::path& catalog_path,
                 const AnalyzeConfig& config) {
  Corpus corpus = load_corpus(corpus_dir, catalog_path);
  Analysis a = analyze(corpus, config);
  a.index.corpus = corpus_dir.generic_string();
  a.index.catalog = catalog_path.generic_string();
  return a;
}

const IndexedFragment* RelevanceIndex::find_fragment(
    const FragmentId& id) const {
  for (const IndexedFragment& f : fragments)
    if (f.id == id) return &f;
  return nullptr;
}

const TutorialSummary* RelevanceIndex::find_tutorial(std::string_view id) const {
  for (const TutorialSummary& t : tutorials)
    if (t.id == id) return &t;
  return nullptr;
}

namespace {

Json rules_json(const std::set<RuleId>& rules) {
  Json a = Json::array();
  for (RuleId r : rules) a.push_back(std::string(to_string(r)));
  return a;
}

std::set<RuleId> rules_from_json(const Json& a) {
  std::set<RuleId> rules;
  for (const Json& r : a) {
    auto id = rule_from_string(r.get<std::string>());
    if (!id) throw InputError("unknown filter rule in index: " + r.get<std::string>());
    rules.insert(*id);
  }
  return rules;
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

}  // namespace

std::string RelevanceIndex::to_json() const {
  Json j;
  j["schema_version"] = schema_version;
  Json meta;
  meta["corpus"] = corpus;
  meta["catalog"] = catalog;
  Json cfg;
  cfg["topics"] = optional_json(topics);
  cfg["seed"] = seed;
  cfg["iterations"] = iterations;
  cfg["alpha"] = optional_json(alpha);
  cfg["beta"] = beta;
  cfg["damping"] = damping;
  cfg["threshold"] = threshold;
  cfg["no_filter"] = no_filter;
  cfg["no_resolution"] = no_resolution;
  cfg["scores"] = std::string(to_string(scores));
  cfg["indicator_phrases"] = indicator_phrases;
  meta["config"] = std::move(cfg);
  Json tuts = Json::array();
  for (const TutorialSummary& t : tutorials) {
    Json o;
    o["id"] = t.id;
    o["source"] = t.source;
    o["threshold"] = t.threshold;
    o["t0"] = t.t0;
    o["topics"] = t.topics;
    o["alpha"] = t.alpha;
    o["beta"] = t.beta;
    o["fragments"] = t.fragment_count;
    o["retained"] = t.retained_count;
    o["warnings"] = t.warnings;
    tuts.push_back(std::move(o));
  }
  meta["tutorials"] = std::move(tuts);
  meta["load_errors"] = load_errors;
  j["metadata"] = std::move(meta);

  Json frags = Json::array();
  for (const IndexedFragment& f : fragments) {
    Json o;
    o["tutorial"] = f.id.tutorial;
    o["fragment"] = f.id.ordinal;
    o["words"] = f.word_count;
    o["sentences"] = f.sentence_count;
    o["filtered"] = f.filtered;
    o["fired_rules"] = rules_json(f.fired_rules);
    o["apis"] = f.apis;
    o["text"] = f.text;
    frags.push_back(std::move(o));
  }
  j["fragments"] = std::move(frags);

  Json recs = Json::array();
  for (const RelevanceRecord& r : records) {
    Json o;
    o["tutorial"] = r.fragment_id.tutorial;
    o["fragment"] = r.fragment_id.ordinal;
    o["api"] = r.api;
    o["score_t"] = r.score_t;
    o["score_pr"] = r.score_pr;
    o["norm_t"] = r.norm_t;
    o["norm_pr"] = r.norm_pr;
    o["marginal_only"] = r.marginal_only;
    o["relevant"] = r.relevant;
    o["filtered_by"] = rules_json(r.filtered_by);
    recs.push_back(std::move(o));
  }
  j["records"] = std::move(recs);
  return j.dump(2) + "\n";
}

RelevanceIndex RelevanceIndex::from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("index is not valid JSON: ") + e.what());
  }
  RelevanceIndex idx;
  try {
    idx.schema_version = j.at("schema_version").get<int>();
    if (idx.schema_version != kIndexSchemaVersion)
      throw InputError("unsupported index schema version " +
                       std::to_string(idx.schema_version));
    const Json& meta = j.at("metadata");
    idx.corpus = meta.at("corpus").get<std::string>();
    idx.catalog = meta.at("catalog").get<std::string>();
    const Json& cfg = meta.at("config");
    idx.topics = optional_from<std::size_t>(cfg.at("topics"));
    idx.seed = cfg.at("seed").get<std::uint64_t>();
    idx.iterations = cfg.at("iterations").get<std::size_t>();
    idx.alpha = optional_from<double>(cfg.at("alpha"));
    idx.beta = cfg.at("beta").get<double>();
    idx.damping = cfg.at("damping").get<double>();
    idx.threshold = cfg.at("threshold").get<std::string>();
    idx.no_filter = cfg.at("no_filter").get<bool>();
    idx.no_resolution = cfg.at("no_resolution").get<bool>();
    auto mode = score_mode_from_string(cfg.at("scores").get<std::string>());
    if (!mode) throw InputError("unknown score mode in index");
    idx.scores = *mode;
    idx.indicator_phrases =
        cfg.at("indicator_phrases").get<std::vector<std::string>>();
    for (const Json& o : meta.at("tutorials")) {
      TutorialSummary t;
      t.id = o.at("id").get<std::string>();
      t.source = o.at("source").get<std::string>();
      t.threshold = o.at("threshold").get<double>();
      t.t0 = o.at("t0").get<double>();
      t.topics = o.at("topics").get<std::size_t>();
      t.alpha = o.at("alpha").get<double>();
      t.beta = o.at("beta").get<double>();
      t.fragment_count = o.at("fragments").get<std::size_t>();
      t.retained_count = o.at("retained").get<std::size_t>();
      t.warnings = o.at("warnings").get<std::vector<std::string>>();
      idx.tutorials.push_back(std::move(t));
    }
    idx.load_errors = meta.at("load_errors").get<std::vector<std::string>>();
    for (const Json& o : j.at("fragments")) {
      IndexedFragment f;
      f.id = {o.at("tutorial").get<std::string>(),
              o.at("fragment").get<std::size_t>()};
      f.word_count = o.at("words").get<std::size_t>();
      f.sentence_count = o.at("sentences").get<std::size_t>();
      f.filtered = o.at("filtered").get<bool>();
      f.fired_rules = rules_from_json(o.at("fired_rules"));
      f.apis = o.at("apis").get<std::set<std::string>>();
      f.text = o.at("text").get<std::string>();
      idx.fragments.push_back(std::move(f));
    }
    for (const Json& o : j.at("records")) {
      RelevanceRecord r;
      r.fragment_id = {o.at("tutorial").get<std::string>(),
                       o.at("fragment").get<std::size_t>()};
      r.api = o.at("api").get<std::string>();
      r.score_t = o.at("score_t").get<double>();
      r.score_pr = o.at("score_pr").get<double>();
      r.norm_t = o.at("norm_t").get<double>();
      r.norm_pr = o.at("norm_pr").get<double>();
      r.marginal_only = o.at("marginal_only").get<bool>();
      r.relevant = o.at("relevant").get<bool>();
      r.filtered_by = rules_from_json(o.at("filtered_by"));
      if (!idx.find_fragment(r.fragment_id))
        throw InputError("record for unknown fragment " + r.fragment_id.str());
      idx.records.push_back(std::move(r));
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed index: ") + e.what());
  }
  return idx;
}

void RelevanceIndex::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << to_json();
  if (!out) throw InputError("failed writing " + path.string());
}

RelevanceIndex RelevanceIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read index " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

std::string model_dump_json(const Analysis& analysis) {
  Json out = Json::array();
  for (const TutorialAnalysis& ta : analysis.tutorials) {
    Json o;
    o["tutorial"] = ta.summary.id;
    if (!ta.model) {
      o["model"] = nullptr;
      out.push_back(std::move(o));
      continue;
    }
    const TopicModel& m = *ta.model;
    Json mj;
    mj["topics"] = m.num_topics;
    mj["seed"] = m.seed;
    mj["iterations"] = m.iterations;
    mj["alpha"] = m.alpha;
    mj["beta"] = m.beta;
    mj["vocabulary"] = m.vocabulary.terms();
    Json frags = Json::array();
    for (const FragmentId& id : m.fragments) frags.push_back(id.str());
    mj["fragments"] = std::move(frags);
    Json theta = Json::array();
    for (std::size_t d = 0; d < m.fragment_topic.rows; ++d) {
      auto row = m.fragment_topic.row(d);
      theta.push_back(std::vector<double>(row.begin(), row.end()));
    }
    mj["fragment_topic"] = std::move(theta);
    Json phi = Json::array();
    for (std::size_t k = 0; k < m.topic_term.rows; ++k) {
      auto row = m.topic_term.row(k);
      phi.push_back(std::vector<double>(row.begin(), row.end()));
    }
    mj["topic_term"] = std::move(phi);
    o["model"] = std::move(mj);
    out.push_back(std::move(o));
  }
  return out.dump(2) + "\n";
}

std::string graph_dump_json(const Analysis& analysis) {
  Json out = Json::array();
  for (const TutorialAnalysis& ta : analysis.tutorials) {
    for (std::size_t i = 0; i < ta.parsed.size(); ++i) {
      const SentenceGraph& g = ta.graphs[i];
      if (g.size() == 0) continue;
      Json o;
      o["fragment"] = ta.parsed[i].fragment.id.str();
      Json sentences = Json::array();
      for (const Sentence& s : ta.parsed[i].sentences) sentences.push_back(s.text);
      o["sentences"] = std::move(sentences);
      Json sim = Json::array();
      for (std::size_t r = 0; r < g.size(); ++r) {
        std::vector<double> row(g.size());
        for (std::size_t c = 0; c < g.size(); ++c) row[c] = g.similarity(r, c);
        sim.push_back(std::move(row));
      }
      o["similarity"] = std::move(sim);
      o["pagerank"] = ta.pageranks[i].values;
      o["iterations"] = ta.pageranks[i].iterations;
      o["converged"] = ta.pageranks[i].converged;
      out.push_back(std::move(o));
    }
  }
  return out.dump(2) + "\n";
}

std::vector<RelevanceRecord> relabel(const RelevanceIndex& index, double t) {
  // Records of one fragment are contiguous in an index written by analyze,
  // but grouping by id keeps this correct for any order.
  std::map<FragmentId, std::map<std::string, ApiScores>> scores;
  std::map<FragmentId, std::set<std::string>> marginal;
  for (const RelevanceRecord& r : index.records) {
    if (!r.filtered_by.empty()) continue;
    scores[r.fragment_id][r.api] = {r.score_t, r.score_pr};
    if (r.marginal_only) marginal[r.fragment_id].insert(r.api);
  }
  std::map<std::pair<FragmentId, std::string>, bool> verdict;
  for (const auto& [id, s] : scores)
    for (const RelevanceRecord& r :
         identify_relevance(id, s, marginal[id], t, index.scores))
      verdict[{id, r.api}] = r.relevant;

  std::vector<RelevanceRecord> out = index.records;
  for (RelevanceRecord& r : out)
    r.relevant = r.filtered_by.empty() && verdict[{r.fragment_id, r.api}];
  return out;
}

RecommendResult recommend(const RelevanceIndex& index, std::string_view api,
                          std::optional<std::size_t> top_k) {
  RecommendResult result;
  std::map<FragmentId, std::size_t> order;
  for (std::size_t i = 0; i < index.fragments.size(); ++i)
    order.emplace(index.fragments[i].id, i);

  std::vector<std::pair<std::size_t, Recommendation>> hits;
  for (const RelevanceRecord& r : index.records) {
    if (!iequals(r.api, api)) continue;
    result.known_api = true;
    if (!r.relevant) continue;
    const IndexedFragment* f = index.find_fragment(r.fragment_id);
    hits.push_back({order.at(r.fragment_id),
                    {r.fragment_id, r.norm_t + r.norm_pr, f ? f->text : ""}});
  }
  std::stable_sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
    if (a.second.score != b.second.score) return a.second.score > b.second.score;
    return a.first < b.first;
  });
  for (auto& [pos, rec] : hits) {
    if (top_k && result.fragments.size() >= *top_k) break;
    result.fragments.push_back(std::move(rec));
  }
  return result;
}

}  // namespace fragrec
