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

#include "fragrec/evaluate.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "fragrec/error.hpp"
#include "fragrec/text.hpp"

namespace fragrec {

namespace {

using Row = std::vector<std::string>;

// RFC 4180 style: quoted fields may hold commas, newlines and "" escapes.
std::vector<Row> parse_csv(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<Row> rows;
  Row row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw InputError("unterminated quoted CSV field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void check_header(const Row& header, std::initializer_list<std::string_view> want,
                  std::string_view what) {
  bool ok = header.size() == want.size();
  std::size_t i = 0;
  for (std::string_view w : want) {
    if (!ok) break;
    ok = trim(header[i++]) == w;
  }
  if (!ok) {
    std::string expected;
    for (std::string_view w : want) {
      if (!expected.empty()) expected += ',';
      expected += w;
    }
    throw InputError(std::string(what) + " header must be `" + expected + "`");
  }
}

std::size_t parse_ordinal(std::string_view text, std::size_t line) {
  text = trim(text);
  // Accept both `3` and `tutorial#3`.
  if (auto hash = text.rfind('#'); hash != std::string_view::npos)
    text.remove_prefix(hash + 1);
  std::size_t v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size() ||
      v == 0)
    throw InputError("line " + std::to_string(line) +
                     ": fragment id must be a positive integer");
  return v;
}

}  // namespace

AnnotationSet AnnotationSet::parse(std::string_view csv) {
  std::vector<Row> rows = parse_csv(csv);
  if (rows.empty()) throw InputError("annotations file is empty");
  check_header(rows[0], {"tutorial", "fragment_id", "api", "label"},
               "annotations");
  AnnotationSet set;
  std::set<std::tuple<std::string, std::size_t, std::string>> seen;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const Row& r = rows[i];
    const std::size_t line = i + 1;
    if (r.size() != 4)
      throw InputError("line " + std::to_string(line) + ": expected 4 fields");
    Annotation a;
    a.tutorial = std::string(trim(r[0]));
    a.fragment = parse_ordinal(r[1], line);
    a.api = std::string(trim(r[2]));
    const std::string label = to_lower(trim(r[3]));
    if (label == "relevant") {
      a.relevant = true;
    } else if (label != "irrelevant") {
      throw InputError("line " + std::to_string(line) +
                       ": label must be relevant or irrelevant");
    }
    if (a.tutorial.empty() || a.api.empty())
      throw InputError("line " + std::to_string(line) + ": empty field");
    if (!seen.emplace(a.tutorial, a.fragment, a.api).second)
      throw InputError("line " + std::to_string(line) + ": duplicate annotation " +
                       a.tutorial + "," + std::to_string(a.fragment) + "," + a.api);
    set.rows.push_back(std::move(a));
  }
  return set;
}

AnnotationSet AnnotationSet::load(const std::filesystem::path& path) {
  return parse(read_file(path));
}

FragmentMap FragmentMap::parse(std::string_view csv) {
  std::vector<Row> rows = parse_csv(csv);
  if (rows.empty()) throw InputError("fragment map is empty");
  check_header(rows[0], {"tutorial", "annotated_fragment", "fragment_id"},
               "fragment map");
  FragmentMap m;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const Row& r = rows[i];
    if (r.size() != 3)
      throw InputError("fragment map line " + std::to_string(i + 1) +
                       ": expected 3 fields");
    auto key = std::make_pair(std::string(trim(r[0])), parse_ordinal(r[1], i + 1));
    if (!m.mapping.emplace(key, parse_ordinal(r[2], i + 1)).second)
      throw InputError("fragment map line " + std::to_string(i + 1) +
                       ": duplicate entry");
  }
  return m;
}

FragmentMap FragmentMap::load(const std::filesystem::path& path) {
  return parse(read_file(path));
}

std::size_t FragmentMap::map(const std::string& tutorial,
                             std::size_t annotated) const {
  auto it = mapping.find({tutorial, annotated});
  return it == mapping.end() ? annotated : it->second;
}

Metrics compute_metrics(const ConfusionCounts& c) {
  Metrics m;
  const auto tp = static_cast<double>(c.tp);
  if (c.tp + c.fp > 0) m.precision = 100.0 * tp / static_cast<double>(c.tp + c.fp);
  if (c.tp + c.fn > 0) m.recall = 100.0 * tp / static_cast<double>(c.tp + c.fn);
  if (m.precision + m.recall > 0.0)
    m.f_measure = 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

MetricsReport evaluate(const RelevanceIndex& index,
                       const std::vector<RelevanceRecord>& records,
                       const AnnotationSet& annotations,
                       const FragmentMap* fragment_map) {
  std::map<std::pair<FragmentId, std::string>, bool> predicted;
  for (const RelevanceRecord& r : records)
    predicted[{r.fragment_id, r.api}] = r.relevant && r.filtered_by.empty();

  MetricsReport report;
  std::map<std::string, ConfusionCounts> per_tutorial;
  std::set<std::pair<std::string, std::size_t>> keys, missing;
  for (const Annotation& a : annotations.rows) {
    const std::size_t ordinal =
        fragment_map ? fragment_map->map(a.tutorial, a.fragment) : a.fragment;
    const FragmentId id{a.tutorial, ordinal};
    keys.insert({a.tutorial, a.fragment});
    if (!index.find_fragment(id)) {
      if (missing.insert({a.tutorial, a.fragment}).second)
        report.unmatched.push_back(a.tutorial + "#" + std::to_string(a.fragment));
      continue;
    }
    ++report.matched;
    auto it = predicted.find({id, a.api});
    const bool guess = it != predicted.end() && it->second;
    ConfusionCounts& c = per_tutorial[a.tutorial];
    if (guess && a.relevant) ++c.tp;
    else if (guess) ++c.fp;
    else if (a.relevant) ++c.fn;
    else ++c.tn;
  }
  if (!keys.empty() && 2 * missing.size() >= keys.size())
    throw AlignmentError(std::to_string(missing.size()) + " of " +
                         std::to_string(keys.size()) +
                         " annotated fragments are not in the index; "
                         "supply a fragment map");

  for (const auto& [tutorial, c] : per_tutorial) {
    report.tutorials.push_back({tutorial, c, compute_metrics(c)});
    report.total_counts.tp += c.tp;
    report.total_counts.fp += c.fp;
    report.total_counts.fn += c.fn;
    report.total_counts.tn += c.tn;
  }
  if (!report.tutorials.empty()) {
    const double n = static_cast<double>(report.tutorials.size());
    for (const TutorialMetrics& t : report.tutorials) {
      report.average.precision += t.metrics.precision / n;
      report.average.recall += t.metrics.recall / n;
      report.average.f_measure += t.metrics.f_measure / n;
    }
  }
  return report;
}

MetricsReport evaluate(const RelevanceIndex& index,
                       const AnnotationSet& annotations,
                       const FragmentMap* fragment_map) {
  return evaluate(index, index.records, annotations, fragment_map);
}

std::vector<SweepRow> sweep_threshold(const RelevanceIndex& index,
                                      const AnnotationSet& annotations,
                                      double step,
                                      const FragmentMap* fragment_map,
                                      std::optional<std::string> tutorial) {
  if (!(step > 0.0 && step <= 1.0))
    throw InputError("sweep step must lie in (0, 1]");
  AnnotationSet subset;
  for (const Annotation& a : annotations.rows)
    if (!tutorial || a.tutorial == *tutorial) subset.rows.push_back(a);
  if (subset.rows.empty())
    throw InputError("no annotations for the swept tutorials");

  std::set<std::string> tutorials;
  for (const Annotation& a : subset.rows) tutorials.insert(a.tutorial);
  double t0 = 0.0;
  std::size_t known = 0;
  for (const std::string& t : tutorials) {
    if (const TutorialSummary* s = index.find_tutorial(t)) {
      t0 += s->t0;
      ++known;
    }
  }
  if (known > 0) t0 /= static_cast<double>(known);

  auto run = [&](double t) {
    std::vector<RelevanceRecord> records = relabel(index, t);
    SweepRow row;
    row.t = t;
    row.metrics = evaluate(index, records, subset, fragment_map).average;
    for (const RelevanceRecord& r : records)
      if (r.relevant && (!tutorial || r.fragment_id.tutorial == *tutorial))
        ++row.relevant_pairs;
    return row;
  };
  // Multiplying avoids drift from repeated addition.
  const auto steps = static_cast<std::size_t>(std::floor(1.0 / step + 1e-9));
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i <= steps; ++i)
    rows.push_back(run(std::min(1.0, static_cast<double>(i) * step)));
  if (rows.back().t < 1.0 - 1e-12) rows.push_back(run(1.0));
  if (known > 0) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (std::abs(rows[i].t - t0) < std::abs(rows[best].t - t0)) best = i;
    rows[best].is_auto = true;
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "T,precision,recall,f_measure,auto\n";
  char buf[128];
  for (const SweepRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%g,%.4f,%.4f,%.4f,%d\n", r.t,
                  r.metrics.precision, r.metrics.recall, r.metrics.f_measure,
                  r.is_auto ? 1 : 0);
    out += buf;
  }
  return out;
}

}  // namespace fragrec
