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

#include "fragrec/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fragrec/error.hpp"
#include "fragrec/text.hpp"

namespace fragrec {

namespace fs = std::filesystem;

std::string_view to_string(ParagraphKind kind) {
  switch (kind) {
    case ParagraphKind::Prose: return "prose";
    case ParagraphKind::CodeBlock: return "code";
    case ParagraphKind::Heading: return "heading";
  }
  return "prose";
}

namespace {

std::string_view strip_url_fragment(std::string_view url) {
  std::size_t hash = url.find('#');
  if (hash != std::string_view::npos) url = url.substr(0, hash);
  return url;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw InputError("error while reading " + path.string());
  return ss.str();
}

}  // namespace

ApiCatalog::ApiCatalog(std::vector<ApiEntry> entries) {
  for (ApiEntry& e : entries) {
    if (e.simple_name.empty()) continue;
    if (by_name_.count(e.simple_name)) continue;
    std::size_t idx = entries_.size();
    by_name_.emplace(e.simple_name, idx);
    if (e.spec_url && !e.spec_url->empty())
      by_url_.emplace(std::string(strip_url_fragment(*e.spec_url)), idx);
    entries_.push_back(std::move(e));
  }
}

ApiCatalog ApiCatalog::parse(std::string_view text) {
  std::vector<ApiEntry> entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty() || trim(line).front() == '#') continue;

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      fields.push_back(trim(line.substr(start, tab - start)));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (fields.size() > 3)
      throw InputError("API catalog line " + std::to_string(line_no) +
                       ": expected at most 3 tab-separated fields");
    if (fields[0].empty())
      throw InputError("API catalog line " + std::to_string(line_no) +
                       ": empty simple name");
    ApiEntry entry;
    entry.simple_name = std::string(fields[0]);
    if (fields.size() > 1 && !fields[1].empty())
      entry.qualified_name = std::string(fields[1]);
    if (fields.size() > 2 && !fields[2].empty())
      entry.spec_url = std::string(fields[2]);
    entries.push_back(std::move(entry));
  }
  return ApiCatalog(std::move(entries));
}

ApiCatalog ApiCatalog::load(const fs::path& path) {
  ApiCatalog catalog = parse(read_file(path));
  if (catalog.empty()) throw InputError("empty API catalog");
  return catalog;
}

const ApiEntry* ApiCatalog::find(std::string_view simple_name) const {
  auto it = by_name_.find(simple_name);
  return it == by_name_.end() ? nullptr : &entries_[it->second];
}

const ApiEntry* ApiCatalog::find_by_url(std::string_view href) const {
  href = strip_url_fragment(href);
  if (href.empty()) return nullptr;
  auto it = by_url_.find(href);
  if (it != by_url_.end()) return &entries_[it->second];
  // Relative links: accept when the catalog URL ends with the href path.
  if (href.find("://") == std::string_view::npos) {
    while (href.starts_with("../") || href.starts_with("./"))
      href.remove_prefix(href.starts_with("./") ? 2 : 3);
    for (const auto& [url, idx] : by_url_) {
      if (url.size() > href.size() && url.ends_with(href) &&
          url[url.size() - href.size() - 1] == '/')
        return &entries_[idx];
    }
  }
  return nullptr;
}

Corpus load_corpus(const fs::path& corpus_dir, const fs::path& catalog_path) {
  Corpus corpus;
  corpus.catalog = ApiCatalog::load(catalog_path);

  std::error_code ec;
  if (!fs::is_directory(corpus_dir, ec))
    throw InputError("corpus directory not found: " + corpus_dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(corpus_dir, ec)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = to_lower(entry.path().extension().string());
    if (ext == ".html" || ext == ".htm") files.push_back(entry.path());
  }
  if (ec) throw InputError("cannot list " + corpus_dir.string());
  if (files.empty())
    throw InputError("no HTML tutorials in " + corpus_dir.string());
  std::sort(files.begin(), files.end());

  for (const fs::path& file : files) {
    try {
      std::string html = read_file(file);
      corpus.tutorials.push_back(
          parse_tutorial_html(html, file.stem().string(), file.string()));
    } catch (const std::exception& e) {
      corpus.errors.push_back({file.string(), e.what()});
    }
  }
  if (corpus.tutorials.empty())
    throw InputError("no readable tutorials in " + corpus_dir.string());
  return corpus;
}

std::vector<Fragment> segment_tutorial(const TutorialDoc& doc) {
  std::vector<Fragment> fragments;
  Fragment current;
  std::vector<const Paragraph*> pending_headings;

  auto close = [&] {
    current.id = {doc.id, fragments.size() + 1};
    fragments.push_back(std::move(current));
    current = Fragment{};
  };

  for (const Paragraph& p : doc.paragraphs) {
    if (p.kind == ParagraphKind::Heading) {
      pending_headings.push_back(&p);
      continue;
    }
    if (current.word_count >= kMinFragmentWords &&
        current.word_count + p.word_count > kMaxFragmentWords)
      close();
    for (const Paragraph* h : pending_headings) current.paragraphs.push_back(*h);
    pending_headings.clear();
    current.paragraphs.push_back(p);
    current.word_count += p.word_count;
  }
  for (const Paragraph* h : pending_headings) current.paragraphs.push_back(*h);
  if (!current.paragraphs.empty()) {
    // Trailing headings alone do not make a fragment.
    if (current.word_count == 0 && !fragments.empty()) {
      for (Paragraph& h : current.paragraphs)
        fragments.back().paragraphs.push_back(std::move(h));
    } else {
      close();
    }
  }
  return fragments;
}

}  // namespace fragrec
