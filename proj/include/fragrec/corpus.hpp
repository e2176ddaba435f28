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

// Tutorial corpus loading and segmentation into fragments.

#ifndef FRAGREC_CORPUS_HPP_
#define FRAGREC_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fragrec {

enum class ParagraphKind { Prose, CodeBlock, Heading };

std::string_view to_string(ParagraphKind kind);

// Half-open byte range into a paragraph's plain text.
struct TextSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

// An <a href> element found inside a paragraph.
struct Anchor {
  std::string href;
  TextSpan span;
};

struct Paragraph {
  ParagraphKind kind = ParagraphKind::Prose;
  std::string raw_html;
  // Entity-decoded text. Prose and headings have whitespace collapsed;
  // code blocks keep their line structure.
  std::string plain_text;
  std::size_t word_count = 0;
  std::vector<Anchor> anchors;
  // Inline <code> regions of a prose paragraph.
  std::vector<TextSpan> code_spans;
};

struct TutorialDoc {
  std::string id;
  std::string title;
  std::vector<Paragraph> paragraphs;
  std::string source_path;
};

struct FragmentId {
  std::string tutorial;
  // 1-based position of the fragment inside its tutorial.
  std::size_t ordinal = 0;

  std::string str() const { return tutorial + "#" + std::to_string(ordinal); }
  auto operator<=>(const FragmentId&) const = default;
};

struct Fragment {
  FragmentId id;
  std::vector<Paragraph> paragraphs;
  // Content words only; headings are not counted.
  std::size_t word_count = 0;
};

struct ApiEntry {
  std::string simple_name;
  std::optional<std::string> qualified_name;
  std::optional<std::string> spec_url;
};

class ApiCatalog {
 public:
  ApiCatalog() = default;
  explicit ApiCatalog(std::vector<ApiEntry> entries);

  // Tab-separated `SimpleName[\tqualified.Name][\tspec_url]`, '#' comments.
  static ApiCatalog parse(std::string_view text);
  static ApiCatalog load(const std::filesystem::path& path);

  const ApiEntry* find(std::string_view simple_name) const;
  // Matches an href against the catalog's specification URLs. The URL
  // fragment (`#...`) of the href is ignored.
  const ApiEntry* find_by_url(std::string_view href) const;
  bool contains(std::string_view simple_name) const {
    return find(simple_name) != nullptr;
  }

  const std::vector<ApiEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<ApiEntry> entries_;
  std::map<std::string, std::size_t, std::less<>> by_name_;
  std::map<std::string, std::size_t, std::less<>> by_url_;
};

// Splits one HTML page into paragraphs. Block elements (<p>, <li>, <dd>,
// <blockquote>, <td>, ...) become prose, <h1>-<h6> become headings and <pre>
// or a top-level <code> become code blocks.
TutorialDoc parse_tutorial_html(std::string_view html, std::string id,
                                std::string source_path = {});

struct CorpusLoadError {
  std::string path;
  std::string message;
};

struct Corpus {
  std::vector<TutorialDoc> tutorials;
  ApiCatalog catalog;
  std::vector<CorpusLoadError> errors;
};

// Loads every *.html file of `corpus_dir` (sorted by file name) and the API
// catalog. Unreadable tutorials are collected in `errors`; an empty catalog
// or a directory without tutorials throws InputError.
Corpus load_corpus(const std::filesystem::path& corpus_dir,
                   const std::filesystem::path& catalog_path);

inline constexpr std::size_t kMinFragmentWords = 100;
inline constexpr std::size_t kMaxFragmentWords = 300;

// Greedy left-to-right merge of consecutive paragraphs into fragments of
// 100 to 300 content words. Paragraphs are never split; headings go with
// the fragment holding the next content paragraph.
std::vector<Fragment> segment_tutorial(const TutorialDoc& doc);

}  // namespace fragrec

#endif  // FRAGREC_CORPUS_HPP_
