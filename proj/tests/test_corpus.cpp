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

#include <filesystem>
#include <fstream>

#include "fragrec/corpus.hpp"
#include "fragrec/error.hpp"
#include "golden.hpp"

namespace fragrec {
namespace {

using testing::corpus_dir;
using testing::fixture_catalog;

std::string words(std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += i ? " word" : "word";
  return s;
}

TutorialDoc doc_of(std::initializer_list<std::size_t> counts) {
  TutorialDoc doc;
  doc.id = "t";
  for (std::size_t n : counts) doc.paragraphs.push_back(testing::prose(words(n)));
  return doc;
}

std::vector<std::size_t> fragment_sizes(const TutorialDoc& doc) {
  std::vector<std::size_t> out;
  for (const Fragment& f : segment_tutorial(doc)) out.push_back(f.word_count);
  return out;
}

TEST(Html, ParagraphKinds) {
  TutorialDoc doc = parse_tutorial_html(
      "<html><body><p>One.</p><p>Two &amp; two.</p><p>Three</p>"
      "<pre>int x = 1;\nint y = 2;</pre></body></html>",
      "t");
  ASSERT_EQ(doc.paragraphs.size(), 4u);
  EXPECT_EQ(doc.paragraphs[0].kind, ParagraphKind::Prose);
  EXPECT_EQ(doc.paragraphs[1].plain_text, "Two & two.");
  EXPECT_EQ(doc.paragraphs[2].kind, ParagraphKind::Prose);
  EXPECT_EQ(doc.paragraphs[3].kind, ParagraphKind::CodeBlock);
  EXPECT_EQ(doc.paragraphs[3].plain_text, "int x = 1;\nint y = 2;");
}

TEST(Html, AnchorsAndInlineCode) {
  TutorialDoc doc = parse_tutorial_html(
      "<p>Use <a href=\"x/Canvas.html\">the <code>Canvas</code></a> now.</p>",
      "t");
  ASSERT_EQ(doc.paragraphs.size(), 1u);
  const Paragraph& p = doc.paragraphs[0];
  EXPECT_EQ(p.plain_text, "Use the Canvas now.");
  ASSERT_EQ(p.anchors.size(), 1u);
  EXPECT_EQ(p.anchors[0].href, "x/Canvas.html");
  EXPECT_EQ(p.plain_text.substr(p.anchors[0].span.begin,
                                p.anchors[0].span.end - p.anchors[0].span.begin),
            "the Canvas");
  ASSERT_EQ(p.code_spans.size(), 1u);
  EXPECT_EQ(p.plain_text.substr(p.code_spans[0].begin,
                                p.code_spans[0].end - p.code_spans[0].begin),
            "Canvas");
}

TEST(Html, HeadingsScriptsAndTitle) {
  TutorialDoc doc = parse_tutorial_html(
      "<title>Guide</title><script>var a = '<p>x</p>';</script>"
      "<h2>Setup</h2><div><p>Text</p></div>",
      "t");
  EXPECT_EQ(doc.title, "Guide");
  ASSERT_EQ(doc.paragraphs.size(), 2u);
  EXPECT_EQ(doc.paragraphs[0].kind, ParagraphKind::Heading);
  EXPECT_EQ(doc.paragraphs[1].plain_text, "Text");
}

TEST(Html, GraphicsFixtureHasTwoProseParagraphsAndOneCodeBlock) {
  std::ifstream in(corpus_dir() / "graphics.html");
  std::stringstream buf;
  buf << in.rdbuf();
  TutorialDoc doc = parse_tutorial_html(buf.str(), "graphics");
  std::size_t prose = 0, code = 0;
  for (const Paragraph& p : doc.paragraphs) {
    prose += p.kind == ParagraphKind::Prose;
    code += p.kind == ParagraphKind::CodeBlock;
  }
  EXPECT_EQ(prose, 2u);
  EXPECT_EQ(code, 1u);
}

TEST(Catalog, ParsesEntriesAndUrls) {
  ApiCatalog c = ApiCatalog::parse(
      "# comment\nCanvas\tandroid.graphics.Canvas\thttps://d/Canvas.html\n"
      "Bitmap\n\nCanvas\tdup\n");
  EXPECT_EQ(c.size(), 2u);
  ASSERT_NE(c.find("Canvas"), nullptr);
  EXPECT_EQ(c.find("Canvas")->qualified_name, "android.graphics.Canvas");
  EXPECT_FALSE(c.contains("canvas"));
  ASSERT_NE(c.find_by_url("https://d/Canvas.html#lockCanvas()"), nullptr);
  EXPECT_EQ(c.find_by_url("https://d/Other.html"), nullptr);
}

TEST(Catalog, EmptyCatalogIsFatal) {
  auto path = std::filesystem::temp_directory_path() / "fragrec_empty_catalog.tsv";
  std::ofstream(path) << "# nothing here\n";
  try {
    ApiCatalog::load(path);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("empty API catalog"), std::string::npos);
  }
}

TEST(Corpus, LoadsFixtureSorted) {
  Corpus c = load_corpus(corpus_dir(), testing::catalog_path());
  ASSERT_EQ(c.tutorials.size(), 2u);
  EXPECT_EQ(c.tutorials[0].id, "graphics");
  EXPECT_EQ(c.tutorials[1].id, "jodatime");
  EXPECT_EQ(c.catalog.size(), 8u);
}

TEST(Corpus, EmptyDirectoryIsFatal) {
  auto dir = std::filesystem::temp_directory_path() / "fragrec_empty_corpus";
  std::filesystem::create_directories(dir);
  EXPECT_THROW(load_corpus(dir, testing::catalog_path()), InputError);
  EXPECT_THROW(load_corpus(dir / "missing", testing::catalog_path()), InputError);
}

TEST(Segmentation, SmallParagraphsMerge) {
  EXPECT_EQ(fragment_sizes(doc_of({40, 50, 60})), (std::vector<std::size_t>{150}));
}

TEST(Segmentation, LongParagraphIsNeverSplit) {
  EXPECT_EQ(fragment_sizes(doc_of({500})), (std::vector<std::size_t>{500}));
}

TEST(Segmentation, OvershootThenTail) {
  EXPECT_EQ(fragment_sizes(doc_of({90, 250, 30})),
            (std::vector<std::size_t>{340, 30}));
}

TEST(Segmentation, ClosesBeforeExceedingMaximum) {
  EXPECT_EQ(fragment_sizes(doc_of({120, 150, 100, 20})),
            (std::vector<std::size_t>{270, 120}));
}

TEST(Segmentation, HeadingsJoinTheNextContent) {
  TutorialDoc doc = doc_of({150, 200});
  Paragraph h = testing::prose("Section");
  h.kind = ParagraphKind::Heading;
  doc.paragraphs.insert(doc.paragraphs.begin() + 1, h);
  std::vector<Fragment> f = segment_tutorial(doc);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[1].paragraphs.front().kind, ParagraphKind::Heading);
  EXPECT_EQ(f[1].word_count, 200u);
  EXPECT_EQ(f[0].id.ordinal, 1u);
  EXPECT_EQ(f[1].id.ordinal, 2u);
}

TEST(Segmentation, EveryParagraphLandsInExactlyOneFragment) {
  TutorialDoc doc = doc_of({10, 300, 5, 80, 80, 80, 400, 1});
  std::size_t total = 0, paragraphs = 0;
  for (const Fragment& f : segment_tutorial(doc)) {
    total += f.word_count;
    paragraphs += f.paragraphs.size();
  }
  EXPECT_EQ(total, 956u);
  EXPECT_EQ(paragraphs, doc.paragraphs.size());
}

}  // namespace
}  // namespace fragrec
