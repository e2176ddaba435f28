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

// A forgiving HTML block scanner. It does not build a DOM; it only tracks
// enough state to cut a page into paragraphs and to remember where anchors
// and inline code spans landed in the decoded text.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "fragrec/corpus.hpp"
#include "fragrec/text.hpp"

namespace fragrec {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x110000) {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

std::optional<std::uint32_t> named_entity(std::string_view name) {
  static const std::unordered_map<std::string_view, std::uint32_t> table = {
      {"amp", '&'},      {"lt", '<'},        {"gt", '>'},
      {"quot", '"'},     {"apos", '\''},     {"nbsp", ' '},
      {"ndash", 0x2013}, {"mdash", 0x2014},  {"hellip", 0x2026},
      {"lsquo", 0x2018}, {"rsquo", 0x2019},  {"ldquo", 0x201C},
      {"rdquo", 0x201D}, {"copy", 0x00A9},   {"reg", 0x00AE},
      {"trade", 0x2122}, {"laquo", 0x00AB},  {"raquo", 0x00BB},
      {"middot", 0x00B7}, {"bull", 0x2022},  {"times", 0x00D7},
      {"rarr", 0x2192},  {"larr", 0x2190},   {"deg", 0x00B0},
  };
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

// Decodes character references; unknown entities are copied verbatim.
std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out += s[i++];
      continue;
    }
    std::size_t semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out += s[i++];
      continue;
    }
    std::string_view body = s.substr(i + 1, semi - i - 1);
    std::optional<std::uint32_t> cp;
    if (!body.empty() && body[0] == '#') {
      std::string digits(body.substr(1));
      int base = 10;
      if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
        base = 16;
        digits.erase(0, 1);
      }
      if (!digits.empty()) {
        char* endp = nullptr;
        unsigned long v = std::strtoul(digits.c_str(), &endp, base);
        if (endp && *endp == '\0') cp = static_cast<std::uint32_t>(v);
      }
      if (cp && *cp == 0xA0) cp = ' ';
    } else {
      cp = named_entity(body);
    }
    if (!cp) {
      out += s[i++];
      continue;
    }
    append_utf8(out, *cp);
    i = semi + 1;
  }
  return out;
}

const std::unordered_set<std::string_view>& prose_blocks() {
  static const std::unordered_set<std::string_view> tags = {
      "p",     "li",      "dd",     "dt",     "blockquote", "td",
      "th",    "caption", "figcaption", "summary",
  };
  return tags;
}

// Containers that end the current paragraph but do not start one.
const std::unordered_set<std::string_view>& container_blocks() {
  static const std::unordered_set<std::string_view> tags = {
      "div",  "section", "article", "body",   "html",   "ul",
      "ol",   "dl",      "table",   "tr",     "thead",  "tbody",
      "main", "header",  "footer",  "nav",    "aside",  "hr",
      "form", "figure",  "details", "center", "tfoot",  "head",
  };
  return tags;
}

bool is_heading(std::string_view tag) {
  return tag.size() == 2 && tag[0] == 'h' && tag[1] >= '1' && tag[1] <= '6';
}

bool is_inline_code(std::string_view tag) {
  return tag == "code" || tag == "tt" || tag == "kbd" || tag == "samp";
}

struct Tag {
  std::string name;  // lowercase
  bool closing = false;
  bool self_closing = false;
  std::string href;
};

std::string attribute(std::string_view attrs, std::string_view key) {
  std::string lower = to_lower(attrs);
  std::size_t pos = 0;
  while ((pos = lower.find(key, pos)) != std::string::npos) {
    bool start_ok = pos == 0 || is_space(lower[pos - 1]);
    std::size_t j = pos + key.size();
    while (j < lower.size() && is_space(lower[j])) ++j;
    if (!start_ok || j >= lower.size() || lower[j] != '=') {
      pos += key.size();
      continue;
    }
    ++j;
    while (j < lower.size() && is_space(lower[j])) ++j;
    if (j >= attrs.size()) return {};
    char quote = attrs[j];
    if (quote == '"' || quote == '\'') {
      std::size_t close = attrs.find(quote, j + 1);
      if (close == std::string_view::npos) close = attrs.size();
      return decode_entities(attrs.substr(j + 1, close - j - 1));
    }
    std::size_t k = j;
    while (k < attrs.size() && !is_space(attrs[k]) && attrs[k] != '>') ++k;
    return decode_entities(attrs.substr(j, k - j));
  }
  return {};
}

Tag parse_tag(std::string_view inner) {
  Tag tag;
  std::size_t i = 0;
  if (i < inner.size() && inner[i] == '/') {
    tag.closing = true;
    ++i;
  }
  std::size_t start = i;
  while (i < inner.size() && !is_space(inner[i]) && inner[i] != '/' &&
         inner[i] != '>')
    ++i;
  tag.name = to_lower(inner.substr(start, i - start));
  std::string_view rest = inner.substr(i);
  if (!rest.empty() && rest.back() == '/') tag.self_closing = true;
  if (tag.name == "a" && !tag.closing) tag.href = attribute(rest, "href");
  return tag;
}

class ParagraphBuilder {
 public:
  explicit ParagraphBuilder(std::string_view html) : html_(html) {}

  bool open() const { return open_; }
  ParagraphKind kind() const { return kind_; }

  void start(ParagraphKind kind, std::size_t raw_begin) {
    open_ = true;
    kind_ = kind;
    raw_begin_ = raw_begin;
  }

  void append_text(std::string_view decoded, std::size_t raw_pos) {
    if (!open_) {
      bool blank = std::all_of(decoded.begin(), decoded.end(), is_space);
      if (blank) return;
      start(ParagraphKind::Prose, raw_pos);
    }
    if (kind_ == ParagraphKind::CodeBlock) {
      for (char c : decoded) {
        if (c == '\r') continue;
        mark_starts();
        text_ += c;
      }
      return;
    }
    for (char c : decoded) {
      if (is_space(c)) {
        pending_space_ = true;
        continue;
      }
      if (pending_space_ && !text_.empty()) text_ += ' ';
      pending_space_ = false;
      mark_starts();
      text_ += c;
    }
  }

  void line_break() {
    if (!open_) return;
    if (kind_ == ParagraphKind::CodeBlock)
      text_ += '\n';
    else
      pending_space_ = true;
  }

  void open_anchor(std::string href) {
    if (open_anchor_) close_anchor();
    open_anchor_ = Anchor{std::move(href), {npos, npos}};
  }

  void close_anchor() {
    if (!open_anchor_) return;
    if (open_anchor_->span.begin != npos) {
      open_anchor_->span.end = text_.size();
      anchors_.push_back(std::move(*open_anchor_));
    }
    open_anchor_.reset();
  }

  void open_code_span() {
    if (code_depth_++ == 0) code_begin_ = npos;
  }

  void close_code_span() {
    if (code_depth_ == 0) return;
    if (--code_depth_ == 0 && code_begin_ != npos)
      code_spans_.push_back({code_begin_, text_.size()});
  }

  // Ends the current paragraph; `raw_end` is the byte offset one past the
  // last source byte that belongs to it.
  void flush(std::size_t raw_end, std::vector<Paragraph>& out) {
    if (!open_) return;
    if (open_anchor_) close_anchor();
    if (code_depth_ > 0) {
      code_depth_ = 1;
      close_code_span();
    }
    Paragraph p;
    p.kind = kind_;
    std::size_t offset = 0;
    std::string text = std::move(text_);
    if (kind_ == ParagraphKind::CodeBlock) {
      // Drop leading blank lines and trailing whitespace.
      std::size_t first = 0;
      std::size_t line_start = 0;
      while (first < text.size() && is_space(text[first])) {
        if (text[first] == '\n') line_start = first + 1;
        ++first;
      }
      offset = first == text.size() ? first : line_start;
      std::size_t last = text.size();
      while (last > offset && is_space(text[last - 1])) --last;
      text = text.substr(offset, last - offset);
    }
    auto shift = [&](TextSpan s) {
      s.begin = std::min(text.size(), s.begin >= offset ? s.begin - offset : 0);
      s.end = std::min(text.size(), s.end >= offset ? s.end - offset : 0);
      return s;
    };
    if (!trim(text).empty()) {
      for (Anchor& a : anchors_) {
        a.span = shift(a.span);
        p.anchors.push_back(std::move(a));
      }
      for (TextSpan s : code_spans_) p.code_spans.push_back(shift(s));
      p.plain_text = std::move(text);
      p.word_count = count_words(p.plain_text);
      raw_end = std::max(raw_end, raw_begin_);
      p.raw_html = std::string(html_.substr(raw_begin_, raw_end - raw_begin_));
      out.push_back(std::move(p));
    }
    reset();
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  void mark_starts() {
    if (open_anchor_ && open_anchor_->span.begin == npos)
      open_anchor_->span.begin = text_.size();
    if (code_depth_ > 0 && code_begin_ == npos) code_begin_ = text_.size();
  }

  void reset() {
    open_ = false;
    kind_ = ParagraphKind::Prose;
    text_.clear();
    pending_space_ = false;
    anchors_.clear();
    code_spans_.clear();
    open_anchor_.reset();
    code_depth_ = 0;
    code_begin_ = npos;
  }

  std::string_view html_;
  bool open_ = false;
  ParagraphKind kind_ = ParagraphKind::Prose;
  std::size_t raw_begin_ = 0;
  std::string text_;
  bool pending_space_ = false;
  std::vector<Anchor> anchors_;
  std::vector<TextSpan> code_spans_;
  std::optional<Anchor> open_anchor_;
  int code_depth_ = 0;
  std::size_t code_begin_ = npos;
};

}  // namespace

TutorialDoc parse_tutorial_html(std::string_view html, std::string id,
                                std::string source_path) {
  TutorialDoc doc;
  doc.id = std::move(id);
  doc.source_path = std::move(source_path);

  ParagraphBuilder builder(html);
  bool in_title = false;
  std::string title;
  std::string skip_until;  // closing tag of a raw-text element
  bool top_level_code = false;

  std::size_t i = 0;
  while (i < html.size()) {
    if (html[i] != '<') {
      std::size_t next = html.find('<', i);
      if (next == std::string_view::npos) next = html.size();
      std::string_view raw = html.substr(i, next - i);
      if (skip_until.empty()) {
        std::string decoded = decode_entities(raw);
        if (in_title)
          title += decoded;
        else
          builder.append_text(decoded, i);
      }
      i = next;
      continue;
    }
    if (html.compare(i, 4, "<!--") == 0) {
      std::size_t end = html.find("-->", i + 4);
      i = end == std::string_view::npos ? html.size() : end + 3;
      continue;
    }
    std::size_t close = html.find('>', i);
    if (close == std::string_view::npos) {
      // Stray '<' without a tag end; treat it as text.
      if (skip_until.empty()) builder.append_text("<", i);
      ++i;
      continue;
    }
    std::string_view inner = html.substr(i + 1, close - i - 1);
    std::size_t tag_begin = i;
    std::size_t tag_end = close + 1;
    i = tag_end;
    if (inner.empty() || inner[0] == '!' || inner[0] == '?') continue;
    // "a < b" in text: not a tag.
    if (!(std::isalpha(static_cast<unsigned char>(inner[0])) ||
          inner[0] == '/')) {
      if (skip_until.empty()) builder.append_text("<", tag_begin);
      i = tag_begin + 1;
      continue;
    }
    Tag tag = parse_tag(inner);

    if (!skip_until.empty()) {
      if (tag.closing && tag.name == skip_until) skip_until.clear();
      continue;
    }
    if (!tag.closing && (tag.name == "script" || tag.name == "style" ||
                         tag.name == "noscript")) {
      if (!tag.self_closing) skip_until = tag.name;
      continue;
    }
    if (tag.name == "title") {
      in_title = !tag.closing;
      continue;
    }

    const bool in_pre = builder.open() &&
                        builder.kind() == ParagraphKind::CodeBlock &&
                        !top_level_code;

    if (tag.name == "pre") {
      builder.flush(tag.closing ? tag_end : tag_begin, doc.paragraphs);
      top_level_code = false;
      if (!tag.closing) builder.start(ParagraphKind::CodeBlock, tag_begin);
      continue;
    }
    if (in_pre) {
      // Markup inside <pre> (syntax highlighting spans) carries no structure.
      if (tag.name == "br") builder.line_break();
      if (tag.name == "a" && !tag.closing) builder.open_anchor(tag.href);
      if (tag.name == "a" && tag.closing) builder.close_anchor();
      continue;
    }
    if (is_inline_code(tag.name)) {
      if (!tag.closing && !builder.open()) {
        builder.start(ParagraphKind::CodeBlock, tag_begin);
        top_level_code = true;
      } else if (tag.closing && top_level_code) {
        builder.flush(tag_end, doc.paragraphs);
        top_level_code = false;
      } else if (!top_level_code) {
        tag.closing ? builder.close_code_span() : builder.open_code_span();
      }
      continue;
    }
    if (tag.name == "a") {
      tag.closing ? builder.close_anchor() : builder.open_anchor(tag.href);
      continue;
    }
    if (tag.name == "br") {
      builder.line_break();
      continue;
    }
    if (is_heading(tag.name)) {
      builder.flush(tag.closing ? tag_end : tag_begin, doc.paragraphs);
      top_level_code = false;
      if (!tag.closing) builder.start(ParagraphKind::Heading, tag_begin);
      continue;
    }
    if (prose_blocks().count(tag.name)) {
      builder.flush(tag.closing ? tag_end : tag_begin, doc.paragraphs);
      top_level_code = false;
      if (!tag.closing && !tag.self_closing)
        builder.start(ParagraphKind::Prose, tag_begin);
      continue;
    }
    if (container_blocks().count(tag.name)) {
      builder.flush(tag.closing ? tag_end : tag_begin, doc.paragraphs);
      top_level_code = false;
      continue;
    }
    // Any other inline element is transparent.
  }
  builder.flush(html.size(), doc.paragraphs);

  std::string t;
  for (char c : title) {
    if (is_space(c)) {
      if (!t.empty() && t.back() != ' ') t += ' ';
    } else {
      t += c;
    }
  }
  doc.title = std::string(trim(t));
  return doc;
}

}  // namespace fragrec
