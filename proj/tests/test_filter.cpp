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
#include <random>

#include "fragrec/filter.hpp"
#include "golden.hpp"

namespace fragrec {
namespace {

// n sentences; `api_sentences` maps sentence index to its APIs.
ParsedFragment synthetic(std::size_t n,
                         std::map<std::size_t, std::vector<std::string>> api_sentences,
                         std::set<std::size_t> marginal = {}) {
  ParsedFragment pf;
  pf.fragment.id = {"t", 1};
  for (std::size_t i = 0; i < n; ++i) {
    Sentence s;
    s.ordinal = i + 1;
    s.text = s.source_text = "Plain sentence number " + std::to_string(i + 1) + ".";
    if (marginal.count(i)) s.kind = SentenceKind::marginal(MarginalReason::Example);
    for (const std::string& api : api_sentences[i]) {
      s.apis.insert(api);
      pf.mentions.push_back({api, i + 1, MentionOrigin::LexicalMatch, 0});
    }
    pf.sentences.push_back(std::move(s));
  }
  return pf;
}

TEST(Filter, FixtureVerdicts) {
  ApiCatalog cat = testing::fixture_catalog();
  auto a = parse_fragment(testing::fixture_fragment("jodatime")[0], cat);
  auto b = parse_fragment(testing::fixture_fragment("graphics")[0], cat);
  FilterVerdict va = apply_filter(a);
  EXPECT_TRUE(va.filtered());
  EXPECT_TRUE(va.fired_rules.count(RuleId::R4_MarginalOnly));
  EXPECT_TRUE(va.fired_rules.count(RuleId::R5_IndicatorPhrase));
  FilterVerdict vb = apply_filter(b);
  EXPECT_FALSE(vb.filtered());
  EXPECT_TRUE(vb.fired_rules.empty());
}

TEST(Filter, SingleApiOnceAndLowRatio) {
  ParsedFragment pf = synthetic(6, {{0, {"Canvas"}}});
  FilterVerdict v = apply_filter(pf);
  EXPECT_EQ(v.fired_rules,
            (std::set<RuleId>{RuleId::R1_SingleApiOnce, RuleId::R3_LowApiSentenceRatio}));
}

TEST(Filter, RulesIndividually) {
  EXPECT_TRUE(too_short(synthetic(4, {{0, {"A"}}, {1, {"B"}}})));
  EXPECT_FALSE(too_short(synthetic(5, {})));
  EXPECT_TRUE(low_api_sentence_ratio(synthetic(10, {})));
  EXPECT_FALSE(low_api_sentence_ratio(synthetic(10, {{0, {"A"}}, {1, {"A"}}})));
  EXPECT_FALSE(marginal_only(synthetic(10, {})));
  EXPECT_TRUE(marginal_only(synthetic(6, {{2, {"A", "B"}}}, {2})));
  EXPECT_FALSE(marginal_only(synthetic(6, {{2, {"A"}}, {3, {"A"}}}, {2})));
  EXPECT_FALSE(single_api_once(synthetic(6, {{0, {"A"}}, {1, {"A"}}})));
  EXPECT_FALSE(single_api_once(synthetic(6, {{0, {"A", "B"}}})));
}

TEST(Filter, IndicatorPhrasesIncludingHeadings) {
  ParsedFragment pf = synthetic(6, {{0, {"A"}}, {1, {"B"}}});
  EXPECT_FALSE(has_indicator_phrase(pf));
  pf.fragment.paragraphs.push_back(testing::prose("For more information about drawing, read on."));
  EXPECT_TRUE(has_indicator_phrase(pf));
  pf.fragment.paragraphs.clear();
  Paragraph h = testing::prose("An Overview");
  h.kind = ParagraphKind::Heading;
  pf.fragment.paragraphs.push_back(h);
  EXPECT_TRUE(has_indicator_phrase(pf));
  FilterConfig cfg;
  cfg.indicator_phrases = {"recap"};
  EXPECT_FALSE(has_indicator_phrase(pf, cfg));
}

TEST(Filter, IndicatorFile) {
  auto path = std::filesystem::temp_directory_path() / "fragrec_indicators.txt";
  std::ofstream(path) << "# phrases\nRecap\n\n  in short \n";
  EXPECT_EQ(load_indicator_phrases(path), (std::vector<std::string>{"Recap", "in short"}));
}

TEST(Filter, RuleNamesRoundTrip) {
  for (RuleId r : {RuleId::R1_SingleApiOnce, RuleId::R2_TooShort,
                   RuleId::R3_LowApiSentenceRatio, RuleId::R4_MarginalOnly,
                   RuleId::R5_IndicatorPhrase})
    EXPECT_EQ(rule_from_string(to_string(r)), r);
  EXPECT_FALSE(rule_from_string("R9"));
}

// Adding a mention of an API already present to a principal sentence
// never turns a retained fragment into a filtered one.
TEST(Filter, AddingPrincipalMentionIsMonotone) {
  std::mt19937 rng(7);
  const std::vector<std::string> apis{"A", "B", "C"};
  int checked = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 5 + rng() % 8;
    std::map<std::size_t, std::vector<std::string>> at;
    std::set<std::size_t> marginal;
    for (std::size_t i = 0; i < n; ++i) {
      if (rng() % 2) at[i].push_back(apis[rng() % apis.size()]);
      if (rng() % 4 == 0) marginal.insert(i);
    }
    ParsedFragment pf = synthetic(n, at, marginal);
    if (apply_filter(pf).filtered() || pf.apis().empty()) continue;
    std::vector<std::size_t> principal;
    for (std::size_t i = 0; i < n; ++i)
      if (!marginal.count(i)) principal.push_back(i);
    if (principal.empty()) continue;
    const std::size_t target = principal[rng() % principal.size()];
    const std::string api = *std::next(pf.apis().begin(), rng() % pf.apis().size());
    pf.sentences[target].apis.insert(api);
    pf.mentions.push_back({api, target + 1, MentionOrigin::LexicalMatch, 0});
    EXPECT_FALSE(apply_filter(pf).filtered()) << "trial " << trial;
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

}  // namespace
}  // namespace fragrec
