// Copyright 2026 The clinorm Authors.
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

#include "clinorm/kb.h"

#include <fstream>

#include <gtest/gtest.h>

#include "clinorm/errors.h"
#include "support/test_data.h"

namespace clinorm {
namespace {

namespace fs = std::filesystem;

StopwordList Stopwords() { return StopwordList::Load(testing::DataDir() / "stopwords_es.txt"); }

RawAtom Atom(std::string term) {
  return RawAtom{"C0000001", "SPA", std::move(term), "SCTSPA", 'N', "PT"};
}

fs::path WriteTemp(const std::string &name, const std::string &content) {
  fs::path p = fs::temp_directory_path() / ("clinorm_kb_test_" + name);
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

TEST(FilterAtom, EachRuleHasItsOwnReason) {
  StopwordList sw = Stopwords();
  FilterConfig cfg;
  EXPECT_EQ(FilterAtom(Atom("tos"), sw, cfg), RejectReason::kNone);

  RawAtom eng = Atom("cough");
  eng.lang = "ENG";
  EXPECT_EQ(FilterAtom(eng, sw, cfg), RejectReason::kLanguage);

  RawAtom loinc = Atom("sodio");
  loinc.source = "LNC-ES-ES";
  EXPECT_EQ(FilterAtom(loinc, sw, cfg), RejectReason::kSource);

  std::string fifteen;
  for (int i = 0; i < 15; ++i) fifteen += "palabra" + std::to_string(i) + " ";
  EXPECT_EQ(FilterAtom(Atom(fifteen), sw, cfg), RejectReason::kTooLong);
  std::string fourteen;
  for (int i = 0; i < 14; ++i) fourteen += "palabra" + std::to_string(i) + " ";
  EXPECT_EQ(FilterAtom(Atom(fourteen), sw, cfg), RejectReason::kNone);

  for (char flag : {'O', 'E', 'Y'}) {
    RawAtom s = Atom("neumonía");
    s.suppress = flag;
    EXPECT_EQ(FilterAtom(s, sw, cfg), RejectReason::kSuppressed) << flag;
  }
  EXPECT_EQ(FilterAtom(Atom("X"), sw, cfg), RejectReason::kSingleChar);
  EXPECT_EQ(FilterAtom(Atom("ñ"), sw, cfg), RejectReason::kSingleChar);
  EXPECT_EQ(FilterAtom(Atom("123"), sw, cfg), RejectReason::kNumbersOnly);
  EXPECT_EQ(FilterAtom(Atom("12.5-3"), sw, cfg), RejectReason::kNumbersOnly);
  EXPECT_EQ(FilterAtom(Atom("de la"), sw, cfg), RejectReason::kStopwordsOnly);
}

TEST(FilterAtom, PolarityTermsSurvive) {
  StopwordList sw = Stopwords();
  for (const char *t : {"no", "sin", "con"}) {
    EXPECT_EQ(FilterAtom(Atom(t), sw, FilterConfig{}), RejectReason::kNone) << t;
  }
}

TEST(FilterAtom, ExactSourceCodes) {
  FilterConfig cfg;
  cfg.excluded_sources = {"MDRSPA"};
  RawAtom a = Atom("tos");
  a.source = "MDRSPA";
  EXPECT_EQ(FilterAtom(a, Stopwords(), cfg), RejectReason::kSource);
  a.source = "MDRSPAX";
  EXPECT_EQ(FilterAtom(a, Stopwords(), cfg), RejectReason::kNone);
}

TEST(ParseConceptFile, ReadsDefaultLayout) {
  auto p = WriteTemp("conso.rrf",
                     "C0004034|SPA|P|L1|PF|S1|Y|A1||M1||SCTSPA|PT|1|Aspergillus|0|N|256|\n"
                     "broken|line|\n");
  SkipReport report;
  auto atoms = ParseConceptFile(p, ConceptLayout{}, report);
  ASSERT_EQ(atoms.size(), 1u);
  EXPECT_EQ(atoms[0].cui, "C0004034");
  EXPECT_EQ(atoms[0].lang, "SPA");
  EXPECT_EQ(atoms[0].source, "SCTSPA");
  EXPECT_EQ(atoms[0].term, "Aspergillus");
  EXPECT_EQ(atoms[0].suppress, 'N');
  EXPECT_EQ(report.lines, 2u);
  EXPECT_EQ(report.skipped, 1u);
  EXPECT_EQ(report.skipped_lines, std::vector<size_t>{2});
}

TEST(ParseConceptFile, MissingFileThrows) {
  SkipReport report;
  EXPECT_THROW(ParseConceptFile("/nonexistent/MRCONSO.RRF", ConceptLayout{}, report), Error);
}

TEST(FilterRelations, DropsSelfLoopsDuplicatesAndUnknownEndpoints) {
  std::vector<Relation> rows = {
      {"C1", "C2", "PAR", "isa", ""}, {"C1", "C2", "PAR", "isa", ""},
      {"C1", "C1", "RO", "", ""},     {"C1", "C9", "RO", "", ""},
      {"C2", "C1", "CHD", "", ""},
  };
  auto r = FilterRelations(rows, {"C1", "C2"});
  EXPECT_EQ(r.edges.size(), 2u);
  EXPECT_EQ(r.duplicates, 1u);
  EXPECT_EQ(r.self_loops, 1u);
  EXPECT_EQ(r.dropped_endpoint, 1u);
}

TEST(SemanticNetwork, RejectsCycles) {
  try {
    SemanticNetwork({{"T1", "a", "T2"}, {"T2", "b", "T1"}});
    FAIL() << "cycle not detected";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kCycle);
    EXPECT_NE(std::string(e.what()).find("T1"), std::string::npos);
  }
}

TEST(SemanticNetwork, RejectsUnknownParent) {
  EXPECT_THROW(SemanticNetwork({{"T1", "a", "T404"}}), Error);
}

TEST(SemanticNetwork, ForestQueries) {
  SemanticNetwork net({{"T1", "root", std::nullopt},
                       {"T2", "child", "T1"},
                       {"T3", "grandchild", "T2"},
                       {"T4", "other root", std::nullopt}});
  EXPECT_EQ(net.Roots(), (std::vector<std::string>{"T1", "T4"}));
  EXPECT_EQ(net.Children("T1"), std::vector<std::string>{"T2"});
  EXPECT_EQ(net.Subtree("T1"), (std::set<std::string>{"T1", "T2", "T3"}));
}

// Counts below were obtained by an independent script over the sample files.
TEST(SampleKb, MatchesHandCounts) {
  const KnowledgeBase &kb = testing::SampleSnapshot().kb;
  const BuildReport &r = kb.report;
  EXPECT_EQ(r.parsed_atoms, 130u);
  EXPECT_EQ(r.kept_atoms, 120u);
  EXPECT_EQ(r.rejected.at(RejectReason::kLanguage), 1u);
  EXPECT_EQ(r.rejected.at(RejectReason::kSource), 1u);
  EXPECT_EQ(r.rejected.at(RejectReason::kTooLong), 1u);
  EXPECT_EQ(r.rejected.at(RejectReason::kSuppressed), 3u);
  EXPECT_EQ(r.rejected.at(RejectReason::kSingleChar), 1u);
  EXPECT_EQ(r.rejected.at(RejectReason::kNumbersOnly), 1u);
  EXPECT_EQ(r.rejected.at(RejectReason::kStopwordsOnly), 1u);
  EXPECT_EQ(r.rejected.at(RejectReason::kDuplicate), 1u);
  EXPECT_EQ(r.TotalRejected(), 10u);
  EXPECT_EQ(r.concepts, 42u);
  EXPECT_EQ(kb.concepts.size(), 42u);
  EXPECT_EQ(r.unique_terms, 115u);
  EXPECT_EQ(r.per_concept_terms, 115u);
  EXPECT_EQ(r.unique_normalized, 83u);
  EXPECT_EQ(kb.dictionary.size(), 83u);
  EXPECT_EQ(r.edges, 147u);
  EXPECT_EQ(kb.relations.size(), 147u);
  EXPECT_EQ(r.semtype_assignments, 42u);
}

TEST(SampleKb, SuppressedOnlyConceptDisappears) {
  const KnowledgeBase &kb = testing::SampleSnapshot().kb;
  EXPECT_EQ(kb.FindConcept("C9000002"), nullptr);
  EXPECT_EQ(kb.FindConcept("C9000001"), nullptr);
}

TEST(SampleKb, AspergillusTermsAndPreferredName) {
  const Concept *c = testing::SampleSnapshot().kb.FindConcept("C0004034");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->preferred_name, "Aspergillus");
  size_t sct = 0;
  for (const auto &t : c->terms) sct += t.source == "SCTSPA";
  EXPECT_EQ(sct, 6u);
  EXPECT_EQ(c->terms.size(), 7u);
  EXPECT_EQ(c->semantic_types, std::set<std::string>{"T004"});
}

TEST(SampleKb, AmbiguousDictionaryKey) {
  const KnowledgeBase &kb = testing::SampleSnapshot().kb;
  EXPECT_EQ(kb.dictionary.at("clavo"), (std::set<std::string>{"C0009214", "C0010038"}));
  EXPECT_EQ(kb.FindConcept("C0009214")->preferred_name, "clavo de olor");
}

TEST(SampleKb, PolarityConceptsKept) {
  const KnowledgeBase &kb = testing::SampleSnapshot().kb;
  for (const char *t : {"no", "sin", "con"}) EXPECT_TRUE(kb.dictionary.count(t)) << t;
}

TEST(BuildKnowledgeBase, EmptyReleaseThrows) {
  ReleaseInputs inputs;
  inputs.atoms.push_back(Atom("X"));
  try {
    BuildKnowledgeBase(inputs, BuildConfig{}, TermNormalizer(Stopwords(), {}));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyInput);
  }
}

}  // namespace
}  // namespace clinorm
