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

#include "clinorm/eval.h"

#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "clinorm/errors.h"
#include "support/kappa_oracle.h"
#include "support/test_data.h"

namespace clinorm {
namespace {

TEST(Kappa, HandCase) {
  auto k = CohensKappa({20, 60, 10, 10});
  EXPECT_DOUBLE_EQ(k.p_o, 0.8);
  EXPECT_NEAR(k.p_e, 0.58, 1e-12);
  EXPECT_NEAR(k.kappa, 0.5238, 1e-4);
  EXPECT_NEAR(k.kappa, 0.22 / 0.42, 1e-12);
}

TEST(Kappa, PerfectAndChance) {
  EXPECT_DOUBLE_EQ(CohensKappa({30, 70, 0, 0}).kappa, 1.0);
  // Marginals 0.5/0.5 on both sides with p_o = 0.5.
  EXPECT_NEAR(CohensKappa({25, 25, 25, 25}).kappa, 0.0, 1e-12);
}

TEST(Kappa, Degenerate) {
  auto all_neg = CohensKappa({0, 10, 0, 0});
  EXPECT_TRUE(all_neg.degenerate);
  EXPECT_EQ(all_neg.kappa, 1.0);
  EXPECT_THROW(CohensKappa({0, 0, 0, 0}), Error);
}

TEST(Kappa, SymmetricAndBounded) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 2000; ++i) {
    Cells c{rng() % 50, rng() % 50, rng() % 50, rng() % 50};
    if (c.Total() == 0) continue;
    auto a = CohensKappa(c);
    auto b = CohensKappa({c.agree_pos, c.agree_neg, c.only_b, c.only_a});
    EXPECT_DOUBLE_EQ(a.kappa, b.kappa);
    EXPECT_DOUBLE_EQ(a.p_e, b.p_e);
    EXPECT_GE(a.kappa, -1.0);
    EXPECT_LE(a.kappa, 1.0);
  }
}

TEST(DocumentUnits, Examples) {
  EXPECT_EQ(DocumentUnits({}, {}, 100), (Cells{0, 100, 0, 0}));
  EXPECT_EQ(DocumentUnits({"C1"}, {"C2"}, 10), (Cells{0, 8, 1, 1}));
  EXPECT_EQ(DocumentUnits({"C1", "C2"}, {"C2"}, 352075), (Cells{1, 352073, 1, 0}));
  EXPECT_THROW(DocumentUnits({"C1", "C2"}, {"C3"}, 2), Error);
}

TEST(Landis, Bands) {
  EXPECT_EQ(LandisLabel(-0.1), "No agreement");
  EXPECT_EQ(LandisLabel(0.0), "Slight agreement");
  EXPECT_EQ(LandisLabel(0.20), "Slight agreement");
  EXPECT_EQ(LandisLabel(0.205), "Fair agreement");
  EXPECT_EQ(LandisLabel(0.40), "Fair agreement");
  EXPECT_EQ(LandisLabel(0.432), "Moderate agreement");
  EXPECT_EQ(LandisLabel(0.60), "Moderate agreement");
  EXPECT_EQ(LandisLabel(0.7), "Substantial agreement");
  EXPECT_EQ(LandisLabel(0.81), "Almost perfect agreement");
  EXPECT_EQ(LandisLabel(1.0), "Almost perfect agreement");
}

TEST(Pooled, SingleDocumentEqualsKappa) {
  auto r = PooledKappa({{"d", {20, 60, 10, 10}, {}}});
  EXPECT_DOUBLE_EQ(r.kappa.kappa, CohensKappa({20, 60, 10, 10}).kappa);
  EXPECT_TRUE(r.ci.degenerate);
  EXPECT_EQ(r.ci.low, r.ci.high);
  EXPECT_EQ(r.label, "Moderate agreement");
}

TEST(Pooled, HandPooledTwoDocuments) {
  // (5,40,3,2) + (15,20,7,8) = (20,60,10,10).
  auto r = PooledKappa({{"a", {5, 40, 3, 2}, {}}, {"b", {15, 20, 7, 8}, {}}});
  EXPECT_EQ(r.cells, (Cells{20, 60, 10, 10}));
  EXPECT_NEAR(r.kappa.kappa, 0.22 / 0.42, 1e-12);
  EXPECT_EQ(r.documents.size(), 2u);
  EXPECT_NEAR(r.documents[0].kappa.kappa, CohensKappa({5, 40, 3, 2}).kappa, 1e-12);
}

TEST(Pooled, DuplicatingDocumentsKeepsKappa) {
  std::vector<DocumentAgreement> docs = {{"a", {5, 40, 3, 2}, {}}, {"b", {15, 20, 7, 8}, {}}};
  auto twice = docs;
  twice.insert(twice.end(), docs.begin(), docs.end());
  EXPECT_NEAR(PooledKappa(docs).kappa.kappa, PooledKappa(twice).kappa.kappa, 1e-12);
  EXPECT_THROW(PooledKappa({}), Error);
}

TEST(Bootstrap, IdenticalDocumentsGiveZeroWidth) {
  std::vector<Cells> docs(10, Cells{2, 30, 1, 1});
  auto ci = BootstrapCi(docs);
  EXPECT_NEAR(ci.low, ci.high, 1e-12);
}

TEST(Bootstrap, SeededAndContainsKappa) {
  std::mt19937_64 rng(12);
  std::vector<Cells> docs;
  for (int i = 0; i < 20; ++i) docs.push_back({rng() % 6 + 1, 200, rng() % 4, rng() % 4});
  BootstrapOptions opt;
  opt.seed = 9;
  auto a = BootstrapCi(docs, opt);
  auto b = BootstrapCi(docs, opt);
  EXPECT_EQ(a.low, b.low);
  EXPECT_EQ(a.high, b.high);
  Cells total;
  for (const auto &d : docs) total += d;
  double k = CohensKappa(total).kappa;
  EXPECT_LE(a.low, k);
  EXPECT_GE(a.high, k);
  EXPECT_LT(a.low, a.high);
  opt.resamples = 10;
  EXPECT_THROW(BootstrapCi(docs, opt), Error);
}

TEST(Compare, MatchesPerUnitOracle) {
  std::mt19937_64 rng(77);
  const size_t universe = 1000;
  for (int trial = 0; trial < 20; ++trial) {
    AnnotationSets a, b;
    size_t docs = rng() % 8 + 1;
    for (size_t d = 0; d < docs; ++d) {
      std::string id = "d" + std::to_string(d);
      if (rng() % 5) {
        auto &s = a[id];
        for (size_t k = rng() % 30; k > 0; --k) s.insert("C" + std::to_string(rng() % universe));
      }
      if (rng() % 5) {
        auto &s = b[id];
        for (size_t k = rng() % 30; k > 0; --k) s.insert("C" + std::to_string(rng() % universe));
      }
    }
    if (a.empty() && b.empty()) continue;
    auto report = Compare(a, b, universe);
    Cells want = testing::BruteForceCells(a, b, universe);
    EXPECT_EQ(report.cells, want);
    EXPECT_DOUBLE_EQ(report.kappa.kappa, CohensKappa(want).kappa);
  }
}

TEST(Compare, IdenticalSetsGiveOne) {
  AnnotationSets a = {{"d1", {"C1", "C2"}}, {"d2", {"C3"}}};
  EXPECT_DOUBLE_EQ(Compare(a, a, 50).kappa.kappa, 1.0);
}

TEST(LoadAnnotationSets, BothFormats) {
  auto p = std::filesystem::temp_directory_path() / "clinorm_eval_sets.jsonl";
  std::ofstream(p) << R"({"doc_id":"a","cuis":["C1","C2"]})" << "\n"
                   << R"({"doc_id":"b","text":"x","annotations":[{"cui":"C3"},{"cui":"C3"}]})"
                   << "\n";
  auto sets = LoadAnnotationSets(p);
  EXPECT_EQ(sets.at("a"), (std::set<std::string>{"C1", "C2"}));
  EXPECT_EQ(sets.at("b"), std::set<std::string>{"C3"});
}

TEST(RestrictToKb, DropsUnknown) {
  AnnotationSets s = {{"d", {"C0010200", "C9999999"}}};
  EXPECT_EQ(RestrictToKb(s, testing::SampleSnapshot().kb), 1u);
  EXPECT_EQ(s.at("d"), std::set<std::string>{"C0010200"});
}

TEST(RenderMatrix, LayoutRowsAndColumns) {
  std::vector<MatrixEntry> entries;
  for (auto w : {WsdMode::kRandom, WsdMode::kUkb}) {
    for (auto r : {Reranker::kLucene, Reranker::kAronson, Reranker::kCastro}) {
      for (auto b : {Boundary::kNgram, Boundary::kPhrase}) {
        AgreementReport rep;
        rep.kappa.kappa = 0.432;
        rep.ci = {0.424, 0.440, false};
        entries.push_back({b, r, w, rep});
      }
    }
  }
  std::string table = RenderMatrix(entries);
  std::vector<std::string> lines;
  std::istringstream in(table);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  ASSERT_EQ(lines.size(), 7u);
  EXPECT_NE(lines[0].find("ngram"), std::string::npos);
  EXPECT_NE(lines[0].find("phrase"), std::string::npos);
  EXPECT_EQ(lines[1].rfind("rand", 0), 0u);
  EXPECT_EQ(lines[4].rfind("UKB", 0), 0u);
  EXPECT_NE(lines[1].find("L(.0)"), std::string::npos);
  EXPECT_NE(lines[2].find("A(.5)"), std::string::npos);
  EXPECT_NE(lines[3].find("C(.7)"), std::string::npos);
  EXPECT_NE(lines[6].find("0.432 ± 0.008"), std::string::npos);
}

}  // namespace
}  // namespace clinorm
