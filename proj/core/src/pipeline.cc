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

#include "clinorm/pipeline.h"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "clinorm/errors.h"
#include "clinorm/utf8.h"

namespace clinorm {

namespace {

class StageClock {
 public:
  explicit StageClock(std::vector<std::pair<std::string, double>> &out) : out_(out) {}

  void Lap(const char *stage) {
    auto now = std::chrono::steady_clock::now();
    out_.emplace_back(stage, std::chrono::duration<double, std::milli>(now - last_).count());
    last_ = now;
  }

 private:
  std::vector<std::pair<std::string, double>> &out_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

bool Blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

Engine::Engine(KnowledgeBase kb, Index index, AbbreviationDictionary abbreviations,
               PprParams ppr)
    : kb_(std::move(kb)),
      index_(std::move(index)),
      abbreviations_(std::move(abbreviations)),
      ppr_(ppr) {
  if (!kb_.relations.empty()) graph_ = ConceptGraph::Build(kb_.relations);
}

AnnotatedDocument Engine::Annotate(std::string doc_id, std::string_view text,
                                   const PipelineConfig &config) const {
  config.Validate();
  AnnotatedDocument doc;
  doc.doc_id = std::move(doc_id);
  doc.text = std::string(text);
  doc.config = config.Resolved();
  if (Blank(text)) {
    doc.expanded_text = doc.text;
    return doc;
  }

  const StopwordList &function_words = kb_.normalizer.stopwords();
  StageClock clock(doc.timings_ms);
  std::vector<Token> raw = Tokenize(text, function_words);
  clock.Lap("tokenize");
  ExpandedText expanded = ExpandAbbreviations(text, raw, abbreviations_, function_words);
  doc.expanded_text = expanded.text;
  const std::vector<Token> &tokens = expanded.tokens;
  clock.Lap("expand");

  std::vector<Span> spans = config.boundary == Boundary::kNgram
                                ? NgramSpans(tokens, config.ngram_min, config.ngram_max)
                                : PhraseSpans(tokens);
  clock.Lap("spans");
  SpanForest forest = BuildSubsumptionForest(std::move(spans));
  clock.Lap("forest");
  auto accepted = GenerateCandidates(forest, index_, kb_.normalizer, config);
  clock.Lap("candidates");

  struct Pending {
    uint32_t span;
    Selection selection;
  };
  std::vector<Pending> pending;
  std::set<uint32_t> tied_positions;
  for (auto &[span, candidates] : accepted) {
    Selection s = ClassifyCandidates(std::move(candidates), kb_, config.semantic_types);
    if (s.kind == SelectionCase::kNone) continue;
    if (s.kind == SelectionCase::kTie) {
      const auto &positions = forest.nodes[span].tokens;
      tied_positions.insert(positions.begin(), positions.end());
    }
    pending.push_back({span, std::move(s)});
  }

  std::mt19937_64 rng(config.rand_seed);
  std::optional<std::vector<double>> activation;
  bool ukb = config.wsd == WsdMode::kUkb;
  if (ukb && !tied_positions.empty() && graph_) {
    std::vector<std::string> context;
    for (uint32_t i = 0; i < tokens.size(); ++i) {
      if (tokens[i].kind == TokenKind::kContent && !tied_positions.count(i)) {
        context.push_back(tokens[i].norm);
      }
    }
    std::vector<double> seeds = PersonalizationFromContext(*graph_, kb_.dictionary, context);
    if (!seeds.empty()) activation = PersonalizedPageRank(*graph_, seeds, ppr_).activation;
  }

  for (const Pending &p : pending) {
    const Selection &s = p.selection;
    const MappingCandidate *winner = &s.best.front();
    if (s.kind == SelectionCase::kTie) {
      ++doc.ties;
      std::vector<std::string> tied;
      for (const auto &c : s.best) tied.push_back(c.cui);
      std::string cui;
      if (ukb && activation) {
        cui = PickByActivation(tied, *graph_, *activation);
      } else {
        if (ukb) doc.wsd_fallback = true;
        cui = RandomChoice(tied, rng);
      }
      for (const auto &c : s.best) {
        if (c.cui == cui) winner = &c;
      }
    }
    doc.annotations.push_back(
        MakeAnnotation(forest.nodes[p.span], tokens, *winner, kb_, index_));
  }
  const std::vector<size_t> cp = utf8::CodePointIndex(text);
  for (auto &a : doc.annotations) {
    for (auto &[b, e] : a.ranges) {
      b = cp[b];
      e = cp[e];
    }
  }
  std::sort(doc.annotations.begin(), doc.annotations.end(),
            [](const Annotation &a, const Annotation &b) {
              if (std::tie(a.ranges, a.cui) != std::tie(b.ranges, b.cui)) {
                return std::tie(a.ranges, a.cui) < std::tie(b.ranges, b.cui);
              }
              return std::tie(b.score, a.matched_term) < std::tie(a.score, b.matched_term);
            });
  // Expansion tokens share their abbreviation's range, so distinct spans can
  // land on the same original text; keep the best of each.
  doc.annotations.erase(std::unique(doc.annotations.begin(), doc.annotations.end(),
                                    [](const Annotation &a, const Annotation &b) {
                                      return a.ranges == b.ranges && a.cui == b.cui;
                                    }),
                        doc.annotations.end());
  clock.Lap("select");
  return doc;
}

std::vector<InputDocument> ReadDocuments(const std::filesystem::path &path) {
  namespace fs = std::filesystem;
  std::vector<InputDocument> docs;
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto &e : fs::directory_iterator(path)) {
      if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto &f : files) {
      std::ifstream in(f, std::ios::binary);
      std::ostringstream buf;
      buf << in.rdbuf();
      docs.push_back({f.stem().string(), buf.str()});
    }
    return docs;
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Blank(line)) continue;
    try {
      auto j = nlohmann::json::parse(line);
      docs.push_back({j.at("doc_id").get<std::string>(), j.at("text").get<std::string>()});
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorCode::kParse,
                  path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return docs;
}

}  // namespace clinorm
