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

#ifndef CLINORM_MAPPING_H_
#define CLINORM_MAPPING_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "clinorm/index.h"
#include "clinorm/kb.h"
#include "clinorm/text.h"

namespace clinorm {

enum class Boundary { kNgram, kPhrase };
// L keeps the retrieval score, A and C are lexical similarity rerankers.
enum class Reranker { kLucene, kAronson, kCastro };
enum class WsdMode { kUkb, kRandom };

const char *BoundaryName(Boundary b);
const char *RerankerName(Reranker r);
const char *WsdModeName(WsdMode w);
std::optional<Boundary> ParseBoundary(std::string_view s);
std::optional<Reranker> ParseReranker(std::string_view s);
std::optional<WsdMode> ParseWsdMode(std::string_view s);

// L -> 0.0, A -> 0.5, C -> 0.7.
double DefaultThreshold(Reranker r);

struct PipelineConfig {
  Boundary boundary = Boundary::kNgram;
  Reranker reranker = Reranker::kCastro;
  std::optional<double> threshold;  // defaults per reranker
  WsdMode wsd = WsdMode::kUkb;
  std::optional<std::set<std::string>> semantic_types;
  size_t ngram_min = 1;
  size_t ngram_max = 5;
  uint64_t rand_seed = 0;

  double EffectiveThreshold() const {
    return threshold ? *threshold : DefaultThreshold(reranker);
  }
  // Copy with the threshold filled in.
  PipelineConfig Resolved() const;
  // Throws Error(kInvalidArgument) on out-of-range values.
  void Validate() const;
};

struct MappingCandidate {
  uint32_t span = 0;
  std::string cui;
  EntryId entry = 0;
  double base_score = 0;
  double rerank_score = 0;  // in [0, 1] once reranked
};

struct Annotation {
  // Byte ranges from MakeAnnotation; Engine output converts them to
  // code-point ranges in the original text.
  std::vector<std::pair<size_t, size_t>> ranges;
  std::string cui;
  std::string preferred_name;
  std::vector<std::string> tuis;
  double score = 0;
  std::string matched_term;
};

// Queries the index with the normalized span text; one candidate per
// (entry, cui). A span that normalizes to nothing is not queried.
std::vector<MappingCandidate> MatchSpan(const Index &index, const TermNormalizer &normalizer,
                                        const Span &span, uint32_t span_id,
                                        size_t top_k = kDefaultTopK);

// 2|S ∩ T| / (|S| + |T|) over token multisets.
double DiceScore(const std::vector<std::string> &span_tokens,
                 const std::vector<std::string> &term_tokens);

struct AronsonComponents {
  double centrality = 0;
  double variation = 0;
  double coverage = 0;
  double cohesiveness = 0;

  double Score() const {
    return (centrality + variation + 2 * coverage + 2 * cohesiveness) / 6.0;
  }
};

// Tokens are aligned greedily left to right on an accent-folded, lightly
// stemmed key, so inflectional variants ("congénita"/"congénito") match and
// are penalized only through `variation`.
AronsonComponents AronsonScore(const std::vector<std::string> &span_tokens,
                               const std::vector<std::string> &term_tokens);

// Fills rerank_score for the candidates retrieved for one span. L divides
// each base score by the best one in the list.
void Rerank(std::vector<MappingCandidate> &candidates, Reranker reranker,
            const std::vector<std::string> &span_tokens, const Index &index);

std::vector<MappingCandidate> ApplyThreshold(std::vector<MappingCandidate> candidates,
                                             double threshold);

// Returns the thresholded, reranked candidates of one forest node.
using CandidateFn = std::function<std::vector<MappingCandidate>(uint32_t span)>;

// Longest-match traversal of each tree: a node's candidates are accepted
// unless one of its direct children scores strictly higher, or the node has
// no candidate at all; in those cases the node is dropped and each child
// subtree is processed the same way.
std::map<uint32_t, std::vector<MappingCandidate>> GenerateCandidates(const SpanForest &forest,
                                                                     const CandidateFn &fn);

std::map<uint32_t, std::vector<MappingCandidate>> GenerateCandidates(
    const SpanForest &forest, const Index &index, const TermNormalizer &normalizer,
    const PipelineConfig &config, size_t top_k = kDefaultTopK);

enum class SelectionCase { kNone, kSingle, kHighest, kTie };

struct Selection {
  SelectionCase kind = SelectionCase::kNone;
  // The winner, or every tied candidate (one per cui, sorted by cui).
  std::vector<MappingCandidate> best;
};

// Drops candidates outside `semantic_types` (when set), keeps the best
// candidate per cui and classifies the outcome.
Selection ClassifyCandidates(std::vector<MappingCandidate> candidates, const KnowledgeBase &kb,
                             const std::optional<std::set<std::string>> &semantic_types);

// Picks one of the tied cuis for `span`.
using TieResolver =
    std::function<std::string(const std::vector<std::string> &tied, uint32_t span)>;

std::optional<MappingCandidate> SelectFinal(uint32_t span,
                                            std::vector<MappingCandidate> candidates,
                                            const KnowledgeBase &kb,
                                            const PipelineConfig &config,
                                            const TieResolver &resolve_tie);

// Maps span tokens back to original byte ranges; adjacent or overlapping
// ranges are merged.
std::vector<std::pair<size_t, size_t>> OriginalRanges(const Span &span,
                                                      const std::vector<Token> &tokens);

Annotation MakeAnnotation(const Span &span, const std::vector<Token> &tokens,
                          const MappingCandidate &winner, const KnowledgeBase &kb,
                          const Index &index);

}  // namespace clinorm

#endif  // CLINORM_MAPPING_H_
