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

#include "clinorm/mapping.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "clinorm/errors.h"
#include "clinorm/utf8.h"

namespace clinorm {

const char *BoundaryName(Boundary b) { return b == Boundary::kNgram ? "ngram" : "phrase"; }

const char *RerankerName(Reranker r) {
  switch (r) {
    case Reranker::kLucene: return "L";
    case Reranker::kAronson: return "A";
    case Reranker::kCastro: return "C";
  }
  return "?";
}

const char *WsdModeName(WsdMode w) { return w == WsdMode::kUkb ? "ukb" : "rand"; }

std::optional<Boundary> ParseBoundary(std::string_view s) {
  if (s == "ngram") return Boundary::kNgram;
  if (s == "phrase") return Boundary::kPhrase;
  return std::nullopt;
}

std::optional<Reranker> ParseReranker(std::string_view s) {
  if (s == "L") return Reranker::kLucene;
  if (s == "A") return Reranker::kAronson;
  if (s == "C") return Reranker::kCastro;
  return std::nullopt;
}

std::optional<WsdMode> ParseWsdMode(std::string_view s) {
  if (s == "ukb") return WsdMode::kUkb;
  if (s == "rand") return WsdMode::kRandom;
  return std::nullopt;
}

double DefaultThreshold(Reranker r) {
  switch (r) {
    case Reranker::kLucene: return 0.0;
    case Reranker::kAronson: return 0.5;
    case Reranker::kCastro: return 0.7;
  }
  return 0.0;
}

PipelineConfig PipelineConfig::Resolved() const {
  PipelineConfig c = *this;
  c.threshold = EffectiveThreshold();
  return c;
}

void PipelineConfig::Validate() const {
  if (threshold && !(*threshold >= 0.0 && *threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must be in [0, 1]");
  }
  if (ngram_min < 1 || ngram_min > ngram_max) {
    throw Error(ErrorCode::kInvalidArgument, "ngram range must satisfy 1 <= min <= max");
  }
}

std::vector<MappingCandidate> MatchSpan(const Index &index, const TermNormalizer &normalizer,
                                        const Span &span, uint32_t span_id, size_t top_k) {
  std::vector<MappingCandidate> out;
  std::vector<std::string> tokens = normalizer.NormalizedTokens(span.text);
  if (tokens.empty()) return out;
  for (const QueryResult &r : index.QueryTokens(tokens, top_k)) {
    for (const auto &cui : index.entry(r.entry).cuis) {
      out.push_back({span_id, cui, r.entry, r.base_score, 0.0});
    }
  }
  return out;
}

double DiceScore(const std::vector<std::string> &span_tokens,
                 const std::vector<std::string> &term_tokens) {
  if (span_tokens.empty() && term_tokens.empty()) return 0.0;
  std::vector<std::string> a = span_tokens;
  std::vector<std::string> b = term_tokens;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<std::string> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return 2.0 * static_cast<double>(common.size()) /
         static_cast<double>(a.size() + b.size());
}

namespace {

std::string MatchKey(std::string_view token) {
  std::string key = utf8::FoldAccents(token);
  if (key.size() >= 5 && key.ends_with("es")) {
    key.resize(key.size() - 2);
  } else if (key.size() >= 4 && key.back() == 's') {
    key.pop_back();
  }
  if (key.size() >= 4 && (key.back() == 'a' || key.back() == 'o')) key.pop_back();
  return key;
}

double SegmentRatio(const std::vector<bool> &matched) {
  if (matched.empty()) return 0.0;
  double sum = 0.0;
  size_t run = 0;
  for (bool m : matched) {
    if (m) {
      ++run;
    } else {
      sum += static_cast<double>(run * run);
      run = 0;
    }
  }
  sum += static_cast<double>(run * run);
  double n = static_cast<double>(matched.size());
  return sum / (n * n);
}

}  // namespace

AronsonComponents AronsonScore(const std::vector<std::string> &span_tokens,
                               const std::vector<std::string> &term_tokens) {
  AronsonComponents c;
  if (span_tokens.empty() || term_tokens.empty()) return c;
  std::vector<std::string> span_keys, term_keys;
  for (const auto &t : span_tokens) span_keys.push_back(MatchKey(t));
  for (const auto &t : term_tokens) term_keys.push_back(MatchKey(t));

  std::vector<bool> span_matched(span_tokens.size(), false);
  std::vector<bool> term_matched(term_tokens.size(), false);
  double variation_sum = 0.0;
  size_t pairs = 0;
  for (size_t i = 0; i < span_tokens.size(); ++i) {
    for (size_t j = 0; j < term_tokens.size(); ++j) {
      if (term_matched[j] || span_keys[i] != term_keys[j]) continue;
      span_matched[i] = term_matched[j] = true;
      double longest = static_cast<double>(
          std::max(utf8::Length(span_tokens[i]), utf8::Length(term_tokens[j])));
      double distance =
          static_cast<double>(utf8::EditDistance(span_tokens[i], term_tokens[j])) / longest;
      variation_sum += 1.0 / (1.0 + distance);
      ++pairs;
      break;
    }
  }
  if (pairs == 0) return c;
  double ns = static_cast<double>(span_tokens.size());
  double nt = static_cast<double>(term_tokens.size());
  double p = static_cast<double>(pairs);
  c.coverage = (p / ns + p / nt) / 2.0;
  c.cohesiveness = (SegmentRatio(span_matched) + SegmentRatio(term_matched)) / 2.0;
  c.centrality = span_keys.back() == term_keys.back() ? 1.0 : 0.0;
  c.variation = variation_sum / p;
  return c;
}

void Rerank(std::vector<MappingCandidate> &candidates, Reranker reranker,
            const std::vector<std::string> &span_tokens, const Index &index) {
  if (reranker == Reranker::kLucene) {
    double best = 0.0;
    for (const auto &c : candidates) best = std::max(best, c.base_score);
    for (auto &c : candidates) c.rerank_score = best > 0.0 ? c.base_score / best : 1.0;
    return;
  }
  for (auto &c : candidates) {
    const auto &term_tokens = index.entry_tokens(c.entry);
    c.rerank_score = reranker == Reranker::kCastro
                         ? DiceScore(span_tokens, term_tokens)
                         : AronsonScore(span_tokens, term_tokens).Score();
    c.rerank_score = std::clamp(c.rerank_score, 0.0, 1.0);
  }
}

std::vector<MappingCandidate> ApplyThreshold(std::vector<MappingCandidate> candidates,
                                             double threshold) {
  std::erase_if(candidates,
                [threshold](const MappingCandidate &c) { return c.rerank_score < threshold; });
  return candidates;
}

namespace {

double BestScore(const std::vector<MappingCandidate> &candidates) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto &c : candidates) best = std::max(best, c.rerank_score);
  return best;
}

void Visit(const SpanForest &forest, uint32_t node, const CandidateFn &fn,
           std::vector<MappingCandidate> own,
           std::map<uint32_t, std::vector<MappingCandidate>> &accepted) {
  const auto &children = forest.children[node];
  std::vector<std::vector<MappingCandidate>> child_candidates;
  child_candidates.reserve(children.size());
  double children_best = -std::numeric_limits<double>::infinity();
  for (uint32_t child : children) {
    child_candidates.push_back(fn(child));
    children_best = std::max(children_best, BestScore(child_candidates.back()));
  }
  if (!own.empty() && !(children_best > BestScore(own))) {
    accepted.emplace(node, std::move(own));
    return;
  }
  for (size_t i = 0; i < children.size(); ++i) {
    Visit(forest, children[i], fn, std::move(child_candidates[i]), accepted);
  }
}

}  // namespace

std::map<uint32_t, std::vector<MappingCandidate>> GenerateCandidates(const SpanForest &forest,
                                                                     const CandidateFn &fn) {
  std::map<uint32_t, std::vector<MappingCandidate>> accepted;
  for (uint32_t root : forest.roots) Visit(forest, root, fn, fn(root), accepted);
  return accepted;
}

std::map<uint32_t, std::vector<MappingCandidate>> GenerateCandidates(
    const SpanForest &forest, const Index &index, const TermNormalizer &normalizer,
    const PipelineConfig &config, size_t top_k) {
  double threshold = config.EffectiveThreshold();
  CandidateFn fn = [&](uint32_t span) {
    const Span &s = forest.nodes[span];
    auto candidates = MatchSpan(index, normalizer, s, span, top_k);
    if (candidates.empty()) return candidates;
    Rerank(candidates, config.reranker, normalizer.NormalizedTokens(s.text), index);
    return ApplyThreshold(std::move(candidates), threshold);
  };
  return GenerateCandidates(forest, fn);
}

Selection ClassifyCandidates(std::vector<MappingCandidate> candidates, const KnowledgeBase &kb,
                             const std::optional<std::set<std::string>> &semantic_types) {
  Selection selection;
  if (semantic_types) {
    std::erase_if(candidates, [&](const MappingCandidate &c) {
      const Concept *con = kb.FindConcept(c.cui);
      if (con == nullptr) return true;
      return std::none_of(con->semantic_types.begin(), con->semantic_types.end(),
                          [&](const std::string &t) { return semantic_types->count(t) > 0; });
    });
  }
  std::map<std::string, MappingCandidate> per_cui;
  for (auto &c : candidates) {
    auto it = per_cui.find(c.cui);
    if (it == per_cui.end()) {
      per_cui.emplace(c.cui, std::move(c));
      continue;
    }
    const MappingCandidate &cur = it->second;
    bool better = c.rerank_score > cur.rerank_score ||
                  (c.rerank_score == cur.rerank_score &&
                   (c.base_score > cur.base_score ||
                    (c.base_score == cur.base_score && c.entry < cur.entry)));
    if (better) it->second = std::move(c);
  }
  if (per_cui.empty()) return selection;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto &[cui, c] : per_cui) best = std::max(best, c.rerank_score);
  for (auto &[cui, c] : per_cui) {
    if (c.rerank_score == best) selection.best.push_back(std::move(c));
  }
  if (per_cui.size() == 1) {
    selection.kind = SelectionCase::kSingle;
  } else if (selection.best.size() == 1) {
    selection.kind = SelectionCase::kHighest;
  } else {
    selection.kind = SelectionCase::kTie;
  }
  return selection;
}

std::optional<MappingCandidate> SelectFinal(uint32_t span,
                                            std::vector<MappingCandidate> candidates,
                                            const KnowledgeBase &kb,
                                            const PipelineConfig &config,
                                            const TieResolver &resolve_tie) {
  Selection s = ClassifyCandidates(std::move(candidates), kb, config.semantic_types);
  if (s.kind == SelectionCase::kNone) return std::nullopt;
  if (s.kind != SelectionCase::kTie) return s.best.front();
  std::vector<std::string> tied;
  for (const auto &c : s.best) tied.push_back(c.cui);
  std::string winner = resolve_tie(tied, span);
  for (auto &c : s.best) {
    if (c.cui == winner) return c;
  }
  throw Error(ErrorCode::kInvalidArgument, "tie resolver returned a cui outside the tie");
}

std::vector<std::pair<size_t, size_t>> OriginalRanges(const Span &span,
                                                      const std::vector<Token> &tokens) {
  std::vector<std::pair<size_t, size_t>> merged;
  for (size_t i = 0; i < span.tokens.size(); ++i) {
    const Token &t = tokens[span.tokens[i]];
    bool adjacent = i > 0 && span.tokens[i] == span.tokens[i - 1] + 1;
    if (!merged.empty() && (adjacent || t.begin <= merged.back().second)) {
      merged.back().first = std::min(merged.back().first, t.begin);
      merged.back().second = std::max(merged.back().second, t.end);
    } else {
      merged.emplace_back(t.begin, t.end);
    }
  }
  std::sort(merged.begin(), merged.end());
  return merged;
}

Annotation MakeAnnotation(const Span &span, const std::vector<Token> &tokens,
                          const MappingCandidate &winner, const KnowledgeBase &kb,
                          const Index &index) {
  Annotation a;
  a.ranges = OriginalRanges(span, tokens);
  a.cui = winner.cui;
  if (const Concept *c = kb.FindConcept(winner.cui)) {
    a.preferred_name = c->preferred_name;
    a.tuis.assign(c->semantic_types.begin(), c->semantic_types.end());
  }
  a.score = winner.rerank_score;
  a.matched_term = index.entry(winner.entry).term;
  return a;
}

}  // namespace clinorm
