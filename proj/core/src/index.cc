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

#include "clinorm/index.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "clinorm/errors.h"

namespace clinorm {

std::vector<std::string> SplitNormalized(std::string_view normalized) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < normalized.size()) {
    while (i < normalized.size() && normalized[i] == ' ') ++i;
    size_t j = i;
    while (j < normalized.size() && normalized[j] != ' ') ++j;
    if (j > i) tokens.emplace_back(normalized.substr(i, j - i));
    i = j;
  }
  return tokens;
}

namespace {

void SortUnique(std::vector<std::string> &v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Index Index::Build(std::vector<IndexEntry> entries, Bm25Params params) {
  Index index;
  index.params_ = params;

  std::map<std::pair<std::string, std::string>, size_t> seen;
  for (auto &e : entries) {
    if (e.normalized.empty()) {
      ++index.skipped_empty_;
      continue;
    }
    auto key = std::make_pair(e.term, e.normalized);
    auto it = seen.find(key);
    if (it != seen.end()) {
      IndexEntry &target = index.entries_[it->second];
      target.cuis.insert(target.cuis.end(), e.cuis.begin(), e.cuis.end());
      target.sources.insert(target.sources.end(), e.sources.begin(), e.sources.end());
      SortUnique(target.cuis);
      SortUnique(target.sources);
      continue;
    }
    SortUnique(e.cuis);
    SortUnique(e.sources);
    if (e.cuis.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "index entry without concepts: " + e.term);
    }
    seen.emplace(std::move(key), index.entries_.size());
    index.entries_.push_back(std::move(e));
  }
  if (index.entries_.empty()) {
    throw Error(ErrorCode::kEmptyInput, "cannot build an index without entries");
  }

  for (EntryId id = 0; id < index.entries_.size(); ++id) {
    std::map<std::string, uint32_t> counts;
    for (auto &token : SplitNormalized(index.entries_[id].normalized)) ++counts[token];
    for (const auto &[token, tf] : counts) {
      auto [it, inserted] = index.token_ids_.emplace(token, index.vocabulary_.size());
      if (inserted) {
        index.vocabulary_.push_back(token);
        index.postings_.emplace_back();
      }
      index.postings_[it->second].push_back({id, tf});
    }
  }
  index.Finish();
  return index;
}

Index Index::Restore(std::vector<IndexEntry> entries, std::vector<std::string> vocabulary,
                     std::vector<std::vector<Posting>> postings, Bm25Params params,
                     size_t skipped_empty) {
  if (entries.empty()) throw Error(ErrorCode::kEmptyInput, "index snapshot has no entries");
  if (vocabulary.size() != postings.size()) {
    throw Error(ErrorCode::kFormat, "index vocabulary and postings differ in size");
  }
  Index index;
  index.params_ = params;
  index.skipped_empty_ = skipped_empty;
  index.entries_ = std::move(entries);
  index.vocabulary_ = std::move(vocabulary);
  index.postings_ = std::move(postings);
  for (uint32_t t = 0; t < index.vocabulary_.size(); ++t) {
    if (!index.token_ids_.emplace(index.vocabulary_[t], t).second) {
      throw Error(ErrorCode::kFormat, "duplicate index token " + index.vocabulary_[t]);
    }
    for (const auto &p : index.postings_[t]) {
      if (p.entry >= index.entries_.size() || p.tf == 0) {
        throw Error(ErrorCode::kFormat, "bad posting for token " + index.vocabulary_[t]);
      }
    }
  }
  index.Finish();
  return index;
}

void Index::Finish() {
  entry_tokens_.assign(entries_.size(), {});
  for (EntryId id = 0; id < entries_.size(); ++id) {
    entry_tokens_[id] = SplitNormalized(entries_[id].normalized);
  }
  size_t total = 0;
  for (const auto &tokens : entry_tokens_) total += tokens.size();
  average_length_ = static_cast<double>(total) / static_cast<double>(entries_.size());
  idf_.resize(postings_.size());
  for (size_t t = 0; t < postings_.size(); ++t) idf_[t] = Idf(postings_[t].size());
}

double Index::Idf(size_t df) const {
  double n = static_cast<double>(entries_.size());
  double d = static_cast<double>(df);
  return std::log(1.0 + (n - d + 0.5) / (d + 0.5));
}

double Index::TermWeight(double idf, uint32_t tf, size_t length) const {
  double f = static_cast<double>(tf);
  double norm = params_.k1 * (1.0 - params_.b +
                              params_.b * static_cast<double>(length) / average_length_);
  return idf * f * (params_.k1 + 1.0) / (f + norm);
}

const std::vector<Index::Posting> *Index::Postings(std::string_view token) const {
  auto it = token_ids_.find(std::string(token));
  return it == token_ids_.end() ? nullptr : &postings_[it->second];
}

double Index::BaseScore(const std::vector<std::string> &query_tokens, EntryId entry) const {
  const auto &tokens = entry_tokens_[entry];
  double score = 0.0;
  for (const auto &q : query_tokens) {
    auto it = token_ids_.find(q);
    if (it == token_ids_.end()) continue;
    uint32_t tf = static_cast<uint32_t>(std::count(tokens.begin(), tokens.end(), q));
    if (tf == 0) continue;
    score += TermWeight(idf_[it->second], tf, tokens.size());
  }
  return score;
}

bool Index::RanksBefore(const QueryResult &a, const QueryResult &b) const {
  if (a.base_score != b.base_score) return a.base_score > b.base_score;
  const IndexEntry &x = entries_[a.entry];
  const IndexEntry &y = entries_[b.entry];
  if (x.normalized.size() != y.normalized.size()) {
    return x.normalized.size() < y.normalized.size();
  }
  if (x.term != y.term) return x.term < y.term;
  return a.entry < b.entry;
}

std::vector<QueryResult> Index::Query(std::string_view normalized_text, size_t top_k) const {
  return QueryTokens(SplitNormalized(normalized_text), top_k);
}

std::vector<QueryResult> Index::QueryTokens(const std::vector<std::string> &tokens,
                                            size_t top_k) const {
  std::vector<QueryResult> results;
  if (tokens.empty() || top_k == 0) return results;
  // Accumulate in query-token order so the sums match BaseScore exactly.
  std::unordered_map<EntryId, double> scores;
  for (const auto &q : tokens) {
    auto it = token_ids_.find(q);
    if (it == token_ids_.end()) continue;
    double idf = idf_[it->second];
    for (const Posting &p : postings_[it->second]) {
      scores[p.entry] += TermWeight(idf, p.tf, entry_tokens_[p.entry].size());
    }
  }
  results.reserve(scores.size());
  for (const auto &[entry, score] : scores) results.push_back({entry, score});
  auto before = [this](const QueryResult &a, const QueryResult &b) { return RanksBefore(a, b); };
  if (results.size() > top_k) {
    std::partial_sort(results.begin(), results.begin() + top_k, results.end(), before);
    results.resize(top_k);
  } else {
    std::sort(results.begin(), results.end(), before);
  }
  return results;
}

}  // namespace clinorm
