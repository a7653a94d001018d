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

#ifndef CLINORM_INDEX_H_
#define CLINORM_INDEX_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace clinorm {

// One indexed term: the surface string, its normalized form and every
// concept and source vocabulary it was seen with.
struct IndexEntry {
  std::string term;
  std::string normalized;
  std::vector<std::string> cuis;     // sorted, unique, non-empty
  std::vector<std::string> sources;  // sorted, unique
};

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

using EntryId = uint32_t;

struct QueryResult {
  EntryId entry;
  double base_score;
};

inline constexpr size_t kDefaultTopK = 20;

// Inverted index over normalized term tokens with BM25 scoring. Immutable
// after construction; concurrent queries are safe.
class Index {
 public:
  struct Posting {
    EntryId entry;
    uint32_t tf;
  };

  Index() = default;

  // Entries sharing (term, normalized) are merged. Entries whose normalized
  // form is empty are skipped and counted. Throws Error(kEmptyInput) when
  // nothing is left to index.
  static Index Build(std::vector<IndexEntry> entries, Bm25Params params = {});

  // Reassembles an index from persisted parts. Validates posting ids.
  static Index Restore(std::vector<IndexEntry> entries, std::vector<std::string> vocabulary,
                       std::vector<std::vector<Posting>> postings, Bm25Params params,
                       size_t skipped_empty);

  // `normalized_text` must already be normalized with the KB's normalizer.
  // Results share at least one token with the query, ordered by descending
  // score, then shorter normalized form, then term, then entry id.
  std::vector<QueryResult> Query(std::string_view normalized_text,
                                 size_t top_k = kDefaultTopK) const;
  std::vector<QueryResult> QueryTokens(const std::vector<std::string> &tokens,
                                       size_t top_k = kDefaultTopK) const;

  // BM25 of `entry` against the query tokens; 0 iff no token overlaps.
  double BaseScore(const std::vector<std::string> &query_tokens, EntryId entry) const;

  // Ranking order used by Query; exposed so oracles can share it.
  bool RanksBefore(const QueryResult &a, const QueryResult &b) const;

  const IndexEntry &entry(EntryId id) const { return entries_[id]; }
  const std::vector<IndexEntry> &entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  const std::vector<std::string> &entry_tokens(EntryId id) const { return entry_tokens_[id]; }

  // Returns nullptr for tokens not in the vocabulary.
  const std::vector<Posting> *Postings(std::string_view token) const;
  size_t vocabulary_size() const { return vocabulary_.size(); }
  const std::vector<std::string> &vocabulary() const { return vocabulary_; }
  const std::vector<std::vector<Posting>> &postings() const { return postings_; }
  double average_length() const { return average_length_; }
  size_t skipped_empty() const { return skipped_empty_; }
  const Bm25Params &params() const { return params_; }

 private:
  void Finish();
  double Idf(size_t df) const;
  double TermWeight(double idf, uint32_t tf, size_t length) const;

  std::vector<IndexEntry> entries_;
  std::vector<std::vector<std::string>> entry_tokens_;
  std::vector<std::string> vocabulary_;
  std::unordered_map<std::string, uint32_t> token_ids_;
  std::vector<std::vector<Posting>> postings_;
  std::vector<double> idf_;
  double average_length_ = 0;
  size_t skipped_empty_ = 0;
  Bm25Params params_;
};

// Whitespace split of an already-normalized string.
std::vector<std::string> SplitNormalized(std::string_view normalized);

}  // namespace clinorm

#endif  // CLINORM_INDEX_H_
