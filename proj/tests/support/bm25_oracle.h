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

#ifndef CLINORM_TESTS_SUPPORT_BM25_ORACLE_H_
#define CLINORM_TESTS_SUPPORT_BM25_ORACLE_H_

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "clinorm/index.h"

namespace clinorm::testing {

// Linear-scan BM25 over tokenized documents, written independently of the
// inverted index.
class Bm25Oracle {
 public:
  Bm25Oracle(std::vector<std::vector<std::string>> docs, double k1 = 1.2, double b = 0.75)
      : docs_(std::move(docs)), k1_(k1), b_(b) {
    double total = 0;
    for (const auto &d : docs_) {
      total += static_cast<double>(d.size());
      for (const auto &t : std::set<std::string>(d.begin(), d.end())) ++df_[t];
    }
    avgdl_ = total / static_cast<double>(docs_.size());
  }

  double Score(const std::vector<std::string> &query, size_t doc) const {
    const auto &d = docs_[doc];
    double n = static_cast<double>(docs_.size());
    double s = 0;
    for (const auto &q : query) {
      double tf = static_cast<double>(std::count(d.begin(), d.end(), q));
      if (tf == 0) continue;
      double df = df_.at(q);
      double idf = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
      s += idf * tf * (k1_ + 1) /
           (tf + k1_ * (1 - b_ + b_ * static_cast<double>(d.size()) / avgdl_));
    }
    return s;
  }

  // (doc, score) for every doc sharing a token with the query, best first.
  std::vector<std::pair<size_t, double>> Rank(const std::vector<std::string> &query) const {
    std::vector<std::pair<size_t, double>> out;
    std::set<std::string> q(query.begin(), query.end());
    for (size_t i = 0; i < docs_.size(); ++i) {
      bool shares = std::any_of(docs_[i].begin(), docs_[i].end(),
                                [&](const std::string &t) { return q.count(t) > 0; });
      if (shares) out.emplace_back(i, Score(query, i));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const auto &a, const auto &b) { return a.second > b.second; });
    return out;
  }

 private:
  std::vector<std::vector<std::string>> docs_;
  std::map<std::string, double> df_;
  double avgdl_ = 0;
  double k1_, b_;
};

// Random vocabularies over a small alphabet so queries share tokens often.
struct RandomCorpus {
  std::vector<IndexEntry> entries;
  std::vector<std::vector<std::string>> tokens;
  std::vector<std::vector<std::string>> queries;
};

inline RandomCorpus MakeRandomCorpus(uint64_t seed, size_t n_entries, size_t n_queries) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> word(0, 59), len(1, 6), qlen(1, 4);
  RandomCorpus c;
  std::set<std::string> seen;
  while (c.entries.size() < n_entries) {
    std::vector<std::string> toks;
    int n = len(rng);
    for (int i = 0; i < n; ++i) toks.push_back("w" + std::to_string(word(rng)));
    std::string norm;
    for (const auto &t : toks) norm += (norm.empty() ? "" : " ") + t;
    if (!seen.insert(norm).second) continue;
    c.entries.push_back(IndexEntry{norm, norm, {"C" + std::to_string(c.entries.size())}, {"SCTSPA"}});
    c.tokens.push_back(toks);
  }
  for (size_t i = 0; i < n_queries; ++i) {
    std::vector<std::string> q;
    int n = qlen(rng);
    for (int k = 0; k < n; ++k) q.push_back("w" + std::to_string(word(rng)));
    c.queries.push_back(q);
  }
  return c;
}

}  // namespace clinorm::testing

#endif  // CLINORM_TESTS_SUPPORT_BM25_ORACLE_H_
