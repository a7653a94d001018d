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

#ifndef CLINORM_EVAL_H_
#define CLINORM_EVAL_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "clinorm/kb.h"
#include "clinorm/mapping.h"

namespace clinorm {

// 2x2 contingency table over (concept present for A, present for B).
struct Cells {
  uint64_t agree_pos = 0;
  uint64_t agree_neg = 0;
  uint64_t only_a = 0;
  uint64_t only_b = 0;

  uint64_t Total() const { return agree_pos + agree_neg + only_a + only_b; }
  Cells &operator+=(const Cells &o);
  bool operator==(const Cells &) const = default;
};

struct KappaResult {
  double p_o = 0;
  double p_e = 0;
  double kappa = 0;
  bool degenerate = false;  // p_e == 1
};

// Throws Error(kEmptyInput) when the table is empty.
KappaResult CohensKappa(const Cells &cells);

// Throws Error(kInvalidArgument) when the universe is smaller than the union.
Cells DocumentUnits(const std::set<std::string> &ours, const std::set<std::string> &theirs,
                    uint64_t universe_size);

// "No agreement" below zero; upper band bounds are inclusive.
std::string LandisLabel(double kappa);

struct DocumentAgreement {
  std::string doc_id;
  Cells cells;
  KappaResult kappa;
};

struct BootstrapOptions {
  size_t resamples = 1000;
  uint64_t seed = 0;
  double confidence = 0.95;
};

struct Interval {
  double low = 0;
  double high = 0;
  bool degenerate = false;  // fewer than two documents
};

// Percentile bootstrap over documents. The interval is widened if needed so
// that it contains the pooled kappa. Throws Error(kInvalidArgument) for
// fewer than 100 resamples or a confidence outside (0, 1).
Interval BootstrapCi(const std::vector<Cells> &docs, const BootstrapOptions &options = {});

struct AgreementReport {
  Cells cells;
  KappaResult kappa;
  Interval ci;
  std::string label;
  uint64_t universe_size = 0;
  size_t unknown_cuis = 0;
  std::vector<DocumentAgreement> documents;
};

// Sums the document tables, computes kappa and the bootstrap interval.
// Throws Error(kEmptyInput) when `docs` is empty.
AgreementReport PooledKappa(std::vector<DocumentAgreement> docs,
                            const BootstrapOptions &options = {});

// doc_id -> set of cuis.
using AnnotationSets = std::map<std::string, std::set<std::string>>;

// JSONL lines of either {doc_id, cuis:[...]} or annotated documents
// {doc_id, annotations:[{cui, ...}]}.
AnnotationSets LoadAnnotationSets(const std::filesystem::path &path);

// Drops cuis that are not KB concepts and returns how many were dropped.
size_t RestrictToKb(AnnotationSets &sets, const KnowledgeBase &kb);

// Compares two annotators over the union of their documents; a document
// missing on one side counts as empty for it.
AgreementReport Compare(const AnnotationSets &ours, const AnnotationSets &theirs,
                        uint64_t universe_size, const BootstrapOptions &options = {});

struct MatrixEntry {
  Boundary boundary;
  Reranker reranker;
  WsdMode wsd;
  AgreementReport report;
};

// Rows rand/UKB x L/A/C, columns ngram/phrase, cells "kappa ± half-width".
// Missing configurations render as "-".
std::string RenderMatrix(const std::vector<MatrixEntry> &entries);

}  // namespace clinorm

#endif  // CLINORM_EVAL_H_
