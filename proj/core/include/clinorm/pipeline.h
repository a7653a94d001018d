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

#ifndef CLINORM_PIPELINE_H_
#define CLINORM_PIPELINE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "clinorm/index.h"
#include "clinorm/kb.h"
#include "clinorm/mapping.h"
#include "clinorm/text.h"
#include "clinorm/wsd.h"

namespace clinorm {

struct AnnotatedDocument {
  std::string doc_id;
  std::string text;
  std::string expanded_text;
  std::vector<Annotation> annotations;
  std::vector<std::pair<std::string, double>> timings_ms;  // stage -> milliseconds
  PipelineConfig config;                                   // defaults resolved
  size_t ties = 0;                                         // spans resolved by wsd
  bool wsd_fallback = false;  // ukb had no usable context and chose at random
};

// Immutable annotation engine over a loaded KB; Annotate is reentrant.
class Engine {
 public:
  Engine(KnowledgeBase kb, Index index, AbbreviationDictionary abbreviations,
         PprParams ppr = {});

  const KnowledgeBase &kb() const { return kb_; }
  const Index &index() const { return index_; }
  const AbbreviationDictionary &abbreviations() const { return abbreviations_; }
  // Absent when the KB has no relations; ukb then falls back to random.
  const std::optional<ConceptGraph> &graph() const { return graph_; }
  const PprParams &ppr_params() const { return ppr_; }

  // Throws Error(kInvalidArgument) for an invalid config. Blank text yields
  // a document without annotations.
  AnnotatedDocument Annotate(std::string doc_id, std::string_view text,
                             const PipelineConfig &config) const;

 private:
  KnowledgeBase kb_;
  Index index_;
  AbbreviationDictionary abbreviations_;
  std::optional<ConceptGraph> graph_;
  PprParams ppr_;
};

struct InputDocument {
  std::string doc_id;
  std::string text;
};

// A directory of .txt files (doc_id = file stem, sorted by name) or a JSONL
// file of {doc_id, text} objects.
std::vector<InputDocument> ReadDocuments(const std::filesystem::path &path);

}  // namespace clinorm

#endif  // CLINORM_PIPELINE_H_
