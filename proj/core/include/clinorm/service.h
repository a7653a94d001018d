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

#ifndef CLINORM_SERVICE_H_
#define CLINORM_SERVICE_H_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "clinorm/json_io.h"
#include "clinorm/kb.h"
#include "clinorm/pipeline.h"

namespace clinorm {

struct ConceptRef {
  std::string cui;
  std::string name;
};

struct ConceptCard {
  std::string cui;
  std::string preferred_name;
  std::map<std::string, std::vector<std::string>> terms_by_source;
  std::vector<std::pair<std::string, std::string>> semantic_types;  // (tui, name)
  std::optional<std::string> definition;
  std::vector<ConceptRef> hypernyms;
  std::vector<ConceptRef> hyponyms;
};

// A relation (cui1, rel, cui2) with rel in `broader` makes cui2 a hypernym
// of cui1; with rel in `narrower` it makes cui2 a hyponym of cui1.
struct HierarchyRels {
  std::set<std::string> broader = {"PAR"};
  std::set<std::string> narrower = {"CHD"};
};

std::optional<ConceptCard> BuildConceptCard(const KnowledgeBase &kb, std::string_view cui,
                                            const HierarchyRels &rels = {});
Json ToJson(const ConceptCard &card);

// [{tui, name, children: [...]}, ...] ordered by TUI.
Json SemanticNetworkJson(const SemanticNetwork &semnet);

bool ValidCui(std::string_view cui);

struct ServiceOptions {
  size_t max_text_bytes = 100 * 1024;
  HierarchyRels hierarchy;
  PipelineConfig defaults;
};

struct Response {
  int status = 200;
  std::string body;
};

// Transport-independent request handlers. Thread-safe: the engine is
// immutable and every call works on its own state.
class Service {
 public:
  // A null engine answers 503 until one is provided.
  explicit Service(std::shared_ptr<const Engine> engine, ServiceOptions options = {});

  Response HandleAnnotate(std::string_view body) const;
  Response HandleConcept(std::string_view cui) const;
  Response HandleSemanticNetwork() const;
  Response HandleHealth() const;

  const ServiceOptions &options() const { return options_; }

 private:
  std::shared_ptr<const Engine> engine_;
  ServiceOptions options_;
};

Response ErrorResponse(int status, std::string_view code, std::string_view message);

}  // namespace clinorm

#endif  // CLINORM_SERVICE_H_
