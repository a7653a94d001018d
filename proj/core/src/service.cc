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

#include "clinorm/service.h"

#include <algorithm>

#include "clinorm/errors.h"

namespace clinorm {

namespace {

void SortUnique(std::vector<ConceptRef> &refs) {
  std::sort(refs.begin(), refs.end(),
            [](const ConceptRef &a, const ConceptRef &b) { return a.cui < b.cui; });
  refs.erase(std::unique(refs.begin(), refs.end(),
                         [](const ConceptRef &a, const ConceptRef &b) { return a.cui == b.cui; }),
             refs.end());
}

Json RefsJson(const std::vector<ConceptRef> &refs) {
  Json out = Json::array();
  for (const auto &r : refs) out.push_back(Json{{"cui", r.cui}, {"name", r.name}});
  return out;
}

Json TypeNode(const clinorm::SemanticNetwork &semnet, const std::string &tui) {
  const SemanticType *t = semnet.Find(tui);
  Json children = Json::array();
  for (const auto &child : semnet.Children(tui)) children.push_back(TypeNode(semnet, child));
  return Json{{"tui", tui}, {"name", t ? t->name : ""}, {"children", std::move(children)}};
}

}  // namespace

std::optional<ConceptCard> BuildConceptCard(const KnowledgeBase &kb, std::string_view cui,
                                            const HierarchyRels &rels) {
  const clinorm::Concept *c = kb.FindConcept(cui);
  if (c == nullptr) return std::nullopt;
  ConceptCard card;
  card.cui = c->cui;
  card.preferred_name = c->preferred_name;
  for (const auto &t : c->terms) card.terms_by_source[t.source].push_back(t.term);
  for (const auto &tui : c->semantic_types) {
    const SemanticType *st = kb.semnet.Find(tui);
    card.semantic_types.emplace_back(tui, st ? st->name : "");
  }
  auto ref = [&](const std::string &other) {
    const clinorm::Concept *o = kb.FindConcept(other);
    return ConceptRef{other, o ? o->preferred_name : ""};
  };
  for (const auto &r : kb.relations) {
    if (r.cui1 == card.cui) {
      if (rels.broader.count(r.rel)) card.hypernyms.push_back(ref(r.cui2));
      if (rels.narrower.count(r.rel)) card.hyponyms.push_back(ref(r.cui2));
    } else if (r.cui2 == card.cui) {
      if (rels.broader.count(r.rel)) card.hyponyms.push_back(ref(r.cui1));
      if (rels.narrower.count(r.rel)) card.hypernyms.push_back(ref(r.cui1));
    }
  }
  SortUnique(card.hypernyms);
  SortUnique(card.hyponyms);
  return card;
}

Json ToJson(const ConceptCard &card) {
  Json terms = Json::object();
  for (const auto &[source, list] : card.terms_by_source) {
    terms[source] = Json{{"count", list.size()}, {"terms", list}};
  }
  Json types = Json::array();
  for (const auto &[tui, name] : card.semantic_types) {
    types.push_back(Json{{"tui", tui}, {"name", name}});
  }
  Json j;
  j["cui"] = card.cui;
  j["preferred_name"] = card.preferred_name;
  j["terms_by_source"] = std::move(terms);
  j["semantic_types"] = std::move(types);
  j["definition"] = card.definition ? Json(*card.definition) : Json(nullptr);
  j["hypernyms"] = RefsJson(card.hypernyms);
  j["hyponyms"] = RefsJson(card.hyponyms);
  return j;
}

Json SemanticNetworkJson(const clinorm::SemanticNetwork &semnet) {
  Json out = Json::array();
  for (const auto &root : semnet.Roots()) out.push_back(TypeNode(semnet, root));
  return out;
}

bool ValidCui(std::string_view cui) {
  return cui.size() >= 2 && cui[0] == 'C' &&
         std::all_of(cui.begin() + 1, cui.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Response ErrorResponse(int status, std::string_view code, std::string_view message) {
  Json j;
  j["error"] = Json{{"code", code}, {"message", message}};
  return {status, j.dump()};
}

Service::Service(std::shared_ptr<const Engine> engine, ServiceOptions options)
    : engine_(std::move(engine)), options_(std::move(options)) {}

Response Service::HandleAnnotate(std::string_view body) const {
  if (!engine_) return ErrorResponse(503, "not_loaded", "knowledge base not loaded");
  nlohmann::json request = nlohmann::json::parse(body, nullptr, false);
  if (request.is_discarded() || !request.is_object()) {
    return ErrorResponse(400, "bad_request", "body must be a JSON object");
  }
  auto text = request.find("text");
  if (text == request.end() || !text->is_string()) {
    return ErrorResponse(400, "bad_request", "field 'text' must be a string");
  }
  const std::string &s = text->get_ref<const std::string &>();
  if (s.size() > options_.max_text_bytes) {
    return ErrorResponse(413, "too_large",
                         "text exceeds " + std::to_string(options_.max_text_bytes) + " bytes");
  }
  std::string doc_id = "request";
  if (auto id = request.find("doc_id"); id != request.end() && id->is_string()) {
    doc_id = id->get<std::string>();
  }
  try {
    PipelineConfig config =
        ConfigFromJson(request.value("config", nlohmann::json()), options_.defaults);
    AnnotatedDocument doc = engine_->Annotate(doc_id, s, config);
    return {200, ToJson(doc, true).dump()};
  } catch (const Error &e) {
    return ErrorResponse(400, ErrorCodeName(e.code()), e.what());
  }
}

Response Service::HandleConcept(std::string_view cui) const {
  if (!engine_) return ErrorResponse(503, "not_loaded", "knowledge base not loaded");
  if (!ValidCui(cui)) {
    return ErrorResponse(400, "bad_request", "concept id must look like C0004034");
  }
  auto card = BuildConceptCard(engine_->kb(), cui, options_.hierarchy);
  if (!card) return ErrorResponse(404, "not_found", "unknown concept " + std::string(cui));
  return {200, ToJson(*card).dump()};
}

Response Service::HandleSemanticNetwork() const {
  if (!engine_) return ErrorResponse(503, "not_loaded", "knowledge base not loaded");
  return {200, SemanticNetworkJson(engine_->kb().semnet).dump()};
}

Response Service::HandleHealth() const {
  Json j;
  j["loaded"] = engine_ != nullptr;
  if (engine_) {
    j["concepts"] = engine_->kb().concepts.size();
    j["index_entries"] = engine_->index().size();
    j["graph_vertices"] = engine_->graph() ? engine_->graph()->vertex_count() : 0;
  }
  return {engine_ ? 200 : 503, j.dump()};
}

}  // namespace clinorm
