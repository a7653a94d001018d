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

#include "clinorm/snapshot.h"

#include <fstream>

#include <nlohmann/json.hpp>

#include "clinorm/errors.h"
#include "clinorm/json_io.h"

namespace clinorm {

namespace {

constexpr const char *kFormatTag = "clinorm-kb";

RejectReason ReasonFromName(const std::string &name) {
  for (int r = 0; r <= static_cast<int>(RejectReason::kDuplicate); ++r) {
    auto reason = static_cast<RejectReason>(r);
    if (name == RejectReasonName(reason)) return reason;
  }
  throw Error(ErrorCode::kFormat, "unknown reject reason " + name);
}

BuildReport ReportFromJson(const nlohmann::json &j) {
  BuildReport r;
  r.parsed_atoms = j.at("parsed_atoms");
  r.kept_atoms = j.at("kept_atoms");
  for (const auto &[name, count] : j.at("rejected").items()) {
    r.rejected[ReasonFromName(name)] = count.get<size_t>();
  }
  r.concepts = j.at("concepts");
  r.unique_terms = j.at("unique_terms");
  r.per_concept_terms = j.at("per_concept_terms");
  r.unique_normalized = j.at("unique_normalized");
  r.empty_normalized = j.at("empty_normalized");
  r.edges = j.at("edges");
  r.relations_dropped_endpoint = j.at("relations_dropped_endpoint");
  r.relations_self_loop = j.at("relations_self_loop");
  r.relations_duplicate = j.at("relations_duplicate");
  r.semtype_assignments = j.at("semtype_assignments");
  r.semtype_assignments_dropped = j.at("semtype_assignments_dropped");
  r.malformed_lines = j.at("malformed_lines");
  return r;
}

}  // namespace

ResourcePaths DefaultResources(const std::filesystem::path &data_dir) {
  return {data_dir / "stopwords_es.txt", data_dir / "parentheticals_es.txt",
          data_dir / "abbreviations_es.tsv"};
}

Snapshot BuildSnapshot(const std::filesystem::path &release_dir, const ResourcePaths &resources,
                       const BuildConfig &config) {
  TermNormalizer normalizer(StopwordList::Load(resources.stopwords),
                            LoadWordList(resources.parentheticals));
  Snapshot s;
  s.kb = BuildKnowledgeBase(ReadRelease(release_dir, config), config, std::move(normalizer));
  s.index = Index::Build(s.kb.terms);
  if (!resources.abbreviations.empty()) {
    s.abbreviations = AbbreviationDictionary::Load(resources.abbreviations);
  }
  return s;
}

void SaveSnapshot(const std::filesystem::path &path, const KnowledgeBase &kb,
                  const Index &index, const AbbreviationDictionary &abbreviations) {
  Json concepts = Json::array();
  for (const auto &[cui, c] : kb.concepts) {
    Json terms = Json::array();
    for (const auto &t : c.terms) terms.push_back({t.term, t.source, t.tty});
    concepts.push_back(Json{{"cui", c.cui},
                            {"preferred_name", c.preferred_name},
                            {"semantic_types", c.semantic_types},
                            {"sources", c.sources},
                            {"terms", std::move(terms)}});
  }
  Json relations = Json::array();
  for (const auto &r : kb.relations) relations.push_back({r.cui1, r.cui2, r.rel, r.rela, r.dir});
  Json semnet = Json::array();
  for (const auto &[tui, t] : kb.semnet.types()) {
    semnet.push_back({t.tui, t.name, t.parent ? Json(*t.parent) : Json(nullptr)});
  }
  Json entries = Json::array();
  for (const auto &e : index.entries()) {
    entries.push_back({e.term, e.normalized, e.cuis, e.sources});
  }
  Json postings = Json::array();
  for (const auto &list : index.postings()) {
    Json p = Json::array();
    for (const auto &posting : list) p.push_back({posting.entry, posting.tf});
    postings.push_back(std::move(p));
  }
  Json abbreviation_map = Json::object();
  for (const auto &[abbr, expansion] : abbreviations.entries()) abbreviation_map[abbr] = expansion;

  Json j;
  j["format"] = kFormatTag;
  j["version"] = kSnapshotVersion;
  j["report"] = ToJson(kb.report);
  j["stopwords"] = kb.normalizer.stopwords().words();
  j["parentheticals"] = kb.normalizer.parentheticals();
  j["semantic_network"] = std::move(semnet);
  j["concepts"] = std::move(concepts);
  j["relations"] = std::move(relations);
  j["dictionary"] = kb.dictionary;
  j["index"] = Json{{"k1", index.params().k1},
                    {"b", index.params().b},
                    {"skipped_empty", index.skipped_empty()},
                    {"entries", std::move(entries)},
                    {"vocabulary", index.vocabulary()},
                    {"postings", std::move(postings)}};
  j["abbreviations"] = std::move(abbreviation_map);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << j.dump() << '\n';
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

Snapshot LoadSnapshot(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open snapshot " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kFormat, path.string() + ": " + e.what());
  }
  if (!j.is_object() || j.value("format", "") != kFormatTag) {
    throw Error(ErrorCode::kFormat, path.string() + " is not a clinorm KB snapshot");
  }
  if (j.value("version", 0) != kSnapshotVersion) {
    throw Error(ErrorCode::kFormat, "unsupported snapshot version in " + path.string());
  }
  try {
    Snapshot s;
    KnowledgeBase &kb = s.kb;
    kb.normalizer = TermNormalizer(StopwordList(j.at("stopwords").get<std::set<std::string>>()),
                                   j.at("parentheticals").get<std::set<std::string>>());
    std::vector<SemanticType> types;
    for (const auto &t : j.at("semantic_network")) {
      SemanticType st{t.at(0), t.at(1), std::nullopt};
      if (!t.at(2).is_null()) st.parent = t.at(2).get<std::string>();
      types.push_back(std::move(st));
    }
    kb.semnet = SemanticNetwork(std::move(types));
    for (const auto &c : j.at("concepts")) {
      Concept con;
      con.cui = c.at("cui");
      con.preferred_name = c.at("preferred_name");
      con.semantic_types = c.at("semantic_types").get<std::set<std::string>>();
      con.sources = c.at("sources").get<std::set<std::string>>();
      for (const auto &t : c.at("terms")) con.terms.push_back({t.at(0), t.at(1), t.at(2)});
      kb.concepts.emplace(con.cui, std::move(con));
    }
    for (const auto &r : j.at("relations")) {
      kb.relations.push_back({r.at(0), r.at(1), r.at(2), r.at(3), r.at(4)});
    }
    for (const auto &[key, cuis] : j.at("dictionary").items()) {
      kb.dictionary[key] = cuis.get<std::set<std::string>>();
    }
    kb.report = ReportFromJson(j.at("report"));

    const auto &ij = j.at("index");
    std::vector<IndexEntry> entries;
    for (const auto &e : ij.at("entries")) {
      entries.push_back({e.at(0), e.at(1), e.at(2).get<std::vector<std::string>>(),
                         e.at(3).get<std::vector<std::string>>()});
    }
    kb.terms = entries;
    std::vector<std::vector<Index::Posting>> postings;
    for (const auto &list : ij.at("postings")) {
      auto &out = postings.emplace_back();
      for (const auto &p : list) out.push_back({p.at(0), p.at(1)});
    }
    s.index = Index::Restore(std::move(entries),
                             ij.at("vocabulary").get<std::vector<std::string>>(),
                             std::move(postings), Bm25Params{ij.at("k1"), ij.at("b")},
                             ij.at("skipped_empty"));
    for (const auto &[abbr, expansion] : j.at("abbreviations").items()) {
      s.abbreviations.Add(abbr, expansion.get<std::string>());
    }
    return s;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kFormat, path.string() + ": " + e.what());
  }
}

}  // namespace clinorm
