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

#include "clinorm/json_io.h"

#include "clinorm/errors.h"

namespace clinorm {

Json ToJson(const Annotation &a) {
  Json ranges = Json::array();
  for (const auto &[begin, end] : a.ranges) ranges.push_back({begin, end});
  Json j;
  j["ranges"] = std::move(ranges);
  j["cui"] = a.cui;
  j["preferred_name"] = a.preferred_name;
  j["tuis"] = a.tuis;
  j["score"] = a.score;
  j["matched_term"] = a.matched_term;
  return j;
}

Json ToJson(const PipelineConfig &c) {
  Json j;
  j["boundary"] = BoundaryName(c.boundary);
  j["reranker"] = RerankerName(c.reranker);
  j["threshold"] = c.EffectiveThreshold();
  j["wsd"] = WsdModeName(c.wsd);
  j["semantic_types"] = c.semantic_types ? Json(*c.semantic_types) : Json(nullptr);
  j["ngram_min"] = c.ngram_min;
  j["ngram_max"] = c.ngram_max;
  j["rand_seed"] = c.rand_seed;
  return j;
}

Json ToJson(const AnnotatedDocument &doc, bool include_timings) {
  Json j;
  j["doc_id"] = doc.doc_id;
  j["text"] = doc.text;
  j["annotations"] = Json::array();
  for (const auto &a : doc.annotations) j["annotations"].push_back(ToJson(a));
  j["expanded_text"] = doc.expanded_text;
  j["config"] = ToJson(doc.config);
  j["ties"] = doc.ties;
  j["wsd_fallback"] = doc.wsd_fallback;
  if (include_timings) {
    Json t = Json::object();
    for (const auto &[stage, ms] : doc.timings_ms) t[stage] = ms;
    j["timings_ms"] = std::move(t);
  }
  return j;
}

Json ToJson(const BuildReport &r) {
  Json rejected = Json::object();
  for (const auto &[reason, count] : r.rejected) rejected[RejectReasonName(reason)] = count;
  Json j;
  j["parsed_atoms"] = r.parsed_atoms;
  j["kept_atoms"] = r.kept_atoms;
  j["rejected"] = std::move(rejected);
  j["concepts"] = r.concepts;
  j["unique_terms"] = r.unique_terms;
  j["per_concept_terms"] = r.per_concept_terms;
  j["unique_normalized"] = r.unique_normalized;
  j["empty_normalized"] = r.empty_normalized;
  j["edges"] = r.edges;
  j["relations_dropped_endpoint"] = r.relations_dropped_endpoint;
  j["relations_self_loop"] = r.relations_self_loop;
  j["relations_duplicate"] = r.relations_duplicate;
  j["semtype_assignments"] = r.semtype_assignments;
  j["semtype_assignments_dropped"] = r.semtype_assignments_dropped;
  j["malformed_lines"] = r.malformed_lines;
  return j;
}

namespace {

Json CellsJson(const Cells &c) {
  return Json{{"agree_pos", c.agree_pos},
              {"agree_neg", c.agree_neg},
              {"only_a", c.only_a},
              {"only_b", c.only_b}};
}

}  // namespace

Json ToJson(const AgreementReport &r, bool include_documents) {
  Json j;
  j["p_o"] = r.kappa.p_o;
  j["p_e"] = r.kappa.p_e;
  j["kappa"] = r.kappa.kappa;
  j["degenerate"] = r.kappa.degenerate;
  j["ci_method"] = "percentile bootstrap over documents";
  j["ci_low"] = r.ci.low;
  j["ci_high"] = r.ci.high;
  j["ci_degenerate"] = r.ci.degenerate;
  j["label"] = r.label;
  j["cells"] = CellsJson(r.cells);
  j["universe_size"] = r.universe_size;
  j["unknown_cuis"] = r.unknown_cuis;
  j["documents"] = r.documents.size();
  if (include_documents) {
    Json docs = Json::array();
    for (const auto &d : r.documents) {
      docs.push_back(Json{{"doc_id", d.doc_id},
                          {"cells", CellsJson(d.cells)},
                          {"kappa", d.kappa.kappa}});
    }
    j["per_document"] = std::move(docs);
  }
  return j;
}

namespace {

template <typename T>
T ParseEnum(const nlohmann::json &v, const char *key,
            std::optional<T> (*parse)(std::string_view), const char *allowed) {
  std::optional<T> out;
  if (v.is_string()) out = parse(v.get<std::string>());
  if (!out) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(key) + " must be one of " + allowed);
  }
  return *out;
}

size_t ParseCount(const nlohmann::json &v, const char *key) {
  if (!v.is_number_unsigned()) {
    throw Error(ErrorCode::kInvalidArgument, std::string(key) + " must be a positive integer");
  }
  return v.get<size_t>();
}

}  // namespace

PipelineConfig ConfigFromJson(const nlohmann::json &j, PipelineConfig c) {
  if (j.is_null()) return c;
  if (!j.is_object()) throw Error(ErrorCode::kInvalidArgument, "config must be an object");
  for (const auto &[key, v] : j.items()) {
    if (key == "boundary") {
      c.boundary = ParseEnum(v, "boundary", &ParseBoundary, "{ngram, phrase}");
    } else if (key == "reranker") {
      c.reranker = ParseEnum(v, "reranker", &ParseReranker, "{L, A, C}");
    } else if (key == "wsd") {
      c.wsd = ParseEnum(v, "wsd", &ParseWsdMode, "{ukb, rand}");
    } else if (key == "threshold") {
      if (v.is_null()) {
        c.threshold.reset();
      } else if (v.is_number()) {
        c.threshold = v.get<double>();
      } else {
        throw Error(ErrorCode::kInvalidArgument, "threshold must be a number in [0, 1]");
      }
    } else if (key == "semantic_types") {
      if (v.is_null()) {
        c.semantic_types.reset();
        continue;
      }
      if (!v.is_array()) {
        throw Error(ErrorCode::kInvalidArgument, "semantic_types must be an array of TUIs");
      }
      std::set<std::string> tuis;
      for (const auto &t : v) {
        if (!t.is_string()) {
          throw Error(ErrorCode::kInvalidArgument, "semantic_types must be an array of TUIs");
        }
        tuis.insert(t.get<std::string>());
      }
      c.semantic_types = std::move(tuis);
    } else if (key == "ngram_min") {
      c.ngram_min = ParseCount(v, "ngram_min");
    } else if (key == "ngram_max") {
      c.ngram_max = ParseCount(v, "ngram_max");
    } else if (key == "rand_seed") {
      if (!v.is_number_integer()) {
        throw Error(ErrorCode::kInvalidArgument, "rand_seed must be an integer");
      }
      c.rand_seed = v.is_number_unsigned() ? v.get<uint64_t>()
                                           : static_cast<uint64_t>(v.get<int64_t>());
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown config key '" + key +
                      "'; allowed: boundary, reranker, threshold, wsd, semantic_types, "
                      "ngram_min, ngram_max, rand_seed");
    }
  }
  c.Validate();
  return c;
}

void WriteJsonl(const std::vector<AnnotatedDocument> &docs, std::ostream &out) {
  for (const auto &d : docs) out << ToJson(d, false).dump() << '\n';
}

}  // namespace clinorm
