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

#ifndef CLINORM_JSON_IO_H_
#define CLINORM_JSON_IO_H_

#include <ostream>
#include <vector>

#include <nlohmann/json.hpp>

#include "clinorm/eval.h"
#include "clinorm/kb.h"
#include "clinorm/mapping.h"
#include "clinorm/pipeline.h"

namespace clinorm {

using Json = nlohmann::ordered_json;

Json ToJson(const Annotation &annotation);
Json ToJson(const PipelineConfig &config);
// Timings vary between runs; leave them out for reproducible output.
Json ToJson(const AnnotatedDocument &doc, bool include_timings);
Json ToJson(const BuildReport &report);
Json ToJson(const AgreementReport &report, bool include_documents);

// Starts from `base` and overrides the fields present in `j`. Throws
// Error(kInvalidArgument) naming the allowed values for an unknown key or
// value.
PipelineConfig ConfigFromJson(const nlohmann::json &j, PipelineConfig base = {});

// One compact JSON document per line, without timings.
void WriteJsonl(const std::vector<AnnotatedDocument> &docs, std::ostream &out);

}  // namespace clinorm

#endif  // CLINORM_JSON_IO_H_
