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

#ifndef CLINORM_KB_H_
#define CLINORM_KB_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "clinorm/index.h"
#include "clinorm/normalizer.h"

namespace clinorm {

// One (term, source, language) row of a concept release file.
struct RawAtom {
  std::string cui;
  std::string lang;
  std::string term;
  std::string source;
  char suppress = 'N';
  std::string tty;
};

struct ConceptTerm {
  std::string term;
  std::string source;
  std::string tty;
};

struct Concept {
  std::string cui;
  std::string preferred_name;
  std::set<std::string> semantic_types;
  std::set<std::string> sources;
  std::vector<ConceptTerm> terms;  // kept atoms in preferred-name order
};

struct SemanticType {
  std::string tui;
  std::string name;
  std::optional<std::string> parent;
};

// Forest of semantic types keyed by TUI.
class SemanticNetwork {
 public:
  SemanticNetwork() = default;
  // Throws Error(kCycle) naming the offending path, or Error(kParse) when a
  // parent TUI is not defined.
  explicit SemanticNetwork(std::vector<SemanticType> types);

  bool empty() const { return types_.empty(); }
  size_t size() const { return types_.size(); }
  const SemanticType *Find(std::string_view tui) const;
  const std::map<std::string, SemanticType, std::less<>> &types() const { return types_; }
  std::vector<std::string> Roots() const;
  std::vector<std::string> Children(std::string_view tui) const;
  // `tui` itself followed by all of its descendants.
  std::set<std::string> Subtree(std::string_view tui) const;

 private:
  std::map<std::string, SemanticType, std::less<>> types_;
  std::map<std::string, std::vector<std::string>, std::less<>> children_;
};

// A concept-to-concept relation row.
struct Relation {
  std::string cui1;
  std::string cui2;
  std::string rel;
  std::string rela;
  std::string dir;

  auto Key() const { return std::tie(cui1, cui2, rel, rela); }
};

// Default column positions follow the release's pipe-delimited layouts.
struct ConceptLayout {
  size_t columns = 18;
  size_t cui = 0, lang = 1, source = 11, tty = 12, term = 14, suppress = 16;
};

struct RelationLayout {
  size_t columns = 16;
  size_t cui1 = 0, rel = 3, cui2 = 4, rela = 7, dir = 13;
};

struct SemTypeLayout {
  size_t columns = 6;
  size_t cui = 0, tui = 1;
};

struct SkipReport {
  size_t lines = 0;
  size_t skipped = 0;
  std::vector<size_t> skipped_lines;  // 1-based, first 100 only
};

enum class RejectReason {
  kNone,
  kLanguage,
  kSource,
  kTooLong,
  kSuppressed,
  kSingleChar,
  kNumbersOnly,
  kStopwordsOnly,
  kDuplicate,
};

const char *RejectReasonName(RejectReason reason);

struct FilterConfig {
  std::string target_language = "SPA";
  // Exact codes, or prefixes when ending in '*'.
  std::set<std::string> excluded_sources = {"LNC*"};
  size_t max_tokens = 15;
  std::string suppress_flags = "OEY";
};

struct BuildConfig {
  FilterConfig filter;
  std::vector<std::string> source_priority = {"SCTSPA", "MSHSPA", "MDRSPA"};
  std::vector<std::string> tty_priority = {"PT", "MH", "FN", "LLT", "SY"};
  ConceptLayout concept_layout;
  RelationLayout relation_layout;
  SemTypeLayout semtype_layout;
};

struct BuildReport {
  size_t parsed_atoms = 0;
  size_t kept_atoms = 0;
  std::map<RejectReason, size_t> rejected;
  size_t concepts = 0;
  size_t unique_terms = 0;          // distinct term strings
  size_t per_concept_terms = 0;     // distinct (cui, term) pairs
  size_t unique_normalized = 0;     // dictionary keys
  size_t empty_normalized = 0;      // kept atoms whose normalized form is empty
  size_t edges = 0;
  size_t relations_dropped_endpoint = 0;
  size_t relations_self_loop = 0;
  size_t relations_duplicate = 0;
  size_t semtype_assignments = 0;
  size_t semtype_assignments_dropped = 0;
  size_t malformed_lines = 0;

  size_t TotalRejected() const;
};

struct KnowledgeBase {
  std::map<std::string, Concept, std::less<>> concepts;
  std::vector<IndexEntry> terms;
  std::map<std::string, std::set<std::string>, std::less<>> dictionary;
  std::vector<Relation> relations;
  SemanticNetwork semnet;
  TermNormalizer normalizer;
  BuildReport report;

  const Concept *FindConcept(std::string_view cui) const;
};

// Raw contents of a release, before filtering.
struct ReleaseInputs {
  std::vector<RawAtom> atoms;
  std::vector<Relation> relations;
  std::vector<std::pair<std::string, std::string>> semtype_assignments;  // (cui, tui)
  std::vector<SemanticType> semtype_definitions;
  size_t malformed_lines = 0;
};

std::vector<RawAtom> ParseConceptFile(const std::filesystem::path &path,
                                      const ConceptLayout &layout, SkipReport &report);
std::vector<Relation> ParseRelationRows(const std::filesystem::path &path,
                                        const RelationLayout &layout, SkipReport &report);

struct RelationFilterResult {
  std::vector<Relation> edges;
  size_t dropped_endpoint = 0;
  size_t self_loops = 0;
  size_t duplicates = 0;
};

// Keeps relations whose endpoints are both in `kept`; drops self-loops and
// collapses duplicates of (cui1, cui2, rel, rela). Order of first occurrence
// is preserved.
RelationFilterResult FilterRelations(const std::vector<Relation> &rows,
                                     const std::set<std::string, std::less<>> &kept);

// Reads relation rows and filters them against the kept concept set.
RelationFilterResult ParseRelationFile(const std::filesystem::path &path,
                                       const RelationLayout &layout,
                                       const std::set<std::string, std::less<>> &kept,
                                       SkipReport &report);

std::vector<std::pair<std::string, std::string>> ParseSemTypeAssignments(
    const std::filesystem::path &path, const SemTypeLayout &layout, SkipReport &report);
// Tab-separated tui, name, parent_tui; '#' comments allowed.
std::vector<SemanticType> ParseSemanticNetwork(const std::filesystem::path &path);

struct SemTypeResult {
  std::map<std::string, std::set<std::string>> assignments;  // cui -> tuis
  SemanticNetwork network;
  size_t dropped = 0;
};

// Validates the network and keeps assignments for kept concepts whose TUI is
// defined (any TUI is accepted when no definitions were supplied).
SemTypeResult ResolveSemanticTypes(
    const std::vector<std::pair<std::string, std::string>> &assignments,
    std::vector<SemanticType> definitions, const std::set<std::string, std::less<>> &kept);

RejectReason FilterAtom(const RawAtom &atom, const StopwordList &stopwords,
                        const FilterConfig &config);

// Reads MRCONSO.RRF, MRREL.RRF, MRSTY.RRF and semnet.tsv from `dir`. The
// relation, semantic-type and network files are optional.
ReleaseInputs ReadRelease(const std::filesystem::path &dir, const BuildConfig &config);

// Throws Error(kEmptyInput) when no atom survives filtering.
KnowledgeBase BuildKnowledgeBase(const ReleaseInputs &inputs, const BuildConfig &config,
                                 TermNormalizer normalizer);

}  // namespace clinorm

#endif  // CLINORM_KB_H_
