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

#include "clinorm/kb.h"

#include <algorithm>
#include <fstream>
#include <functional>

#include "clinorm/errors.h"
#include "clinorm/utf8.h"

namespace clinorm {

namespace {

// Splits a pipe-delimited row, removing exactly one trailing pipe.
std::vector<std::string_view> SplitPipes(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  if (!line.empty() && line.back() == '|') line.remove_suffix(1);
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    size_t bar = line.find('|', start);
    if (bar == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, bar - start));
    start = bar + 1;
  }
  return fields;
}

void Skip(SkipReport &report, size_t line_no) {
  ++report.skipped;
  if (report.skipped_lines.size() < 100) report.skipped_lines.push_back(line_no);
}

// Calls `fn(fields, line_no)` for every row with the expected column count.
void ForEachRow(const std::filesystem::path &path, size_t columns, SkipReport &report,
                const std::function<bool(const std::vector<std::string_view> &)> &fn) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    ++report.lines;
    if (line.empty() || line == "\r") {
      Skip(report, report.lines);
      continue;
    }
    auto fields = SplitPipes(line);
    if (fields.size() != columns || !fn(fields)) Skip(report, report.lines);
  }
}

bool SourceExcluded(const std::string &source, const std::set<std::string> &excluded) {
  for (const auto &pattern : excluded) {
    if (!pattern.empty() && pattern.back() == '*') {
      if (source.compare(0, pattern.size() - 1, pattern, 0, pattern.size() - 1) == 0) {
        return true;
      }
    } else if (source == pattern) {
      return true;
    }
  }
  return false;
}

size_t WhitespaceTokens(std::string_view s) {
  size_t count = 0;
  bool in_token = false;
  size_t pos = 0;
  while (pos < s.size()) {
    bool space = utf8::IsSpace(utf8::Next(s, pos));
    if (!space && !in_token) ++count;
    in_token = !space;
  }
  return count;
}

size_t PriorityOf(const std::vector<std::string> &order, const std::string &value) {
  auto it = std::find(order.begin(), order.end(), value);
  return static_cast<size_t>(it - order.begin());
}

std::string Trimmed(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

const char *RejectReasonName(RejectReason reason) {
  switch (reason) {
    case RejectReason::kNone: return "kept";
    case RejectReason::kLanguage: return "language";
    case RejectReason::kSource: return "source";
    case RejectReason::kTooLong: return "too_long";
    case RejectReason::kSuppressed: return "suppressed";
    case RejectReason::kSingleChar: return "single_char";
    case RejectReason::kNumbersOnly: return "numbers_only";
    case RejectReason::kStopwordsOnly: return "stopwords_only";
    case RejectReason::kDuplicate: return "duplicate";
  }
  return "unknown";
}

size_t BuildReport::TotalRejected() const {
  size_t total = 0;
  for (const auto &[reason, count] : rejected) total += count;
  return total;
}

SemanticNetwork::SemanticNetwork(std::vector<SemanticType> types) {
  for (auto &t : types) {
    if (t.parent && t.parent->empty()) t.parent.reset();
    std::string tui = t.tui;
    if (!types_.emplace(tui, std::move(t)).second) {
      throw Error(ErrorCode::kParse, "semantic type defined twice: " + tui);
    }
  }
  for (const auto &[tui, type] : types_) {
    if (!type.parent) continue;
    if (!types_.count(*type.parent)) {
      throw Error(ErrorCode::kParse,
                  "semantic type " + tui + " has undefined parent " + *type.parent);
    }
    children_[*type.parent].push_back(tui);
  }
  for (const auto &[tui, type] : types_) {
    std::vector<std::string> path = {tui};
    const SemanticType *cur = &type;
    while (cur->parent) {
      const std::string &next = *cur->parent;
      if (std::find(path.begin(), path.end(), next) != path.end()) {
        std::string chain;
        for (const auto &p : path) chain += p + " -> ";
        throw Error(ErrorCode::kCycle, "semantic network cycle: " + chain + next);
      }
      path.push_back(next);
      cur = &types_.find(next)->second;
    }
  }
}

const SemanticType *SemanticNetwork::Find(std::string_view tui) const {
  auto it = types_.find(tui);
  return it == types_.end() ? nullptr : &it->second;
}

std::vector<std::string> SemanticNetwork::Roots() const {
  std::vector<std::string> roots;
  for (const auto &[tui, type] : types_) {
    if (!type.parent) roots.push_back(tui);
  }
  return roots;
}

std::vector<std::string> SemanticNetwork::Children(std::string_view tui) const {
  auto it = children_.find(tui);
  return it == children_.end() ? std::vector<std::string>{} : it->second;
}

std::set<std::string> SemanticNetwork::Subtree(std::string_view tui) const {
  std::set<std::string> out;
  std::vector<std::string> stack = {std::string(tui)};
  while (!stack.empty()) {
    std::string cur = std::move(stack.back());
    stack.pop_back();
    if (!out.insert(cur).second) continue;
    for (auto &child : Children(cur)) stack.push_back(child);
  }
  return out;
}

const Concept *KnowledgeBase::FindConcept(std::string_view cui) const {
  auto it = concepts.find(cui);
  return it == concepts.end() ? nullptr : &it->second;
}

std::vector<RawAtom> ParseConceptFile(const std::filesystem::path &path,
                                      const ConceptLayout &layout, SkipReport &report) {
  std::vector<RawAtom> atoms;
  ForEachRow(path, layout.columns, report, [&](const std::vector<std::string_view> &f) {
    RawAtom atom;
    atom.cui = f[layout.cui];
    atom.lang = f[layout.lang];
    atom.source = f[layout.source];
    atom.tty = f[layout.tty];
    atom.term = f[layout.term];
    atom.suppress = f[layout.suppress].empty() ? 'N' : f[layout.suppress][0];
    if (atom.cui.empty() || Trimmed(atom.term).empty()) return false;
    atoms.push_back(std::move(atom));
    return true;
  });
  return atoms;
}

std::vector<Relation> ParseRelationRows(const std::filesystem::path &path,
                                        const RelationLayout &layout, SkipReport &report) {
  std::vector<Relation> rows;
  ForEachRow(path, layout.columns, report, [&](const std::vector<std::string_view> &f) {
    Relation r{std::string(f[layout.cui1]), std::string(f[layout.cui2]),
               std::string(f[layout.rel]), std::string(f[layout.rela]),
               std::string(f[layout.dir])};
    if (r.cui1.empty() || r.cui2.empty()) return false;
    rows.push_back(std::move(r));
    return true;
  });
  return rows;
}

RelationFilterResult FilterRelations(const std::vector<Relation> &rows,
                                     const std::set<std::string, std::less<>> &kept) {
  RelationFilterResult result;
  std::set<std::tuple<std::string, std::string, std::string, std::string>> seen;
  for (const auto &r : rows) {
    if (!kept.count(r.cui1) || !kept.count(r.cui2)) {
      ++result.dropped_endpoint;
    } else if (r.cui1 == r.cui2) {
      ++result.self_loops;
    } else if (!seen.emplace(r.cui1, r.cui2, r.rel, r.rela).second) {
      ++result.duplicates;
    } else {
      result.edges.push_back(r);
    }
  }
  return result;
}

RelationFilterResult ParseRelationFile(const std::filesystem::path &path,
                                       const RelationLayout &layout,
                                       const std::set<std::string, std::less<>> &kept,
                                       SkipReport &report) {
  return FilterRelations(ParseRelationRows(path, layout, report), kept);
}

std::vector<std::pair<std::string, std::string>> ParseSemTypeAssignments(
    const std::filesystem::path &path, const SemTypeLayout &layout, SkipReport &report) {
  std::vector<std::pair<std::string, std::string>> out;
  ForEachRow(path, layout.columns, report, [&](const std::vector<std::string_view> &f) {
    if (f[layout.cui].empty() || f[layout.tui].empty()) return false;
    out.emplace_back(f[layout.cui], f[layout.tui]);
    return true;
  });
  return out;
}

std::vector<SemanticType> ParseSemanticNetwork(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::vector<SemanticType> types;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    size_t start = 0;
    while (true) {
      size_t tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (cols.size() < 2 || cols.size() > 3 || cols[0].empty()) {
      throw Error(ErrorCode::kParse,
                  path.string() + ":" + std::to_string(line_no) + ": expected tui, name, parent");
    }
    SemanticType t{cols[0], cols[1], std::nullopt};
    if (cols.size() == 3 && !cols[2].empty()) t.parent = cols[2];
    types.push_back(std::move(t));
  }
  return types;
}

SemTypeResult ResolveSemanticTypes(
    const std::vector<std::pair<std::string, std::string>> &assignments,
    std::vector<SemanticType> definitions, const std::set<std::string, std::less<>> &kept) {
  SemTypeResult result;
  result.network = SemanticNetwork(std::move(definitions));
  for (const auto &[cui, tui] : assignments) {
    bool known_type = result.network.empty() || result.network.Find(tui) != nullptr;
    if (!kept.count(cui) || !known_type) {
      ++result.dropped;
      continue;
    }
    result.assignments[cui].insert(tui);
  }
  return result;
}

RejectReason FilterAtom(const RawAtom &atom, const StopwordList &stopwords,
                        const FilterConfig &config) {
  if (atom.lang != config.target_language) return RejectReason::kLanguage;
  if (SourceExcluded(atom.source, config.excluded_sources)) return RejectReason::kSource;
  if (WhitespaceTokens(atom.term) >= config.max_tokens) return RejectReason::kTooLong;
  if (config.suppress_flags.find(atom.suppress) != std::string::npos) {
    return RejectReason::kSuppressed;
  }
  std::string trimmed = Trimmed(atom.term);
  if (utf8::Length(trimmed) == 1) return RejectReason::kSingleChar;

  bool has_other = false;
  size_t pos = 0;
  while (pos < trimmed.size()) {
    char32_t cp = utf8::Next(trimmed, pos);
    if (!utf8::IsDigit(cp) && !utf8::IsSpace(cp) && !utf8::IsPunct(cp)) {
      has_other = true;
      break;
    }
  }
  if (!has_other) return RejectReason::kNumbersOnly;

  auto words = WordTokens(trimmed);
  bool all_stop = std::all_of(words.begin(), words.end(),
                              [&](const std::string &w) { return stopwords.Contains(w); });
  if (all_stop) return RejectReason::kStopwordsOnly;
  return RejectReason::kNone;
}

ReleaseInputs ReadRelease(const std::filesystem::path &dir, const BuildConfig &config) {
  ReleaseInputs in;
  SkipReport conso;
  in.atoms = ParseConceptFile(dir / "MRCONSO.RRF", config.concept_layout, conso);
  in.malformed_lines += conso.skipped;
  if (std::filesystem::exists(dir / "MRREL.RRF")) {
    SkipReport rel;
    in.relations = ParseRelationRows(dir / "MRREL.RRF", config.relation_layout, rel);
    in.malformed_lines += rel.skipped;
  }
  if (std::filesystem::exists(dir / "MRSTY.RRF")) {
    SkipReport sty;
    in.semtype_assignments =
        ParseSemTypeAssignments(dir / "MRSTY.RRF", config.semtype_layout, sty);
    in.malformed_lines += sty.skipped;
  }
  if (std::filesystem::exists(dir / "semnet.tsv")) {
    in.semtype_definitions = ParseSemanticNetwork(dir / "semnet.tsv");
  }
  return in;
}

KnowledgeBase BuildKnowledgeBase(const ReleaseInputs &inputs, const BuildConfig &config,
                                 TermNormalizer normalizer) {
  KnowledgeBase kb;
  kb.normalizer = std::move(normalizer);
  BuildReport &report = kb.report;
  report.parsed_atoms = inputs.atoms.size();
  report.malformed_lines = inputs.malformed_lines;

  std::set<std::tuple<std::string, std::string, std::string>> seen;
  std::vector<const RawAtom *> kept;
  for (const auto &atom : inputs.atoms) {
    RejectReason reason = FilterAtom(atom, kb.normalizer.stopwords(), config.filter);
    if (reason == RejectReason::kNone &&
        !seen.emplace(atom.cui, atom.term, atom.source).second) {
      reason = RejectReason::kDuplicate;
    }
    if (reason != RejectReason::kNone) {
      ++report.rejected[reason];
      continue;
    }
    kept.push_back(&atom);
  }
  report.kept_atoms = kept.size();
  if (kept.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no term survived filtering");
  }

  std::map<std::string, std::vector<const RawAtom *>> by_cui;
  for (const RawAtom *atom : kept) by_cui[atom->cui].push_back(atom);
  std::set<std::string, std::less<>> kept_cuis;
  for (auto &[cui, atoms] : by_cui) {
    std::stable_sort(atoms.begin(), atoms.end(), [&](const RawAtom *a, const RawAtom *b) {
      auto ka = std::make_tuple(PriorityOf(config.source_priority, a->source),
                                PriorityOf(config.tty_priority, a->tty), a->term);
      auto kb_ = std::make_tuple(PriorityOf(config.source_priority, b->source),
                                 PriorityOf(config.tty_priority, b->tty), b->term);
      return ka < kb_;
    });
    Concept c;
    c.cui = cui;
    c.preferred_name = atoms.front()->term;
    for (const RawAtom *a : atoms) {
      c.sources.insert(a->source);
      c.terms.push_back({a->term, a->source, a->tty});
    }
    kept_cuis.insert(cui);
    kb.concepts.emplace(cui, std::move(c));
  }

  std::map<std::pair<std::string, std::string>, size_t> entry_of;
  std::set<std::string> unique_terms;
  std::set<std::pair<std::string, std::string>> per_concept;
  for (const RawAtom *atom : kept) {
    unique_terms.insert(atom->term);
    per_concept.emplace(atom->cui, atom->term);
    std::string normalized = kb.normalizer.Normalize(atom->term);
    if (normalized.empty()) {
      ++report.empty_normalized;
      continue;
    }
    kb.dictionary[normalized].insert(atom->cui);
    auto key = std::make_pair(atom->term, normalized);
    auto it = entry_of.find(key);
    if (it == entry_of.end()) {
      entry_of.emplace(key, kb.terms.size());
      kb.terms.push_back({atom->term, normalized, {atom->cui}, {atom->source}});
    } else {
      IndexEntry &e = kb.terms[it->second];
      if (std::find(e.cuis.begin(), e.cuis.end(), atom->cui) == e.cuis.end()) {
        e.cuis.push_back(atom->cui);
        std::sort(e.cuis.begin(), e.cuis.end());
      }
      if (std::find(e.sources.begin(), e.sources.end(), atom->source) == e.sources.end()) {
        e.sources.push_back(atom->source);
        std::sort(e.sources.begin(), e.sources.end());
      }
    }
  }

  RelationFilterResult rel = FilterRelations(inputs.relations, kept_cuis);
  kb.relations = std::move(rel.edges);
  report.relations_dropped_endpoint = rel.dropped_endpoint;
  report.relations_self_loop = rel.self_loops;
  report.relations_duplicate = rel.duplicates;

  SemTypeResult sty = ResolveSemanticTypes(inputs.semtype_assignments,
                                           inputs.semtype_definitions, kept_cuis);
  kb.semnet = std::move(sty.network);
  for (auto &[cui, tuis] : sty.assignments) {
    kb.concepts[cui].semantic_types = tuis;
    report.semtype_assignments += tuis.size();
  }
  report.semtype_assignments_dropped = sty.dropped;

  report.concepts = kb.concepts.size();
  report.unique_terms = unique_terms.size();
  report.per_concept_terms = per_concept.size();
  report.unique_normalized = kb.dictionary.size();
  report.edges = kb.relations.size();
  return kb;
}

}  // namespace clinorm
