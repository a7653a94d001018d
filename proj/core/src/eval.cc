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

#include "clinorm/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "clinorm/errors.h"

namespace clinorm {

Cells &Cells::operator+=(const Cells &o) {
  agree_pos += o.agree_pos;
  agree_neg += o.agree_neg;
  only_a += o.only_a;
  only_b += o.only_b;
  return *this;
}

KappaResult CohensKappa(const Cells &cells) {
  const uint64_t total = cells.Total();
  if (total == 0) throw Error(ErrorCode::kEmptyInput, "contingency table is empty");
  const double n = static_cast<double>(total);
  KappaResult r;
  r.p_o = static_cast<double>(cells.agree_pos + cells.agree_neg) / n;
  const double a_pos = static_cast<double>(cells.agree_pos + cells.only_a) / n;
  const double b_pos = static_cast<double>(cells.agree_pos + cells.only_b) / n;
  r.p_e = a_pos * b_pos + (1.0 - a_pos) * (1.0 - b_pos);
  if (r.p_e >= 1.0) {
    r.degenerate = true;
    r.kappa = r.p_o >= 1.0 ? 1.0 : 0.0;
    return r;
  }
  r.kappa = std::clamp((r.p_o - r.p_e) / (1.0 - r.p_e), -1.0, 1.0);
  return r;
}

Cells DocumentUnits(const std::set<std::string> &ours, const std::set<std::string> &theirs,
                    uint64_t universe_size) {
  Cells c;
  for (const auto &cui : ours) {
    if (theirs.count(cui)) {
      ++c.agree_pos;
    } else {
      ++c.only_a;
    }
  }
  c.only_b = theirs.size() - c.agree_pos;
  uint64_t in_union = c.agree_pos + c.only_a + c.only_b;
  if (universe_size < in_union) {
    throw Error(ErrorCode::kInvalidArgument, "universe is smaller than the annotated concepts");
  }
  c.agree_neg = universe_size - in_union;
  return c;
}

std::string LandisLabel(double kappa) {
  if (kappa < 0.0) return "No agreement";
  if (kappa <= 0.20) return "Slight agreement";
  if (kappa <= 0.40) return "Fair agreement";
  if (kappa <= 0.60) return "Moderate agreement";
  if (kappa <= 0.80) return "Substantial agreement";
  return "Almost perfect agreement";
}

namespace {

double Percentile(const std::vector<double> &sorted, double q) {
  double pos = q * static_cast<double>(sorted.size() - 1);
  size_t lo = static_cast<size_t>(std::floor(pos));
  size_t hi = std::min(lo + 1, sorted.size() - 1);
  double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

Cells Pool(const std::vector<Cells> &docs) {
  Cells total;
  for (const auto &d : docs) total += d;
  return total;
}

}  // namespace

Interval BootstrapCi(const std::vector<Cells> &docs, const BootstrapOptions &options) {
  if (options.resamples < 100) {
    throw Error(ErrorCode::kInvalidArgument, "bootstrap needs at least 100 resamples");
  }
  if (!(options.confidence > 0.0 && options.confidence < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "confidence must be in (0, 1)");
  }
  if (docs.empty()) throw Error(ErrorCode::kEmptyInput, "no documents");
  const double kappa = CohensKappa(Pool(docs)).kappa;
  if (docs.size() == 1) return {kappa, kappa, true};

  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<size_t> pick(0, docs.size() - 1);
  std::vector<double> kappas;
  kappas.reserve(options.resamples);
  for (size_t r = 0; r < options.resamples; ++r) {
    Cells total;
    for (size_t i = 0; i < docs.size(); ++i) total += docs[pick(rng)];
    kappas.push_back(CohensKappa(total).kappa);
  }
  std::sort(kappas.begin(), kappas.end());
  const double alpha = 1.0 - options.confidence;
  Interval ci{Percentile(kappas, alpha / 2.0), Percentile(kappas, 1.0 - alpha / 2.0), false};
  ci.low = std::min(ci.low, kappa);
  ci.high = std::max(ci.high, kappa);
  return ci;
}

AgreementReport PooledKappa(std::vector<DocumentAgreement> docs,
                            const BootstrapOptions &options) {
  if (docs.empty()) throw Error(ErrorCode::kEmptyInput, "no documents");
  AgreementReport report;
  std::vector<Cells> cells;
  for (auto &d : docs) {
    report.cells += d.cells;
    if (d.cells.Total() > 0) d.kappa = CohensKappa(d.cells);
    cells.push_back(d.cells);
  }
  report.kappa = CohensKappa(report.cells);
  report.ci = BootstrapCi(cells, options);
  report.label = LandisLabel(report.kappa.kappa);
  report.documents = std::move(docs);
  return report;
}

AnnotationSets LoadAnnotationSets(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  AnnotationSets sets;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      auto &cuis = sets[j.at("doc_id").get<std::string>()];
      if (j.contains("cuis")) {
        for (const auto &c : j.at("cuis")) cuis.insert(c.get<std::string>());
      } else {
        for (const auto &a : j.at("annotations")) cuis.insert(a.at("cui").get<std::string>());
      }
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorCode::kParse,
                  path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return sets;
}

size_t RestrictToKb(AnnotationSets &sets, const KnowledgeBase &kb) {
  size_t dropped = 0;
  for (auto &[doc, cuis] : sets) {
    dropped += std::erase_if(cuis, [&](const std::string &c) { return !kb.FindConcept(c); });
  }
  return dropped;
}

AgreementReport Compare(const AnnotationSets &ours, const AnnotationSets &theirs,
                        uint64_t universe_size, const BootstrapOptions &options) {
  std::set<std::string> ids;
  for (const auto &[id, _] : ours) ids.insert(id);
  for (const auto &[id, _] : theirs) ids.insert(id);
  static const std::set<std::string> kEmpty;
  std::vector<DocumentAgreement> docs;
  for (const auto &id : ids) {
    auto a = ours.find(id);
    auto b = theirs.find(id);
    DocumentAgreement d;
    d.doc_id = id;
    d.cells = DocumentUnits(a == ours.end() ? kEmpty : a->second,
                            b == theirs.end() ? kEmpty : b->second, universe_size);
    docs.push_back(std::move(d));
  }
  AgreementReport report = PooledKappa(std::move(docs), options);
  report.universe_size = universe_size;
  return report;
}

std::string RenderMatrix(const std::vector<MatrixEntry> &entries) {
  auto cell = [&](WsdMode w, Reranker r, Boundary b) -> std::string {
    for (const auto &e : entries) {
      if (e.wsd != w || e.reranker != r || e.boundary != b) continue;
      char buf[64];
      double half = (e.report.ci.high - e.report.ci.low) / 2.0;
      std::snprintf(buf, sizeof buf, "%.3f ± %.3f", e.report.kappa.kappa, half);
      return buf;
    }
    return "-";
  };
  auto score = [](Reranker r) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%s(.%d)", RerankerName(r),
                  static_cast<int>(std::lround(DefaultThreshold(r) * 10)));
    return std::string(buf);
  };
  auto pad = [](std::string s, size_t width) {
    // "±" is two bytes but one column wide.
    size_t cols = s.size() - (s.find("±") != std::string::npos ? 1 : 0);
    if (cols < width) s.append(width - cols, ' ');
    return s;
  };
  std::ostringstream out;
  out << pad("WSD", 6) << pad("score", 8) << pad("ngram", 16) << "phrase\n";
  for (WsdMode w : {WsdMode::kRandom, WsdMode::kUkb}) {
    bool first = true;
    for (Reranker r : {Reranker::kLucene, Reranker::kAronson, Reranker::kCastro}) {
      out << pad(first ? (w == WsdMode::kUkb ? "UKB" : "rand") : "", 6) << pad(score(r), 8)
          << pad(cell(w, r, Boundary::kNgram), 16) << cell(w, r, Boundary::kPhrase) << "\n";
      first = false;
    }
  }
  return out.str();
}

}  // namespace clinorm
