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

// clinorm command-line front end: build-kb, annotate, evaluate, serve.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "clinorm/errors.h"
#include "clinorm/eval.h"
#include "clinorm/json_io.h"
#include "clinorm/pipeline.h"
#include "clinorm/service.h"
#include "clinorm/snapshot.h"
#include "http_server.h"

#ifndef CLINORM_DEFAULT_DATA_DIR
#define CLINORM_DEFAULT_DATA_DIR "data"
#endif

namespace {

using clinorm::Error;
using clinorm::ErrorCode;

struct ConfigFlags {
  std::string boundary = "ngram";
  std::string reranker = "C";
  std::optional<double> threshold;
  std::string wsd = "ukb";
  std::vector<std::string> semantic_types;
  size_t ngram_min = 1;
  size_t ngram_max = 5;
  uint64_t seed = 0;

  void Register(CLI::App *app) {
    app->add_option("--boundary", boundary, "Span detection")
        ->check(CLI::IsMember({"ngram", "phrase"}));
    app->add_option("--reranker", reranker, "Candidate rescoring")
        ->check(CLI::IsMember({"L", "A", "C"}));
    app->add_option("--threshold", threshold, "Minimum reranked score (default per reranker)")
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--wsd", wsd, "Tie resolution")->check(CLI::IsMember({"ukb", "rand"}));
    app->add_option("--semantic-types", semantic_types, "Keep only these TUIs")
        ->delimiter(',');
    app->add_option("--ngram-min", ngram_min, "Shortest n-gram")->check(CLI::PositiveNumber);
    app->add_option("--ngram-max", ngram_max, "Longest n-gram")->check(CLI::PositiveNumber);
    app->add_option("--seed", seed, "Seed for random tie resolution");
  }

  clinorm::PipelineConfig ToConfig() const {
    clinorm::PipelineConfig c;
    c.boundary = *clinorm::ParseBoundary(boundary);
    c.reranker = *clinorm::ParseReranker(reranker);
    c.threshold = threshold;
    c.wsd = *clinorm::ParseWsdMode(wsd);
    if (!semantic_types.empty()) {
      c.semantic_types = std::set<std::string>(semantic_types.begin(), semantic_types.end());
    }
    c.ngram_min = ngram_min;
    c.ngram_max = ngram_max;
    c.rand_seed = seed;
    c.Validate();
    return c;
  }
};

std::string ResolveKbPath(const std::string &flag) {
  if (!flag.empty()) return flag;
  if (const char *env = std::getenv("CLINORM_KB")) return env;
  throw Error(ErrorCode::kNotLoaded, "no KB snapshot given (use --kb or set CLINORM_KB)");
}

std::shared_ptr<clinorm::Engine> LoadEngine(const std::string &kb_flag) {
  std::string path = ResolveKbPath(kb_flag);
  spdlog::info("loading snapshot {}", path);
  clinorm::Snapshot s = clinorm::LoadSnapshot(path);
  auto engine = std::make_shared<clinorm::Engine>(std::move(s.kb), std::move(s.index),
                                                  std::move(s.abbreviations));
  spdlog::info("loaded {} concepts, {} index entries", engine->kb().concepts.size(),
               engine->index().size());
  return engine;
}

class Output {
 public:
  explicit Output(const std::string &path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error(ErrorCode::kIo, "cannot write " + path);
    }
  }
  std::ostream &stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<clinorm::AnnotatedDocument> AnnotateAll(const clinorm::Engine &engine,
                                                    const std::vector<clinorm::InputDocument> &docs,
                                                    const clinorm::PipelineConfig &config) {
  std::vector<clinorm::AnnotatedDocument> out;
  out.reserve(docs.size());
  for (const auto &d : docs) out.push_back(engine.Annotate(d.doc_id, d.text, config));
  return out;
}

clinorm::AnnotationSets ToSets(const std::vector<clinorm::AnnotatedDocument> &docs) {
  clinorm::AnnotationSets sets;
  for (const auto &d : docs) {
    auto &cuis = sets[d.doc_id];
    for (const auto &a : d.annotations) cuis.insert(a.cui);
  }
  return sets;
}

}  // namespace

int main(int argc, char **argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("clinorm"));
  spdlog::set_pattern("%Y-%m-%dT%H:%M:%S.%e %^%l%$ %v");

  CLI::App app{"Clinical term normalization"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging");

  // build-kb
  auto *build = app.add_subcommand("build-kb", "Build a KB snapshot from a release directory");
  std::string release_dir, snapshot_out, report_out;
  std::string data_dir = CLINORM_DEFAULT_DATA_DIR;
  clinorm::ResourcePaths resources;
  std::string stopwords, parentheticals, abbreviations;
  build->add_option("--release", release_dir, "Directory with MRCONSO/MRREL/MRSTY files")
      ->required()
      ->check(CLI::ExistingDirectory);
  build->add_option("-o,--out", snapshot_out, "Snapshot file")->required();
  build->add_option("--report", report_out, "Write the build report here (default stdout)");
  build->add_option("--data-dir", data_dir, "Directory with the bundled word lists");
  build->add_option("--stopwords", stopwords, "Stopword list");
  build->add_option("--parentheticals", parentheticals, "Parenthetical qualifiers to strip");
  build->add_option("--abbreviations", abbreviations, "Abbreviation dictionary (TSV)");

  // annotate
  auto *annotate = app.add_subcommand("annotate", "Annotate documents");
  std::string kb_path, input, text, output;
  ConfigFlags annotate_flags;
  annotate->add_option("--kb", kb_path, "KB snapshot (default $CLINORM_KB)");
  auto *input_opt = annotate->add_option("-i,--input", input,
                                         "Directory of .txt files or JSONL of {doc_id, text}");
  annotate->add_option("-t,--text", text, "Annotate a single text")->excludes(input_opt);
  annotate->add_option("-o,--output", output, "Output file (default stdout)");
  annotate_flags.Register(annotate);

  // evaluate
  auto *evaluate = app.add_subcommand("evaluate", "Agreement between two annotation sets");
  std::string ours, reference, eval_input, eval_kb;
  bool matrix = false, json_out = false, per_document = false;
  clinorm::BootstrapOptions bootstrap;
  evaluate->add_option("--kb", eval_kb, "KB snapshot (default $CLINORM_KB)");
  evaluate->add_option("--ours", ours, "Our annotations (JSONL)");
  evaluate->add_option("--reference", reference, "Reference annotations (JSONL)")->required();
  evaluate->add_flag("--matrix", matrix, "Annotate --input with all 12 configurations");
  evaluate->add_option("-i,--input", eval_input, "Documents for --matrix");
  evaluate->add_option("--resamples", bootstrap.resamples, "Bootstrap resamples")
      ->check(CLI::Range(100, 1000000));
  evaluate->add_option("--bootstrap-seed", bootstrap.seed, "Bootstrap seed");
  evaluate->add_flag("--json", json_out, "Emit JSON instead of text");
  evaluate->add_flag("--per-document", per_document, "Include per-document tables in JSON");

  // serve
  auto *serve = app.add_subcommand("serve", "Run the HTTP service");
  std::string serve_kb;
  clinorm::HttpOptions http;
  clinorm::ServiceOptions service_options;
  serve->add_option("--kb", serve_kb, "KB snapshot (default $CLINORM_KB)");
  serve->add_option("--host", http.host, "Bind address");
  serve->add_option("--port", http.port, "Port")->check(CLI::Range(1, 65535));
  serve->add_option("--cors-origin", http.cors_origin, "Allowed CORS origin");
  serve->add_option("--max-text-bytes", service_options.max_text_bytes, "Largest accepted text");

  CLI11_PARSE(app, argc, argv);
  if (verbose) spdlog::set_level(spdlog::level::debug);

  try {
    if (build->parsed()) {
      resources = clinorm::DefaultResources(data_dir);
      if (!stopwords.empty()) resources.stopwords = stopwords;
      if (!parentheticals.empty()) resources.parentheticals = parentheticals;
      if (!abbreviations.empty()) resources.abbreviations = abbreviations;
      clinorm::Snapshot s = clinorm::BuildSnapshot(release_dir, resources);
      clinorm::SaveSnapshot(snapshot_out, s.kb, s.index, s.abbreviations);
      spdlog::info("wrote {} ({} concepts, {} index entries, {} edges)", snapshot_out,
                   s.kb.concepts.size(), s.index.size(), s.kb.report.edges);
      Output out(report_out);
      out.stream() << clinorm::ToJson(s.kb.report).dump(2) << '\n';
      return 0;
    }

    if (annotate->parsed()) {
      clinorm::PipelineConfig config = annotate_flags.ToConfig();
      auto engine = LoadEngine(kb_path);
      Output out(output);
      if (!text.empty() || input.empty()) {
        if (text.empty()) {
          std::ostringstream buf;
          buf << std::cin.rdbuf();
          text = buf.str();
        }
        auto doc = engine->Annotate("text", text, config);
        out.stream() << clinorm::ToJson(doc, false).dump(2) << '\n';
        return 0;
      }
      auto docs = clinorm::ReadDocuments(input);
      spdlog::info("annotating {} documents", docs.size());
      clinorm::WriteJsonl(AnnotateAll(*engine, docs, config), out.stream());
      return 0;
    }

    if (evaluate->parsed()) {
      auto engine = LoadEngine(eval_kb);
      const clinorm::KnowledgeBase &kb = engine->kb();
      clinorm::AnnotationSets theirs = clinorm::LoadAnnotationSets(reference);
      size_t unknown = clinorm::RestrictToKb(theirs, kb);
      if (unknown > 0) spdlog::warn("dropped {} reference cuis outside the KB", unknown);
      const uint64_t universe = kb.concepts.size();

      if (matrix) {
        if (eval_input.empty()) throw Error(ErrorCode::kInvalidArgument, "--matrix needs --input");
        auto docs = clinorm::ReadDocuments(eval_input);
        std::vector<clinorm::MatrixEntry> entries;
        clinorm::Json all = clinorm::Json::array();
        for (auto wsd : {clinorm::WsdMode::kRandom, clinorm::WsdMode::kUkb}) {
          for (auto reranker :
               {clinorm::Reranker::kLucene, clinorm::Reranker::kAronson, clinorm::Reranker::kCastro}) {
            for (auto boundary : {clinorm::Boundary::kNgram, clinorm::Boundary::kPhrase}) {
              clinorm::PipelineConfig c;
              c.boundary = boundary;
              c.reranker = reranker;
              c.wsd = wsd;
              auto report = clinorm::Compare(ToSets(AnnotateAll(*engine, docs, c)), theirs,
                                             universe, bootstrap);
              report.unknown_cuis = unknown;
              if (json_out) {
                clinorm::Json row = clinorm::ToJson(c);
                row["report"] = clinorm::ToJson(report, per_document);
                all.push_back(std::move(row));
              }
              entries.push_back({boundary, reranker, wsd, std::move(report)});
            }
          }
        }
        if (json_out) {
          std::cout << all.dump(2) << '\n';
        } else {
          std::cout << clinorm::RenderMatrix(entries);
        }
        return 0;
      }

      if (ours.empty()) throw Error(ErrorCode::kInvalidArgument, "evaluate needs --ours or --matrix");
      clinorm::AnnotationSets mine = clinorm::LoadAnnotationSets(ours);
      unknown += clinorm::RestrictToKb(mine, kb);
      auto report = clinorm::Compare(mine, theirs, universe, bootstrap);
      report.unknown_cuis = unknown;
      if (json_out) {
        std::cout << clinorm::ToJson(report, per_document).dump(2) << '\n';
      } else {
        std::printf("kappa %.4f [%.4f, %.4f] %s\np_o %.6f  p_e %.6f  documents %zu  units %llu\n",
                    report.kappa.kappa, report.ci.low, report.ci.high, report.label.c_str(),
                    report.kappa.p_o, report.kappa.p_e, report.documents.size(),
                    static_cast<unsigned long long>(report.cells.Total()));
      }
      return 0;
    }

    if (serve->parsed()) {
      auto engine = LoadEngine(serve_kb);
      clinorm::Service service(engine, service_options);
      if (!clinorm::RunHttpServer(service, http)) {
        spdlog::error("cannot listen on {}:{}", http.host, http.port);
        return 1;
      }
      return 0;
    }
  } catch (const Error &e) {
    spdlog::error("{}: {}", clinorm::ErrorCodeName(e.code()), e.what());
    return 1;
  } catch (const std::exception &e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
