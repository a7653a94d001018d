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

#ifndef CLINORM_WSD_H_
#define CLINORM_WSD_H_

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "clinorm/kb.h"

namespace clinorm {

// Directed typed relation graph over concepts. PageRank walks it as an
// undirected graph with unit weights.
class ConceptGraph {
 public:
  struct Edge {
    uint32_t target;
    uint32_t type;  // index into types()
  };

  ConceptGraph() = default;
  // Accepts isolated vertices; edges are (source, target, type) indices.
  // Self-loops and duplicates are dropped.
  ConceptGraph(std::vector<std::string> vertices,
               const std::vector<std::tuple<uint32_t, uint32_t, std::string>> &edges);

  // Vertices are the relation endpoints, in first-seen order. Throws
  // Error(kEmptyInput) when no edge remains.
  static ConceptGraph Build(const std::vector<Relation> &relations);

  size_t vertex_count() const { return vertices_.size(); }
  size_t edge_count() const { return edge_count_; }
  const std::vector<std::string> &vertices() const { return vertices_; }
  const std::vector<std::string> &types() const { return types_; }
  std::optional<uint32_t> Find(std::string_view cui) const;
  const std::vector<Edge> &OutEdges(uint32_t v) const { return out_[v]; }
  // Distinct neighbors in either direction, ascending.
  const std::vector<uint32_t> &Neighbors(uint32_t v) const { return neighbors_[v]; }

 private:
  void AddVertex(std::string cui);

  std::vector<std::string> vertices_;
  std::unordered_map<std::string, uint32_t> ids_;
  std::vector<std::string> types_;
  std::vector<std::vector<Edge>> out_;
  std::vector<std::vector<uint32_t>> neighbors_;
  size_t edge_count_ = 0;
};

struct PprParams {
  double damping = 0.85;
  size_t max_iters = 30;
  double eps = 1e-6;
};

struct PprResult {
  std::vector<double> activation;  // indexed like ConceptGraph::vertices()
  std::vector<double> residuals;   // L1 change per iteration
  size_t iterations = 0;
  bool converged = false;
};

// `seeds` is a dense non-negative vector over the vertices; it is normalized
// here. Throws Error(kInvalidArgument) on a bad damping factor or seed
// vector.
PprResult PersonalizedPageRank(const ConceptGraph &graph, const std::vector<double> &seeds,
                               const PprParams &params = {});

// Uniform mass over the graph vertices reachable from `context_tokens`
// through the dictionary. Empty when nothing resolves.
std::vector<double> PersonalizationFromContext(
    const ConceptGraph &graph,
    const std::map<std::string, std::set<std::string>, std::less<>> &dictionary,
    const std::vector<std::string> &context_tokens);

// Highest activation wins; equal activations go to the smaller cui. Cuis
// outside the graph have activation 0.
std::string PickByActivation(const std::vector<std::string> &tied, const ConceptGraph &graph,
                             const std::vector<double> &activation);

std::string RandomChoice(const std::vector<std::string> &tied, std::mt19937_64 &rng);
std::string RandomChoice(const std::vector<std::string> &tied, uint64_t seed);

struct Disambiguation {
  std::string cui;
  bool random_fallback = false;
};

Disambiguation Disambiguate(
    const std::vector<std::string> &tied, const std::vector<std::string> &context_tokens,
    const std::map<std::string, std::set<std::string>, std::less<>> &dictionary,
    const ConceptGraph &graph, const PprParams &params, uint64_t seed);

}  // namespace clinorm

#endif  // CLINORM_WSD_H_
