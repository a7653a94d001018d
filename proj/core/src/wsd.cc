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

#include "clinorm/wsd.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "clinorm/errors.h"

namespace clinorm {

void ConceptGraph::AddVertex(std::string cui) {
  if (ids_.count(cui)) return;
  ids_.emplace(cui, static_cast<uint32_t>(vertices_.size()));
  vertices_.push_back(std::move(cui));
}

ConceptGraph::ConceptGraph(
    std::vector<std::string> vertices,
    const std::vector<std::tuple<uint32_t, uint32_t, std::string>> &edges) {
  for (auto &v : vertices) AddVertex(std::move(v));
  out_.resize(vertices_.size());
  neighbors_.resize(vertices_.size());
  std::set<std::tuple<uint32_t, uint32_t, uint32_t>> seen;
  std::map<std::string, uint32_t> type_ids;
  for (const auto &[from, to, type] : edges) {
    if (from >= vertices_.size() || to >= vertices_.size()) {
      throw Error(ErrorCode::kInvalidArgument, "edge endpoint out of range");
    }
    if (from == to) continue;
    auto [it, inserted] = type_ids.emplace(type, static_cast<uint32_t>(types_.size()));
    if (inserted) types_.push_back(type);
    if (!seen.emplace(from, to, it->second).second) continue;
    out_[from].push_back({to, it->second});
    neighbors_[from].push_back(to);
    neighbors_[to].push_back(from);
    ++edge_count_;
  }
  for (auto &n : neighbors_) {
    std::sort(n.begin(), n.end());
    n.erase(std::unique(n.begin(), n.end()), n.end());
  }
}

ConceptGraph ConceptGraph::Build(const std::vector<Relation> &relations) {
  std::vector<std::string> vertices;
  std::unordered_map<std::string, uint32_t> ids;
  std::vector<std::tuple<uint32_t, uint32_t, std::string>> edges;
  auto id = [&](const std::string &cui) {
    auto [it, inserted] = ids.emplace(cui, static_cast<uint32_t>(vertices.size()));
    if (inserted) vertices.push_back(cui);
    return it->second;
  };
  for (const Relation &r : relations) {
    if (r.cui1 == r.cui2) continue;
    std::string type = r.rela.empty() ? r.rel : r.rel + "/" + r.rela;
    uint32_t a = id(r.cui1);
    uint32_t b = id(r.cui2);
    edges.emplace_back(a, b, std::move(type));
  }
  if (edges.empty()) throw Error(ErrorCode::kEmptyInput, "no relations to build a graph from");
  return ConceptGraph(std::move(vertices), edges);
}

std::optional<uint32_t> ConceptGraph::Find(std::string_view cui) const {
  auto it = ids_.find(std::string(cui));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

PprResult PersonalizedPageRank(const ConceptGraph &graph, const std::vector<double> &seeds,
                               const PprParams &params) {
  if (!(params.damping > 0.0 && params.damping < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "damping must be in (0, 1)");
  }
  const size_t n = graph.vertex_count();
  if (seeds.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "seed vector size does not match the graph");
  }
  double total = 0.0;
  for (double s : seeds) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw Error(ErrorCode::kInvalidArgument, "seed mass must be finite and non-negative");
    }
    total += s;
  }
  if (total <= 0.0) throw Error(ErrorCode::kInvalidArgument, "seed vector has no mass");

  std::vector<double> seed(n);
  for (size_t i = 0; i < n; ++i) seed[i] = seeds[i] / total;

  const double d = params.damping;
  PprResult result;
  std::vector<double> v = seed;
  std::vector<double> next(n);
  std::vector<double> share(n);
  for (size_t iter = 0; iter < params.max_iters; ++iter) {
    double dangling = 0.0;
    for (size_t u = 0; u < n; ++u) {
      size_t degree = graph.Neighbors(u).size();
      if (degree == 0) {
        dangling += v[u];
        share[u] = 0.0;
      } else {
        share[u] = v[u] / static_cast<double>(degree);
      }
    }
    for (size_t u = 0; u < n; ++u) {
      double in = 0.0;
      for (uint32_t w : graph.Neighbors(u)) in += share[w];
      next[u] = (1.0 - d) * seed[u] + d * (in + dangling * seed[u]);
    }
    double residual = 0.0;
    for (size_t u = 0; u < n; ++u) residual += std::abs(next[u] - v[u]);
    v.swap(next);
    result.residuals.push_back(residual);
    result.iterations = iter + 1;
    if (residual < params.eps) {
      result.converged = true;
      break;
    }
  }
  double sum = std::accumulate(v.begin(), v.end(), 0.0);
  for (double &x : v) x /= sum;
  result.activation = std::move(v);
  return result;
}

std::vector<double> PersonalizationFromContext(
    const ConceptGraph &graph,
    const std::map<std::string, std::set<std::string>, std::less<>> &dictionary,
    const std::vector<std::string> &context_tokens) {
  std::set<uint32_t> support;
  for (const auto &token : context_tokens) {
    auto it = dictionary.find(token);
    if (it == dictionary.end()) continue;
    for (const auto &cui : it->second) {
      if (auto v = graph.Find(cui)) support.insert(*v);
    }
  }
  if (support.empty()) return {};
  std::vector<double> seeds(graph.vertex_count(), 0.0);
  for (uint32_t v : support) seeds[v] = 1.0 / static_cast<double>(support.size());
  return seeds;
}

std::string PickByActivation(const std::vector<std::string> &tied, const ConceptGraph &graph,
                             const std::vector<double> &activation) {
  if (tied.empty()) throw Error(ErrorCode::kInvalidArgument, "no candidates to choose from");
  const std::string *best = nullptr;
  double best_activation = -1.0;
  for (const auto &cui : tied) {
    auto v = graph.Find(cui);
    double a = v ? activation[*v] : 0.0;
    if (a > best_activation || (a == best_activation && cui < *best)) {
      best = &cui;
      best_activation = a;
    }
  }
  return *best;
}

std::string RandomChoice(const std::vector<std::string> &tied, std::mt19937_64 &rng) {
  if (tied.empty()) throw Error(ErrorCode::kInvalidArgument, "no candidates to choose from");
  std::uniform_int_distribution<size_t> pick(0, tied.size() - 1);
  return tied[pick(rng)];
}

std::string RandomChoice(const std::vector<std::string> &tied, uint64_t seed) {
  std::mt19937_64 rng(seed);
  return RandomChoice(tied, rng);
}

Disambiguation Disambiguate(
    const std::vector<std::string> &tied, const std::vector<std::string> &context_tokens,
    const std::map<std::string, std::set<std::string>, std::less<>> &dictionary,
    const ConceptGraph &graph, const PprParams &params, uint64_t seed) {
  std::vector<double> seeds = PersonalizationFromContext(graph, dictionary, context_tokens);
  if (seeds.empty()) return {RandomChoice(tied, seed), true};
  PprResult ppr = PersonalizedPageRank(graph, seeds, params);
  return {PickByActivation(tied, graph, ppr.activation), false};
}

}  // namespace clinorm
