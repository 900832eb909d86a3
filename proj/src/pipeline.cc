// Copyright 2026 The HOT Authors
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

#include "hot/pipeline.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "hot/embedding.h"
#include "hot/errors.h"
#include "hot/mfgw.h"

namespace hot {
namespace {

using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Eigen::MatrixXd SubMatrix(const Eigen::MatrixXd& a, const std::vector<NodeId>& nodes) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      out(r, c) = a(static_cast<Eigen::Index>(nodes[static_cast<std::size_t>(r)]),
                    static_cast<Eigen::Index>(nodes[static_cast<std::size_t>(c)]));
    }
  }
  return out;
}

template <typename F>
auto WithStage(const std::string& stage, F&& f) {
  try {
    return f();
  } catch (Error& e) {
    e.AddContext(stage);
    throw;
  }
}

std::vector<std::size_t> GraphSizes(const MultiNetworkProblem& problem) {
  std::vector<std::size_t> sizes;
  for (const Graph& g : problem.graphs) sizes.push_back(g.node_count());
  return sizes;
}

bool AllHaveAttributes(const MultiNetworkProblem& problem) {
  return std::all_of(problem.graphs.begin(), problem.graphs.end(),
                     [](const Graph& g) { return g.has_attributes(); });
}

void CheckCapacity(const ClusterAlignment& clusters, std::size_t budget) {
  for (std::size_t j = 0; j < clusters.cluster_count(); ++j) {
    Shape shape;
    for (const auto& members : clusters.clusters[j]) shape.push_back(members.size());
    const std::size_t elements = ElementCount(shape);
    if (elements > budget) {
      std::string sizes;
      for (std::size_t d : shape) sizes += (sizes.empty() ? "" : "x") + std::to_string(d);
      throw CapacityError("cluster " + std::to_string(j) + " needs a " + sizes +
                          " tensor (" + std::to_string(elements) +
                          " elements) over the budget of " + std::to_string(budget) +
                          "; use more clusters (--clusters) or raise the budget");
    }
  }
}

AlignmentBlock SolveBlock(std::size_t j, const ClusterAlignment& clusters,
                          const EmbeddingSet& embeddings,
                          const std::vector<Eigen::MatrixXd>& adjacencies,
                          const RunConfig& config) {
  AlignmentBlock block;
  block.cluster_id = j;
  block.members = clusters.clusters[j];
  const std::size_t k = block.members.size();
  Shape shape;
  for (const auto& m : block.members) shape.push_back(m.size());
  if (ElementCount(shape) == 1) {
    // One node per graph: the only feasible coupling.
    block.coupling = Tensor(shape, 1.0);
    return block;
  }
  MfgwProblem problem;
  problem.base_cost = cost_tensor(embeddings.embeddings, block.members,
                                  config.element_budget);
  for (std::size_t i = 0; i < k; ++i) {
    problem.intra_costs.push_back(SubMatrix(adjacencies[i], block.members[i]));
    problem.marginals.push_back(Measure::Uniform(block.members[i].size()));
  }
  problem.config = config.solver;
  ProximalResult r = solve_node_alignment(problem);
  block.coupling = std::move(r.coupling);
  block.objective = std::move(r.objective);
  block.step_change = std::move(r.step_change);
  block.marginal_error = r.marginal_error;
  return block;
}

}  // namespace

void RunConfig::Validate() const {
  solver.Validate();
  if (!(beta > 0.0 && beta <= 1.0)) throw ConfigurationError("beta must lie in (0, 1]");
  if (element_budget == 0) throw ConfigurationError("element budget must be positive");
  if (workers == 0) throw ConfigurationError("worker count must be positive");
  if (!(emit_threshold >= 0.0)) throw ConfigurationError("emit threshold must be >= 0");
  for (int k : k_list) {
    if (k < 1) throw ConfigurationError("Hits@K values must be positive");
  }
}

std::size_t AutoClusterCount(std::span<const std::size_t> graph_sizes) {
  std::size_t n = 0;
  for (std::size_t s : graph_sizes) n = std::max(n, s);
  return std::max<std::size_t>(1, (n + 49) / 50);
}

std::size_t AllocatedElements(const ClusterAlignment& clusters) {
  std::size_t total = 0;
  for (const auto& cluster : clusters.clusters) {
    Shape shape;
    for (const auto& members : cluster) shape.push_back(members.size());
    total += ElementCount(shape);
  }
  return total;
}

AlignmentResult::AlignmentResult(std::vector<std::size_t> graph_sizes,
                                 ClusterAlignment clusters,
                                 std::vector<AlignmentBlock> blocks, RunConfig config)
    : graph_sizes_(std::move(graph_sizes)),
      clusters_(std::move(clusters)),
      blocks_(std::move(blocks)),
      config_(std::move(config)) {
  if (clusters_.assignment.size() != graph_sizes_.size() ||
      blocks_.size() != clusters_.cluster_count()) {
    throw ValidationError("alignment result: clusters and blocks disagree");
  }
  local_index_.resize(graph_sizes_.size());
  for (std::size_t i = 0; i < graph_sizes_.size(); ++i) {
    if (clusters_.assignment[i].size() != graph_sizes_[i]) {
      throw ValidationError("alignment result: assignment size mismatch");
    }
    local_index_[i].assign(graph_sizes_[i], 0);
  }
  for (std::size_t j = 0; j < blocks_.size(); ++j) {
    const AlignmentBlock& b = blocks_[j];
    if (b.members != clusters_.clusters[j] || b.coupling.rank() != graph_sizes_.size()) {
      throw ValidationError("alignment result: block " + std::to_string(j) +
                            " does not match its cluster");
    }
    for (std::size_t i = 0; i < b.members.size(); ++i) {
      if (b.coupling.dim(i) != b.members[i].size()) {
        throw ValidationError("alignment result: block " + std::to_string(j) +
                              " has the wrong shape");
      }
      for (std::size_t p = 0; p < b.members[i].size(); ++p) {
        local_index_[i][b.members[i][p]] = p;
      }
    }
  }
}

std::size_t AlignmentResult::ClusterOf(std::size_t graph, NodeId node) const {
  return clusters_.assignment.at(graph).at(node);
}

std::size_t AlignmentResult::LocalIndex(std::size_t graph, NodeId node) const {
  return local_index_.at(graph).at(node);
}

std::size_t AlignmentResult::AllocatedElements() const {
  std::size_t total = 0;
  for (const AlignmentBlock& b : blocks_) total += b.coupling.size();
  return total;
}

AlignmentResult AlignWithClusters(const MultiNetworkProblem& problem,
                                  const RunConfig& config, ClusterAlignment clusters) {
  const auto start = Clock::now();
  problem.Validate();
  config.Validate();
  if (problem.anchors.empty()) {
    throw ConfigurationError("alignment needs at least one anchor tuple");
  }
  const bool use_attributes = config.use_attributes && AllHaveAttributes(problem);
  const EmbeddingSet embeddings = WithStage("embedding", [&] {
    return build_embeddings(problem, config.beta, use_attributes);
  });
  const double embedding_ms = MillisSince(start);
  return WithStage("node-level alignment", [&] {
    const auto node_start = Clock::now();
    CheckCapacity(clusters, config.element_budget);
    std::vector<Eigen::MatrixXd> adjacencies;
    for (const Graph& g : problem.graphs) adjacencies.push_back(g.Adjacency());

    const std::size_t m = clusters.cluster_count();
    std::vector<AlignmentBlock> blocks(m);
    std::vector<std::exception_ptr> failures(m);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t j = next++; j < m; j = next++) {
        try {
          blocks[j] = SolveBlock(j, clusters, embeddings, adjacencies, config);
        } catch (...) {
          failures[j] = std::current_exception();
        }
      }
    };
    const std::size_t threads = std::min(config.workers, m);
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
      for (std::thread& t : pool) t.join();
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (!failures[j]) continue;
      try {
        std::rethrow_exception(failures[j]);
      } catch (Error& e) {
        e.AddContext("cluster " + std::to_string(j));
        throw;
      }
    }
    AlignmentResult result(GraphSizes(problem), std::move(clusters), std::move(blocks),
                           config);
    result.timings.embedding_ms = embedding_ms;
    result.timings.node_alignment_ms = MillisSince(node_start);
    result.timings.total_ms = MillisSince(start);
    return result;
  });
}

ClusterStage co_cluster(const MultiNetworkProblem& problem, const RunConfig& config) {
  problem.Validate();
  config.Validate();
  if (problem.anchors.empty()) {
    throw ConfigurationError("alignment needs at least one anchor tuple");
  }
  const std::vector<std::size_t> sizes = GraphSizes(problem);
  const std::size_t smallest = *std::min_element(sizes.begin(), sizes.end());
  std::size_t m = config.clusters == 0 ? AutoClusterCount(sizes) : config.clusters;
  m = std::min(m, smallest);
  if (m <= 1) return {SingleCluster(sizes), {}};
  if (config.barycenter_features == BarycenterFeatures::kAttributes &&
      !AllHaveAttributes(problem)) {
    throw ConfigurationError("attribute barycenter features requested but some graph "
                             "has no attributes");
  }
  return WithStage("cluster-level alignment", [&] {
    const bool use_attributes = config.use_attributes && AllHaveAttributes(problem);
    const EmbeddingSet embeddings = build_embeddings(problem, config.beta, use_attributes);
    std::vector<Eigen::MatrixXd> features;
    std::vector<Eigen::MatrixXd> adjacencies;
    for (std::size_t i = 0; i < problem.graphs.size(); ++i) {
      features.push_back(config.barycenter_features == BarycenterFeatures::kAttributes
                             ? problem.graphs[i].attributes()
                             : embeddings.embeddings[i]);
      adjacencies.push_back(problem.graphs[i].Adjacency());
    }
    BarycenterOptions options;
    options.solver = config.solver;
    options.rounds = config.solver.outer_iters;
    options.seed = config.seed;
    BarycenterState state = barycenter_bcd(features, adjacencies, m, options);
    return ClusterStage{assign_clusters(state), state.objective};
  });
}

AlignmentResult hot_align(const MultiNetworkProblem& problem, const RunConfig& config) {
  const auto start = Clock::now();
  ClusterStage stage = co_cluster(problem, config);
  const double clustering_ms = MillisSince(start);
  AlignmentResult result = AlignWithClusters(problem, config, std::move(stage.clusters));
  result.barycenter_objective = std::move(stage.objective);
  result.timings.clustering_ms = clustering_ms;
  result.timings.total_ms = MillisSince(start);
  return result;
}

double lookup_score(const AlignmentResult& result, std::span<const NodeId> tuple) {
  if (tuple.size() != result.graph_count()) {
    throw ValidationError("tuple has " + std::to_string(tuple.size()) +
                          " entries, expected " + std::to_string(result.graph_count()));
  }
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] >= result.graph_sizes()[i]) {
      throw ValidationError("node " + std::to_string(tuple[i]) +
                            " out of range for graph " + std::to_string(i));
    }
  }
  const std::size_t c = result.ClusterOf(0, tuple[0]);
  std::vector<std::size_t> local(tuple.size());
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (result.ClusterOf(i, tuple[i]) != c) return 0.0;
    local[i] = result.LocalIndex(i, tuple[i]);
  }
  return result.blocks()[c].coupling.at(local);
}

}  // namespace hot
