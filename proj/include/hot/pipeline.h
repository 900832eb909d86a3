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

#ifndef HOT_PIPELINE_H_
#define HOT_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hot/fgw_barycenter.h"
#include "hot/graph.h"
#include "hot/ot_kernel.h"
#include "hot/tensor.h"

namespace hot {

enum class BarycenterFeatures { kEmbedding, kAttributes };
enum class RankScope { kGlobal, kCluster };

struct RunConfig {
  SolverConfig solver;
  double beta = 0.15;
  // 0 selects ceil(max_i n_i / 50).
  std::size_t clusters = 0;
  std::uint64_t seed = 0;
  // Per-block cap on coupling tensor elements.
  std::size_t element_budget = 50'000'000;
  std::size_t workers = 1;
  // Concatenate node attributes to the positional embeddings when every
  // graph carries them.
  bool use_attributes = true;
  BarycenterFeatures barycenter_features = BarycenterFeatures::kEmbedding;
  double emit_threshold = 1e-9;
  std::vector<int> k_list{1, 5, 10, 30, 50};
  RankScope rank_scope = RankScope::kGlobal;

  void Validate() const;
};

std::size_t AutoClusterCount(std::span<const std::size_t> graph_sizes);

struct AlignmentBlock {
  std::size_t cluster_id = 0;
  // members[i]: ascending global node ids of graph i in this cluster.
  std::vector<std::vector<NodeId>> members;
  Tensor coupling;
  std::vector<double> objective;
  std::vector<double> step_change;
  double marginal_error = 0.0;
};

struct StageTimings {
  double embedding_ms = 0.0;
  double clustering_ms = 0.0;
  double node_alignment_ms = 0.0;
  double total_ms = 0.0;
};

// Block-diagonal K-way alignment: any tuple mixing clusters scores 0.
class AlignmentResult {
 public:
  AlignmentResult() = default;
  AlignmentResult(std::vector<std::size_t> graph_sizes, ClusterAlignment clusters,
                  std::vector<AlignmentBlock> blocks, RunConfig config);

  std::size_t graph_count() const { return graph_sizes_.size(); }
  const std::vector<std::size_t>& graph_sizes() const { return graph_sizes_; }
  const ClusterAlignment& clusters() const { return clusters_; }
  const std::vector<AlignmentBlock>& blocks() const { return blocks_; }
  const RunConfig& config() const { return config_; }

  std::size_t ClusterOf(std::size_t graph, NodeId node) const;
  // Position of a node within its cluster's member list.
  std::size_t LocalIndex(std::size_t graph, NodeId node) const;

  // Sum over blocks of prod_i |C_i^j|.
  std::size_t AllocatedElements() const;

  std::vector<double> barycenter_objective;
  StageTimings timings;

 private:
  std::vector<std::size_t> graph_sizes_;
  ClusterAlignment clusters_;
  std::vector<AlignmentBlock> blocks_;
  RunConfig config_;
  std::vector<std::vector<std::size_t>> local_index_;
};

// Sum over clusters of prod_i |C_i^j|.
std::size_t AllocatedElements(const ClusterAlignment& clusters);

// Embeddings, barycenter co-clustering, per-cluster MFGW solves and
// block-diagonal assembly.
AlignmentResult hot_align(const MultiNetworkProblem& problem, const RunConfig& config);

struct ClusterStage {
  ClusterAlignment clusters;
  std::vector<double> objective;
};

// Cluster-level stage: barycenter co-clustering, or a single cluster when
// the effective M is 1.
ClusterStage co_cluster(const MultiNetworkProblem& problem, const RunConfig& config);

// Node-level stage only, on a given cluster alignment.
AlignmentResult AlignWithClusters(const MultiNetworkProblem& problem,
                                  const RunConfig& config, ClusterAlignment clusters);

// Block entry when every node of the tuple shares a cluster, else 0.
double lookup_score(const AlignmentResult& result, std::span<const NodeId> tuple);

}  // namespace hot

#endif  // HOT_PIPELINE_H_
