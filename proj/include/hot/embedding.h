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

#ifndef HOT_EMBEDDING_H_
#define HOT_EMBEDDING_H_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "hot/graph.h"
#include "hot/tensor.h"

namespace hot {

// Column-stochastic transition matrix W = (D^-1 A)^T.
Eigen::SparseMatrix<double> TransitionMatrix(const Graph& g);

// Fixed point of r = (1 - beta) W r + beta e_anchor, iterated until the L1
// residual is at most 1e-8. Throws NumericalError if the iteration cap
// 10 * ceil(log(1e-8) / log(1 - beta)) is exhausted.
Eigen::VectorXd rwr_scores(const Graph& g, NodeId anchor_node, double beta);

struct EmbeddingSet {
  // Per graph: [X_i | R_i] when attributes were concatenated, else R_i.
  std::vector<Eigen::MatrixXd> embeddings;
  // Per graph: the n_i x |anchors| positional block. Column p belongs to
  // anchor tuple p in every graph.
  std::vector<Eigen::MatrixXd> positional;
  bool attributes_concatenated = false;
};

EmbeddingSet build_embeddings(const MultiNetworkProblem& problem, double beta,
                              bool use_attributes);

// Entry (v_1..v_K) = sum over j<k of ||Z_j(v_j) - Z_k(v_k)||_2 for v_i drawn
// from node_lists[i]. Throws CapacityError when the tensor would hold more
// than max_elements entries (0 disables the check).
Tensor cost_tensor(std::span<const Eigen::MatrixXd> embeddings,
                   std::span<const std::vector<NodeId>> node_lists,
                   std::size_t max_elements = 0);

// Row-to-row Euclidean distances.
Eigen::MatrixXd cross_cost_matrix(const Eigen::MatrixXd& features_a,
                                  const Eigen::MatrixXd& features_b);

}  // namespace hot

#endif  // HOT_EMBEDDING_H_
