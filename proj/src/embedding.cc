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

#include "hot/embedding.h"

#include <cmath>
#include <string>

#include "hot/errors.h"

namespace hot {
namespace {

constexpr double kRwrTolerance = 1e-8;

std::size_t RwrIterationCap(double beta) {
  if (beta >= 1.0) return 10;
  const double per = std::log(kRwrTolerance) / std::log(1.0 - beta);
  return 10 * static_cast<std::size_t>(std::ceil(per));
}

}  // namespace

Eigen::SparseMatrix<double> TransitionMatrix(const Graph& g) {
  const Eigen::VectorXd degree = g.WeightedDegrees();
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(2 * g.edge_count());
  for (const Edge& e : g.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    // W(v, u) = A(u, v) / d(u): column u holds the out-probabilities of u.
    entries.emplace_back(v, u, e.weight / degree[u]);
    if (u != v) entries.emplace_back(u, v, e.weight / degree[v]);
  }
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::SparseMatrix<double> w(n, n);
  w.setFromTriplets(entries.begin(), entries.end());
  return w;
}

Eigen::VectorXd rwr_scores(const Graph& g, NodeId anchor_node, double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw ValidationError("restart probability must lie in (0, 1]");
  }
  if (anchor_node >= g.node_count()) {
    throw ValidationError("anchor node " + std::to_string(anchor_node) +
                          " out of range");
  }
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::VectorXd restart = Eigen::VectorXd::Zero(n);
  restart[static_cast<Eigen::Index>(anchor_node)] = beta;
  if (beta >= 1.0) return restart;

  const Eigen::SparseMatrix<double> w = TransitionMatrix(g);
  Eigen::VectorXd r = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  const std::size_t cap = RwrIterationCap(beta);
  for (std::size_t it = 0; it < cap; ++it) {
    Eigen::VectorXd next = (1.0 - beta) * (w * r) + restart;
    // The residual at r is exactly ||next - r||_1, and the residual at next
    // is at most (1 - beta) times that.
    const double delta = (next - r).lpNorm<1>();
    r.swap(next);
    if (delta <= kRwrTolerance) return r;
  }
  throw NumericalError("random walk with restart did not converge within " +
                       std::to_string(cap) + " iterations");
}

EmbeddingSet build_embeddings(const MultiNetworkProblem& problem, double beta,
                              bool use_attributes) {
  if (problem.anchors.empty()) {
    throw ConfigurationError("positional embeddings need at least one anchor tuple");
  }
  if (use_attributes) {
    for (std::size_t i = 0; i < problem.graphs.size(); ++i) {
      if (!problem.graphs[i].has_attributes()) {
        throw ConfigurationError("attributes requested but graph " +
                                 std::to_string(i) + " has none");
      }
    }
  }
  EmbeddingSet set;
  set.attributes_concatenated = use_attributes;
  const auto anchors = static_cast<Eigen::Index>(problem.anchors.size());
  for (std::size_t i = 0; i < problem.graphs.size(); ++i) {
    const Graph& g = problem.graphs[i];
    Eigen::MatrixXd r(static_cast<Eigen::Index>(g.node_count()), anchors);
    for (Eigen::Index p = 0; p < anchors; ++p) {
      r.col(p) = rwr_scores(g, problem.anchors[static_cast<std::size_t>(p)][i], beta);
    }
    if (use_attributes) {
      const Eigen::MatrixXd& x = g.attributes();
      Eigen::MatrixXd z(x.rows(), x.cols() + anchors);
      z << x, r;
      set.embeddings.push_back(std::move(z));
    } else {
      set.embeddings.push_back(r);
    }
    set.positional.push_back(std::move(r));
  }
  return set;
}

Eigen::MatrixXd cross_cost_matrix(const Eigen::MatrixXd& a,
                                  const Eigen::MatrixXd& b) {
  if (a.cols() != b.cols()) {
    throw ValidationError("feature widths differ (" + std::to_string(a.cols()) +
                          " vs " + std::to_string(b.cols()) + ")");
  }
  Eigen::MatrixXd d(a.rows(), b.rows());
  for (Eigen::Index v = 0; v < a.rows(); ++v) {
    for (Eigen::Index u = 0; u < b.rows(); ++u) {
      d(v, u) = (a.row(v) - b.row(u)).norm();
    }
  }
  return d;
}

Tensor cost_tensor(std::span<const Eigen::MatrixXd> embeddings,
                   std::span<const std::vector<NodeId>> node_lists,
                   std::size_t max_elements) {
  if (embeddings.size() != node_lists.size() || node_lists.empty()) {
    throw ValidationError("cost tensor needs one node list per embedding");
  }
  Shape shape;
  for (std::size_t i = 0; i < node_lists.size(); ++i) {
    if (node_lists[i].empty()) throw ValidationError("empty node list");
    for (NodeId v : node_lists[i]) {
      if (v >= static_cast<NodeId>(embeddings[i].rows())) {
        throw ValidationError("node " + std::to_string(v) +
                              " out of range for graph " + std::to_string(i));
      }
    }
    shape.push_back(node_lists[i].size());
  }
  const std::size_t elements = ElementCount(shape);
  if (max_elements != 0 && elements > max_elements) {
    throw CapacityError("cost tensor needs " + std::to_string(elements) +
                        " elements, budget is " + std::to_string(max_elements));
  }

  std::vector<Eigen::MatrixXd> rows;
  for (std::size_t i = 0; i < node_lists.size(); ++i) {
    Eigen::MatrixXd z(static_cast<Eigen::Index>(node_lists[i].size()),
                      embeddings[i].cols());
    for (std::size_t r = 0; r < node_lists[i].size(); ++r) {
      z.row(static_cast<Eigen::Index>(r)) =
          embeddings[i].row(static_cast<Eigen::Index>(node_lists[i][r]));
    }
    rows.push_back(std::move(z));
  }
  Tensor c(shape, 0.0);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (std::size_t k = j + 1; k < rows.size(); ++k) {
      AddPairTerm(c, j, k, cross_cost_matrix(rows[j], rows[k]));
    }
  }
  return c;
}

}  // namespace hot
