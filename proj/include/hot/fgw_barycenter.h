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

#ifndef HOT_FGW_BARYCENTER_H_
#define HOT_FGW_BARYCENTER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hot/graph.h"
#include "hot/ot_kernel.h"

namespace hot {

// Linearized GW term for two graphs:
//   L(v,u) = C1^2(v,.) p + C2^2(u,.) q - 2 C1(v,.) S C2(u,.)^T
// with p, q the row and column marginals of S.
Eigen::MatrixXd pairwise_gw_L(const Eigen::MatrixXd& c1, const Eigen::MatrixXd& c2,
                              const Eigen::MatrixXd& coupling);

// (1 - alpha) <cross, S> + alpha <pairwise_gw_L(C1, C2, S), S>.
double FgwObjective(const Eigen::MatrixXd& cross_cost, const Eigen::MatrixXd& c1,
                    const Eigen::MatrixXd& c2, const Eigen::MatrixXd& coupling,
                    double alpha);

struct PairSolution {
  Eigen::MatrixXd coupling;
  double value = 0.0;
  std::vector<double> objective;
};

// Pairwise FGW via the K = 2 proximal solver. cross_cost is used as given;
// callers wanting the q = 2 Wasserstein term pass squared distances.
PairSolution fgw_solve_pair(const Eigen::MatrixXd& cross_cost,
                            const Eigen::MatrixXd& c1, const Eigen::MatrixXd& c2,
                            const Measure& mu1, const Measure& mu2,
                            const SolverConfig& config);

// A_b = (sum_i w_i S_i^T A_i S_i) ./ (mu_b mu_b^T). Empty weights means 1.
Eigen::MatrixXd update_barycenter_structure(
    std::span<const Eigen::MatrixXd> adjacencies,
    std::span<const Eigen::MatrixXd> couplings, const Measure& mu_b,
    std::span<const double> weights = {});

// X_b = sum_i w_i diag(1 / mu_b) S_i^T X_i. Empty weights means 1.
Eigen::MatrixXd update_barycenter_features(
    std::span<const Eigen::MatrixXd> features,
    std::span<const Eigen::MatrixXd> couplings, const Measure& mu_b,
    std::span<const double> weights = {});

struct BarycenterState {
  Eigen::MatrixXd structure;  // A_b, M x M
  Eigen::MatrixXd features;   // X_b, M x d'
  Measure weights = Measure::Uniform(1);
  std::vector<Eigen::MatrixXd> couplings;  // S_i, n_i x M
  // Sum of the K FGW values; entry 0 is the initial state, then one per round.
  std::vector<double> objective;
};

struct BarycenterOptions {
  SolverConfig solver;
  // BCD rounds; each runs `proximal_steps` warm-started proximal steps per
  // graph, then the structure and feature updates.
  int rounds = 20;
  int proximal_steps = 1;
  std::uint64_t seed = 0;
};

// Block coordinate descent for the FGW barycenter of K graphs with M nodes.
// The Wasserstein term uses squared Euclidean distances between features and
// barycenter features. The structure and feature updates are weighted 1/K,
// which makes each of them the exact block minimizer.
BarycenterState barycenter_bcd(std::span<const Eigen::MatrixXd> features,
                               std::span<const Eigen::MatrixXd> adjacencies,
                               std::size_t cluster_count,
                               const BarycenterOptions& options);

struct ClusterAlignment {
  // assignment[i][v]: cluster of node v of graph i.
  std::vector<std::vector<std::size_t>> assignment;
  // clusters[j][i]: ascending members of cluster j in graph i.
  std::vector<std::vector<std::vector<NodeId>>> clusters;

  std::size_t cluster_count() const { return clusters.size(); }
};

// Argmax assignment of each node to a barycenter node (ties to the lowest
// index), followed by repair: clusters missing some graph are dissolved and
// their nodes reassigned to the best-scoring surviving cluster. Surviving
// clusters are renumbered densely in their original order.
ClusterAlignment assign_clusters(const BarycenterState& state);
ClusterAlignment AssignClusters(std::span<const Eigen::MatrixXd> couplings);

// Everything in one cluster.
ClusterAlignment SingleCluster(std::span<const std::size_t> graph_sizes);

}  // namespace hot

#endif  // HOT_FGW_BARYCENTER_H_
