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

#ifndef HOT_MFGW_H_
#define HOT_MFGW_H_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hot/graph.h"
#include "hot/ot_kernel.h"
#include "hot/tensor.h"

namespace hot {

// One node-level alignment subproblem.
struct MfgwProblem {
  Tensor base_cost;
  std::vector<Eigen::MatrixXd> intra_costs;
  std::vector<Measure> marginals;
  SolverConfig config;

  // Shapes agree; intra costs square, symmetric and nonnegative.
  void Validate() const;
};

// Tensor form of the multi-marginal GW term:
//   L(v) = (K-1) sum_j C_j^2(v_j,.) P_j(S)
//          - 2 sum_{j<k} C_j(v_j,.) P_{j,k}(S) C_k(v_k,.)^T
// so that <L(S), S> equals the GW double sum over ordered pairs j < k.
Tensor mfgw_L_tensor(std::span<const Eigen::MatrixXd> intra_costs, const Tensor& s);

// <(1 - alpha) C + alpha L(S), S>.
double mfgw_objective(const MfgwProblem& problem, const Tensor& s);

ProximalResult solve_node_alignment(const MfgwProblem& problem);

// Per-graph embeddings (rows are the subproblem's nodes, in axis order) and
// intra costs. The base cost of this instance is cost_tensor() of the rows.
struct PairwiseInstance {
  std::vector<Eigen::MatrixXd> embeddings;
  std::vector<Eigen::MatrixXd> intra_costs;
};

// Minimized pairwise FGW value for the pair (j, k) given its cross cost.
using PairMinimizer = std::function<double(std::size_t j, std::size_t k,
                                           const Eigen::MatrixXd& cross_cost)>;

struct BoundReport {
  double mfgw_value = 0.0;
  double pairwise_sum_at_marginals = 0.0;
  double pairwise_sum_optimal = 0.0;
  bool decomposition_holds = false;
  bool bound_holds = false;
  // First pair whose optimum exceeds its value at the pair marginal; (0, 0)
  // when none does.
  std::size_t offending_j = 0;
  std::size_t offending_k = 0;
};

// Checks the pair decomposition of the MFGW objective at S (tolerance 1e-9)
// and that the sum of pairwise optima does not exceed it (slack 1e-8). The
// default minimizer runs fgw_solve_pair with `config`.
BoundReport pairwise_bound_check(const PairwiseInstance& instance, const Tensor& s,
                                 double alpha, const SolverConfig& config = {},
                                 const PairMinimizer& minimizer = nullptr);

}  // namespace hot

#endif  // HOT_MFGW_H_
