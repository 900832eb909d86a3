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

#include "hot/mfgw.h"

#include <cmath>
#include <string>

#include "hot/embedding.h"
#include "hot/errors.h"
#include "hot/fgw_barycenter.h"

namespace hot {

void MfgwProblem::Validate() const {
  const std::size_t k = base_cost.rank();
  if (intra_costs.size() != k || marginals.size() != k) {
    throw ValidationError("MFGW problem: need one intra cost and marginal per axis");
  }
  for (std::size_t i = 0; i < k; ++i) {
    const Eigen::MatrixXd& c = intra_costs[i];
    if (static_cast<std::size_t>(c.rows()) != base_cost.dim(i) || c.rows() != c.cols()) {
      throw ValidationError("MFGW problem: intra cost " + std::to_string(i) +
                            " does not match axis size");
    }
    if (marginals[i].size() != base_cost.dim(i)) {
      throw ValidationError("MFGW problem: marginal " + std::to_string(i) +
                            " does not match axis size");
    }
    if ((c.array() < 0.0).any() || !c.isApprox(c.transpose(), 1e-12)) {
      throw ValidationError("MFGW problem: intra cost " + std::to_string(i) +
                            " must be symmetric and nonnegative");
    }
  }
}

Tensor mfgw_L_tensor(std::span<const Eigen::MatrixXd> intra_costs, const Tensor& s) {
  const std::size_t k = s.rank();
  if (intra_costs.size() != k) {
    throw ValidationError("need one intra cost per tensor axis");
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (static_cast<std::size_t>(intra_costs[j].rows()) != s.dim(j) ||
        intra_costs[j].rows() != intra_costs[j].cols()) {
      throw ValidationError("intra cost " + std::to_string(j) + " has wrong shape");
    }
  }
  Tensor l(s.shape(), 0.0);
  const double multiplicity = static_cast<double>(k - 1);
  for (std::size_t j = 0; j < k; ++j) {
    const Eigen::MatrixXd& c = intra_costs[j];
    AddAxisTerm(l, j, c.cwiseProduct(c) * marginal_sum(s, j), multiplicity);
  }
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t m = j + 1; m < k; ++m) {
      const Eigen::MatrixXd cross =
          intra_costs[j] * pair_marginal(s, j, m) * intra_costs[m].transpose();
      AddPairTerm(l, j, m, cross, -2.0);
    }
  }
  return l;
}

double mfgw_objective(const MfgwProblem& problem, const Tensor& s) {
  const double alpha = problem.config.alpha;
  double value = (1.0 - alpha) * Inner(problem.base_cost, s);
  if (alpha > 0.0) value += alpha * Inner(mfgw_L_tensor(problem.intra_costs, s), s);
  return value;
}

ProximalResult solve_node_alignment(const MfgwProblem& problem) {
  problem.Validate();
  auto structure = [&](const Tensor& s) { return mfgw_L_tensor(problem.intra_costs, s); };
  auto objective = [&](const Tensor& s) { return mfgw_objective(problem, s); };
  return proximal_solve(problem.base_cost, problem.marginals, structure,
                        problem.config, objective);
}

BoundReport pairwise_bound_check(const PairwiseInstance& instance, const Tensor& s,
                                 double alpha, const SolverConfig& config,
                                 const PairMinimizer& minimizer) {
  const std::size_t k = s.rank();
  if (instance.embeddings.size() != k || instance.intra_costs.size() != k) {
    throw ValidationError("bound check: instance does not match tensor rank");
  }
  std::vector<std::vector<NodeId>> rows(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (NodeId v = 0; v < s.dim(i); ++v) rows[i].push_back(v);
  }
  MfgwProblem problem;
  problem.base_cost = cost_tensor(instance.embeddings, rows);
  problem.intra_costs = instance.intra_costs;
  problem.config = config;
  problem.config.alpha = alpha;

  BoundReport report;
  report.mfgw_value = mfgw_objective(problem, s);
  bool offender_found = false;
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t m = j + 1; m < k; ++m) {
      const Eigen::MatrixXd cross =
          cross_cost_matrix(instance.embeddings[j], instance.embeddings[m]);
      const Eigen::MatrixXd coupling = pair_marginal(s, j, m);
      const double at_marginal = FgwObjective(cross, instance.intra_costs[j],
                                              instance.intra_costs[m], coupling, alpha);
      double optimum;
      if (minimizer) {
        optimum = minimizer(j, m, cross);
      } else {
        SolverConfig pair_config = config;
        pair_config.alpha = alpha;
        optimum = fgw_solve_pair(cross, instance.intra_costs[j], instance.intra_costs[m],
                                 Measure::Normalized(marginal_sum(s, j)),
                                 Measure::Normalized(marginal_sum(s, m)), pair_config)
                      .value;
      }
      report.pairwise_sum_at_marginals += at_marginal;
      report.pairwise_sum_optimal += optimum;
      if (!offender_found && optimum > at_marginal + 1e-8) {
        offender_found = true;
        report.offending_j = j;
        report.offending_k = m;
      }
    }
  }
  report.decomposition_holds =
      std::abs(report.mfgw_value - report.pairwise_sum_at_marginals) <= 1e-9;
  report.bound_holds = report.pairwise_sum_optimal <= report.mfgw_value + 1e-8;
  return report;
}

}  // namespace hot
