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

#include "hot/fgw_barycenter.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "hot/embedding.h"
#include "hot/errors.h"

namespace hot {
namespace {

Eigen::MatrixXd SquaredDistances(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd d = cross_cost_matrix(a, b);
  return d.cwiseProduct(d);
}

double WeightAt(std::span<const double> weights, std::size_t i) {
  return weights.empty() ? 1.0 : weights[i];
}

void CheckBarycenterWeights(const Measure& mu_b) {
  for (std::size_t b = 0; b < mu_b.size(); ++b) {
    if (mu_b[b] <= 0.0) {
      throw ValidationError("barycenter weight " + std::to_string(b) +
                            " is zero; cannot divide");
    }
  }
}

double MeanEdgeDensity(std::span<const Eigen::MatrixXd> adjacencies) {
  double total = 0.0;
  for (const Eigen::MatrixXd& a : adjacencies) {
    const double n = static_cast<double>(a.rows());
    const double off_diagonal = a.sum() - a.trace();
    total += n > 1 ? off_diagonal / (n * (n - 1)) : 0.0;
  }
  return total / static_cast<double>(adjacencies.size());
}

}  // namespace

Eigen::MatrixXd pairwise_gw_L(const Eigen::MatrixXd& c1, const Eigen::MatrixXd& c2,
                              const Eigen::MatrixXd& s) {
  if (c1.rows() != c1.cols() || c2.rows() != c2.cols() || s.rows() != c1.rows() ||
      s.cols() != c2.rows()) {
    throw ValidationError("pairwise GW term: inconsistent shapes");
  }
  const Eigen::VectorXd p = s.rowwise().sum();
  const Eigen::VectorXd q = s.colwise().sum().transpose();
  const Eigen::VectorXd a = c1.cwiseProduct(c1) * p;
  const Eigen::VectorXd b = c2.cwiseProduct(c2) * q;
  Eigen::MatrixXd l = -2.0 * (c1 * s * c2.transpose());
  l.colwise() += a;
  l.rowwise() += b.transpose();
  return l;
}

double FgwObjective(const Eigen::MatrixXd& cross_cost, const Eigen::MatrixXd& c1,
                    const Eigen::MatrixXd& c2, const Eigen::MatrixXd& s,
                    double alpha) {
  if (cross_cost.rows() != s.rows() || cross_cost.cols() != s.cols()) {
    throw ValidationError("FGW objective: cross cost shape mismatch");
  }
  double value = (1.0 - alpha) * cross_cost.cwiseProduct(s).sum();
  if (alpha > 0.0) value += alpha * pairwise_gw_L(c1, c2, s).cwiseProduct(s).sum();
  return value;
}

PairSolution fgw_solve_pair(const Eigen::MatrixXd& cross_cost,
                            const Eigen::MatrixXd& c1, const Eigen::MatrixXd& c2,
                            const Measure& mu1, const Measure& mu2,
                            const SolverConfig& config) {
  if (static_cast<std::size_t>(cross_cost.rows()) != mu1.size() ||
      static_cast<std::size_t>(cross_cost.cols()) != mu2.size() ||
      c1.rows() != cross_cost.rows() || c2.rows() != cross_cost.cols()) {
    throw ValidationError("fgw_solve_pair: inconsistent dimensions");
  }
  const std::vector<Measure> marginals{mu1, mu2};
  const Tensor base = Tensor::FromMatrix(cross_cost);
  auto structure = [&](const Tensor& s) {
    return Tensor::FromMatrix(pairwise_gw_L(c1, c2, s.ToMatrix()));
  };
  ProximalResult r = proximal_solve(base, marginals, structure, config);
  PairSolution out;
  out.coupling = r.coupling.ToMatrix();
  out.value = FgwObjective(cross_cost, c1, c2, out.coupling, config.alpha);
  out.objective = std::move(r.objective);
  return out;
}

Eigen::MatrixXd update_barycenter_structure(
    std::span<const Eigen::MatrixXd> adjacencies,
    std::span<const Eigen::MatrixXd> couplings, const Measure& mu_b,
    std::span<const double> weights) {
  if (adjacencies.size() != couplings.size() ||
      (!weights.empty() && weights.size() != couplings.size())) {
    throw ValidationError("barycenter structure update: list sizes differ");
  }
  CheckBarycenterWeights(mu_b);
  const auto m = static_cast<Eigen::Index>(mu_b.size());
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t i = 0; i < couplings.size(); ++i) {
    const Eigen::MatrixXd& s = couplings[i];
    if (s.cols() != m || s.rows() != adjacencies[i].rows()) {
      throw ValidationError("barycenter structure update: coupling shape mismatch");
    }
    acc += WeightAt(weights, i) * (s.transpose() * adjacencies[i] * s);
  }
  const Eigen::VectorXd& mu = mu_b.weights();
  return acc.cwiseQuotient(mu * mu.transpose());
}

Eigen::MatrixXd update_barycenter_features(
    std::span<const Eigen::MatrixXd> features,
    std::span<const Eigen::MatrixXd> couplings, const Measure& mu_b,
    std::span<const double> weights) {
  if (features.size() != couplings.size() || features.empty() ||
      (!weights.empty() && weights.size() != couplings.size())) {
    throw ValidationError("barycenter feature update: list sizes differ");
  }
  CheckBarycenterWeights(mu_b);
  const auto m = static_cast<Eigen::Index>(mu_b.size());
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(m, features[0].cols());
  for (std::size_t i = 0; i < couplings.size(); ++i) {
    if (features[i].cols() != acc.cols() || couplings[i].rows() != features[i].rows() ||
        couplings[i].cols() != m) {
      throw ValidationError("barycenter feature update: shape mismatch");
    }
    acc += WeightAt(weights, i) * (couplings[i].transpose() * features[i]);
  }
  return mu_b.weights().cwiseInverse().asDiagonal() * acc;
}

BarycenterState barycenter_bcd(std::span<const Eigen::MatrixXd> features,
                               std::span<const Eigen::MatrixXd> adjacencies,
                               std::size_t cluster_count,
                               const BarycenterOptions& options) {
  const std::size_t k = features.size();
  if (k == 0 || adjacencies.size() != k) {
    throw ValidationError("barycenter needs matching feature and adjacency lists");
  }
  if (cluster_count < 1) throw ValidationError("cluster count must be >= 1");
  for (std::size_t i = 0; i < k; ++i) {
    if (features[i].rows() != adjacencies[i].rows()) {
      throw ValidationError("feature rows differ from node count in graph " +
                            std::to_string(i));
    }
    if (static_cast<std::size_t>(features[i].rows()) < cluster_count) {
      throw ValidationError("cluster count " + std::to_string(cluster_count) +
                            " exceeds size of graph " + std::to_string(i));
    }
  }
  options.solver.Validate();
  const double alpha = options.solver.alpha;
  const auto m = static_cast<Eigen::Index>(cluster_count);

  BarycenterState state;
  state.weights = Measure::Uniform(cluster_count);
  {
    std::vector<Eigen::Index> rows(static_cast<std::size_t>(features[0].rows()));
    std::iota(rows.begin(), rows.end(), Eigen::Index{0});
    std::mt19937_64 rng(options.seed);
    std::shuffle(rows.begin(), rows.end(), rng);
    state.features.resize(m, features[0].cols());
    for (Eigen::Index b = 0; b < m; ++b) {
      state.features.row(b) = features[0].row(rows[static_cast<std::size_t>(b)]);
    }
  }
  state.structure = Eigen::MatrixXd::Constant(m, m, MeanEdgeDensity(adjacencies));

  std::vector<Measure> measures;
  for (std::size_t i = 0; i < k; ++i) {
    measures.push_back(Measure::Uniform(static_cast<std::size_t>(features[i].rows())));
    state.couplings.push_back(measures[i].weights() * state.weights.weights().transpose());
  }

  auto total_objective = [&]() {
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      total += FgwObjective(SquaredDistances(features[i], state.features),
                            adjacencies[i], state.structure, state.couplings[i], alpha);
    }
    return total;
  };
  state.objective.push_back(total_objective());

  const std::vector<double> uniform(k, 1.0 / static_cast<double>(k));
  for (int round = 0; round < options.rounds; ++round) {
    for (std::size_t i = 0; i < k; ++i) {
      const Tensor base = Tensor::FromMatrix(SquaredDistances(features[i], state.features));
      const std::vector<Measure> marginals{measures[i], state.weights};
      const Eigen::MatrixXd& a_i = adjacencies[i];
      const Eigen::MatrixXd& a_b = state.structure;
      auto structure = [&](const Tensor& s) {
        return Tensor::FromMatrix(pairwise_gw_L(a_i, a_b, s.ToMatrix()));
      };
      ProximalResult r =
          ProximalSteps(base, marginals, structure, options.solver,
                        Tensor::FromMatrix(state.couplings[i]), options.proximal_steps);
      state.couplings[i] = r.coupling.ToMatrix();
    }
    state.structure = update_barycenter_structure(adjacencies, state.couplings,
                                                  state.weights, uniform);
    state.features = update_barycenter_features(features, state.couplings,
                                                state.weights, uniform);
    const double value = total_objective();
    if (!std::isfinite(value)) {
      throw NumericalError("barycenter objective blew up at round " +
                           std::to_string(round + 1));
    }
    state.objective.push_back(value);
  }
  return state;
}

ClusterAlignment AssignClusters(std::span<const Eigen::MatrixXd> couplings) {
  const std::size_t k = couplings.size();
  if (k == 0) throw ValidationError("no couplings to assign");
  const auto m = static_cast<std::size_t>(couplings[0].cols());
  std::vector<std::vector<std::size_t>> assignment(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (static_cast<std::size_t>(couplings[i].cols()) != m) {
      throw ValidationError("couplings disagree on the barycenter size");
    }
    const Eigen::MatrixXd& s = couplings[i];
    assignment[i].resize(static_cast<std::size_t>(s.rows()));
    for (Eigen::Index v = 0; v < s.rows(); ++v) {
      Eigen::Index best = 0;
      for (Eigen::Index b = 1; b < s.cols(); ++b) {
        if (s(v, b) > s(v, best)) best = b;
      }
      assignment[i][static_cast<std::size_t>(v)] = static_cast<std::size_t>(best);
    }
  }

  // A cluster survives when every graph contributes at least one node.
  std::vector<std::vector<std::size_t>> counts(m, std::vector<std::size_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t c : assignment[i]) ++counts[c][i];
  }
  std::vector<bool> valid(m);
  for (std::size_t c = 0; c < m; ++c) {
    valid[c] = std::all_of(counts[c].begin(), counts[c].end(),
                           [](std::size_t x) { return x > 0; });
  }
  const bool any_valid = std::find(valid.begin(), valid.end(), true) != valid.end();
  for (std::size_t i = 0; i < k; ++i) {
    const Eigen::MatrixXd& s = couplings[i];
    for (std::size_t v = 0; v < assignment[i].size(); ++v) {
      if (valid[assignment[i][v]]) continue;
      if (!any_valid) {
        assignment[i][v] = 0;
        continue;
      }
      std::size_t best = m;
      for (std::size_t b = 0; b < m; ++b) {
        if (!valid[b]) continue;
        if (best == m || s(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(b)) >
                             s(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(best))) {
          best = b;
        }
      }
      assignment[i][v] = best;
    }
  }
  if (!any_valid) {
    valid.assign(m, false);
    valid[0] = true;
  }

  std::vector<std::size_t> dense(m, 0);
  std::size_t next = 0;
  for (std::size_t c = 0; c < m; ++c) {
    if (valid[c]) dense[c] = next++;
  }
  ClusterAlignment out;
  out.clusters.assign(next, std::vector<std::vector<NodeId>>(k));
  out.assignment = std::move(assignment);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t v = 0; v < out.assignment[i].size(); ++v) {
      const std::size_t c = dense[out.assignment[i][v]];
      out.assignment[i][v] = c;
      out.clusters[c][i].push_back(v);
    }
  }
  return out;
}

ClusterAlignment assign_clusters(const BarycenterState& state) {
  return AssignClusters(state.couplings);
}

ClusterAlignment SingleCluster(std::span<const std::size_t> graph_sizes) {
  ClusterAlignment out;
  out.clusters.assign(1, std::vector<std::vector<NodeId>>(graph_sizes.size()));
  for (std::size_t i = 0; i < graph_sizes.size(); ++i) {
    out.assignment.emplace_back(graph_sizes[i], 0);
    for (NodeId v = 0; v < graph_sizes[i]; ++v) out.clusters[0][i].push_back(v);
  }
  return out;
}

}  // namespace hot
