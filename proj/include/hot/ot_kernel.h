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

#ifndef HOT_OT_KERNEL_H_
#define HOT_OT_KERNEL_H_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "hot/graph.h"
#include "hot/tensor.h"

namespace hot {

struct SolverConfig {
  // Entropic / proximal weight.
  double lambda = 1e-3;
  // Trade-off between the feature (Wasserstein) and structure (GW) terms.
  double alpha = 0.5;
  // Proximal point rounds T.
  int outer_iters = 20;
  // Sinkhorn rounds L per proximal step. A round updates every axis once.
  int inner_iters = 50;
  // Early stop once ||S(t+1) - S(t)||_1 drops below this.
  double outer_tol = 1e-6;
  // Clamp applied before taking logarithms of couplings and marginals.
  double log_floor = 1e-16;
  // Sinkhorn stops early once every axis marginal is within this L1 error.
  double inner_tol = 1e-10;
  // Allowed per-step increase of the objective trace.
  double monotone_slack = 1e-8;
  // A proximal step that raises the objective by more than monotone_slack is
  // retried with a doubled proximal weight, at most max_backtracks times;
  // the weight relaxes back towards lambda after each accepted step.
  bool enforce_monotone = true;
  int max_backtracks = 30;

  void Validate() const;
};

struct SinkhornResult {
  Tensor coupling;
  // Largest per-axis L1 marginal violation of the returned coupling.
  double marginal_error = 0.0;
  int rounds = 0;
};

// Entropic multi-marginal Sinkhorn on the kernel exp(-Q / lambda), cycling
// the scaling updates over axes 0..K-1. Runs in log domain.
SinkhornResult sinkhorn_mm(const Tensor& cost, std::span<const Measure> marginals,
                           double lambda, int inner_iters, double log_floor);
SinkhornResult sinkhorn_mm(const Tensor& cost, std::span<const Measure> marginals,
                           const SolverConfig& config);

// Sinkhorn on the kernel exp(-cost / lambda) * exp(log_prior); `cost` must be
// nonnegative. A null prior means the all-ones kernel factor. When given,
// `warm_potentials` seeds the dual potentials (cost units, one vector per
// axis; ignored unless the sizes match) and receives the final ones.
SinkhornResult SinkhornWithPrior(const Tensor& cost, const Tensor* log_prior,
                                 std::span<const Measure> marginals,
                                 const SolverConfig& config,
                                 std::vector<Eigen::VectorXd>* warm_potentials = nullptr);

// Shrinks every axis to at most its marginal, then adds the rank-one
// correction that makes all marginals exact.
void RoundToPolytope(Tensor& t, std::span<const Measure> marginals);

// Linearized structure term L(S) of the quadratic objective.
using StructureTerm = std::function<Tensor(const Tensor&)>;
// Objective <(1 - alpha) C + alpha L(S), S>.
using ObjectiveFn = std::function<double(const Tensor&)>;

struct ProximalResult {
  Tensor coupling;
  // objective[0] is the value at the product initialization; one more entry
  // per proximal step.
  std::vector<double> objective;
  // ||S(t+1) - S(t)||_1 per proximal step.
  std::vector<double> step_change;
  double marginal_error = 0.0;
  bool converged = false;
  int sinkhorn_rounds = 0;
  // Steps retried with a heavier proximal weight.
  int backtracks = 0;
};

// Proximal point method with KL proximity: every step solves
//   min <(1 - alpha) C + alpha L(S_t), S> + lambda KL(S || S_t)
// over the coupling polytope by Sinkhorn on
//   Q_t = (1 - alpha) C + alpha L(S_t) - lambda log max(S_t, log_floor).
// Starts from the product of the marginals. With enforce_monotone set, a
// rising step is retried with a heavier proximal weight and NumericalError is
// thrown once the retries run out.
ProximalResult proximal_solve(const Tensor& base_cost,
                              std::span<const Measure> marginals,
                              const StructureTerm& structure_term,
                              const SolverConfig& config,
                              const ObjectiveFn& objective_fn = nullptr);

// Warm-started variant running `steps` proximal steps from `initial`.
ProximalResult ProximalSteps(const Tensor& base_cost,
                             std::span<const Measure> marginals,
                             const StructureTerm& structure_term,
                             const SolverConfig& config, Tensor initial,
                             int steps, const ObjectiveFn& objective_fn = nullptr);

// Largest per-axis L1 deviation of the tensor's marginals from the measures.
double MarginalError(const Tensor& t, std::span<const Measure> marginals);

}  // namespace hot

#endif  // HOT_OT_KERNEL_H_
