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

#include "hot/ot_kernel.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "hot/errors.h"

namespace hot {
namespace {

// Marginal entries below this send the scaling iteration back to log domain.
constexpr double kLinearFloor = 1e-200;

// Per-slice log(sum(exp(g))) along `axis`, i.e. log P_axis(exp(g)).
Eigen::VectorXd LogMarginal(const Tensor& g, std::size_t axis) {
  const std::size_t n = g.dim(axis);
  const std::size_t inner = g.stride(axis);
  const std::size_t outer = g.size() / (inner * n);
  const double* data = g.data().data();
  Eigen::VectorXd peak = Eigen::VectorXd::Constant(
      static_cast<Eigen::Index>(n), -std::numeric_limits<double>::infinity());
  const double* p = data;
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < n; ++i) {
      double m = peak[static_cast<Eigen::Index>(i)];
      for (std::size_t r = 0; r < inner; ++r, ++p) m = std::max(m, *p);
      peak[static_cast<Eigen::Index>(i)] = m;
    }
  }
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  p = data;
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < n; ++i) {
      const double m = peak[static_cast<Eigen::Index>(i)];
      double s = 0.0;
      for (std::size_t r = 0; r < inner; ++r, ++p) s += std::exp(*p - m);
      sum[static_cast<Eigen::Index>(i)] += s;
    }
  }
  return peak.array() + sum.array().log();
}

std::string FormatTrace(const std::vector<double>& trace) {
  std::ostringstream ss;
  ss.precision(12);
  ss << '[';
  for (std::size_t i = 0; i < trace.size(); ++i) ss << (i ? ", " : "") << trace[i];
  ss << ']';
  return ss.str();
}

void CheckMarginals(const Tensor& t, std::span<const Measure> marginals) {
  if (marginals.size() != t.rank()) {
    throw ValidationError("expected " + std::to_string(t.rank()) +
                          " marginals, got " + std::to_string(marginals.size()));
  }
  for (std::size_t k = 0; k < marginals.size(); ++k) {
    if (marginals[k].size() != t.dim(k)) {
      throw ValidationError("marginal " + std::to_string(k) +
                            " length does not match tensor axis");
    }
  }
}

double MinEntry(const Tensor& t) {
  double m = std::numeric_limits<double>::infinity();
  for (double v : t.data()) {
    if (!std::isfinite(v)) throw NumericalError("non-finite cost entry");
    m = std::min(m, v);
  }
  return m;
}

void ScaleAxis(Tensor& t, std::size_t axis, const Eigen::VectorXd& factor) {
  const std::size_t n = t.dim(axis);
  const std::size_t inner = t.stride(axis);
  const std::size_t outer = t.size() / (inner * n);
  double* p = t.data().data();
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < n; ++i) {
      const double f = factor[static_cast<Eigen::Index>(i)];
      for (std::size_t r = 0; r < inner; ++r, ++p) *p *= f;
    }
  }
}

}  // namespace

void SolverConfig::Validate() const {
  if (!(lambda > 0.0)) throw ConfigurationError("lambda must be positive");
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ConfigurationError("alpha must lie in [0, 1]");
  }
  if (outer_iters < 1 || inner_iters < 1) {
    throw ConfigurationError("iteration counts must be positive");
  }
  if (!(log_floor > 0.0)) throw ConfigurationError("log floor must be positive");
  if (!(outer_tol >= 0.0)) throw ConfigurationError("tolerance must be >= 0");
  if (max_backtracks < 0) throw ConfigurationError("max_backtracks must be >= 0");
}

double MarginalError(const Tensor& t, std::span<const Measure> marginals) {
  double worst = 0.0;
  for (std::size_t k = 0; k < marginals.size(); ++k) {
    worst = std::max(worst, (marginal_sum(t, k) - marginals[k].weights()).lpNorm<1>());
  }
  return worst;
}

void RoundToPolytope(Tensor& t, std::span<const Measure> marginals) {
  CheckMarginals(t, marginals);
  const std::size_t rank = t.rank();
  for (std::size_t k = 0; k < rank; ++k) {
    const Eigen::VectorXd r = marginal_sum(t, k);
    Eigen::VectorXd scale(r.size());
    for (Eigen::Index v = 0; v < r.size(); ++v) {
      const double mu = marginals[k][static_cast<std::size_t>(v)];
      scale[v] = r[v] > mu ? mu / r[v] : 1.0;
    }
    ScaleAxis(t, k, scale);
  }
  std::vector<Eigen::VectorXd> deficit;
  for (std::size_t k = 0; k < rank; ++k) {
    deficit.push_back((marginals[k].weights() - marginal_sum(t, k)).cwiseMax(0.0));
  }
  const double missing = deficit[0].sum();
  if (!(missing > 0.0)) return;
  // Every deficit vector carries the same mass, so the rank-one tensor
  // prod_k deficit_k / missing^(K-1) restores each marginal exactly.
  const double norm = std::pow(missing, static_cast<double>(rank) - 1.0);
  ForEachIndex(t.shape(), [&](std::size_t linear, std::span<const std::size_t> idx) {
    double v = 1.0;
    for (std::size_t k = 0; k < rank; ++k) v *= deficit[k][static_cast<Eigen::Index>(idx[k])];
    t[linear] += v / norm;
  });
}

SinkhornResult SinkhornWithPrior(const Tensor& cost, const Tensor* log_prior,
                                 std::span<const Measure> marginals,
                                 const SolverConfig& config,
                                 std::vector<Eigen::VectorXd>* warm_potentials) {
  CheckMarginals(cost, marginals);
  if (log_prior != nullptr && log_prior->shape() != cost.shape()) {
    throw ValidationError("log prior shape mismatch");
  }
  const std::size_t rank = cost.rank();
  std::vector<Eigen::VectorXd> mu;
  std::vector<Eigen::VectorXd> log_mu;
  std::vector<Eigen::VectorXd> potential;
  for (const Measure& m : marginals) {
    mu.push_back(m.weights().cwiseMax(config.log_floor));
    log_mu.push_back(mu.back().array().log().matrix());
    potential.push_back(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m.size())));
  }
  if (warm_potentials != nullptr && warm_potentials->size() == rank) {
    bool fits = true;
    for (std::size_t k = 0; k < rank; ++k) {
      fits &= (*warm_potentials)[k].size() == potential[k].size() &&
              (*warm_potentials)[k].allFinite();
    }
    if (fits) potential = *warm_potentials;
  }
  // Invariant: the iterate equals
  // exp((sum_k potential_k - cost) / lambda + prior).
  auto build_log = [&](double lambda) {
    Tensor g = cost;
    auto gd = g.data();
    for (std::size_t i = 0; i < gd.size(); ++i) {
      gd[i] = -gd[i] / lambda + (log_prior ? (*log_prior)[i] : 0.0);
    }
    for (std::size_t k = 0; k < rank; ++k) AddAxisTerm(g, k, potential[k], 1.0 / lambda);
    return g;
  };
  int rounds = 0;
  auto log_sweep = [&](Tensor& g, double lambda) {
    double worst = 0.0;
    for (std::size_t k = 0; k < rank; ++k) {
      const Eigen::VectorXd lse = LogMarginal(g, k);
      if (!lse.allFinite()) {
        throw NumericalError("non-finite Sinkhorn potential at round " +
                             std::to_string(rounds + 1) + ", axis " + std::to_string(k));
      }
      worst = std::max(
          worst, (lse.array().exp().matrix() - marginals[k].weights()).lpNorm<1>());
      const Eigen::VectorXd step = log_mu[k] - lse;
      AddAxisTerm(g, k, step);
      potential[k] += lambda * step;
    }
    ++rounds;
    return worst;
  };
  // Same update on the exponentiated iterate. Returns a negative value when a
  // slice has underflowed and the log domain must take over.
  auto linear_sweep = [&](Tensor& t, double lambda) {
    double worst = 0.0;
    for (std::size_t k = 0; k < rank; ++k) {
      const Eigen::VectorXd r = marginal_sum(t, k);
      if (!(r.minCoeff() > kLinearFloor) || !r.allFinite()) return -1.0;
      worst = std::max(worst, (r - marginals[k].weights()).lpNorm<1>());
      const Eigen::VectorXd ratio = mu[k].cwiseQuotient(r);
      ScaleAxis(t, k, ratio);
      potential[k] += lambda * ratio.array().log().matrix();
    }
    ++rounds;
    return worst;
  };
  Tensor g = build_log(config.lambda);
  double peak = -std::numeric_limits<double>::infinity();
  for (double v : g.data()) peak = std::max(peak, v);
  if (!std::isfinite(peak)) throw NumericalError("non-finite Sinkhorn kernel");
  potential[0].array() -= config.lambda * peak;
  Tensor t = g;
  for (double& v : t.data()) v = std::exp(v - peak);
  bool linear = true;
  for (int r = 0; r < config.inner_iters; ++r) {
    double worst = linear ? linear_sweep(t, config.lambda) : log_sweep(g, config.lambda);
    if (worst < 0.0) {
      linear = false;
      g = build_log(config.lambda);
      worst = log_sweep(g, config.lambda);
    }
    if (worst <= config.inner_tol) break;
  }
  if (!linear) {
    for (double& v : g.data()) v = std::exp(v);
    t = std::move(g);
  }
  RoundToPolytope(t, marginals);
  if (warm_potentials != nullptr) *warm_potentials = std::move(potential);
  SinkhornResult result;
  result.rounds = rounds;
  result.marginal_error = MarginalError(t, marginals);
  result.coupling = std::move(t);
  return result;
}

SinkhornResult sinkhorn_mm(const Tensor& cost, std::span<const Measure> marginals,
                           const SolverConfig& config) {
  config.Validate();
  CheckMarginals(cost, marginals);
  // The minimum is subtracted first; a constant shift of Q cancels in the
  // scaling updates anyway.
  const double shift = MinEntry(cost);
  Tensor shifted = cost;
  for (double& v : shifted.data()) v -= shift;
  return SinkhornWithPrior(shifted, nullptr, marginals, config);
}

SinkhornResult sinkhorn_mm(const Tensor& cost, std::span<const Measure> marginals,
                           double lambda, int inner_iters, double log_floor) {
  SolverConfig config;
  config.lambda = lambda;
  config.inner_iters = inner_iters;
  config.log_floor = log_floor;
  return sinkhorn_mm(cost, marginals, config);
}

ProximalResult ProximalSteps(const Tensor& base_cost,
                             std::span<const Measure> marginals,
                             const StructureTerm& structure_term,
                             const SolverConfig& config, Tensor initial,
                             int steps, const ObjectiveFn& objective_fn) {
  config.Validate();
  CheckMarginals(base_cost, marginals);
  if (initial.shape() != base_cost.shape()) {
    throw ValidationError("initial coupling shape mismatch");
  }
  const double alpha = config.alpha;
  auto linear_cost = [&](const Tensor& s) {
    Tensor g = base_cost;
    for (double& v : g.data()) v *= (1.0 - alpha);
    if (alpha > 0.0 && structure_term) {
      const Tensor l = structure_term(s);
      auto gd = g.data();
      auto ld = l.data();
      for (std::size_t i = 0; i < gd.size(); ++i) gd[i] += alpha * ld[i];
    }
    return g;
  };
  auto objective = [&](const Tensor& s) {
    return objective_fn ? objective_fn(s) : Inner(linear_cost(s), s);
  };

  ProximalResult result;
  result.coupling = std::move(initial);
  result.objective.push_back(objective(result.coupling));
  SolverConfig inner = config;
  // Dual potentials carried from one step to the next; near a stationary
  // point they barely move, so the inner rounds start almost converged.
  std::vector<Eigen::VectorXd> warm;
  for (int t = 0; t < steps; ++t) {
    Tensor g = linear_cost(result.coupling);
    const double shift = MinEntry(g);
    for (double& v : g.data()) v -= shift;
    Tensor prior = result.coupling;
    for (double& v : prior.data()) v = std::log(std::max(v, config.log_floor));
    const double previous = result.objective.back();
    SinkhornResult step;
    double value = 0.0;
    std::vector<Eigen::VectorXd> potentials;
    for (int attempt = 0;; ++attempt) {
      potentials = warm;
      step = SinkhornWithPrior(g, &prior, marginals, inner, &potentials);
      result.sinkhorn_rounds += step.rounds;
      value = objective(step.coupling);
      if (!std::isfinite(value)) {
        throw NumericalError("non-finite objective at proximal step " +
                             std::to_string(t + 1));
      }
      if (!config.enforce_monotone || value <= previous + config.monotone_slack) break;
      if (attempt == config.max_backtracks) {
        std::vector<double> trace = result.objective;
        trace.push_back(value);
        throw NumericalError("solver instability: objective increased at proximal step " +
                             std::to_string(t + 1) + ", trace " + FormatTrace(trace));
      }
      // A heavier proximal weight shortens the step.
      inner.lambda *= 2.0;
      ++result.backtracks;
    }
    warm = std::move(potentials);
    const double change = L1Distance(step.coupling, result.coupling);
    result.objective.push_back(value);
    result.step_change.push_back(change);
    result.coupling = std::move(step.coupling);
    result.marginal_error = step.marginal_error;
    inner.lambda = std::max(config.lambda, inner.lambda / 2.0);
    if (change < config.outer_tol) {
      result.converged = true;
      break;
    }
  }
  if (steps == 0) result.marginal_error = MarginalError(result.coupling, marginals);
  return result;
}

ProximalResult proximal_solve(const Tensor& base_cost,
                              std::span<const Measure> marginals,
                              const StructureTerm& structure_term,
                              const SolverConfig& config,
                              const ObjectiveFn& objective_fn) {
  CheckMarginals(base_cost, marginals);
  return ProximalSteps(base_cost, marginals, structure_term, config,
                       Tensor::Product(marginals), config.outer_iters, objective_fn);
}

}  // namespace hot
