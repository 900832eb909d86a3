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


#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hot/errors.h"
#include "hot/mfgw.h"
#include "hot/ot_kernel.h"
#include "oracles.h"

namespace hot {
namespace {

std::vector<Measure> Uniforms(const Shape& shape) {
  std::vector<Measure> out;
  for (std::size_t n : shape) out.push_back(Measure::Uniform(n));
  return out;
}

Tensor RandomCost(const Shape& shape, std::mt19937_64& rng) {
  Tensor t(shape);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double& x : t.data()) x = u(rng);
  return t;
}

TEST(Sinkhorn, ZeroCostGivesProduct) {
  const Shape shape{2, 3, 4};
  const std::vector<Measure> mu{Measure(Eigen::Vector2d(0.25, 0.75)),
                                Measure(Eigen::Vector3d(0.2, 0.3, 0.5)),
                                Measure::Uniform(4)};
  const SinkhornResult r = sinkhorn_mm(Tensor(shape), mu, SolverConfig{});
  const Tensor p = Tensor::Product(mu);
  EXPECT_LE(L1Distance(r.coupling, p), 1e-12);
}

TEST(Sinkhorn, AntiDiagonalCostMatchesLp) {
  Eigen::Matrix2d cost;
  cost << 0.0, 100.0, 100.0, 0.0;
  const std::vector<Measure> mu = Uniforms({2, 2});
  const SinkhornResult r = sinkhorn_mm(Tensor::FromMatrix(cost), mu, 1e-3, 50, 1e-16);
  const Eigen::Matrix2d lp = oracle::Lp2x2(cost);
  EXPECT_LE((r.coupling.ToMatrix() - lp).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_LE((r.coupling.ToMatrix() - 0.5 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(),
            1e-6);
}

TEST(Sinkhorn, TwoMarginalsMatchClassicScaling) {
  std::mt19937_64 rng(9);
  const Eigen::MatrixXd cost = Eigen::MatrixXd::Random(4, 5).cwiseAbs();
  const Eigen::VectorXd a = Eigen::Vector4d(0.1, 0.2, 0.3, 0.4);
  const Eigen::VectorXd b = Eigen::VectorXd::Constant(5, 0.2);
  SolverConfig cfg;
  cfg.lambda = 0.1;
  cfg.inner_iters = 5000;
  cfg.inner_tol = 1e-15;
  const std::vector<Measure> mu{Measure(a), Measure(b)};
  const SinkhornResult r = sinkhorn_mm(Tensor::FromMatrix(cost), mu, cfg);
  const Eigen::MatrixXd classic = oracle::ClassicSinkhorn(cost, a, b, 0.1, 5000);
  EXPECT_LE((r.coupling.ToMatrix() - classic).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Sinkhorn, ShiftInvariance) {
  std::mt19937_64 rng(3);
  const Shape shape{3, 3, 3};
  const Tensor c = RandomCost(shape, rng);
  Tensor shifted = c;
  for (double& x : shifted.data()) x += 17.0;
  const std::vector<Measure> mu = Uniforms(shape);
  SolverConfig cfg;
  cfg.lambda = 0.05;
  const SinkhornResult a = sinkhorn_mm(c, mu, cfg);
  const SinkhornResult b = sinkhorn_mm(shifted, mu, cfg);
  EXPECT_LE(L1Distance(a.coupling, b.coupling), 1e-10);
}

TEST(Sinkhorn, FeasibleOnRandomCosts) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<std::size_t> dim(1, 5);
    const Shape shape{dim(rng), dim(rng), dim(rng)};
    Tensor c = RandomCost(shape, rng);
    for (double& x : c.data()) x *= 50.0;
    std::vector<Measure> mu;
    for (std::size_t n : shape) {
      Eigen::VectorXd w = Eigen::VectorXd::Random(static_cast<Eigen::Index>(n)).cwiseAbs();
      w.array() += 0.01;
      mu.push_back(Measure::Normalized(w));
    }
    const SinkhornResult r = sinkhorn_mm(c, mu, SolverConfig{});
    EXPECT_LE(MarginalError(r.coupling, mu), 1e-6);
    EXPECT_NEAR(r.coupling.Sum(), 1.0, 1e-9);
    EXPECT_GE(*std::min_element(r.coupling.data().begin(), r.coupling.data().end()), 0.0);
  }
}

TEST(Sinkhorn, RejectsMismatchedMarginals) {
  const std::vector<Measure> mu = Uniforms({2, 3});
  EXPECT_THROW(sinkhorn_mm(Tensor(Shape{2, 2}), mu, SolverConfig{}), ValidationError);
}

TEST(RoundToPolytope, RestoresExactMarginals) {
  std::mt19937_64 rng(5);
  const Shape shape{3, 4, 2};
  Tensor t = RandomCost(shape, rng);
  const std::vector<Measure> mu = Uniforms(shape);
  RoundToPolytope(t, mu);
  EXPECT_LE(MarginalError(t, mu), 1e-14);
}

TEST(SolverConfig, Validation) {
  SolverConfig cfg;
  cfg.lambda = 0.0;
  EXPECT_THROW(cfg.Validate(), ConfigurationError);
  cfg = SolverConfig{};
  cfg.alpha = 1.5;
  EXPECT_THROW(cfg.Validate(), ConfigurationError);
}

TEST(Proximal, PureFeatureTermOnZeroCostIsProduct) {
  const Shape shape{2, 2, 2};
  const std::vector<Measure> mu = Uniforms(shape);
  SolverConfig cfg;
  cfg.alpha = 0.0;
  const ProximalResult r =
      proximal_solve(Tensor(shape), mu, [&](const Tensor& s) { return Tensor(s.shape()); }, cfg);
  EXPECT_LE(L1Distance(r.coupling, Tensor::Product(mu)), 1e-12);
  EXPECT_TRUE(r.converged);
}

MfgwProblem IdenticalPair(const Eigen::MatrixXd& adjacency, double alpha) {
  MfgwProblem p;
  const std::size_t n = static_cast<std::size_t>(adjacency.rows());
  p.base_cost = Tensor(Shape{n, n});
  p.intra_costs = {adjacency, adjacency};
  p.marginals = Uniforms({n, n});
  p.config.alpha = alpha;
  return p;
}

TEST(Proximal, IdenticalThreeNodeGraphsReachZero) {
  const Graph path = ParseGraph("3 2\n0 1\n1 2");
  const ProximalResult r = solve_node_alignment(IdenticalPair(path.Adjacency(), 1.0));
  EXPECT_LE(r.objective.back(), 1e-6);
  EXPECT_LE(r.marginal_error, 1e-6);
}

TEST(Proximal, ObjectiveTraceIsMonotone) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(seed);
    MfgwProblem p;
    const Shape shape{4, 4, 4};
    p.base_cost = RandomCost(shape, rng);
    for (int i = 0; i < 3; ++i) p.intra_costs.push_back(oracle::RandomSymmetric(4, rng));
    p.marginals = Uniforms(shape);
    const ProximalResult r = solve_node_alignment(p);
    ASSERT_EQ(r.objective.size(), r.step_change.size() + 1);
    for (std::size_t t = 1; t < r.objective.size(); ++t) {
      EXPECT_LE(r.objective[t], r.objective[t - 1] + 1e-8) << "seed " << seed << " step " << t;
    }
    EXPECT_LE(r.marginal_error, 1e-6);
    EXPECT_NEAR(r.coupling.Sum(), 1.0, 1e-9);
  }
}

TEST(Proximal, WarmStartContinues) {
  const Graph path = ParseGraph("4 3\n0 1\n1 2\n2 3");
  MfgwProblem p = IdenticalPair(path.Adjacency(), 0.5);
  std::mt19937_64 rng(1);
  p.base_cost = RandomCost({4, 4}, rng);
  auto structure = [&](const Tensor& s) { return mfgw_L_tensor(p.intra_costs, s); };
  auto objective = [&](const Tensor& s) { return mfgw_objective(p, s); };
  const ProximalResult first = ProximalSteps(p.base_cost, p.marginals, structure, p.config,
                                             Tensor::Product(p.marginals), 3, objective);
  const ProximalResult more = ProximalSteps(p.base_cost, p.marginals, structure, p.config,
                                            first.coupling, 3, objective);
  EXPECT_NEAR(more.objective.front(), first.objective.back(), 1e-12);
  EXPECT_LE(more.objective.back(), first.objective.back() + 1e-8);
}

}  // namespace
}  // namespace hot
