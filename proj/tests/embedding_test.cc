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

#include "hot/embedding.h"
#include "hot/errors.h"
#include "oracles.h"

namespace hot {
namespace {

TEST(Rwr, SelfLoopSingleNode) {
  const Graph g(1, {{0, 0, 1.0}});
  const Eigen::VectorXd r = rwr_scores(g, 0, 0.15);
  ASSERT_EQ(r.size(), 1);
  EXPECT_NEAR(r[0], 1.0, 1e-12);
}

TEST(Rwr, PureRestartIsOneHot) {
  std::mt19937_64 rng(1);
  const Graph g = oracle::RandomConnectedGraph(8, 0.3, rng);
  const Eigen::VectorXd r = rwr_scores(g, 5, 1.0);
  for (Eigen::Index v = 0; v < 8; ++v) EXPECT_DOUBLE_EQ(r[v], v == 5 ? 1.0 : 0.0);
}

TEST(Rwr, TwoNodePathMatchesDirectSolve) {
  const Graph g = ParseGraph("2 1\n0 1");
  const Eigen::VectorXd r = rwr_scores(g, 0, 0.15);
  const Eigen::VectorXd direct = oracle::RwrDirect(g.Adjacency(), 0, 0.15);
  EXPECT_NEAR(r[0], 0.540540, 1e-6);
  EXPECT_NEAR(r[1], 0.459459, 1e-6);
  EXPECT_NEAR((r - direct).lpNorm<1>(), 0.0, 1e-7);
}

TEST(Rwr, ResidualAndSimplexOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(seed);
    const Graph g = oracle::RandomConnectedGraph(12, 0.2, rng);
    const Eigen::VectorXd r = rwr_scores(g, seed % 12, 0.15);
    const Eigen::VectorXd direct = oracle::RwrDirect(g.Adjacency(), seed % 12, 0.15);
    EXPECT_NEAR(r.sum(), 1.0, 1e-8);
    EXPECT_GE(r.minCoeff(), 0.0);
    EXPECT_LE((r - direct).lpNorm<1>(), 1e-7);
  }
}

TEST(Rwr, RejectsBadInputs) {
  const Graph g = ParseGraph("2 1\n0 1");
  EXPECT_THROW(rwr_scores(g, 2, 0.15), ValidationError);
  EXPECT_THROW(rwr_scores(g, 0, 0.0), ValidationError);
}

TEST(Rwr, TransitionMatrixIsColumnStochastic) {
  std::mt19937_64 rng(4);
  const Graph g = oracle::RandomConnectedGraph(9, 0.3, rng);
  const Eigen::MatrixXd w(TransitionMatrix(g));
  for (Eigen::Index c = 0; c < w.cols(); ++c) EXPECT_NEAR(w.col(c).sum(), 1.0, 1e-12);
}

MultiNetworkProblem PathPair() {
  MultiNetworkProblem p;
  p.graphs = {ParseGraph("5 4\n0 1\n1 2\n2 3\n3 4"), ParseGraph("5 4\n0 1\n1 2\n2 3\n3 4")};
  p.anchors = {{0, 0}, {2, 2}, {4, 4}};
  return p;
}

TEST(Embeddings, PlainGraphColumnsAreDistributions) {
  const EmbeddingSet e = build_embeddings(PathPair(), 0.15, false);
  EXPECT_FALSE(e.attributes_concatenated);
  for (const Eigen::MatrixXd& z : e.embeddings) {
    ASSERT_EQ(z.cols(), 3);
    for (Eigen::Index c = 0; c < 3; ++c) {
      EXPECT_NEAR(z.col(c).sum(), 1.0, 1e-8);
      EXPECT_GE(z.col(c).minCoeff(), 0.0);
    }
  }
}

TEST(Embeddings, AttributesAreConcatenated) {
  std::mt19937_64 rng(2);
  MultiNetworkProblem p;
  for (int i = 0; i < 2; ++i) {
    const Graph base = oracle::RandomConnectedGraph(12, 0.2, rng);
    p.graphs.emplace_back(12, base.edges(), Eigen::MatrixXd::Random(12, 17));
  }
  for (NodeId v = 0; v < 5; ++v) p.anchors.push_back({v, v});
  const EmbeddingSet e = build_embeddings(p, 0.15, true);
  EXPECT_TRUE(e.attributes_concatenated);
  EXPECT_EQ(e.embeddings[0].cols(), 22);
  EXPECT_EQ(e.positional[0].cols(), 5);
}

TEST(Embeddings, MissingAttributesIsConfigError) {
  std::mt19937_64 rng(2);
  MultiNetworkProblem p;
  const Graph base = oracle::RandomConnectedGraph(6, 0.2, rng);
  p.graphs.emplace_back(6, base.edges(), Eigen::MatrixXd::Random(6, 3));
  p.graphs.push_back(base);
  p.anchors = {{0, 0}};
  EXPECT_THROW(build_embeddings(p, 0.15, true), ConfigurationError);
  EXPECT_NO_THROW(build_embeddings(p, 0.15, false));
}

TEST(Embeddings, IsomorphismCommutes) {
  std::mt19937_64 rng(10);
  const Graph g1 = oracle::RandomConnectedGraph(10, 0.25, rng);
  std::vector<NodeId> perm(10);
  std::iota(perm.begin(), perm.end(), NodeId{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Edge> edges;
  for (const Edge& e : g1.edges()) edges.push_back({perm[e.u], perm[e.v], e.weight});
  MultiNetworkProblem p;
  p.graphs = {g1, Graph(10, edges)};
  p.anchors = {{1, perm[1]}, {6, perm[6]}};
  const EmbeddingSet e = build_embeddings(p, 0.15, false);
  for (NodeId v = 0; v < 10; ++v) {
    for (Eigen::Index c = 0; c < 2; ++c) {
      EXPECT_NEAR(e.embeddings[0](static_cast<Eigen::Index>(v), c),
                  e.embeddings[1](static_cast<Eigen::Index>(perm[v]), c), 1e-8);
    }
  }
}

TEST(CostTensor, IdenticalEmbeddingsGiveZeroDiagonal) {
  const Eigen::MatrixXd z = Eigen::MatrixXd::Random(3, 2);
  const std::vector<Eigen::MatrixXd> zs{z, z, z};
  const std::vector<std::vector<NodeId>> rows(3, {0, 1, 2});
  const Tensor c = cost_tensor(zs, rows);
  for (std::size_t v = 0; v < 3; ++v) {
    const std::vector<std::size_t> idx{v, v, v};
    EXPECT_NEAR(c.at(idx), 0.0, 1e-15);
  }
}

TEST(CostTensor, HandExample) {
  Eigen::MatrixXd a(2, 1), b(2, 1), d(2, 1);
  a << 0, 1;
  b << 0, 1;
  d << 0, 1;
  const std::vector<Eigen::MatrixXd> zs{a, b, d};
  const std::vector<std::vector<NodeId>> rows(3, {0, 1});
  const Tensor c = cost_tensor(zs, rows);
  // |0-1| + |0-1| + |1-1|
  const std::vector<std::size_t> idx{0, 1, 1};
  EXPECT_DOUBLE_EQ(c.at(idx), 2.0);
}

TEST(CostTensor, TwoGraphsGiveDistanceMatrix) {
  const Eigen::MatrixXd a = Eigen::MatrixXd::Random(4, 3);
  const Eigen::MatrixXd b = Eigen::MatrixXd::Random(5, 3);
  const std::vector<Eigen::MatrixXd> zs{a, b};
  const std::vector<std::vector<NodeId>> rows{{0, 1, 2, 3}, {0, 1, 2, 3, 4}};
  const Tensor c = cost_tensor(zs, rows);
  EXPECT_TRUE(c.ToMatrix().isApprox(cross_cost_matrix(a, b), 1e-14));
}

TEST(CostTensor, NodeSubsetsPickRows) {
  const Eigen::MatrixXd a = Eigen::MatrixXd::Random(4, 2);
  const Eigen::MatrixXd b = Eigen::MatrixXd::Random(4, 2);
  const std::vector<Eigen::MatrixXd> zs{a, b};
  const std::vector<std::vector<NodeId>> rows{{3, 1}, {2}};
  const Tensor c = cost_tensor(zs, rows);
  ASSERT_EQ(c.shape(), (Shape{2, 1}));
  EXPECT_NEAR(c[0], (a.row(3) - b.row(2)).norm(), 1e-15);
  EXPECT_NEAR(c[1], (a.row(1) - b.row(2)).norm(), 1e-15);
}

TEST(CostTensor, BudgetRaisesCapacityError) {
  const Eigen::MatrixXd z = Eigen::MatrixXd::Random(10, 2);
  const std::vector<Eigen::MatrixXd> zs{z, z, z};
  const std::vector<std::vector<NodeId>> rows(3, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  EXPECT_THROW(cost_tensor(zs, rows, 999), CapacityError);
  EXPECT_NO_THROW(cost_tensor(zs, rows, 1000));
}

TEST(CrossCost, Examples) {
  Eigen::MatrixXd a(2, 2);
  a << 0, 0, 3, 4;
  const Eigen::MatrixXd d = cross_cost_matrix(a, a);
  EXPECT_DOUBLE_EQ(d(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(d(1, 1), 0.0);
  EXPECT_DOUBLE_EQ(d(0, 1), 5.0);

  const Eigen::MatrixXd x = Eigen::MatrixXd::Random(4, 2);
  const Eigen::MatrixXd y = Eigen::MatrixXd::Random(3, 2);
  const Eigen::MatrixXd c = cross_cost_matrix(x, y);
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) {
      const double dx = x(i, 0) - y(j, 0);
      const double dy = x(i, 1) - y(j, 1);
      EXPECT_NEAR(c(i, j), std::sqrt(dx * dx + dy * dy), 1e-14);
    }
  }
  EXPECT_THROW(cross_cost_matrix(x, Eigen::MatrixXd::Random(3, 3)), ValidationError);
}

}  // namespace
}  // namespace hot
