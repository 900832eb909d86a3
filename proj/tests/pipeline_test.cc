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


#include <random>

#include <gtest/gtest.h>

#include "hot/embedding.h"
#include "hot/errors.h"
#include "hot/metrics.h"
#include "hot/mfgw.h"
#include "hot/pipeline.h"

namespace hot {
namespace {

MultiNetworkProblem SmallNoisy(std::size_t n, std::uint64_t seed, double noise = 0.1) {
  NoisyErOptions o;
  o.node_count = n;
  o.edge_probability = std::min(0.5, 6.0 / static_cast<double>(n));
  o.insert_fraction = noise;
  o.remove_fraction = noise;
  o.anchor_fraction = 0.2;
  o.seed = seed;
  return generate_noisy_er(o);
}

ClusterAlignment EqualClusters(std::size_t n, std::size_t k, std::size_t m) {
  ClusterAlignment c;
  c.assignment.assign(k, std::vector<std::size_t>(n));
  c.clusters.assign(m, std::vector<std::vector<NodeId>>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (NodeId v = 0; v < n; ++v) {
      const std::size_t j = v * m / n;
      c.assignment[i][v] = j;
      c.clusters[j][i].push_back(v);
    }
  }
  return c;
}

TEST(Storage, EqualClustersVersusFlat) {
  const ClusterAlignment h = EqualClusters(100, 3, 5);
  const std::vector<std::size_t> sizes{100, 100, 100};
  const ClusterAlignment flat = SingleCluster(sizes);
  EXPECT_EQ(AllocatedElements(h), 40000u);
  EXPECT_EQ(AllocatedElements(flat), 1000000u);
  EXPECT_EQ(AllocatedElements(flat), 25 * AllocatedElements(h));
}

TEST(Pipeline, SingleClusterMatchesFlatSolve) {
  const MultiNetworkProblem p = SmallNoisy(8, 1);
  RunConfig cfg;
  cfg.clusters = 1;
  const AlignmentResult r = hot_align(p, cfg);
  ASSERT_EQ(r.blocks().size(), 1u);
  EXPECT_EQ(r.blocks()[0].coupling.shape(), (Shape{8, 8, 8}));
  EXPECT_EQ(r.AllocatedElements(), 512u);

  const EmbeddingSet e = build_embeddings(p, cfg.beta, false);
  MfgwProblem flat;
  const std::vector<std::vector<NodeId>> rows(3, {0, 1, 2, 3, 4, 5, 6, 7});
  flat.base_cost = cost_tensor(e.embeddings, rows);
  for (const Graph& g : p.graphs) {
    flat.intra_costs.push_back(g.Adjacency());
    flat.marginals.push_back(uniform_measure(g));
  }
  flat.config = cfg.solver;
  const ProximalResult direct = solve_node_alignment(flat);
  EXPECT_LE(L1Distance(direct.coupling, r.blocks()[0].coupling), 1e-12);
}

TEST(Pipeline, LookupAndBlockStructure) {
  const MultiNetworkProblem p = SmallNoisy(12, 2);
  const AlignmentResult r = AlignWithClusters(p, RunConfig{}, EqualClusters(12, 3, 4));
  ASSERT_EQ(r.blocks().size(), 4u);
  double total = 0.0;
  for (NodeId a = 0; a < 12; ++a)
    for (NodeId b = 0; b < 12; ++b)
      for (NodeId c = 0; c < 12; ++c) {
        const NodeId t[3] = {a, b, c};
        const double s = lookup_score(r, t);
        total += s;
        if (a / 3 != b / 3 || a / 3 != c / 3) EXPECT_EQ(s, 0.0);
      }
  // Each 3x3x3 block carries mass 1 under its own uniform marginals.
  EXPECT_NEAR(total, 4.0, 1e-9);
  const AlignmentBlock& block = r.blocks()[1];
  const std::vector<std::size_t> local{0, 2, 1};
  const NodeId global[3] = {3, 5, 4};
  EXPECT_EQ(lookup_score(r, global), block.coupling.at(local));
  const NodeId bad[3] = {0, 0, 12};
  EXPECT_THROW(lookup_score(r, bad), ValidationError);
  const NodeId short_tuple[2] = {0, 0};
  EXPECT_THROW(lookup_score(r, short_tuple), ValidationError);
}

TEST(Pipeline, SingleNodeBlocks) {
  const MultiNetworkProblem p = SmallNoisy(6, 3);
  const AlignmentResult r = AlignWithClusters(p, RunConfig{}, EqualClusters(6, 3, 6));
  for (const AlignmentBlock& b : r.blocks()) EXPECT_EQ(b.coupling[0], 1.0);
}

TEST(Pipeline, DeterministicAcrossRunsAndWorkers) {
  const MultiNetworkProblem p = SmallNoisy(60, 4);
  RunConfig cfg;
  cfg.clusters = 3;
  cfg.seed = 9;
  const AlignmentResult a = hot_align(p, cfg);
  cfg.workers = 3;
  const AlignmentResult b = hot_align(p, cfg);
  ASSERT_EQ(a.clusters().assignment, b.clusters().assignment);
  ASSERT_EQ(a.blocks().size(), b.blocks().size());
  for (std::size_t j = 0; j < a.blocks().size(); ++j) {
    EXPECT_EQ(L1Distance(a.blocks()[j].coupling, b.blocks()[j].coupling), 0.0);
  }
  EXPECT_EQ(a.barycenter_objective, b.barycenter_objective);
}

TEST(Pipeline, CapacityErrorNamesCluster) {
  const MultiNetworkProblem p = SmallNoisy(20, 5);
  RunConfig cfg;
  cfg.element_budget = 1000;
  try {
    AlignWithClusters(p, cfg, SingleCluster(std::vector<std::size_t>{20, 20, 20}));
    FAIL() << "expected a capacity error";
  } catch (const CapacityError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("cluster 0"), std::string::npos);
    EXPECT_NE(msg.find("--clusters"), std::string::npos);
  }
}

TEST(Pipeline, NoAnchorsIsConfigurationError) {
  MultiNetworkProblem p = SmallNoisy(10, 6);
  p.anchors.clear();
  EXPECT_THROW(hot_align(p, RunConfig{}), ConfigurationError);
}

TEST(Pipeline, AutoClustersClampedToGraphSize) {
  const MultiNetworkProblem p = SmallNoisy(10, 7);
  RunConfig cfg;
  cfg.clusters = 50;
  const ClusterStage stage = co_cluster(p, cfg);
  EXPECT_LE(stage.clusters.cluster_count(), 10u);
}

TEST(Pipeline, ZeroNoiseSmallInstance) {
  NoisyErOptions o;
  o.node_count = 30;
  o.edge_probability = 0.2;
  o.insert_fraction = 0.0;
  o.remove_fraction = 0.0;
  o.anchor_fraction = 0.2;
  o.seed = 3;
  const MultiNetworkProblem p = generate_noisy_er(o);
  RunConfig cfg;
  cfg.clusters = 1;
  const AlignmentResult r = hot_align(p, cfg);
  const std::vector<int> ks{1, 10};
  const EvalReport rep = evaluate(r, p.ground_truth, p.anchors, ks);
  EXPECT_GE(rep.pairwise_hits[0], 0.9);
  EXPECT_GE(rep.high_order_hits[1], 0.8);
}

TEST(RunConfig, Validation) {
  RunConfig cfg;
  cfg.beta = 0.0;
  EXPECT_THROW(cfg.Validate(), ConfigurationError);
  cfg = RunConfig{};
  cfg.k_list = {0};
  EXPECT_THROW(cfg.Validate(), ConfigurationError);
}

}  // namespace
}  // namespace hot
