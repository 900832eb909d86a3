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


#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "hot/errors.h"
#include "hot/metrics.h"
#include "oracles.h"

namespace hot {
namespace {

// Builds a result from a per-graph cluster assignment and fills each block
// with fill(block, linear index).
template <typename Fill>
AlignmentResult MakeResult(const std::vector<std::vector<std::size_t>>& assignment,
                           std::size_t m, Fill fill) {
  ClusterAlignment c;
  c.assignment = assignment;
  c.clusters.assign(m, std::vector<std::vector<NodeId>>(assignment.size()));
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    sizes.push_back(assignment[i].size());
    for (NodeId v = 0; v < assignment[i].size(); ++v) c.clusters[assignment[i][v]][i].push_back(v);
  }
  std::vector<AlignmentBlock> blocks(m);
  for (std::size_t j = 0; j < m; ++j) {
    blocks[j].cluster_id = j;
    blocks[j].members = c.clusters[j];
    Shape shape;
    for (const auto& mem : c.clusters[j]) shape.push_back(mem.size());
    blocks[j].coupling = Tensor(shape);
    for (std::size_t e = 0; e < blocks[j].coupling.size(); ++e) {
      blocks[j].coupling[e] = fill(j, e);
    }
  }
  return AlignmentResult(sizes, std::move(c), std::move(blocks), RunConfig{});
}

AlignmentResult OneBlock(const Tensor& t) {
  std::vector<std::vector<std::size_t>> assignment;
  for (std::size_t n : t.shape()) assignment.push_back(std::vector<std::size_t>(n, 0));
  return MakeResult(assignment, 1, [&](std::size_t, std::size_t e) { return t[e]; });
}

TEST(Evaluate, PerfectResult) {
  Tensor t(Shape{4, 4, 4});
  const std::vector<NodeTuple> truth{{0, 2, 1}, {1, 0, 3}, {2, 3, 0}, {3, 1, 2}};
  for (const NodeTuple& x : truth) t.at(x) = 0.25;
  const std::vector<int> ks{1, 5};
  const EvalReport r = evaluate(OneBlock(t), truth, {}, ks);
  EXPECT_EQ(r.test_count, 4u);
  EXPECT_DOUBLE_EQ(r.pairwise_hits[0], 1.0);
  EXPECT_DOUBLE_EQ(r.high_order_hits[0], 1.0);
  EXPECT_DOUBLE_EQ(r.mrr, 1.0);
  EXPECT_DOUBLE_EQ(r.per_pair_hits[0][0], 1.0);
}

TEST(Evaluate, HandExample) {
  Tensor t(Shape{2, 2, 2});
  const double values[8] = {0.4, 0.05, 0.03, 0.02, 0.2, 0.15, 0.05, 0.1};
  for (std::size_t e = 0; e < 8; ++e) t[e] = values[e];
  const std::vector<NodeTuple> truth{{0, 0, 0}, {1, 1, 1}};
  const std::vector<int> ks{1, 3};
  const EvalReport r = evaluate(OneBlock(t), truth, {}, ks);
  EXPECT_DOUBLE_EQ(r.high_order_hits[0], 0.5);
  EXPECT_DOUBLE_EQ(r.high_order_hits[1], 1.0);
  EXPECT_NEAR(r.mrr, 2.0 / 3.0, 1e-15);
}

TEST(Evaluate, AnchorsAreExcluded) {
  Tensor t(Shape{2, 2});
  t[0] = t[3] = 0.5;
  const std::vector<NodeTuple> truth{{0, 0}, {1, 1}};
  const std::vector<NodeTuple> anchors{{0, 0}};
  const std::vector<int> ks{1};
  const EvalReport r = evaluate(OneBlock(t), truth, anchors, ks);
  EXPECT_EQ(r.test_count, 1u);
  const std::vector<NodeTuple> all_anchors = truth;
  EXPECT_THROW(evaluate(OneBlock(t), truth, all_anchors, ks), ValidationError);
}

TEST(Evaluate, StraddlingTruthIsMiss) {
  // Clusters {0,1} and {2} in both graphs; truth (0, 2) straddles.
  const std::vector<std::vector<std::size_t>> assignment{{0, 0, 1}, {0, 0, 1}};
  const AlignmentResult r = MakeResult(assignment, 2, [](std::size_t j, std::size_t e) {
    return j == 0 ? 0.1 + 0.1 * static_cast<double>(e) : 1.0;
  });
  const std::vector<NodeTuple> truth{{0, 2}};
  const std::vector<int> ks{1, 2, 10};
  const EvalReport e = evaluate(r, truth, {}, ks);
  for (std::size_t q = 0; q < 3; ++q) {
    EXPECT_EQ(e.high_order_hits[q], 0.0);
    EXPECT_EQ(e.pairwise_hits[q], 0.0);
  }
  // Two positive candidates for x1 = 0.
  EXPECT_NEAR(e.mrr, 1.0 / 3.0, 1e-15);
  const NodeTuple straddle{0, 2};
  EXPECT_EQ(lookup_score(r, straddle), 0.0);
}

TEST(Evaluate, InvalidTruthIsValidationError) {
  Tensor t(Shape{2, 2}, 0.25);
  const std::vector<NodeTuple> truth{{0, 5}};
  const std::vector<int> ks{1};
  EXPECT_THROW(evaluate(OneBlock(t), truth, {}, ks), ValidationError);
}

TEST(Evaluate, MatchesBruteForceRanking) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + static_cast<std::size_t>(trial % 3);
    std::uniform_int_distribution<std::size_t> dim(2, k == 4 ? 4 : 6);
    const std::size_t n = dim(rng);
    std::uniform_int_distribution<std::size_t> mdist(1, std::min<std::size_t>(3, n));
    const std::size_t m = mdist(rng);
    std::vector<std::vector<std::size_t>> assignment(k, std::vector<std::size_t>(n));
    for (auto& a : assignment) {
      std::vector<std::size_t> perm(n);
      for (std::size_t v = 0; v < n; ++v) perm[v] = v < m ? v : rng() % m;
      std::shuffle(perm.begin(), perm.end(), rng);
      a = perm;
    }
    // Coarse values produce ties; about a third of the entries are zero.
    std::uniform_int_distribution<int> level(0, 5);
    const AlignmentResult result = MakeResult(assignment, m, [&](std::size_t, std::size_t) {
      const int l = level(rng);
      return l < 2 ? 0.0 : 0.1 * l;
    });
    std::vector<std::vector<NodeId>> perms(k, std::vector<NodeId>(n));
    for (auto& p : perms) {
      std::iota(p.begin(), p.end(), NodeId{0});
      std::shuffle(p.begin(), p.end(), rng);
    }
    std::vector<NodeTuple> truth;
    for (NodeId v = 0; v < n; ++v) {
      NodeTuple t;
      for (std::size_t i = 0; i < k; ++i) t.push_back(i == 0 ? v : perms[i][v]);
      truth.push_back(t);
    }
    const std::vector<NodeTuple> anchors{truth[0]};
    const std::vector<NodeTuple> tests(truth.begin() + 1, truth.end());

    Tensor dense(Shape(k, n));
    ForEachIndex(dense.shape(), [&](std::size_t lin, std::span<const std::size_t> idx) {
      dense[lin] = lookup_score(result, idx);
    });
    ASSERT_LE(ElementCount(dense.shape()), 1296u);
    const std::vector<int> ks{1, 2, 5, 30};
    for (RankScope scope : {RankScope::kGlobal, RankScope::kCluster}) {
      const bool cluster = scope == RankScope::kCluster;
      const EvalReport got = evaluate(result, truth, anchors, ks, scope);
      const oracle::BruteMetrics want = oracle::RankBruteForce(
          dense, tests, ks, &result.clusters().assignment, cluster);
      for (std::size_t q = 0; q < ks.size(); ++q) {
        EXPECT_NEAR(got.pairwise_hits[q], want.ph[q], 1e-12) << "trial " << trial;
        EXPECT_NEAR(got.high_order_hits[q], want.hh[q], 1e-12) << "trial " << trial;
        EXPECT_LE(got.high_order_hits[q], got.pairwise_hits[q] + 1e-12);
      }
      EXPECT_NEAR(got.mrr, want.mrr, 1e-12) << "trial " << trial;
    }
  }
}

TEST(Compose, IdentityPairs) {
  std::map<std::pair<std::size_t, std::size_t>, Eigen::MatrixXd> pairs;
  pairs[{0, 1}] = Eigen::MatrixXd::Identity(3, 3);
  pairs[{0, 2}] = Eigen::MatrixXd::Identity(3, 3);
  pairs[{1, 2}] = Eigen::MatrixXd::Identity(3, 3);
  const ComposedScorer s = compose_pairwise(pairs);
  ForEachIndex(Shape{3, 3, 3}, [&](std::size_t, std::span<const std::size_t> idx) {
    const bool diag = idx[0] == idx[1] && idx[1] == idx[2];
    EXPECT_EQ(s.Score(idx), diag ? 1.0 : 0.0);
  });
  pairs[{1, 2}] = Eigen::MatrixXd::Zero(3, 3);
  const ComposedScorer z = compose_pairwise(pairs);
  ForEachIndex(Shape{3, 3, 3}, [&](std::size_t, std::span<const std::size_t> idx) {
    EXPECT_EQ(z.Score(idx), 0.0);
  });
}

TEST(Compose, HandMultiplication) {
  Eigen::Matrix2d a, b, c;
  a << 1, 2, 3, 4;
  b << 5, 6, 7, 8;
  c << 0.5, 0.25, 2, 1;
  std::map<std::pair<std::size_t, std::size_t>, Eigen::MatrixXd> pairs;
  pairs[{0, 1}] = a;
  pairs[{2, 0}] = b.transpose();
  pairs[{1, 2}] = c;
  const ComposedScorer s = compose_pairwise(pairs);
  ForEachIndex(Shape{2, 2, 2}, [&](std::size_t, std::span<const std::size_t> idx) {
    const auto x = static_cast<Eigen::Index>(idx[0]);
    const auto y = static_cast<Eigen::Index>(idx[1]);
    const auto z = static_cast<Eigen::Index>(idx[2]);
    EXPECT_DOUBLE_EQ(s.Score(idx), a(x, y) * b(x, z) * c(y, z));
  });
  const std::vector<NodeTuple> truth{{0, 1, 1}, {1, 0, 0}};
  const std::vector<int> ks{1};
  const EvalReport r = evaluate(s, truth, {}, ks);
  EXPECT_EQ(r.test_count, 2u);
}

TEST(Compose, MissingPairIsConfigurationError) {
  std::map<std::pair<std::size_t, std::size_t>, Eigen::MatrixXd> pairs;
  pairs[{0, 1}] = Eigen::MatrixXd::Identity(2, 2);
  pairs[{0, 2}] = Eigen::MatrixXd::Identity(2, 2);
  EXPECT_THROW(compose_pairwise(pairs), ConfigurationError);
}

std::vector<NodeTuple> TenTuples() {
  std::vector<NodeTuple> t;
  for (NodeId v = 0; v < 10; ++v) t.push_back({v, 9 - v});
  return t;
}

TEST(Folds, TenFolds) {
  const std::vector<NodeTuple> truth = TenTuples();
  const std::vector<Fold> folds = split_folds(truth, 10, 3);
  ASSERT_EQ(folds.size(), 10u);
  std::set<NodeTuple> anchors_seen;
  for (const Fold& f : folds) {
    EXPECT_EQ(f.anchors.size(), 1u);
    EXPECT_EQ(f.test.size(), 9u);
    anchors_seen.insert(f.anchors[0]);
  }
  EXPECT_EQ(anchors_seen.size(), 10u);
}

TEST(Folds, TwoFoldsAreDisjointAndSeeded) {
  const std::vector<NodeTuple> truth = TenTuples();
  const std::vector<Fold> folds = split_folds(truth, 2, 8);
  ASSERT_EQ(folds.size(), 2u);
  EXPECT_EQ(folds[0].anchors.size(), 5u);
  EXPECT_EQ(folds[0].test.size(), 5u);
  std::set<NodeTuple> a(folds[0].anchors.begin(), folds[0].anchors.end());
  for (const NodeTuple& t : folds[0].test) EXPECT_FALSE(a.count(t));
  const std::vector<Fold> again = split_folds(truth, 2, 8);
  EXPECT_EQ(again[0].anchors, folds[0].anchors);
  EXPECT_EQ(again[1].test, folds[1].test);
  EXPECT_THROW(split_folds(truth, 11, 0), ValidationError);
  EXPECT_THROW(split_folds(truth, 1, 0), ValidationError);
}

TEST(Summary, MeanAndSampleDeviation) {
  EvalReport a, b;
  a.k_list = b.k_list = {1};
  a.pairwise_hits = {0.2};
  b.pairwise_hits = {0.4};
  a.high_order_hits = {0.1};
  b.high_order_hits = {0.1};
  a.mrr = 0.5;
  b.mrr = 0.7;
  a.per_pair_hits = b.per_pair_hits = {{0.0}};
  const std::vector<EvalReport> runs{a, b};
  const std::vector<MetricSummary> s = Summarize(runs);
  bool saw_ph = false, saw_mrr = false;
  for (const MetricSummary& m : s) {
    if (m.metric == "MRR") {
      saw_mrr = true;
      EXPECT_NEAR(m.mean, 0.6, 1e-15);
      EXPECT_NEAR(m.stddev, std::sqrt(0.02), 1e-15);
    }
    if (m.metric == "PH" && m.k == 1) {
      saw_ph = true;
      EXPECT_NEAR(m.mean, 0.3, 1e-15);
    }
  }
  EXPECT_TRUE(saw_ph);
  EXPECT_TRUE(saw_mrr);
  const std::string csv = SummaryCsv(s);
  EXPECT_EQ(csv.rfind("metric,K,mean,stddev\n", 0), 0u);
  EXPECT_TRUE(ReportJson(runs).is_object());
}

}  // namespace
}  // namespace hot
