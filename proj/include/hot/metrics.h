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

#ifndef HOT_METRICS_H_
#define HOT_METRICS_H_

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "hot/graph.h"
#include "hot/pipeline.h"

namespace hot {

using CandidateVisitor = std::function<void(std::span<const NodeId> tuple, double score)>;

// Anything that scores K-tuples: an alignment result or a composed baseline.
class TupleScorer {
 public:
  virtual ~TupleScorer() = default;
  virtual const std::vector<std::size_t>& graph_sizes() const = 0;
  virtual double Score(std::span<const NodeId> tuple) const = 0;
  // Visits the ranking universe of tuples (x1, v_2, ..., v_K) in ascending
  // lexicographic order. Global scope: tuples with a positive score.
  // Cluster scope: every tuple of x1's block, zeros included.
  virtual void ForEachCandidate(NodeId x1, RankScope scope,
                                const CandidateVisitor& visit) const = 0;
};

class ResultScorer : public TupleScorer {
 public:
  explicit ResultScorer(const AlignmentResult& result) : result_(result) {}
  const std::vector<std::size_t>& graph_sizes() const override {
    return result_.graph_sizes();
  }
  double Score(std::span<const NodeId> tuple) const override;
  void ForEachCandidate(NodeId x1, RankScope scope,
                        const CandidateVisitor& visit) const override;

 private:
  const AlignmentResult& result_;
};

// Pairwise baseline lifted to K graphs: score = product over j < k of
// pairs[(j, k)](v_j, v_k). Treated as a single block.
class ComposedScorer : public TupleScorer {
 public:
  ComposedScorer(std::vector<std::size_t> sizes, std::vector<Eigen::MatrixXd> upper);
  const std::vector<std::size_t>& graph_sizes() const override { return sizes_; }
  double Score(std::span<const NodeId> tuple) const override;
  void ForEachCandidate(NodeId x1, RankScope scope,
                        const CandidateVisitor& visit) const override;

 private:
  const Eigen::MatrixXd& Pair(std::size_t j, std::size_t k) const;

  std::vector<std::size_t> sizes_;
  // Row-major over j < k.
  std::vector<Eigen::MatrixXd> pairs_;
};

// Keys are graph index pairs; (k, j) is accepted in place of (j, k) and
// transposed. Missing pairs raise ConfigurationError.
ComposedScorer compose_pairwise(
    const std::map<std::pair<std::size_t, std::size_t>, Eigen::MatrixXd>& pair_matrices);

struct EvalReport {
  std::vector<int> k_list;
  // Any counterpart x_i (i > 1) present in one of the top-K retrieved tuples.
  std::vector<double> pairwise_hits;
  // True tuple ranked within the top K.
  std::vector<double> high_order_hits;
  double mrr = 0.0;
  std::size_t test_count = 0;
  // per_pair_hits[i - 1][k]: x_i within the top K of row x1 of the pair
  // marginal P_{1,i} of the scored tensor.
  std::vector<std::vector<double>> per_pair_hits;
  RankScope rank_scope = RankScope::kGlobal;
};

// Test set: truth tuples whose first node is not the first node of an anchor.
EvalReport evaluate(const TupleScorer& scorer, std::span<const NodeTuple> truth,
                    std::span<const NodeTuple> anchors, std::span<const int> k_list,
                    RankScope scope = RankScope::kGlobal);
EvalReport evaluate(const AlignmentResult& result, std::span<const NodeTuple> truth,
                    std::span<const NodeTuple> anchors, std::span<const int> k_list,
                    RankScope scope = RankScope::kGlobal);

struct Fold {
  std::vector<NodeTuple> anchors;
  std::vector<NodeTuple> test;
};

// Shuffles the tuples, deals them round-robin into fold_count folds, and
// uses each fold in turn as the anchor set.
std::vector<Fold> split_folds(std::span<const NodeTuple> truth, std::size_t fold_count,
                              std::uint64_t seed);

struct MetricSummary {
  std::string metric;
  // 0 for MRR.
  int k = 0;
  double mean = 0.0;
  // Sample standard deviation; 0 for a single run.
  double stddev = 0.0;
};

std::vector<MetricSummary> Summarize(std::span<const EvalReport> runs);
nlohmann::json ReportJson(std::span<const EvalReport> runs);
// Columns metric,K,mean,stddev.
std::string SummaryCsv(std::span<const MetricSummary> summary);

}  // namespace hot

#endif  // HOT_METRICS_H_
