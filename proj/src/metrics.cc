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

#include "hot/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>

#include "hot/errors.h"

namespace hot {
namespace {

void CheckTuples(const std::vector<std::size_t>& sizes, std::span<const NodeTuple> tuples,
                 const char* what) {
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    if (tuples[t].size() != sizes.size()) {
      throw ValidationError(std::string(what) + " tuple " + std::to_string(t) + " has " +
                            std::to_string(tuples[t].size()) + " entries, expected " +
                            std::to_string(sizes.size()));
    }
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      if (tuples[t][i] >= sizes[i]) {
        throw ValidationError(std::string(what) + " tuple " + std::to_string(t) +
                              ": node " + std::to_string(tuples[t][i]) +
                              " out of range for graph " + std::to_string(i));
      }
    }
  }
}

void CheckNode(const std::vector<std::size_t>& sizes, NodeId x1) {
  if (x1 >= sizes[0]) {
    throw ValidationError("node " + std::to_string(x1) + " out of range for graph 0");
  }
}

// Sample mean and standard deviation.
std::pair<double, double> MeanStd(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  if (v.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

const char* ScopeName(RankScope s) { return s == RankScope::kGlobal ? "global" : "cluster"; }

}  // namespace

double ResultScorer::Score(std::span<const NodeId> tuple) const {
  return lookup_score(result_, tuple);
}

void ResultScorer::ForEachCandidate(NodeId x1, RankScope scope,
                                    const CandidateVisitor& visit) const {
  CheckNode(result_.graph_sizes(), x1);
  const AlignmentBlock& block = result_.blocks()[result_.ClusterOf(0, x1)];
  const Tensor& t = block.coupling;
  const std::size_t base = result_.LocalIndex(0, x1) * t.stride(0);
  const Shape rest(t.shape().begin() + 1, t.shape().end());
  NodeTuple tuple(t.rank());
  tuple[0] = x1;
  ForEachIndex(rest, [&](std::size_t linear, std::span<const std::size_t> idx) {
    const double s = t[base + linear];
    if (scope == RankScope::kGlobal && !(s > 0.0)) return;
    for (std::size_t i = 0; i < idx.size(); ++i) tuple[i + 1] = block.members[i + 1][idx[i]];
    visit(tuple, s);
  });
}

ComposedScorer::ComposedScorer(std::vector<std::size_t> sizes,
                               std::vector<Eigen::MatrixXd> upper)
    : sizes_(std::move(sizes)), pairs_(std::move(upper)) {
  const std::size_t k = sizes_.size();
  if (k < 2 || pairs_.size() != k * (k - 1) / 2) {
    throw ConfigurationError("composed scorer needs one matrix per graph pair");
  }
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t l = j + 1; l < k; ++l) {
      const Eigen::MatrixXd& m = Pair(j, l);
      if (static_cast<std::size_t>(m.rows()) != sizes_[j] ||
          static_cast<std::size_t>(m.cols()) != sizes_[l]) {
        throw ValidationError("pair matrix (" + std::to_string(j) + ", " +
                              std::to_string(l) + ") has inconsistent shape");
      }
    }
  }
}

const Eigen::MatrixXd& ComposedScorer::Pair(std::size_t j, std::size_t k) const {
  const std::size_t n = sizes_.size();
  return pairs_[j * n - j * (j + 1) / 2 + (k - j - 1)];
}

double ComposedScorer::Score(std::span<const NodeId> tuple) const {
  if (tuple.size() != sizes_.size()) throw ValidationError("tuple arity mismatch");
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] >= sizes_[i]) throw ValidationError("tuple node out of range");
  }
  double s = 1.0;
  for (std::size_t j = 0; j < tuple.size(); ++j) {
    for (std::size_t k = j + 1; k < tuple.size(); ++k) {
      s *= Pair(j, k)(static_cast<Eigen::Index>(tuple[j]), static_cast<Eigen::Index>(tuple[k]));
    }
  }
  return s;
}

void ComposedScorer::ForEachCandidate(NodeId x1, RankScope scope,
                                      const CandidateVisitor& visit) const {
  CheckNode(sizes_, x1);
  const Shape rest(sizes_.begin() + 1, sizes_.end());
  NodeTuple tuple(sizes_.size());
  tuple[0] = x1;
  ForEachIndex(rest, [&](std::size_t, std::span<const std::size_t> idx) {
    for (std::size_t i = 0; i < idx.size(); ++i) tuple[i + 1] = idx[i];
    const double s = Score(tuple);
    if (scope == RankScope::kGlobal && !(s > 0.0)) return;
    visit(tuple, s);
  });
}

ComposedScorer compose_pairwise(
    const std::map<std::pair<std::size_t, std::size_t>, Eigen::MatrixXd>& pair_matrices) {
  std::size_t k = 0;
  for (const auto& [key, m] : pair_matrices) {
    if (key.first == key.second) throw ConfigurationError("pair matrix on a single graph");
    k = std::max({k, key.first + 1, key.second + 1});
  }
  if (k < 2) throw ConfigurationError("composition needs at least two graphs");
  std::vector<std::size_t> sizes(k, 0);
  std::vector<Eigen::MatrixXd> upper;
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t l = j + 1; l < k; ++l) {
      auto it = pair_matrices.find({j, l});
      Eigen::MatrixXd m;
      if (it != pair_matrices.end()) {
        m = it->second;
      } else if (auto back = pair_matrices.find({l, j}); back != pair_matrices.end()) {
        m = back->second.transpose();
      } else {
        throw ConfigurationError("missing pair matrix (" + std::to_string(j) + ", " +
                                 std::to_string(l) + ")");
      }
      if (sizes[j] == 0) sizes[j] = static_cast<std::size_t>(m.rows());
      if (sizes[l] == 0) sizes[l] = static_cast<std::size_t>(m.cols());
      upper.push_back(std::move(m));
    }
  }
  return ComposedScorer(std::move(sizes), std::move(upper));
}

EvalReport evaluate(const TupleScorer& scorer, std::span<const NodeTuple> truth,
                    std::span<const NodeTuple> anchors, std::span<const int> k_list,
                    RankScope scope) {
  const std::vector<std::size_t>& sizes = scorer.graph_sizes();
  const std::size_t graphs = sizes.size();
  if (k_list.empty()) throw ValidationError("empty Hits@K list");
  for (int k : k_list) {
    if (k < 1) throw ValidationError("Hits@K values must be positive");
  }
  CheckTuples(sizes, truth, "truth");
  CheckTuples(sizes, anchors, "anchor");
  std::set<NodeId> anchored;
  for (const NodeTuple& a : anchors) anchored.insert(a[0]);
  std::vector<const NodeTuple*> test;
  for (const NodeTuple& t : truth) {
    if (!anchored.count(t[0])) test.push_back(&t);
  }
  if (test.empty()) throw ValidationError("no test tuples left after anchor exclusion");

  const std::size_t nk = k_list.size();
  const std::size_t max_k =
      static_cast<std::size_t>(*std::max_element(k_list.begin(), k_list.end()));
  EvalReport report;
  report.k_list.assign(k_list.begin(), k_list.end());
  report.rank_scope = scope;
  report.test_count = test.size();
  report.pairwise_hits.assign(nk, 0.0);
  report.high_order_hits.assign(nk, 0.0);
  report.per_pair_hits.assign(graphs - 1, std::vector<double>(nk, 0.0));

  std::vector<double> scores;
  std::vector<NodeId> ids;
  std::vector<std::size_t> order;
  std::vector<Eigen::VectorXd> marginal(graphs);
  for (const NodeTuple* tp : test) {
    const NodeTuple& t = *tp;
    scores.clear();
    ids.clear();
    for (std::size_t i = 1; i < graphs; ++i) {
      marginal[i] = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sizes[i]));
    }
    std::size_t truth_pos = 0;
    bool found = false;
    scorer.ForEachCandidate(t[0], scope, [&](std::span<const NodeId> c, double s) {
      if (!found && std::equal(c.begin(), c.end(), t.begin())) {
        found = true;
        truth_pos = scores.size();
      }
      scores.push_back(s);
      ids.insert(ids.end(), c.begin(), c.end());
      for (std::size_t i = 1; i < graphs; ++i) marginal[i][static_cast<Eigen::Index>(c[i])] += s;
    });
    const std::size_t n = scores.size();
    // Candidates arrive in lexicographic order, so position breaks ties.
    auto before = [&](std::size_t a, std::size_t b) {
      return scores[a] > scores[b] || (scores[a] == scores[b] && a < b);
    };
    std::size_t rank = n + 1;
    if (found) {
      rank = 1;
      for (std::size_t c = 0; c < n; ++c) rank += before(c, truth_pos) ? 1 : 0;
    }
    order.resize(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t top = std::min(max_k, n);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(top),
                      order.end(), before);
    // first_hit: 1-based position of the first retrieved tuple sharing a
    // counterpart with the truth.
    std::size_t first_hit = 0;
    for (std::size_t p = 0; p < top && first_hit == 0; ++p) {
      const NodeId* c = &ids[order[p] * graphs];
      for (std::size_t i = 1; i < graphs; ++i) {
        if (c[i] == t[i]) {
          first_hit = p + 1;
          break;
        }
      }
    }
    for (std::size_t q = 0; q < nk; ++q) {
      const auto k = static_cast<std::size_t>(k_list[q]);
      if (found && rank <= k) report.high_order_hits[q] += 1.0;
      if (first_hit != 0 && first_hit <= k) report.pairwise_hits[q] += 1.0;
    }
    report.mrr += 1.0 / static_cast<double>(rank);

    for (std::size_t i = 1; i < graphs; ++i) {
      const Eigen::VectorXd& m = marginal[i];
      const auto x = static_cast<Eigen::Index>(t[i]);
      if (!(m[x] > 0.0)) continue;
      std::size_t r = 1;
      for (Eigen::Index v = 0; v < m.size(); ++v) {
        if (m[v] > m[x] || (m[v] == m[x] && v < x)) ++r;
      }
      for (std::size_t q = 0; q < nk; ++q) {
        if (r <= static_cast<std::size_t>(k_list[q])) report.per_pair_hits[i - 1][q] += 1.0;
      }
    }
  }
  const double count = static_cast<double>(test.size());
  for (std::size_t q = 0; q < nk; ++q) {
    report.pairwise_hits[q] /= count;
    report.high_order_hits[q] /= count;
    for (auto& row : report.per_pair_hits) row[q] /= count;
  }
  report.mrr /= count;
  return report;
}

EvalReport evaluate(const AlignmentResult& result, std::span<const NodeTuple> truth,
                    std::span<const NodeTuple> anchors, std::span<const int> k_list,
                    RankScope scope) {
  return evaluate(ResultScorer(result), truth, anchors, k_list, scope);
}

std::vector<Fold> split_folds(std::span<const NodeTuple> truth, std::size_t fold_count,
                              std::uint64_t seed) {
  if (fold_count < 2) throw ValidationError("need at least two folds");
  if (fold_count > truth.size()) {
    throw ValidationError("fold count " + std::to_string(fold_count) + " exceeds the " +
                          std::to_string(truth.size()) + " truth tuples");
  }
  std::vector<std::size_t> order(truth.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<NodeTuple>> parts(fold_count);
  for (std::size_t p = 0; p < order.size(); ++p) {
    parts[p % fold_count].push_back(truth[order[p]]);
  }
  std::vector<Fold> folds(fold_count);
  for (std::size_t f = 0; f < fold_count; ++f) {
    folds[f].anchors = parts[f];
    for (std::size_t g = 0; g < fold_count; ++g) {
      if (g != f) folds[f].test.insert(folds[f].test.end(), parts[g].begin(), parts[g].end());
    }
  }
  return folds;
}

std::vector<MetricSummary> Summarize(std::span<const EvalReport> runs) {
  if (runs.empty()) throw ValidationError("no evaluation runs to summarize");
  const std::vector<int>& ks = runs[0].k_list;
  for (const EvalReport& r : runs) {
    if (r.k_list != ks || r.per_pair_hits.size() != runs[0].per_pair_hits.size()) {
      throw ValidationError("evaluation runs disagree on K list or graph count");
    }
  }
  std::vector<MetricSummary> out;
  auto add = [&](const std::string& name, int k, auto get) {
    std::vector<double> values;
    for (const EvalReport& r : runs) values.push_back(get(r));
    const auto [mean, sd] = MeanStd(values);
    out.push_back({name, k, mean, sd});
  };
  for (std::size_t q = 0; q < ks.size(); ++q) {
    add("PH", ks[q], [q](const EvalReport& r) { return r.pairwise_hits[q]; });
  }
  for (std::size_t q = 0; q < ks.size(); ++q) {
    add("HH", ks[q], [q](const EvalReport& r) { return r.high_order_hits[q]; });
  }
  add("MRR", 0, [](const EvalReport& r) { return r.mrr; });
  for (std::size_t i = 0; i < runs[0].per_pair_hits.size(); ++i) {
    for (std::size_t q = 0; q < ks.size(); ++q) {
      add("pair_0_" + std::to_string(i + 1), ks[q],
          [i, q](const EvalReport& r) { return r.per_pair_hits[i][q]; });
    }
  }
  return out;
}

nlohmann::json ReportJson(std::span<const EvalReport> runs) {
  using nlohmann::json;
  json j;
  j["tie_rule"] = "lexicographic";
  j["rank_scope"] = runs.empty() ? "global" : ScopeName(runs[0].rank_scope);
  j["k_list"] = runs.empty() ? std::vector<int>{} : runs[0].k_list;
  json list = json::array();
  for (const EvalReport& r : runs) {
    list.push_back(json{{"test_count", r.test_count},
                        {"pairwise_hits", r.pairwise_hits},
                        {"high_order_hits", r.high_order_hits},
                        {"mrr", r.mrr},
                        {"per_pair_hits", r.per_pair_hits}});
  }
  j["runs"] = list;
  json summary = json::array();
  if (!runs.empty()) {
    for (const MetricSummary& m : Summarize(runs)) {
      summary.push_back(
          json{{"metric", m.metric}, {"K", m.k}, {"mean", m.mean}, {"stddev", m.stddev}});
    }
  }
  j["summary"] = summary;
  return j;
}

std::string SummaryCsv(std::span<const MetricSummary> summary) {
  std::string out = "metric,K,mean,stddev\n";
  char buf[128];
  for (const MetricSummary& m : summary) {
    std::snprintf(buf, sizeof(buf), ",%.17g,%.17g\n", m.mean, m.stddev);
    out += m.metric + "," + (m.k > 0 ? std::to_string(m.k) : std::string()) + buf;
  }
  return out;
}

}  // namespace hot
