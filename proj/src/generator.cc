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
#include <cmath>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <utility>

#include "hot/errors.h"
#include "hot/graph.h"

namespace hot {
namespace {

using EdgeKey = std::pair<NodeId, NodeId>;

constexpr int kBaseAttempts = 100;
constexpr int kRemovalAttemptsPerEdge = 1000;

// ceil(fraction * count), tolerant of representation error in the fraction
// (0.1 * 20 must give 2, not 3).
std::size_t CeilCount(double fraction, std::size_t count) {
  const double x = fraction * static_cast<double>(count);
  return static_cast<std::size_t>(std::ceil(x - 1e-9));
}

bool Connected(std::size_t n, const std::vector<EdgeKey>& edges) {
  std::vector<std::vector<NodeId>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<bool> seen(n, false);
  std::queue<NodeId> q;
  q.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!q.empty()) {
    NodeId x = q.front();
    q.pop();
    for (NodeId y : adj[x]) {
      if (!seen[y]) {
        seen[y] = true;
        ++reached;
        q.push(y);
      }
    }
  }
  return reached == n;
}

std::vector<EdgeKey> SampleConnectedBase(const NoisyErOptions& o,
                                         std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int attempt = 0; attempt < kBaseAttempts; ++attempt) {
    std::vector<EdgeKey> edges;
    for (NodeId u = 0; u < o.node_count; ++u) {
      for (NodeId v = u + 1; v < o.node_count; ++v) {
        if (coin(rng) < o.edge_probability) edges.emplace_back(u, v);
      }
    }
    if (Connected(o.node_count, edges)) return edges;
  }
  throw GenerationError("no connected ER base graph after " +
                        std::to_string(kBaseAttempts) + " samples (n=" +
                        std::to_string(o.node_count) +
                        ", p=" + std::to_string(o.edge_probability) + ")");
}

std::vector<EdgeKey> MakeNoisyCopy(const NoisyErOptions& o,
                                   const std::vector<EdgeKey>& base,
                                   const std::vector<NodeId>& perm,
                                   std::mt19937_64& rng) {
  const std::size_t n = o.node_count;
  std::set<EdgeKey> present;
  std::vector<EdgeKey> edges;
  edges.reserve(base.size());
  for (auto [u, v] : base) {
    EdgeKey e = std::minmax(perm[u], perm[v]);
    present.insert(e);
    edges.push_back(e);
  }

  const std::size_t inserts = CeilCount(o.insert_fraction, base.size());
  const std::size_t capacity = n * (n - 1) / 2;
  if (edges.size() + inserts > capacity) {
    throw GenerationError("not enough non-edges to insert " +
                          std::to_string(inserts) + " edges");
  }
  std::uniform_int_distribution<NodeId> node(0, n - 1);
  for (std::size_t added = 0; added < inserts;) {
    NodeId a = node(rng), b = node(rng);
    if (a == b) continue;
    EdgeKey e = std::minmax(a, b);
    if (present.insert(e).second) {
      edges.push_back(e);
      ++added;
    }
  }

  std::vector<std::size_t> degree(n, 0);
  for (auto [u, v] : edges) {
    ++degree[u];
    ++degree[v];
  }
  const std::size_t removals = CeilCount(o.remove_fraction, edges.size());
  for (std::size_t removed = 0; removed < removals; ++removed) {
    bool done = false;
    for (int attempt = 0; attempt < kRemovalAttemptsPerEdge && !done; ++attempt) {
      std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
      std::size_t idx = pick(rng);
      auto [u, v] = edges[idx];
      if (degree[u] <= 1 || degree[v] <= 1) continue;
      --degree[u];
      --degree[v];
      edges[idx] = edges.back();
      edges.pop_back();
      done = true;
    }
    if (!done) {
      throw GenerationError("edge removal would isolate a node after " +
                            std::to_string(kRemovalAttemptsPerEdge) +
                            " redraws");
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace

MultiNetworkProblem generate_noisy_er(const NoisyErOptions& o) {
  if (o.node_count < 2) throw ValidationError("ER generator needs n >= 2");
  if (!(o.edge_probability > 0.0 && o.edge_probability < 1.0)) {
    throw ValidationError("edge probability must lie in (0, 1)");
  }
  if (o.copies < 2) throw ValidationError("need at least two copies");
  if (!(o.insert_fraction >= 0.0 && o.insert_fraction < 1.0) ||
      !(o.remove_fraction >= 0.0 && o.remove_fraction < 1.0)) {
    throw ValidationError("noise fractions must lie in [0, 1)");
  }
  if (!(o.anchor_fraction >= 0.0 && o.anchor_fraction <= 1.0)) {
    throw ValidationError("anchor fraction must lie in [0, 1]");
  }

  std::mt19937_64 rng(o.seed);
  const std::vector<EdgeKey> base = SampleConnectedBase(o, rng);

  MultiNetworkProblem problem;
  std::vector<std::vector<NodeId>> perms;
  for (std::size_t c = 0; c < o.copies; ++c) {
    std::vector<NodeId> perm(o.node_count);
    std::iota(perm.begin(), perm.end(), NodeId{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<EdgeKey> keys = MakeNoisyCopy(o, base, perm, rng);
    std::vector<Edge> edges;
    edges.reserve(keys.size());
    for (auto [u, v] : keys) edges.push_back({u, v, 1.0});
    problem.graphs.emplace_back(o.node_count, std::move(edges), std::nullopt,
                                "er-copy-" + std::to_string(c));
    perms.push_back(std::move(perm));
  }

  for (NodeId b = 0; b < o.node_count; ++b) {
    NodeTuple t;
    for (const auto& perm : perms) t.push_back(perm[b]);
    problem.ground_truth.push_back(std::move(t));
  }
  std::sort(problem.ground_truth.begin(), problem.ground_truth.end());

  std::vector<std::size_t> order(problem.ground_truth.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(std::min(order.size(), CeilCount(o.anchor_fraction, o.node_count)));
  std::sort(order.begin(), order.end());
  for (std::size_t idx : order) problem.anchors.push_back(problem.ground_truth[idx]);
  return problem;
}

}  // namespace hot
