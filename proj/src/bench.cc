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

#include "hot/bench.h"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "hot/errors.h"
#include "hot/fgw_barycenter.h"

namespace hot {
namespace {

using Clock = std::chrono::steady_clock;

// Largest single block the clustering asks for.
std::size_t LargestBlock(const ClusterAlignment& clusters) {
  std::size_t largest = 0;
  for (const auto& cluster : clusters.clusters) {
    Shape shape;
    for (const auto& members : cluster) shape.push_back(members.size());
    largest = std::max(largest, ElementCount(shape));
  }
  return largest;
}

BenchRow RunMode(const MultiNetworkProblem& problem, const RunConfig& config,
                 bool hierarchical) {
  BenchRow row;
  row.n = problem.graphs[0].node_count();
  row.graph_count = problem.graph_count();
  row.mode = hierarchical ? "hierarchical" : "flat";
  const auto start = Clock::now();
  ClusterAlignment clusters;
  if (hierarchical) {
    clusters = co_cluster(problem, config).clusters;
  } else {
    std::vector<std::size_t> sizes;
    for (const Graph& g : problem.graphs) sizes.push_back(g.node_count());
    clusters = SingleCluster(sizes);
  }
  row.clusters = clusters.cluster_count();
  row.requested_elements = AllocatedElements(clusters);
  if (LargestBlock(clusters) > config.element_budget) {
    row.status = "capacity";
  } else {
    try {
      const AlignmentResult result = AlignWithClusters(problem, config, std::move(clusters));
      row.status = "ok";
      row.allocated_elements = result.AllocatedElements();
    } catch (const CapacityError&) {
      row.status = "capacity";
    }
  }
  row.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return row;
}

}  // namespace

std::vector<BenchRow> cmd_bench(std::span<const std::size_t> sizes,
                                std::span<const std::size_t> graph_counts,
                                const RunConfig& config) {
  config.Validate();
  std::vector<BenchRow> rows;
  for (std::size_t n : sizes) {
    for (std::size_t k : graph_counts) {
      NoisyErOptions options;
      options.node_count = n;
      // Mean degree around 8 keeps the base graph connected.
      options.edge_probability = std::min(0.5, 8.0 / static_cast<double>(n));
      options.copies = k;
      options.seed = config.seed;
      const MultiNetworkProblem problem = generate_noisy_er(options);
      rows.push_back(RunMode(problem, config, true));
      rows.push_back(RunMode(problem, config, false));
    }
  }
  return rows;
}

std::string BenchCsv(std::span<const BenchRow> rows) {
  std::string out = "n,K,mode,M,status,wall_ms,allocated_elements,requested_elements\n";
  char buf[64];
  for (const BenchRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.3f", r.wall_ms);
    out += std::to_string(r.n) + "," + std::to_string(r.graph_count) + "," + r.mode + "," +
           std::to_string(r.clusters) + "," + r.status + "," + buf + "," +
           std::to_string(r.allocated_elements) + "," +
           std::to_string(r.requested_elements) + "\n";
  }
  return out;
}

}  // namespace hot
