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

#ifndef HOT_BENCH_H_
#define HOT_BENCH_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hot/pipeline.h"

namespace hot {

struct BenchRow {
  std::size_t n = 0;
  std::size_t graph_count = 0;
  // "hierarchical" or "flat".
  std::string mode;
  std::size_t clusters = 0;
  // "ok" or "capacity".
  std::string status;
  double wall_ms = 0.0;
  std::size_t allocated_elements = 0;
  std::size_t requested_elements = 0;
};

// Seeded noisy ER inputs for every (n, K); each is aligned hierarchically
// (config.clusters, auto by default) and flat (M = 1). Blocks over the
// element budget give a "capacity" row instead of an error.
std::vector<BenchRow> cmd_bench(std::span<const std::size_t> sizes,
                                std::span<const std::size_t> graph_counts,
                                const RunConfig& config);

std::string BenchCsv(std::span<const BenchRow> rows);

}  // namespace hot

#endif  // HOT_BENCH_H_
