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


#include <gtest/gtest.h>

#include "hot/bench.h"

namespace hot {
namespace {

TEST(Bench, FlatSixGraphsExceedsBudget) {
  const std::vector<std::size_t> sizes{100};
  const std::vector<std::size_t> counts{6};
  const std::vector<BenchRow> rows = cmd_bench(sizes, counts, RunConfig{});
  ASSERT_EQ(rows.size(), 2u);
  const BenchRow& flat = rows[1];
  EXPECT_EQ(flat.mode, "flat");
  EXPECT_EQ(flat.status, "capacity");
  EXPECT_EQ(flat.requested_elements, 1000000000000u);
  EXPECT_EQ(flat.allocated_elements, 0u);
}

TEST(Bench, RepeatedRunsAgree) {
  const std::vector<std::size_t> sizes{20};
  const std::vector<std::size_t> counts{3};
  RunConfig cfg;
  cfg.clusters = 2;
  cfg.seed = 4;
  const std::vector<BenchRow> a = cmd_bench(sizes, counts, cfg);
  const std::vector<BenchRow> b = cmd_bench(sizes, counts, cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t r = 0; r < a.size(); ++r) {
    EXPECT_EQ(a[r].status, "ok");
    EXPECT_EQ(a[r].allocated_elements, b[r].allocated_elements);
    EXPECT_EQ(a[r].clusters, b[r].clusters);
  }
  EXPECT_EQ(a[1].allocated_elements, 8000u);
  EXPECT_LT(a[0].allocated_elements, a[1].allocated_elements);
  const std::string csv = BenchCsv(a);
  EXPECT_NE(csv.find("hierarchical"), std::string::npos);
}

}  // namespace
}  // namespace hot
