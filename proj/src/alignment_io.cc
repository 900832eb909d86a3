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

#include "hot/alignment_io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hot/errors.h"

namespace hot {
namespace {

using nlohmann::json;

constexpr const char* kFormat = "hot-alignment";
constexpr int kVersion = 1;

const char* ScopeName(RankScope s) { return s == RankScope::kGlobal ? "global" : "cluster"; }

const char* FeatureName(BarycenterFeatures f) {
  return f == BarycenterFeatures::kEmbedding ? "embedding" : "attributes";
}

template <typename T>
void Take(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

std::vector<std::vector<std::size_t>> AssignmentFromClusters(
    const std::vector<std::vector<std::vector<NodeId>>>& clusters,
    const std::vector<std::size_t>& sizes, const std::string& source) {
  const std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> assignment(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) assignment[i].assign(sizes[i], unset);
  for (std::size_t j = 0; j < clusters.size(); ++j) {
    if (clusters[j].size() != sizes.size()) {
      throw FormatError(source, 1, "cluster " + std::to_string(j) + " lists the wrong "
                                   "number of graphs");
    }
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      if (clusters[j][i].empty()) {
        throw FormatError(source, 1, "cluster " + std::to_string(j) + " is empty in graph " +
                                         std::to_string(i));
      }
      for (NodeId v : clusters[j][i]) {
        if (v >= sizes[i] || assignment[i][v] != unset) {
          throw FormatError(source, 1, "bad cluster membership for node " +
                                           std::to_string(v) + " of graph " +
                                           std::to_string(i));
        }
        assignment[i][v] = j;
      }
    }
  }
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    for (std::size_t v = 0; v < sizes[i]; ++v) {
      if (assignment[i][v] == unset) {
        throw FormatError(source, 1, "node " + std::to_string(v) + " of graph " +
                                         std::to_string(i) + " has no cluster");
      }
    }
  }
  return assignment;
}

}  // namespace

json RunConfigToJson(const RunConfig& c) {
  const SolverConfig& s = c.solver;
  return json{
      {"lambda", s.lambda},
      {"alpha", s.alpha},
      {"outer_iters", s.outer_iters},
      {"inner_iters", s.inner_iters},
      {"outer_tol", s.outer_tol},
      {"log_floor", s.log_floor},
      {"inner_tol", s.inner_tol},
      {"monotone_slack", s.monotone_slack},
      {"enforce_monotone", s.enforce_monotone},
      {"max_backtracks", s.max_backtracks},
      {"beta", c.beta},
      {"clusters", c.clusters == 0 ? json("auto") : json(c.clusters)},
      {"seed", c.seed},
      {"element_budget", c.element_budget},
      {"workers", c.workers},
      {"use_attributes", c.use_attributes},
      {"barycenter_features", FeatureName(c.barycenter_features)},
      {"emit_threshold", c.emit_threshold},
      {"k_list", c.k_list},
      {"rank_scope", ScopeName(c.rank_scope)},
  };
}

RunConfig RunConfigFromJson(const json& j) {
  RunConfig c;
  SolverConfig& s = c.solver;
  try {
    Take(j, "lambda", s.lambda);
    Take(j, "alpha", s.alpha);
    Take(j, "outer_iters", s.outer_iters);
    Take(j, "inner_iters", s.inner_iters);
    Take(j, "outer_tol", s.outer_tol);
    Take(j, "log_floor", s.log_floor);
    Take(j, "inner_tol", s.inner_tol);
    Take(j, "monotone_slack", s.monotone_slack);
    Take(j, "enforce_monotone", s.enforce_monotone);
    Take(j, "max_backtracks", s.max_backtracks);
    Take(j, "beta", c.beta);
    if (j.contains("clusters")) {
      const json& m = j.at("clusters");
      c.clusters = m.is_string() && m.get<std::string>() == "auto" ? 0 : m.get<std::size_t>();
    }
    Take(j, "seed", c.seed);
    Take(j, "element_budget", c.element_budget);
    Take(j, "workers", c.workers);
    Take(j, "use_attributes", c.use_attributes);
    if (j.contains("barycenter_features")) {
      const std::string f = j.at("barycenter_features").get<std::string>();
      if (f == "embedding") {
        c.barycenter_features = BarycenterFeatures::kEmbedding;
      } else if (f == "attributes") {
        c.barycenter_features = BarycenterFeatures::kAttributes;
      } else {
        throw ConfigurationError("unknown barycenter features '" + f + "'");
      }
    }
    Take(j, "emit_threshold", c.emit_threshold);
    Take(j, "k_list", c.k_list);
    if (j.contains("rank_scope")) {
      const std::string r = j.at("rank_scope").get<std::string>();
      if (r == "global") {
        c.rank_scope = RankScope::kGlobal;
      } else if (r == "cluster") {
        c.rank_scope = RankScope::kCluster;
      } else {
        throw ConfigurationError("unknown rank scope '" + r + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigurationError(std::string("bad config field: ") + e.what());
  }
  return c;
}

json AlignmentHeader(const AlignmentResult& result) {
  json blocks = json::array();
  json clusters = json::array();
  for (const AlignmentBlock& b : result.blocks()) {
    clusters.push_back(b.members);
    blocks.push_back(json{{"elements", b.coupling.size()},
                          {"marginal_error", b.marginal_error},
                          {"objective", b.objective},
                          {"step_change", b.step_change}});
  }
  return json{
      {"format", kFormat},
      {"version", kVersion},
      {"config", RunConfigToJson(result.config())},
      {"K", result.graph_count()},
      {"M", result.blocks().size()},
      {"seed", result.config().seed},
      {"graph_sizes", result.graph_sizes()},
      {"clusters", clusters},
      {"allocated_elements", result.AllocatedElements()},
      {"barycenter_objective", result.barycenter_objective},
      {"blocks", blocks},
      {"timings",
       json{{"embedding_ms", result.timings.embedding_ms},
            {"clustering_ms", result.timings.clustering_ms},
            {"node_alignment_ms", result.timings.node_alignment_ms},
            {"total_ms", result.timings.total_ms}}},
  };
}

json HeaderMetadata(json header) {
  header.erase("timings");
  return header;
}

void WriteAlignment(const AlignmentResult& result, std::ostream& out) {
  out << AlignmentHeader(result).dump() << '\n';
  const double threshold = result.config().emit_threshold;
  char buf[64];
  std::string line;
  for (const AlignmentBlock& b : result.blocks()) {
    const Tensor& t = b.coupling;
    ForEachIndex(t.shape(), [&](std::size_t linear, std::span<const std::size_t> idx) {
      const double v = t[linear];
      if (!(v >= threshold)) return;
      line = std::to_string(b.cluster_id);
      for (std::size_t i = 0; i < idx.size(); ++i) {
        line += ' ';
        line += std::to_string(b.members[i][idx[i]]);
      }
      std::snprintf(buf, sizeof(buf), " %.17g\n", v);
      line += buf;
      out << line;
    });
  }
}

void write_alignment(const AlignmentResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  WriteAlignment(result, out);
  if (!out) throw IoError("write failed for '" + path + "'");
}

AlignmentResult ReadAlignment(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError(source, 1, "missing header line");
  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception& e) {
    throw FormatError(source, 1, std::string("header is not JSON: ") + e.what());
  }
  if (header.value("format", "") != kFormat) {
    throw FormatError(source, 1, "not an alignment file");
  }
  std::vector<std::size_t> sizes;
  std::vector<std::vector<std::vector<NodeId>>> members;
  try {
    sizes = header.at("graph_sizes").get<std::vector<std::size_t>>();
    members = header.at("clusters").get<std::vector<std::vector<std::vector<NodeId>>>>();
  } catch (const json::exception& e) {
    throw FormatError(source, 1, std::string("bad header: ") + e.what());
  }
  if (sizes.size() < 2) throw FormatError(source, 1, "need at least two graphs");
  const RunConfig config = RunConfigFromJson(header.at("config"));

  ClusterAlignment clusters;
  clusters.assignment = AssignmentFromClusters(members, sizes, source);
  clusters.clusters = members;
  std::vector<AlignmentBlock> blocks(members.size());
  std::vector<std::vector<std::size_t>> local(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) local[i].assign(sizes[i], 0);
  for (std::size_t j = 0; j < members.size(); ++j) {
    AlignmentBlock& b = blocks[j];
    b.cluster_id = j;
    b.members = members[j];
    Shape shape;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      shape.push_back(members[j][i].size());
      for (std::size_t p = 0; p < members[j][i].size(); ++p) local[i][members[j][i][p]] = p;
    }
    b.coupling = Tensor(shape, 0.0);
  }
  if (header.contains("blocks") && header["blocks"].size() == blocks.size()) {
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      const json& b = header["blocks"][j];
      Take(b, "marginal_error", blocks[j].marginal_error);
      Take(b, "objective", blocks[j].objective);
      Take(b, "step_change", blocks[j].step_change);
    }
  }

  const std::size_t k = sizes.size();
  std::size_t line_no = 1;
  std::vector<std::size_t> idx(k);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::size_t j = 0;
    if (!(ss >> j)) throw FormatError(source, line_no, "expected a cluster id");
    if (j >= blocks.size()) {
      throw FormatError(source, line_no, "cluster id " + std::to_string(j) + " out of range");
    }
    for (std::size_t i = 0; i < k; ++i) {
      NodeId v = 0;
      if (!(ss >> v)) throw FormatError(source, line_no, "expected " + std::to_string(k) +
                                                             " node ids");
      if (v >= sizes[i] || clusters.assignment[i][v] != j) {
        throw FormatError(source, line_no, "node " + std::to_string(v) + " of graph " +
                                               std::to_string(i) + " is not in cluster " +
                                               std::to_string(j));
      }
      idx[i] = local[i][v];
    }
    double score = 0.0;
    std::string extra;
    if (!(ss >> score) || (ss >> extra)) {
      throw FormatError(source, line_no, "expected a single score after the node ids");
    }
    if (!std::isfinite(score) || score < 0.0) {
      throw FormatError(source, line_no, "score must be finite and nonnegative");
    }
    blocks[j].coupling.at(idx) = score;
  }
  AlignmentResult result(sizes, std::move(clusters), std::move(blocks), config);
  if (header.contains("barycenter_objective")) {
    result.barycenter_objective = header["barycenter_objective"].get<std::vector<double>>();
  }
  if (header.contains("timings")) {
    const json& t = header["timings"];
    Take(t, "embedding_ms", result.timings.embedding_ms);
    Take(t, "clustering_ms", result.timings.clustering_ms);
    Take(t, "node_alignment_ms", result.timings.node_alignment_ms);
    Take(t, "total_ms", result.timings.total_ms);
  }
  return result;
}

AlignmentResult load_alignment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return ReadAlignment(in, path);
}

json ReadAlignmentHeader(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw FormatError(path, 1, "missing header line");
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    throw FormatError(path, 1, std::string("header is not JSON: ") + e.what());
  }
}

}  // namespace hot
