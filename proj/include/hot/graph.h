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

#ifndef HOT_GRAPH_H_
#define HOT_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hot {

using NodeId = std::size_t;
// One node per graph, ordered as the graphs of a problem are ordered.
using NodeTuple = std::vector<NodeId>;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 1.0;
};

// Undirected graph with optional node attributes. Each undirected edge is
// stored once; Adjacency() symmetrizes. Construction validates the index
// range, duplicate edges, attribute shape and the degree >= 1 rule.
class Graph {
 public:
  Graph(std::size_t node_count, std::vector<Edge> edges,
        std::optional<Eigen::MatrixXd> attributes = std::nullopt,
        std::string id = "");

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_attributes() const { return attributes_.has_value(); }
  const Eigen::MatrixXd& attributes() const { return *attributes_; }
  const std::string& id() const { return id_; }

  Eigen::MatrixXd Adjacency() const;
  Eigen::VectorXd WeightedDegrees() const;

 private:
  std::size_t node_count_;
  std::vector<Edge> edges_;
  std::optional<Eigen::MatrixXd> attributes_;
  std::string id_;
};

// Discrete probability measure over the nodes of one graph.
class Measure {
 public:
  // Requires nonnegative weights summing to 1 within 1e-12.
  explicit Measure(Eigen::VectorXd weights);

  static Measure Uniform(std::size_t n);
  // Rescales nonnegative weights with a positive total onto the simplex.
  static Measure Normalized(Eigen::VectorXd weights);

  std::size_t size() const { return static_cast<std::size_t>(weights_.size()); }
  const Eigen::VectorXd& weights() const { return weights_; }
  double operator[](std::size_t i) const { return weights_[static_cast<Eigen::Index>(i)]; }

 private:
  struct Unchecked {};
  Measure(Eigen::VectorXd weights, Unchecked) : weights_(std::move(weights)) {}
  Eigen::VectorXd weights_;
};

Measure uniform_measure(const Graph& g);

struct MultiNetworkProblem {
  std::vector<Graph> graphs;
  std::vector<NodeTuple> anchors;
  std::vector<NodeTuple> ground_truth;

  std::size_t graph_count() const { return graphs.size(); }
  // Checks K >= 2, tuple arity and ranges, and per-graph disjointness of the
  // anchor tuples. Throws ValidationError.
  void Validate() const;
};

// Validates arity and index ranges of tuples against the given graphs.
void ValidateTuples(const std::vector<Graph>& graphs,
                    const std::vector<NodeTuple>& tuples,
                    const std::string& what);

// Text edge list: "n m" header, then m lines "u v [w]". '#' starts a comment.
Graph load_graph(const std::string& path,
                 const std::optional<std::string>& attr_path = std::nullopt);
Graph ParseGraph(const std::string& text, const std::string& source = "<string>");
void write_graph(const Graph& g, const std::string& path);
std::string FormatGraph(const Graph& g);

// Headerless CSV of reals, one row per node.
Eigen::MatrixXd ReadAttributes(const std::string& path);
void WriteAttributes(const Eigen::MatrixXd& x, const std::string& path);

// Headerless CSV of node tuples, one row per tuple.
std::vector<NodeTuple> ReadTuples(const std::string& path);
void WriteTuples(const std::vector<NodeTuple>& tuples, const std::string& path);

struct NoisyErOptions {
  std::size_t node_count = 100;
  double edge_probability = 0.08;
  std::size_t copies = 3;
  double insert_fraction = 0.10;
  double remove_fraction = 0.15;
  // Fraction of ground-truth tuples copied into the anchor set.
  double anchor_fraction = 0.10;
  std::uint64_t seed = 0;
};

// Samples a connected Erdos-Renyi base graph and derives `copies` noisy,
// independently permuted copies of it: permute, insert ceil(insert*m) new
// edges, then remove ceil(remove*m') edges without isolating any node.
MultiNetworkProblem generate_noisy_er(const NoisyErOptions& options);

}  // namespace hot

#endif  // HOT_GRAPH_H_
